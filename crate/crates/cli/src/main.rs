mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

/// Exact computations in tensor-product algebras of sl2 and Khovanov homology.
#[derive(Parser, Debug)]
#[command(name = "stendhal", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field.
    #[arg(long, global = true, value_enum, env = "STENDHAL_FIELD", default_value = "q")]
    pub field: FieldChoice,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest number of red strands ℓ any algebra may have.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_l: usize,
    /// Largest number of black strands k any algebra may have.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_k: usize,
    /// Largest algebra dimension the functor computations may build.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldChoice {
    #[value(name = "q")]
    Q,
    #[value(name = "2")]
    F2,
    #[value(name = "3")]
    F3,
}

impl FieldChoice {
    pub fn name(self) -> &'static str {
        match self {
            FieldChoice::Q => "q",
            FieldChoice::F2 => "2",
            FieldChoice::F3 => "3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraAction {
    Dims,
    Verify,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Cube,
    Functor,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Closure {
    Trace,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions and relation checks for T^ℓ at k black strands.
    Algebra {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        #[arg(value_enum, default_value = "all")]
        action: AlgebraAction,
    },
    /// The cellular basis, one vector per pair of backdrops.
    Basis {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
    },
    /// Khovanov homology of a closed braid, tangle word or planar diagram.
    Kh {
        /// Whitespace-separated signed letters, e.g. "1 -2 1".
        #[arg(long, group = "input")]
        braid: Option<String>,
        /// Tokens `cup i`, `cap i`, `pos i`, `neg i` separated by commas or newlines.
        #[arg(long, group = "input")]
        tangle: Option<String>,
        /// File holding a tangle word.
        #[arg(long, group = "input")]
        tangle_file: Option<PathBuf>,
        /// Planar diagram code, crossings separated by ';', e.g. "1,4,2,5;3,6,4,1;5,2,6,3".
        #[arg(long, group = "input")]
        pd: Option<String>,
        #[arg(long, value_enum, default_value = "trace")]
        closure: Closure,
        #[arg(long, value_enum, default_value = "both")]
        engine: Engine,
        /// Truncation depth for resolutions in the functor engine.
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Jones polynomial of a closed braid as (exponent, coefficient) pairs.
    Jones {
        #[arg(long)]
        braid: String,
        #[arg(long, value_enum, default_value = "trace")]
        closure: Closure,
    },
    /// Graded Hom between projectives against the bilinear pairing, every k.
    Decat {
        #[arg(long)]
        l: usize,
    },
    /// Truncated Jones–Wenzl projection of each indecomposable projective.
    Jw {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = stendhal::cupcap::jw::DEFAULT_CUTOFF)]
        cutoff: usize,
    },
}

/// Failure classes, each with its exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Verification(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Verification(m) | Failure::Guard(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("stendhal: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
