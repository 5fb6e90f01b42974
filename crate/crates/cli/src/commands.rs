use std::fs;
use std::path::PathBuf;

use stendhal::combinatorics::{cellular_dimension, enumerate_kappas, Backdrop};
use stendhal::cupcap::jw::{scalar_euler, JwData};
use stendhal::cupcap::tangle::{Pipeline, TangleWord};
use stendhal::cupcap::Level;
use stendhal::decat_oracle::{graded_dim_to_laurent, jw_matrix, kauffman_bracket, vector_p, BraidWord, DecatError};
use stendhal::khovanov_cube::{kh, CubeError, LinkDiagram, MAX_CROSSINGS};
use stendhal::module_cat::ops::hom_dim_graded;
use stendhal::module_cat::{Alg, BigradedTable, ProjComplex};
use stendhal::tensor_algebra::{verify_relations, TensorAlgebra};
use stendhal::{Field, F2, F3, Q};

use crate::report::*;
use crate::{AlgebraAction, Cli, Command, Engine, FieldChoice, Failure};

/// Everything a command needs, checked before dispatch.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldChoice,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub max_l: usize,
    pub max_k: usize,
    pub max_dim: usize,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let g = &cli.global;
        if let Some(p) = &g.out {
            if p.as_os_str().is_empty() {
                return Err(Failure::Input("empty output path".into()));
            }
        }
        match &cli.cmd {
            Command::Algebra { l, k, .. } | Command::Basis { l, k } if k > l => {
                return Err(Failure::Input(format!("k = {} exceeds l = {}", k, l)));
            }
            Command::Jw { l, k, cutoff } => {
                if *l == 0 || k > l {
                    return Err(Failure::Input(format!("jw needs 1 <= l and k <= l, got l = {} k = {}", l, k)));
                }
                if *cutoff == 0 {
                    return Err(Failure::Input("cutoff must be positive".into()));
                }
            }
            Command::Kh { depth: 0, .. } => return Err(Failure::Input("depth must be positive".into())),
            _ => {}
        }
        Ok(RunConfig {
            field: g.field,
            format: g.format,
            out: g.out.clone(),
            max_l: g.max_l,
            max_k: g.max_k,
            max_dim: g.max_dim,
        })
    }

    pub fn guard(&self, l: usize, k: usize) -> Result<(), Failure> {
        if l > self.max_l || k > self.max_k {
            return Err(Failure::Guard(format!(
                "l = {} k = {} exceeds the guard l <= {} k <= {} (raise with --max-l/--max-k)",
                l, k, self.max_l, self.max_k
            )));
        }
        let d = cellular_dimension(l, k);
        if d > self.max_dim {
            return Err(Failure::Guard(format!(
                "the algebra at l = {} k = {} has dimension {} above --max-dim {}",
                l, k, d, self.max_dim
            )));
        }
        Ok(())
    }

    fn meta(&self, l: usize, k: usize) -> Meta {
        Meta::new(l, k, self.field.name())
    }

    fn emit<R: Render>(&self, r: &R) -> Result<(), Failure> {
        let s = r.render(self.format);
        match &self.out {
            Some(p) => fs::write(p, s).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e))),
            None => {
                print!("{}", s);
                Ok(())
            }
        }
    }
}

macro_rules! with_field {
    ($cfg:expr, $f:ident($($arg:expr),*)) => {
        match $cfg.field {
            FieldChoice::Q => $f::<Q>($($arg),*),
            FieldChoice::F2 => $f::<F2>($($arg),*),
            FieldChoice::F3 => $f::<F3>($($arg),*),
        }
    };
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.cmd {
        Command::Algebra { l, k, action } => with_field!(cfg, algebra(&cfg, *l, *k, *action)),
        Command::Basis { l, k } => with_field!(cfg, basis(&cfg, *l, *k)),
        Command::Kh { braid, tangle, tangle_file, pd, engine, depth, .. } => {
            let input = KhInput::read(braid, tangle, tangle_file, pd)?;
            with_field!(cfg, khovanov(&cfg, &input, *engine, *depth))
        }
        Command::Jones { braid, .. } => jones(&cfg, braid),
        Command::Decat { l } => with_field!(cfg, decat(&cfg, *l)),
        Command::Jw { l, k, cutoff } => with_field!(cfg, jw(&cfg, *l, *k, *cutoff)),
    }
}

fn algebra<F: Field>(cfg: &RunConfig, l: usize, k: usize, action: AlgebraAction) -> Result<(), Failure> {
    cfg.guard(l, k)?;
    let a = TensorAlgebra::<F>::new(l, k);
    let mut rep = AlgebraReport {
        meta: cfg.meta(l, k),
        cellular: None,
        generated: None,
        blocks: Vec::new(),
        relations_checked: None,
        relation_failures: Vec::new(),
    };
    let mut problems = Vec::new();
    if action != AlgebraAction::Verify {
        let dims = a.generated_dims();
        let generated: usize = dims.values().sum();
        let cellular = cellular_dimension(l, k);
        if generated != cellular {
            problems.push(format!("generated dimension {} differs from the cellular count {}", generated, cellular));
        }
        rep.cellular = Some(cellular);
        rep.generated = Some(generated);
        if action == AlgebraAction::All {
            rep.blocks = dims
                .iter()
                .filter(|(_, &d)| d > 0)
                .map(|(&(t, s), &dim)| BlockDim { target: a.kappas[t].label(), source: a.kappas[s].label(), dim })
                .collect();
        }
    }
    if action != AlgebraAction::Dims {
        let r = verify_relations(&a);
        if !r.ok() {
            problems.push(format!("{} relation checks fail", r.failures.len()));
        }
        rep.relations_checked = Some(r.checked);
        rep.relation_failures = r.failures;
    }
    cfg.emit(&rep)?;
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(problems.join("; ")))
    }
}

fn backdrop_label(b: &Backdrop) -> String {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("{}/{}", join(&b.labels), join(&b.order))
}

fn basis<F: Field>(cfg: &RunConfig, l: usize, k: usize) -> Result<(), Failure> {
    cfg.guard(l, k)?;
    let a = TensorAlgebra::<F>::new(l, k);
    let rows = a
        .cellular_basis()
        .iter()
        .map(|(s, t, e)| BasisRow {
            partition: s.partition.parts.clone(),
            s: backdrop_label(s),
            t: backdrop_label(t),
            target: s.kappa().label(),
            source: t.kappa().label(),
            degree: a.degree_of(e),
        })
        .collect();
    cfg.emit(&BasisReport { meta: cfg.meta(l, k), basis: rows })
}

/// The link presentations `kh` accepts.
pub enum KhInput {
    Braid(BraidWord),
    Tangle(TangleWord),
    Diagram(LinkDiagram),
}

impl KhInput {
    fn read(
        braid: &Option<String>,
        tangle: &Option<String>,
        tangle_file: &Option<PathBuf>,
        pd: &Option<String>,
    ) -> Result<Self, Failure> {
        if let Some(b) = braid {
            return BraidWord::parse(b).map(KhInput::Braid).map_err(braid_failure);
        }
        let text = match (tangle, tangle_file) {
            (Some(t), _) => Some(t.clone()),
            (None, Some(p)) => {
                Some(fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e)))?)
            }
            _ => None,
        };
        if let Some(t) = text {
            return TangleWord::parse(&t).map(KhInput::Tangle).map_err(|e| Failure::Input(e.to_string()));
        }
        if let Some(p) = pd {
            return LinkDiagram::from_pd(&parse_pd(p)?).map(KhInput::Diagram).map_err(cube_failure);
        }
        Err(Failure::Input("give one of --braid, --tangle, --tangle-file, --pd".into()))
    }
}

fn parse_pd(s: &str) -> Result<Vec<[usize; 4]>, Failure> {
    s.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            let v: Vec<usize> = c
                .split(|ch: char| ch == ',' || ch.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| Failure::Input(format!("bad planar diagram entry {:?}", x))))
                .collect::<Result<_, _>>()?;
            <[usize; 4]>::try_from(v).map_err(|_| Failure::Input(format!("crossing {:?} needs four labels", c.trim())))
        })
        .collect()
}

fn braid_failure(e: DecatError) -> Failure {
    match e {
        DecatError::MalformedWord(m) => Failure::Input(format!("malformed braid word: {}", m)),
        DecatError::UnsupportedClosure(m) => Failure::Input(format!("unsupported closure: {}", m)),
    }
}

fn cube_failure(e: CubeError) -> Failure {
    match e {
        CubeError::TooLarge(n) => Failure::Guard(format!("{} crossings exceed the cube limit of {}", n, MAX_CROSSINGS)),
        CubeError::Malformed(m) => Failure::Input(format!("malformed diagram: {}", m)),
    }
}

fn functor_engine<F: Field>(cfg: &RunConfig, word: &TangleWord, depth: usize) -> Result<BigradedTable, Failure> {
    let top = word.strand_counts().map_err(|e| Failure::Input(e.to_string()))?.into_iter().max().unwrap_or(0);
    cfg.guard(top, top / 2)?;
    Pipeline::<F>::new(depth).khovanov(word).map_err(|e| Failure::Input(e.to_string()))
}

fn table_diff(cube: &BigradedTable, functor: &BigradedTable) -> String {
    let mut keys: Vec<_> = cube.keys().chain(functor.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let mut lines = vec![String::from("engines disagree")];
    for key in keys {
        let (a, b) = (cube.get(&key).copied().unwrap_or(0), functor.get(&key).copied().unwrap_or(0));
        if a != b {
            lines.push(format!("  (h={}, q={}): cube {} functor {}", key.0, key.1, a, b));
        }
    }
    lines.join("\n")
}

fn khovanov<F: Field>(cfg: &RunConfig, input: &KhInput, engine: Engine, depth: usize) -> Result<(), Failure> {
    let closure = match input {
        KhInput::Braid(b) => Some(TangleWord::braid_closure(b)),
        KhInput::Tangle(w) => Some(w.clone()),
        KhInput::Diagram(_) => None,
    };
    let diagram = match input {
        KhInput::Braid(b) => Some(LinkDiagram::from_braid(b)),
        KhInput::Diagram(d) => Some(d.clone()),
        KhInput::Tangle(_) => None,
    };
    let top = closure.as_ref().map_or(Ok(0), |w| {
        w.strand_counts().map(|c| c.into_iter().max().unwrap_or(0)).map_err(|e| Failure::Input(e.to_string()))
    })?;
    let meta = cfg.meta(top, top / 2);
    let need = |what: &str| Failure::Input(format!("the {} engine cannot read this input", what));
    let table = match engine {
        Engine::Cube => kh::<F>(diagram.as_ref().ok_or_else(|| need("cube"))?).map_err(cube_failure)?,
        Engine::Functor => functor_engine::<F>(cfg, closure.as_ref().ok_or_else(|| need("functor"))?, depth)?,
        Engine::Both => {
            let d = diagram.as_ref().ok_or_else(|| need("cube"))?;
            let w = closure.as_ref().ok_or_else(|| need("functor"))?;
            let cube = kh::<F>(d).map_err(cube_failure)?;
            let functor = functor_engine::<F>(cfg, w, depth)?;
            if cube != functor {
                return Err(Failure::Verification(table_diff(&cube, &functor)));
            }
            cube
        }
    };
    cfg.emit(&TableReport::new(meta, &table))
}

fn jones(cfg: &RunConfig, braid: &str) -> Result<(), Failure> {
    let b = BraidWord::parse(braid).map_err(braid_failure)?;
    if b.letters.len() > MAX_CROSSINGS {
        return Err(Failure::Guard(format!("{} crossings exceed the state-sum limit", b.letters.len())));
    }
    let p = kauffman_bracket(&b);
    cfg.emit(&JonesReport { meta: cfg.meta(2 * b.strands, b.strands), braid: braid.trim().to_string(), jones: terms(&p) })
}

fn decat<F: Field>(cfg: &RunConfig, l: usize) -> Result<(), Failure> {
    cfg.guard(l, 0)?;
    let mut pairs = Vec::new();
    let mut top_k = 0;
    for k in 0..=l {
        if let Err(Failure::Guard(m)) = cfg.guard(l, k) {
            eprintln!("stendhal: skipping k = {}: {}", k, m);
            continue;
        }
        top_k = k;
        let t = TensorAlgebra::<F>::new(l, k);
        let alg = Alg::from_tensor(&t);
        for a in &enumerate_kappas(l, k) {
            for b in &enumerate_kappas(l, k) {
                let hom = graded_dim_to_laurent(&hom_dim_graded(&alg, t.idx(a), t.idx(b)));
                let form = vector_p(a).pairing(&vector_p(b));
                pairs.push(PairRow {
                    k,
                    a: a.label(),
                    b: b.label(),
                    equal: hom == form,
                    hom: terms(&hom),
                    pairing: terms(&form),
                });
            }
        }
    }
    let all_equal = pairs.iter().all(|p| p.equal);
    cfg.emit(&DecatReport { meta: cfg.meta(l, top_k), pairs, all_equal })?;
    if all_equal {
        Ok(())
    } else {
        Err(Failure::Verification("graded Hom differs from the pairing".into()))
    }
}

fn jw<F: Field>(cfg: &RunConfig, l: usize, k: usize, cutoff: usize) -> Result<(), Failure> {
    cfg.guard(l, k)?;
    let lv = Level::<F>::new(l, k);
    let data = JwData::new(&lv);
    let m = jw_matrix(l, 4 * cutoff as i64);
    let c = cutoff as i64;
    let mut rows = Vec::new();
    for s in 0..lv.basic.alg.n_idem() {
        let p = data.project(&lv, &ProjComplex::single(s, 0, 0), cutoff);
        let kappa = &lv.t.kappas[lv.basic.kappa[s]];
        let expected = m.top_coefficient(&vector_p(kappa)).truncate_above(c);
        let euler = scalar_euler(&p, data.idem).map(|x| x.truncate_above(c));
        rows.push(JwRow {
            kappa: kappa.label(),
            projective_injective: s == data.idem,
            equal: euler.as_ref() == Some(&expected),
            euler: euler.as_ref().map(terms).unwrap_or_default(),
            expected: terms(&expected),
        });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    cfg.emit(&JwReport { meta: cfg.meta(l, k), cutoff, rows, all_equal })?;
    if all_equal {
        Ok(())
    } else {
        Err(Failure::Verification("Euler characteristic differs from the projector series".into()))
    }
}
