//! Output schemas and their JSON, TSV and text renderings.

use serde::{Deserialize, Serialize};
use stendhal::decat_oracle::LaurentPoly;
use stendhal::module_cat::BigradedTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub l: usize,
    pub k: usize,
    pub field: String,
    pub version: String,
}

impl Meta {
    pub fn new(l: usize, k: usize, field: &str) -> Self {
        Meta { l, k, field: field.to_string(), version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub h: i64,
    pub q: i64,
    pub rank: usize,
}

/// The bigraded table written by `kh`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub meta: Meta,
    pub table: Vec<Row>,
}

impl TableReport {
    pub fn new(meta: Meta, t: &BigradedTable) -> Self {
        let table = t.iter().filter(|(_, &r)| r > 0).map(|(&(h, q), &rank)| Row { h, q, rank }).collect();
        TableReport { meta, table }
    }

    #[cfg(test)]
    pub fn to_table(&self) -> BigradedTable {
        self.table.iter().map(|r| ((r.h, r.q), r.rank)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exp: i64,
    pub coeff: i64,
}

pub fn terms(p: &LaurentPoly) -> Vec<Term> {
    p.terms().iter().map(|(&exp, &coeff)| Term { exp, coeff }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JonesReport {
    pub meta: Meta,
    pub braid: String,
    pub jones: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDim {
    pub target: String,
    pub source: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub meta: Meta,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cellular: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generated: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub blocks: Vec<BlockDim>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub relations_checked: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub relation_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRow {
    pub partition: Vec<usize>,
    pub s: String,
    pub t: String,
    pub target: String,
    pub source: String,
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub meta: Meta,
    pub basis: Vec<BasisRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub k: usize,
    pub a: String,
    pub b: String,
    pub hom: Vec<Term>,
    pub pairing: Vec<Term>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecatReport {
    pub meta: Meta,
    pub pairs: Vec<PairRow>,
    pub all_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JwRow {
    pub kappa: String,
    pub projective_injective: bool,
    pub euler: Vec<Term>,
    pub expected: Vec<Term>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JwReport {
    pub meta: Meta,
    pub cutoff: usize,
    pub rows: Vec<JwRow>,
    pub all_equal: bool,
}

fn poly_text(t: &[Term]) -> String {
    let mut p = LaurentPoly::zero();
    for x in t {
        p.add_term(x.exp, x.coeff);
    }
    p.to_string()
}

fn pairs_tsv(t: &[Term]) -> String {
    t.iter().map(|x| format!("{}:{}", x.exp, x.coeff)).collect::<Vec<_>>().join(",")
}

fn meta_line(m: &Meta) -> String {
    format!("# l={} k={} field={} version={}\n", m.l, m.k, m.field, m.version)
}

pub trait Render: Serialize {
    fn tsv(&self) -> String;
    fn text(&self) -> String;

    fn render(&self, f: Format) -> String {
        match f {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Tsv => self.tsv(),
            Format::Text => self.text(),
        }
    }
}

impl Render for TableReport {
    fn tsv(&self) -> String {
        let mut s = String::from("h\tq\trank\n");
        for r in &self.table {
            s += &format!("{}\t{}\t{}\n", r.h, r.q, r.rank);
        }
        s
    }

    fn text(&self) -> String {
        let mut s = meta_line(&self.meta);
        for r in &self.table {
            s += &format!("h={:<3} q={:<4} rank {}\n", r.h, r.q, r.rank);
        }
        s
    }
}

impl Render for JonesReport {
    fn tsv(&self) -> String {
        let mut s = String::from("exp\tcoeff\n");
        for t in &self.jones {
            s += &format!("{}\t{}\n", t.exp, t.coeff);
        }
        s
    }

    fn text(&self) -> String {
        let pairs: Vec<String> = self.jones.iter().map(|t| format!("({}, {})", t.exp, t.coeff)).collect();
        format!("{}\n{}\n", poly_text(&self.jones), pairs.join(" "))
    }
}

impl Render for AlgebraReport {
    fn tsv(&self) -> String {
        let mut s = String::from("key\tvalue\n");
        if let Some(c) = self.cellular {
            s += &format!("cellular\t{}\n", c);
        }
        if let Some(g) = self.generated {
            s += &format!("generated\t{}\n", g);
        }
        for b in &self.blocks {
            s += &format!("block {} {}\t{}\n", b.target, b.source, b.dim);
        }
        if let Some(c) = self.relations_checked {
            s += &format!("relations_checked\t{}\n", c);
            s += &format!("relation_failures\t{}\n", self.relation_failures.len());
        }
        s
    }

    fn text(&self) -> String {
        // a bare dimension query prints just the number
        if self.relations_checked.is_none() && self.blocks.is_empty() {
            if let Some(c) = self.cellular {
                return format!("{}\n", c);
            }
        }
        let mut s = meta_line(&self.meta);
        if let (Some(c), Some(g)) = (self.cellular, self.generated) {
            s += &format!("dimension {} (cellular {}, generated {})\n", c, c, g);
        }
        for b in &self.blocks {
            s += &format!("  e{} T e{}: {}\n", b.target, b.source, b.dim);
        }
        if let Some(c) = self.relations_checked {
            if self.relation_failures.is_empty() {
                s += &format!("relations: all {} checks pass\n", c);
            } else {
                s += &format!("relations: {} of {} checks fail\n", self.relation_failures.len(), c);
                for f in &self.relation_failures {
                    s += &format!("  {}\n", f);
                }
            }
        }
        s
    }
}

impl Render for BasisReport {
    fn tsv(&self) -> String {
        let mut s = String::from("partition\tS\tT\ttarget\tsource\tdegree\n");
        for r in &self.basis {
            let deg = r.degree.map_or(String::from("-"), |d| d.to_string());
            s += &format!("{:?}\t{}\t{}\t{}\t{}\t{}\n", r.partition, r.s, r.t, r.target, r.source, deg);
        }
        s
    }

    fn text(&self) -> String {
        let mut s = meta_line(&self.meta);
        s += &format!("{} basis vectors\n", self.basis.len());
        for r in &self.basis {
            let deg = r.degree.map_or(String::from("?"), |d| d.to_string());
            s += &format!("  {:?} C[{} | {}] in e{} T e{} degree {}\n", r.partition, r.s, r.t, r.target, r.source, deg);
        }
        s
    }
}

impl Render for DecatReport {
    fn tsv(&self) -> String {
        let mut s = String::from("k\ta\tb\thom\tpairing\tequal\n");
        for r in &self.pairs {
            s += &format!("{}\t{}\t{}\t{}\t{}\t{}\n", r.k, r.a, r.b, pairs_tsv(&r.hom), pairs_tsv(&r.pairing), r.equal);
        }
        s
    }

    fn text(&self) -> String {
        let mut s = meta_line(&self.meta);
        for r in &self.pairs {
            let mark = if r.equal { "=" } else { "!=" };
            s += &format!("k={} Hom({}, {}) = {} {} {}\n", r.k, r.a, r.b, poly_text(&r.hom), mark, poly_text(&r.pairing));
        }
        s += &format!("all equal: {}\n", self.all_equal);
        s
    }
}

impl Render for JwReport {
    fn tsv(&self) -> String {
        let mut s = String::from("kappa\tprojective_injective\teuler\texpected\tequal\n");
        for r in &self.rows {
            s += &format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.kappa,
                r.projective_injective,
                pairs_tsv(&r.euler),
                pairs_tsv(&r.expected),
                r.equal
            );
        }
        s
    }

    fn text(&self) -> String {
        let mut s = meta_line(&self.meta);
        s += &format!("cutoff {}\n", self.cutoff);
        for r in &self.rows {
            let mark = if r.equal { "=" } else { "!=" };
            let pi = if r.projective_injective { " (projective-injective)" } else { "" };
            s += &format!("{}{}: {} {} {}\n", r.kappa, pi, poly_text(&r.euler), mark, poly_text(&r.expected));
        }
        s += &format!("all equal: {}\n", self.all_equal);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_round_trips_through_json() {
        let t: BigradedTable = [((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)].into_iter().collect();
        let r = TableReport::new(Meta::new(4, 2, "q"), &t);
        let s = r.render(Format::Json);
        let back: TableReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_table(), t);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for key in ["l", "k", "field", "version"] {
            assert!(v["meta"].get(key).is_some());
        }
        assert_eq!(v["table"][3]["rank"], 1);
    }

    #[test]
    fn tsv_has_header() {
        let t: BigradedTable = [((0, -1), 1), ((0, 1), 1)].into_iter().collect();
        let r = TableReport::new(Meta::new(2, 1, "2"), &t);
        assert_eq!(r.render(Format::Tsv), "h\tq\trank\n0\t-1\t1\n0\t1\t1\n");
    }
}
