//! The truncated Jones–Wenzl projection onto complexes of projective-injectives,
//! through the idempotent with every black strand right of every red.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::Level;
use crate::coeff_poly::Field;
use crate::decat_oracle::LaurentPoly;
use crate::module_cat::basic::act_matrix;
use crate::module_cat::{apply_bimodule, Alg, Bimodule, GradedModule, ProjComplex, Resolution};

/// Default homological truncation depth.
pub const DEFAULT_CUTOFF: usize = 8;

/// The basic idempotent whose loading has all black strands at the far right; its
/// projective is the projective-injective.
pub fn projective_injective<F: Field>(level: &Level<F>) -> usize {
    level
        .basic
        .kappa
        .iter()
        .position(|&x| level.t.kappas[x].vals.iter().all(|&v| v == 0))
        .expect("the far-right loading is always basic")
}

/// The pieces of the projection: R = e A e for the projective-injective idempotent e,
/// the R–A bimodule e A and the A–R bimodule A e.
#[derive(Clone, Debug)]
pub struct JwData<F: Field> {
    pub idem: usize,
    pub corner: Alg<F>,
    pub restrict: Bimodule<F>,
    pub induce: Bimodule<F>,
}

impl<F: Field> JwData<F> {
    pub fn new(level: &Level<F>) -> Self {
        let alg = &level.basic.alg;
        let e = projective_injective(level);
        let corner = alg.corner(e);
        let reg = Bimodule::regular(alg);
        let mut caches = alloc::vec![BTreeMap::new(); alg.n_idem()];
        let restrict = Bimodule {
            cols: (0..alg.n_idem())
                .map(|c| GradedModule {
                    degs: alloc::vec![reg.cols[c].degs[e].clone()],
                    act: corner.gens.iter().map(|r| act_matrix(alg, &reg.cols[c], e, e, &r.mat, &mut caches[c])).collect(),
                })
                .collect(),
            right: reg.right.iter().map(|m| alloc::vec![m[e].clone()]).collect(),
        };
        let mut rcache = BTreeMap::new();
        let induce = Bimodule {
            cols: alloc::vec![reg.cols[e].clone()],
            right: corner.gens.iter().map(|r| reg.right_elem(alg, alg, e, e, &r.mat, &mut rcache)).collect(),
        };
        JwData { idem: e, corner, restrict, induce }
    }

    /// A e ⊗ᴸ_R e C for a complex of projectives C, exact in homological degrees
    /// down to min(h) − `cutoff`.
    pub fn project(&self, level: &Level<F>, c: &ProjComplex<F>, cutoff: usize) -> ProjComplex<F> {
        let alg = &level.basic.alg;
        let span = match (c.terms.keys().next(), c.terms.keys().next_back()) {
            (Some(a), Some(b)) => (b - a) as usize,
            _ => 0,
        };
        let over_r = apply_bimodule(&self.corner, alg, &self.restrict, c, cutoff + span + 1);
        apply_bimodule(alg, &self.corner, &self.induce, &over_r, cutoff)
    }
}

/// The Jones–Wenzl projection of a complex, with resolutions cut at `cutoff`.
pub fn jw_projection<F: Field>(level: &Level<F>, c: &ProjComplex<F>, cutoff: usize) -> ProjComplex<F> {
    JwData::new(level).project(level, c, cutoff)
}

/// The simple module at a basic idempotent, in degree 0.
pub fn simple_module<F: Field>(alg: &Alg<F>, s: usize) -> GradedModule<F> {
    let degs = (0..alg.n_idem()).map(|t| if t == s { alloc::vec![0] } else { Vec::new() }).collect();
    let act = alg
        .gens
        .iter()
        .map(|g| crate::linalg::Matrix::zeros(usize::from(g.tgt == s), usize::from(g.src == s)))
        .collect();
    GradedModule { degs, act }
}

/// A projective resolution of the simple at s, as a complex in degrees ≤ 0.
pub fn simple_resolution<F: Field>(alg: &Alg<F>, s: usize, depth: usize) -> (ProjComplex<F>, bool) {
    let r = Resolution::new(alg, &simple_module(alg, s), depth);
    (r.to_complex(alg, 0), r.complete)
}

/// Σ (−1)^h q^shift over the summands of a complex, when every summand is the
/// projective at `idem`.
pub fn scalar_euler<F: Field>(c: &ProjComplex<F>, idem: usize) -> Option<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (&h, v) in &c.terms {
        for s in v {
            if s.idem != idem {
                return None;
            }
            out.add_term(s.shift, if h % 2 == 0 { 1 } else { -1 });
        }
    }
    Some(out)
}
