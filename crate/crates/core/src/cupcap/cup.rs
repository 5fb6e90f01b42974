//! The cup bimodule, built as a quotient of projectives with the right action transported
//! by shifting indices, and its mirror image.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff_poly::Field;
use crate::combinatorics::Kappa;
use crate::linalg::Matrix;
use crate::module_cat::{Alg, Bimodule, GradedModule};
use crate::tensor_algebra::{Gen, GenKind, TensorAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CupError {
    /// The right action does not preserve the relations, or the bimodule axioms fail.
    PresentationIncomplete(String),
    BadPosition(String),
}

impl fmt::Display for CupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CupError::PresentationIncomplete(s) => write!(f, "presentation incomplete: {}", s),
            CupError::BadPosition(s) => write!(f, "bad cup position: {}", s),
        }
    }
}

/// Inserts reds at positions i+1, i+2 with one new black between them.
pub fn ins_kappa(kappa: &Kappa, i: usize) -> Kappa {
    let l = kappa.l();
    assert!(i <= l);
    let mid = if i < l { kappa.at(i + 1) } else { kappa.k };
    let mut vals = Vec::with_capacity(l + 2);
    vals.extend_from_slice(&kappa.vals[..i]);
    vals.push(mid);
    vals.push(mid + 1);
    vals.extend(kappa.vals[i..].iter().map(|v| v + 1));
    Kappa::new(kappa.k + 1, vals)
}

/// Index of the black strand trapped in the cup.
pub fn cup_black(ins: &Kappa, i: usize) -> usize {
    ins.at(i + 1) + 1
}

/// The red a generator crosses, 1-based; `None` for y and ψ.
fn red_crossed(g: &Gen) -> Option<usize> {
    let v = &g.src.vals;
    match g.kind {
        GenKind::IotaPlus => v.iter().rposition(|&x| x + 1 == g.i).map(|p| p + 1),
        GenKind::IotaMinus => v.iter().position(|&x| x == g.i).map(|p| p + 1),
        _ => None,
    }
}

/// The word (bottom to top) and sign of the element of T^{ℓ+2} through which a right
/// generator g acts on the generator of its target column.
pub fn transported_word(g: &Gen, i: usize) -> (Vec<Gen>, bool) {
    let src = ins_kappa(&g.src, i);
    let b = cup_black(&src, i);
    let shift = |j: usize| if j < b { j } else { j + 1 };
    if red_crossed(g) == Some(i + 1) {
        match g.kind {
            GenKind::IotaPlus => {
                // the black passes over the cup: cross the two cup reds, swap with the cup black
                let w1 = Gen::new(GenKind::IotaPlus, b + 1, &src);
                let w2 = Gen::new(GenKind::IotaPlus, b + 1, &w1.target());
                let w3 = Gen::new(GenKind::Psi, b, &w2.target());
                let w4 = Gen::new(GenKind::IotaPlus, b, &w3.target());
                return (vec![w1, w2, w3, w4], true);
            }
            GenKind::IotaMinus => {
                let j = b - 1;
                let w1 = Gen::new(GenKind::IotaMinus, j, &src);
                let w2 = Gen::new(GenKind::Psi, j, &w1.target());
                let w3 = Gen::new(GenKind::IotaMinus, j + 1, &w2.target());
                let w4 = Gen::new(GenKind::IotaMinus, j + 1, &w3.target());
                return (vec![w1, w2, w3, w4], false);
            }
            _ => unreachable!(),
        }
    }
    (vec![Gen::new(g.kind, shift(g.i), &src)], false)
}

/// 𝔎_i as a T^{ℓ+2}–T^ℓ bimodule over the full algebras, with the projections from the
/// projectives P_{ins κ} onto its columns.
#[derive(Clone, Debug)]
pub struct CupBimodule<F: Field> {
    pub l: usize,
    pub i: usize,
    pub k: usize,
    pub bimodule: Bimodule<F>,
    /// Left idempotent of the generator c_κ, per right idempotent κ.
    pub gen_idem: Vec<usize>,
    pub proj: Vec<Vec<Matrix<F>>>,
}

fn word_matrix<F: Field>(t: &TensorAlgebra<F>, w: &[Gen]) -> Matrix<F> {
    let mut m = Matrix::identity(t.ring(&w[0].src).dim());
    for g in w {
        m = t.gen_block(g).expect("valid transported generator").mul(&m);
    }
    m
}

fn elem_vector<F: Field>(a: &Alg<F>, t: usize, s: usize, m: &Matrix<F>) -> Vec<F> {
    a.coords(t, s, m)
}

/// Right multiplication by x ∈ e_u A e_s as a map P_u -> P_s, per left idempotent.
pub fn right_mult<F: Field>(a: &Alg<F>, u: usize, s: usize, x: &Matrix<F>) -> Vec<Matrix<F>> {
    (0..a.n_idem())
        .map(|t| {
            let src = a.block(t, u);
            let mut m = Matrix::zeros(a.block(t, s).len(), src.len());
            for (c, &b) in src.iter().enumerate() {
                let p = a.cols[u][b].mat.mul(x);
                for (r, y) in a.coords(t, s, &p).into_iter().enumerate() {
                    if !y.is_zero() {
                        m.set(r, c, y);
                    }
                }
            }
            m
        })
        .collect()
}

/// Builds 𝔎_i from the (cup-1) relations and verifies the transported right action.
pub fn cup_bimodule<F: Field>(
    upper: &TensorAlgebra<F>,
    uamb: &Alg<F>,
    lower: &TensorAlgebra<F>,
    lamb: &Alg<F>,
    i: usize,
) -> Result<CupBimodule<F>, CupError> {
    let (l, k) = (lower.l, lower.k);
    if i > l || upper.l != l + 2 || upper.k != k + 1 {
        return Err(CupError::BadPosition(format!("cup {} on {} strands", i, l)));
    }
    let mut cols = Vec::new();
    let mut subs = Vec::new();
    let mut gen_idem = Vec::new();
    let mut projs = Vec::new();
    let mut keeps = Vec::new();
    for kappa in &lower.kappas {
        let ins = ins_kappa(kappa, i);
        let s = upper.idx(&ins);
        let p = GradedModule::projective(uamb, s, 0);
        let mut rel = Vec::new();
        if uamb.rep_dim(s) > 0 {
            let b = cup_black(&ins, i);
            for kind in [GenKind::Y, GenKind::IotaPlus, GenKind::IotaMinus] {
                let g = Gen::new(kind, b, &ins);
                if !g.is_valid() {
                    continue;
                }
                let t = upper.idx(&g.target());
                if uamb.rep_dim(t) == 0 {
                    continue;
                }
                let m = upper.gen_block(&g).expect("valid");
                rel.push((t, elem_vector(uamb, t, s, &m)));
            }
        }
        let sub = p.generated(uamb, &rel);
        let (q, proj) = p.quotient(uamb, &sub);
        keeps.push((0..uamb.n_idem()).map(|t| sub.complement(t)).collect::<Vec<_>>());
        cols.push(q);
        subs.push(sub);
        gen_idem.push(s);
        projs.push(proj);
    }
    let tgens = lower.generators();
    let mut right = Vec::new();
    for (gi, g) in tgens.iter().enumerate() {
        let ag = &lamb.gens[gi];
        let (u, s) = (gen_idem[ag.tgt], gen_idem[ag.src]);
        let (w, neg) = transported_word(g, i);
        let ins_tgt = ins_kappa(&g.target(), i);
        let wt = w.last().unwrap().target();
        if wt != ins_tgt {
            return Err(CupError::PresentationIncomplete(format!("transport of {} lands in {}", g, wt)));
        }
        let mut x = word_matrix(upper, &w);
        if neg {
            x = x.neg();
        }
        let rm = right_mult(uamb, u, s, &x);
        let mut maps = Vec::new();
        for t in 0..uamb.n_idem() {
            // relations must go to relations
            for (_, v) in subs[ag.tgt].basis(t) {
                if !subs[ag.src].contains(t, &rm[t].mul_vec(&v)) {
                    return Err(CupError::PresentationIncomplete(format!("right action of {} does not descend", g)));
                }
            }
            let keep = &keeps[ag.tgt][t];
            let mut m = Matrix::zeros(cols[ag.src].dim(t), keep.len());
            for (c, &j) in keep.iter().enumerate() {
                let img = projs[ag.src][t].mul_vec(&rm[t].col(j));
                for (r, y) in img.into_iter().enumerate() {
                    if !y.is_zero() {
                        m.set(r, c, y);
                    }
                }
            }
            maps.push(m);
        }
        right.push(maps);
    }
    let bimodule = Bimodule { cols, right };
    if !bimodule.is_bimodule(uamb, lamb) {
        return Err(CupError::PresentationIncomplete("bimodule axioms fail".into()));
    }
    Ok(CupBimodule { l, i, k, bimodule, gen_idem, proj: projs })
}

impl<F: Field> CupBimodule<F> {
    /// The generator c_κ as a vector of its column.
    pub fn generator(&self, kappa: usize) -> Option<Vec<F>> {
        let s = self.gen_idem[kappa];
        let pr = &self.proj[kappa][s];
        if pr.cols() == 0 {
            return None;
        }
        let v = pr.col(0);
        v.iter().any(|x| !x.is_zero()).then_some(v)
    }

    /// Graded dimensions of e_μ 𝔎 e_κ, keyed by (μ, κ).
    pub fn block_dims(&self) -> BTreeMap<(usize, usize), BTreeMap<i64, usize>> {
        let mut out = BTreeMap::new();
        for (kappa, c) in self.bimodule.cols.iter().enumerate() {
            for (mu, d) in c.graded_dims().into_iter().enumerate() {
                if !d.is_empty() {
                    out.insert((mu, kappa), d);
                }
            }
        }
        out
    }
}

/// The mirror image: a B–A bimodule from an A–B bimodule, transporting both actions
/// through the anti-involutions of the two algebras.
pub fn mirror<F: Field>(left: &Alg<F>, right: &Alg<F>, x: &Bimodule<F>) -> Bimodule<F> {
    let lstar = left.star_gen.as_ref().expect("left algebra has no anti-involution");
    let rstar = right.star_gen.as_ref().expect("right algebra has no anti-involution");
    let cols = (0..left.n_idem())
        .map(|mu| GradedModule {
            degs: (0..right.n_idem()).map(|kappa| x.cols[kappa].degs[mu].clone()).collect(),
            act: (0..right.gens.len()).map(|g| x.right[rstar[g]][mu].clone()).collect(),
        })
        .collect();
    let rmaps = (0..left.gens.len())
        .map(|g| (0..right.n_idem()).map(|kappa| x.cols[kappa].act[lstar[g]].clone()).collect())
        .collect();
    Bimodule { cols, right: rmaps }
}
