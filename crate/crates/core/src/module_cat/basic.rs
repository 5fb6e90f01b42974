//! Primitive idempotents and the Morita-equivalent basic algebra.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::alg::{Alg, AlgGen};
use super::module::{GradedModule, GradedSubspace};
use super::resolve::Bimodule;
use crate::coeff_poly::Field;
use crate::combinatorics::{binomial, Kappa};
use crate::linalg::Matrix;
use crate::tensor_algebra::{Gen, GenKind, TensorAlgebra};

/// Product over maximal runs of adjacent blacks of the nilHecke idempotent y^ρ ψ_{w0}.
pub fn divided_power_idempotent<F: Field>(t: &TensorAlgebra<F>, kappa: &Kappa) -> Matrix<F> {
    let mut word = Vec::new();
    let mut i = 1;
    while i <= t.k {
        let mut m = 1;
        while i + m - 1 < t.k && kappa.reds_after_black(i + m - 1) == 0 {
            m += 1;
        }
        // ψ_{w0} on strands i..i+m-1 as a reduced word, then y^ρ
        for j in 1..m {
            for b in (1..=j).rev() {
                word.push(Gen::new(GenKind::Psi, i + b - 1, kappa));
            }
        }
        for a in 0..m {
            for _ in 0..(m - 1 - a) {
                word.push(Gen::new(GenKind::Y, i + a, kappa));
            }
        }
        i += m;
    }
    let x = t.idx(kappa);
    let n = t.rings[x].dim();
    let e = t.word(&word).expect("valid word");
    let f = e.block(x, x).cloned().unwrap_or_else(|| Matrix::zeros(n, n));
    // f² = ±f depending on the Demazure sign convention; rescale to an idempotent
    let sq = f.mul(&f);
    for r in 0..n {
        for c in 0..n {
            if !f.get(r, c).is_zero() {
                let s = sq.get(r, c).div(f.get(r, c));
                return f.scale(&s.inv());
            }
        }
    }
    f
}

/// Graded dimension of f_b A f_c for idempotents inside e_κb A e_κc.
pub fn truncated_dims<F: Field>(a: &Alg<F>, b: (usize, &Matrix<F>), c: (usize, &Matrix<F>)) -> BTreeMap<i64, usize> {
    let mut by: BTreeMap<i64, Vec<Vec<F>>> = BTreeMap::new();
    for &x in a.block(b.0, c.0) {
        let e = &a.cols[c.0][x];
        let m = b.1.mul(&e.mat).mul(c.1);
        if !m.is_zero() {
            by.entry(e.deg).or_default().push(m.entries().to_vec());
        }
    }
    by.into_iter()
        .filter_map(|(d, v)| {
            let n = v[0].len();
            let r = Matrix::from_rows(v.len(), n, v).rank();
            (r > 0).then_some((d, r))
        })
        .collect()
}

/// Chooses primitive idempotents, one per indecomposable projective up to shift, among
/// divided-power idempotents of non-violating loadings. Returns (idempotent index, f).
pub fn find_basic<F: Field>(t: &TensorAlgebra<F>, a: &Alg<F>) -> Vec<(usize, Matrix<F>)> {
    let mut cands: Vec<(usize, Matrix<F>)> = Vec::new();
    for (x, kappa) in t.kappas.iter().enumerate() {
        if kappa.is_violating() || t.rings[x].dim() == 0 {
            continue;
        }
        let f = divided_power_idempotent(t, kappa);
        if f.is_zero() || f.mul(&f) != f {
            continue;
        }
        let d = truncated_dims(a, (x, &f), (x, &f));
        if d.keys().next() == Some(&0) && d[&0] == 1 {
            cands.push((x, f));
        }
    }
    let mut chosen: Vec<(usize, Matrix<F>)> = Vec::new();
    for c in cands {
        if !chosen.iter().any(|b| isomorphic_up_to_shift(a, (b.0, &b.1), (c.0, &c.1)).is_some()) {
            chosen.push(c);
        }
    }
    chosen
}

/// Homogeneous basis of f_b A f_c in a given degree, as faithful blocks.
fn truncated_basis<F: Field>(a: &Alg<F>, b: (usize, &Matrix<F>), c: (usize, &Matrix<F>), deg: i64) -> Vec<Matrix<F>> {
    let mut out: Vec<Matrix<F>> = Vec::new();
    let mut ech = None;
    for &x in a.block(b.0, c.0) {
        let e = &a.cols[c.0][x];
        if e.deg != deg {
            continue;
        }
        let m = b.1.mul(&e.mat).mul(c.1);
        let ech = ech.get_or_insert_with(|| crate::linalg::Echelon::new(m.rows() * m.cols()));
        if ech.insert(m.entries()).is_some() {
            out.push(m);
        }
    }
    out
}

/// For primitive idempotents: the shift s with A f_b ≅ A f_c⟨s⟩, if any. Detected by f_b
/// factoring through f_c.
pub fn isomorphic_up_to_shift<F: Field>(a: &Alg<F>, b: (usize, &Matrix<F>), c: (usize, &Matrix<F>)) -> Option<i64> {
    let up = truncated_dims(a, b, c);
    let down = truncated_dims(a, c, b);
    for &d in up.keys() {
        if !down.contains_key(&-d) {
            continue;
        }
        let xs = truncated_basis(a, b, c, d);
        let ys = truncated_basis(a, c, b, -d);
        let n = b.1.rows() * b.1.cols();
        let mut ech = crate::linalg::Echelon::new(n);
        for x in &xs {
            for y in &ys {
                ech.insert(x.mul(y).entries());
            }
        }
        if ech.contains(b.1.entries()) {
            return Some(d);
        }
    }
    None
}

/// A basic algebra B = ⊕ f_b A f_c with its embedding into the ambient algebra A.
#[derive(Clone, Debug)]
pub struct Basic<F: Field> {
    pub alg: Alg<F>,
    /// Ambient idempotent of each basic idempotent.
    pub kappa: Vec<usize>,
    pub f: Vec<Matrix<F>>,
    /// Columns spanning f_b V_κ.
    pub incl: Vec<Matrix<F>>,
    /// Coordinates of f_b v in those columns.
    pub proj: Vec<Matrix<F>>,
}

impl<F: Field> Basic<F> {
    pub fn new(amb: &Alg<F>, idems: Vec<(usize, Matrix<F>)>) -> Self {
        let mut kappa = Vec::new();
        let mut fs = Vec::new();
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut rep_degs = Vec::new();
        let mut labels = Vec::new();
        for (x, f) in idems {
            let cols: Vec<Vec<F>> = (0..f.cols()).map(|j| f.col(j)).collect();
            let keep = crate::linalg::independent_subset(f.rows(), &cols);
            let kept: Vec<Vec<F>> = keep.iter().map(|&j| cols[j].clone()).collect();
            let inc = Matrix::from_cols(f.rows(), &kept);
            let pr = inc.solve_matrix(&f).expect("image columns span");
            rep_degs.push(keep.iter().map(|&j| amb.rep_degs[x][j]).collect::<Vec<i64>>());
            labels.push(amb.labels[x].clone());
            kappa.push(x);
            fs.push(f);
            incl.push(inc);
            proj.push(pr);
        }
        let n = kappa.len();
        // homogeneous spanning sets of each block, by degree
        let mut blocks: BTreeMap<(usize, usize), BTreeMap<i64, Vec<Matrix<F>>>> = BTreeMap::new();
        for b in 0..n {
            for c in 0..n {
                let mut by: BTreeMap<i64, (crate::linalg::Echelon<F>, Vec<Matrix<F>>)> = BTreeMap::new();
                for &x in amb.block(kappa[b], kappa[c]) {
                    let e = &amb.cols[kappa[c]][x];
                    let m = proj[b].mul(&e.mat).mul(&incl[c]);
                    if m.is_zero() {
                        continue;
                    }
                    let slot = by.entry(e.deg).or_insert_with(|| (crate::linalg::Echelon::new(m.rows() * m.cols()), Vec::new()));
                    if slot.0.insert(m.entries()).is_some() {
                        slot.1.push(m);
                    }
                }
                blocks.insert((b, c), by.into_iter().map(|(d, v)| (d, v.1)).collect());
            }
        }
        let radical = |b: usize, c: usize, d: i64| b != c || d > 0;
        let mut gens = Vec::new();
        for b in 0..n {
            for c in 0..n {
                for (&d, basis) in &blocks[&(b, c)] {
                    if !radical(b, c, d) {
                        continue;
                    }
                    // J² in this block and degree
                    let dim = basis[0].rows() * basis[0].cols();
                    let mut sq = crate::linalg::Echelon::new(dim);
                    for m in 0..n {
                        for (&d1, xs) in &blocks[&(b, m)] {
                            if !radical(b, m, d1) {
                                continue;
                            }
                            let Some(ys) = blocks[&(m, c)].get(&(d - d1)) else { continue };
                            if !radical(m, c, d - d1) {
                                continue;
                            }
                            for x in xs {
                                for y in ys {
                                    sq.insert(x.mul(y).entries());
                                }
                            }
                        }
                    }
                    for m in basis {
                        if sq.insert(m.entries()).is_some() {
                            gens.push(AlgGen { src: c, tgt: b, deg: d, mat: m.clone(), label: alloc::format!("a{}_{}_{}", b, c, gens.len()) });
                        }
                    }
                }
            }
        }
        let alg = Alg::new(labels, rep_degs, gens, None, alloc::vec![true; n]);
        Basic { alg, kappa, f: fs, incl, proj }
    }

    /// The basic algebra of the tensor-product algebra.
    pub fn of_tensor(t: &TensorAlgebra<F>, amb: &Alg<F>) -> Self {
        let idems = find_basic(t, amb);
        assert_eq!(idems.len(), expected_basic_count(t.l, t.k), "basic idempotents incomplete");
        Basic::new(amb, idems)
    }

    /// f_b x f_c in basic coordinates, for x ∈ e_κb A e_κc.
    pub fn to_basic(&self, b: usize, c: usize, x: &Matrix<F>) -> Matrix<F> {
        self.proj[b].mul(x).mul(&self.incl[c])
    }

    /// The ambient element of a basic one.
    pub fn from_basic(&self, b: usize, c: usize, m: &Matrix<F>) -> Matrix<F> {
        self.incl[b].mul(m).mul(&self.proj[c])
    }

    /// f_b M for an ambient module, as a module over the basic algebra, with the
    /// inclusion matrices (ambient piece ← basic piece) per basic idempotent.
    pub fn restrict_module(&self, amb: &Alg<F>, m: &GradedModule<F>) -> (GradedModule<F>, Vec<Matrix<F>>) {
        let n = self.kappa.len();
        let mut incl = Vec::new();
        let mut projm = Vec::new();
        let mut degs = Vec::new();
        let mut ba_cache: BTreeMap<usize, Vec<Matrix<F>>> = BTreeMap::new();
        for b in 0..n {
            let x = self.kappa[b];
            let fm = act_matrix(amb, m, x, x, &self.f[b], &mut ba_cache);
            let cols: Vec<Vec<F>> = (0..fm.cols()).map(|j| fm.col(j)).collect();
            let keep = crate::linalg::independent_subset(fm.rows(), &cols);
            let kept: Vec<Vec<F>> = keep.iter().map(|&j| cols[j].clone()).collect();
            let inc = Matrix::from_cols(fm.rows(), &kept);
            let pr = if kept.is_empty() { Matrix::zeros(0, fm.rows()) } else { inc.solve_matrix(&fm).expect("span") };
            degs.push(keep.iter().map(|&j| m.degs[x][j]).collect::<Vec<i64>>());
            incl.push(inc);
            projm.push(pr);
        }
        let act = self
            .alg
            .gens
            .iter()
            .map(|g| {
                let xm = self.from_basic(g.tgt, g.src, &g.mat);
                let am = act_matrix(amb, m, self.kappa[g.tgt], self.kappa[g.src], &xm, &mut ba_cache);
                projm[g.tgt].mul(&am).mul(&incl[g.src])
            })
            .collect();
        (GradedModule { degs, act }, incl)
    }

    /// Restricts an A'–A bimodule to a B'–B bimodule, B' = `left` basic of A'.
    pub fn restrict_bimodule(
        left: &Basic<F>,
        lamb: &Alg<F>,
        right: &Basic<F>,
        ramb: &Alg<F>,
        x: &Bimodule<F>,
    ) -> Bimodule<F> {
        let nb = right.kappa.len();
        let mut cols = Vec::new();
        let mut incs = Vec::new();
        let mut projs = Vec::new();
        let mut rcache = BTreeMap::new();
        for c in 0..nb {
            let kc = right.kappa[c];
            // X f_c as an ambient left module: image of right action of f_c
            let rf = x.right_elem(lamb, ramb, kc, kc, &right.f[c], &mut rcache);
            let col = &x.cols[kc];
            let mut sub = Vec::new();
            for t in 0..lamb.n_idem() {
                for j in 0..rf[t].cols() {
                    let v = rf[t].col(j);
                    if v.iter().any(|y| !y.is_zero()) {
                        sub.push((t, v));
                    }
                }
            }
            let ss = GradedSubspace::span(&col.degs, &sub);
            let (xm, inc) = col.submodule(lamb, &ss);
            let (bm, binc) = left.restrict_module(lamb, &xm);
            // basic piece b -> ambient X e_kc piece
            let full: Vec<Matrix<F>> = (0..left.kappa.len()).map(|b| inc[left.kappa[b]].mul(&binc[b])).collect();
            let pr: Vec<Matrix<F>> = full
                .iter()
                .map(|m| if m.cols() == 0 { Matrix::zeros(0, m.rows()) } else { left_inverse(m) })
                .collect();
            cols.push(bm);
            incs.push(full);
            projs.push(pr);
        }
        let right_maps = right
            .alg
            .gens
            .iter()
            .map(|g| {
                let xm = right.from_basic(g.tgt, g.src, &g.mat);
                let r = x.right_elem(lamb, ramb, right.kappa[g.tgt], right.kappa[g.src], &xm, &mut rcache);
                (0..left.kappa.len())
                    .map(|b| projs[g.src][b].mul(&r[left.kappa[b]]).mul(&incs[g.tgt][b]))
                    .collect()
            })
            .collect();
        Bimodule { cols, right: right_maps }
    }
}

/// Some left inverse of a full column rank matrix.
fn left_inverse<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    // independent rows form an invertible square block
    let rows: Vec<Vec<F>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let rows_sel = crate::linalg::independent_subset(m.cols(), &rows);
    let all: Vec<usize> = (0..m.cols()).collect();
    let sq = m.submatrix(&rows_sel, &all);
    let inv = sq.inverse().expect("full column rank");
    let mut out = Matrix::zeros(m.cols(), m.rows());
    for (a, &r) in rows_sel.iter().enumerate() {
        for c in 0..m.cols() {
            out.set(c, r, inv.get(c, a).clone());
        }
    }
    out
}

/// Matrix of the action of x ∈ e_t A e_s on a module: M_s -> M_t.
pub fn act_matrix<F: Field>(
    a: &Alg<F>,
    m: &GradedModule<F>,
    t: usize,
    s: usize,
    x: &Matrix<F>,
    cache: &mut BTreeMap<usize, Vec<Matrix<F>>>,
) -> Matrix<F> {
    let ba = cache.entry(s).or_insert_with(|| basis_actions(a, m, s));
    let c = a.coords(t, s, x);
    let mut out = Matrix::zeros(m.dim(t), m.dim(s));
    for (y, &b) in c.iter().zip(a.block(t, s)) {
        if !y.is_zero() {
            out.add_assign(&ba[b].scale(y));
        }
    }
    out
}

/// Action matrices M_s -> M_tgt of every basis element of A e_s.
pub fn basis_actions<F: Field>(a: &Alg<F>, m: &GradedModule<F>, s: usize) -> Vec<Matrix<F>> {
    let mut out: Vec<Matrix<F>> = Vec::new();
    for e in &a.cols[s] {
        let x = match e.parent {
            None => Matrix::identity(m.dim(s)),
            Some((g, p)) => m.act[g].mul(&out[p]),
        };
        out.push(x);
    }
    out
}

pub fn expected_basic_count(l: usize, k: usize) -> usize {
    binomial(l, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::Q;

    #[test]
    fn one_idempotent_per_indecomposable() {
        for (l, k) in [(0, 0), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (4, 2), (4, 3), (5, 2)] {
            let t = TensorAlgebra::<Q>::new(l, k);
            let a = Alg::from_tensor(&t);
            let b = Basic::of_tensor(&t, &a);
            assert_eq!(b.alg.n_idem(), expected_basic_count(l, k));
            assert!(b.alg.basic_endomorphisms_local());
            for x in 0..b.alg.n_idem() {
                for y in 0..x {
                    let fx = (b.kappa[x], &b.f[x]);
                    let fy = (b.kappa[y], &b.f[y]);
                    assert!(isomorphic_up_to_shift(&a, fx, fy).is_none());
                }
            }
        }
    }

    #[test]
    fn separated_loadings_can_decompose() {
        let t = TensorAlgebra::<Q>::new(3, 2);
        let a = Alg::from_tensor(&t);
        let x = t.idx(&Kappa::new(2, alloc::vec![0, 0, 1]));
        assert!(t.kappas[x].is_separated());
        assert_eq!(a.graded_block_dim(x, x).get(&0), Some(&2));
    }

    #[test]
    fn basic_two_strand_is_whole_algebra() {
        let t = TensorAlgebra::<Q>::new(2, 1);
        let a = Alg::from_tensor(&t);
        let b = Basic::of_tensor(&t, &a);
        assert_eq!(b.alg.dim(), 5);
    }
}
