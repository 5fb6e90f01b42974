//! A finite-dimensional graded algebra presented by generators acting faithfully,
//! with a word basis of every left projective.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::coeff_poly::Field;
use crate::linalg::{Echelon, Matrix};
use crate::tensor_algebra::TensorAlgebra;

#[derive(Clone, Debug)]
pub struct AlgGen<F: Field> {
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
    /// Faithful block, rep_dim(tgt) x rep_dim(src).
    pub mat: Matrix<F>,
    pub label: String,
}

/// A basis element of A e_s: either e_s or a generator applied to an earlier element.
#[derive(Clone, Debug)]
pub struct BasisElem<F: Field> {
    pub tgt: usize,
    pub deg: i64,
    pub mat: Matrix<F>,
    /// (generator, index in the same column) with self = gen · parent.
    pub parent: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Alg<F: Field> {
    pub labels: Vec<String>,
    /// Internal degree of each faithful basis vector, per idempotent.
    pub rep_degs: Vec<Vec<i64>>,
    pub gens: Vec<AlgGen<F>>,
    /// Index of the mirrored generator, when the algebra carries the star anti-involution.
    pub star_gen: Option<Vec<usize>>,
    /// Idempotents used for projective covers.
    pub basic: Vec<bool>,
    pub cols: Vec<Vec<BasisElem<F>>>,
    /// (t, s) -> indices into cols[s] of elements in e_t A e_s.
    block_index: BTreeMap<(usize, usize), Vec<usize>>,
    /// position of cols[s][b] inside its block list
    local: Vec<Vec<usize>>,
    ech: BTreeMap<(usize, usize), Echelon<F>>,
    gens_by_src: Vec<Vec<usize>>,
    /// Left action of each generator on each projective: proj_act[s][g] maps e_{g.src}Ae_s -> e_{g.tgt}Ae_s.
    proj_act: Vec<BTreeMap<usize, Matrix<F>>>,
}

impl<F: Field> Alg<F> {
    pub fn new(
        labels: Vec<String>,
        rep_degs: Vec<Vec<i64>>,
        gens: Vec<AlgGen<F>>,
        star_gen: Option<Vec<usize>>,
        basic: Vec<bool>,
    ) -> Self {
        let n = labels.len();
        let mut gens_by_src = alloc::vec![Vec::new(); n];
        for (gi, g) in gens.iter().enumerate() {
            gens_by_src[g.src].push(gi);
        }
        let mut alg = Alg {
            labels,
            rep_degs,
            gens,
            star_gen,
            basic,
            cols: Vec::new(),
            block_index: BTreeMap::new(),
            local: Vec::new(),
            ech: BTreeMap::new(),
            gens_by_src,
            proj_act: Vec::new(),
        };
        for s in 0..n {
            alg.build_column(s);
        }
        for s in 0..n {
            let mut acts = BTreeMap::new();
            for gi in 0..alg.gens.len() {
                let g = &alg.gens[gi];
                let rows = alg.block(g.tgt, s).len();
                let cols = alg.block(g.src, s).len();
                if rows == 0 || cols == 0 {
                    continue;
                }
                let mut m = Matrix::zeros(rows, cols);
                for (c, &b) in alg.block(g.src, s).iter().enumerate() {
                    let p = g.mat.mul(&alg.cols[s][b].mat);
                    if p.is_zero() {
                        continue;
                    }
                    let co = alg.coords(g.tgt, s, &p);
                    for (r, x) in co.into_iter().enumerate() {
                        if !x.is_zero() {
                            m.set(r, c, x);
                        }
                    }
                }
                acts.insert(gi, m);
            }
            alg.proj_act.push(acts);
        }
        alg
    }

    fn build_column(&mut self, s: usize) {
        let mut col: Vec<BasisElem<F>> = Vec::new();
        let mut local = Vec::new();
        let d = self.rep_dim(s);
        if d > 0 {
            let id = Matrix::identity(d);
            self.ech.entry((s, s)).or_insert_with(|| Echelon::new(d * d)).insert(id.entries());
            self.block_index.entry((s, s)).or_default().push(0);
            local.push(0);
            col.push(BasisElem { tgt: s, deg: 0, mat: id, parent: None });
            let mut queue = VecDeque::from([0usize]);
            while let Some(b) = queue.pop_front() {
                let t = col[b].tgt;
                for &gi in &self.gens_by_src[t] {
                    let g = &self.gens[gi];
                    let p = g.mat.mul(&col[b].mat);
                    if p.is_zero() {
                        continue;
                    }
                    let rows = p.rows() * p.cols();
                    let e = self.ech.entry((g.tgt, s)).or_insert_with(|| Echelon::new(rows));
                    if e.insert(p.entries()).is_some() {
                        let idx = col.len();
                        let list = self.block_index.entry((g.tgt, s)).or_default();
                        local.push(list.len());
                        list.push(idx);
                        col.push(BasisElem { tgt: g.tgt, deg: col[b].deg + g.deg, mat: p, parent: Some((gi, b)) });
                        queue.push_back(idx);
                    }
                }
            }
        }
        self.cols.push(col);
        self.local.push(local);
    }

    pub fn n_idem(&self) -> usize {
        self.labels.len()
    }

    pub fn rep_dim(&self, i: usize) -> usize {
        self.rep_degs[i].len()
    }

    /// Total dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn block(&self, t: usize, s: usize) -> &[usize] {
        self.block_index.get(&(t, s)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of cols[s][b] within block (tgt, s).
    pub fn local_index(&self, s: usize, b: usize) -> usize {
        self.local[s][b]
    }

    pub fn gens_from(&self, s: usize) -> &[usize] {
        &self.gens_by_src[s]
    }

    /// Left action of generator `g` on the projective A e_s, in block coordinates.
    pub fn proj_action(&self, s: usize, g: usize) -> Option<&Matrix<F>> {
        self.proj_act[s].get(&g)
    }

    /// Coordinates in the block basis of an element of e_t A e_s; `None` if not in the algebra.
    pub fn try_coords(&self, t: usize, s: usize, m: &Matrix<F>) -> Option<Vec<F>> {
        match self.ech.get(&(t, s)) {
            Some(e) => e.coords(m.entries()),
            None => {
                if m.is_zero() {
                    Some(Vec::new())
                } else {
                    None
                }
            }
        }
    }

    pub fn coords(&self, t: usize, s: usize, m: &Matrix<F>) -> Vec<F> {
        self.try_coords(t, s, m).expect("element outside the algebra block")
    }

    /// Element of e_t A e_s from block coordinates.
    pub fn from_coords(&self, t: usize, s: usize, c: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rep_dim(t), self.rep_dim(s));
        for (x, &b) in c.iter().zip(self.block(t, s)) {
            if !x.is_zero() {
                m.add_assign(&self.cols[s][b].mat.scale(x));
            }
        }
        m
    }

    pub fn elem_degree(&self, t: usize, s: usize, m: &Matrix<F>) -> Option<i64> {
        let mut deg = None;
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let d = self.rep_degs[t][r] - self.rep_degs[s][c];
                match deg {
                    None => deg = Some(d),
                    Some(x) if x != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Graded dimension of e_t A e_s.
    pub fn graded_block_dim(&self, t: usize, s: usize) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &b in self.block(t, s) {
            *out.entry(self.cols[s][b].deg).or_insert(0) += 1;
        }
        out
    }

    pub fn identity(&self, s: usize) -> Matrix<F> {
        Matrix::identity(self.rep_dim(s))
    }

    /// Star of a basis element, as a faithful block of e_s A e_t.
    pub fn star_basis(&self, s: usize, b: usize) -> Matrix<F> {
        let sg = self.star_gen.as_ref().expect("algebra has no star");
        let e = &self.cols[s][b];
        match e.parent {
            None => self.identity(s),
            // (g · p)* = p* · g*
            Some((g, p)) => self.star_basis(s, p).mul(&self.gens[sg[g]].mat),
        }
    }

    /// Star of an arbitrary element of e_t A e_s.
    pub fn star(&self, t: usize, s: usize, m: &Matrix<F>) -> Matrix<F> {
        let c = self.coords(t, s, m);
        let mut out = Matrix::zeros(self.rep_dim(s), self.rep_dim(t));
        for (x, &b) in c.iter().zip(self.block(t, s)) {
            if !x.is_zero() {
                out.add_assign(&self.star_basis(s, b).scale(x));
            }
        }
        out
    }

    /// Every basic idempotent has a local endomorphism ring: degree-zero part spanned by
    /// the identity and nothing in negative degree.
    pub fn basic_endomorphisms_local(&self) -> bool {
        (0..self.n_idem()).filter(|&t| self.basic[t]).all(|t| {
            let d = self.graded_block_dim(t, t);
            d.keys().next() == Some(&0) && d[&0] == 1
        })
    }

    /// The algebra T^ℓ from its faithful representation.
    pub fn from_tensor(a: &TensorAlgebra<F>) -> Self {
        let labels = a.kappas.iter().map(|x| x.label()).collect();
        let rep_degs = a
            .rings
            .iter()
            .map(|r| (0..r.dim()).map(|j| r.internal_degree(j)).collect())
            .collect();
        let tgens = a.generators();
        let mut gens = Vec::new();
        for g in &tgens {
            let m = a.gen_block(g).unwrap();
            gens.push(AlgGen {
                src: a.idx(&g.src),
                tgt: a.idx(&g.target()),
                deg: g.degree(),
                mat: m,
                label: alloc::format!("{}", g),
            });
        }
        let star: Vec<usize> = tgens
            .iter()
            .map(|g| {
                let sg = g.star();
                tgens.iter().position(|h| *h == sg).expect("generating set closed under star")
            })
            .collect();
        let basic = a.kappas.iter().map(|x| x.is_separated()).collect();
        Alg::new(labels, rep_degs, gens, Some(star), basic)
    }

    /// The opposite algebra, realized on the dual representation by transposes.
    pub fn opposite(&self) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|g| AlgGen { src: g.tgt, tgt: g.src, deg: g.deg, mat: g.mat.transpose(), label: alloc::format!("{}op", g.label) })
            .collect();
        let rep_degs = self.rep_degs.iter().map(|d| d.iter().map(|x| -x).collect()).collect();
        Alg::new(self.labels.clone(), rep_degs, gens, None, self.basic.clone())
    }

    /// The idempotent truncation e A e for a single idempotent `p`, generated by its
    /// non-identity basis elements.
    pub fn corner(&self, p: usize) -> Self {
        let mut gens = Vec::new();
        for &b in self.block(p, p) {
            let e = &self.cols[p][b];
            if e.parent.is_none() {
                continue;
            }
            gens.push(AlgGen { src: 0, tgt: 0, deg: e.deg, mat: e.mat.clone(), label: alloc::format!("b{}", b) });
        }
        Alg::new(
            alloc::vec![self.labels[p].clone()],
            alloc::vec![self.rep_degs[p].clone()],
            gens,
            None,
            alloc::vec![true],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::{F2, Q};
    use crate::combinatorics::{cellular_dimension, Kappa};

    #[test]
    fn word_basis_dimension() {
        for (l, k) in [(2, 1), (3, 1), (2, 2), (4, 2)] {
            let t = TensorAlgebra::<Q>::new(l, k);
            let a = Alg::from_tensor(&t);
            assert_eq!(a.dim(), cellular_dimension(l, k));
        }
        let t = TensorAlgebra::<F2>::new(3, 2);
        assert_eq!(Alg::from_tensor(&t).dim(), cellular_dimension(3, 2));
    }

    #[test]
    fn star_is_anti_homomorphism() {
        let t = TensorAlgebra::<Q>::new(3, 2);
        let a = Alg::from_tensor(&t);
        for s in 0..a.n_idem() {
            for b in 0..a.cols[s].len() {
                let e = &a.cols[s][b];
                let st = a.star_basis(s, b);
                assert!(a.try_coords(s, e.tgt, &st).is_some());
                for &g in a.gens_from(e.tgt) {
                    let gm = &a.gens[g];
                    let prod = gm.mat.mul(&e.mat);
                    let lhs = a.star(gm.tgt, s, &prod);
                    let rhs = st.mul(&a.gens[a.star_gen.as_ref().unwrap()[g]].mat);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn nilhecke_corner() {
        let t = TensorAlgebra::<Q>::new(3, 1);
        let a = Alg::from_tensor(&t);
        let z = t.idx(&Kappa::zero(3, 1));
        let e = a.corner(z);
        assert_eq!(e.dim(), 3);
        let degs: Vec<i64> = e.cols[0].iter().map(|b| b.deg).collect();
        assert_eq!(degs, alloc::vec![0, 2, 4]);
    }
}
