//! Finite-dimensional graded left modules over an [`Alg`], stored by idempotent pieces.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::alg::Alg;
use crate::coeff_poly::Field;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule<F: Field> {
    /// Degree of each basis vector of e_i M.
    pub degs: Vec<Vec<i64>>,
    /// Action of each algebra generator, dim(e_tgt M) x dim(e_src M).
    pub act: Vec<Matrix<F>>,
}

/// A homogeneous subspace of every piece e_i M, kept in reduced echelon form per degree.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F: Field> {
    /// per idempotent: degree -> (ambient indices of that degree, reduced rows over those indices, pivot columns)
    pieces: Vec<BTreeMap<i64, (Vec<usize>, Vec<Vec<F>>, Vec<usize>)>>,
    ambient: Vec<usize>,
}

pub fn indices_by_degree(degs: &[i64]) -> BTreeMap<i64, Vec<usize>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (j, &d) in degs.iter().enumerate() {
        out.entry(d).or_default().push(j);
    }
    out
}

/// Degree of a vector in a piece with the given basis degrees.
pub fn vector_degree<F: Field>(degs: &[i64], v: &[F]) -> Option<i64> {
    let mut deg = None;
    for (x, &d) in v.iter().zip(degs) {
        if x.is_zero() {
            continue;
        }
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    deg
}

impl<F: Field> GradedSubspace<F> {
    /// Span of the given vectors; every vector must be homogeneous.
    pub fn span(degs: &[Vec<i64>], vecs: &[(usize, Vec<F>)]) -> Self {
        let mut by: Vec<BTreeMap<i64, Vec<Vec<F>>>> = vec![BTreeMap::new(); degs.len()];
        for (i, v) in vecs {
            if let Some(d) = vector_degree(&degs[*i], v) {
                by[*i].entry(d).or_default().push(v.clone());
            } else {
                assert!(v.iter().all(|x| x.is_zero()), "inhomogeneous vector");
            }
        }
        let mut pieces = Vec::new();
        for (i, m) in by.into_iter().enumerate() {
            let idx = indices_by_degree(&degs[i]);
            let mut piece = BTreeMap::new();
            for (d, vs) in m {
                let ix = idx[&d].clone();
                let rows: Vec<Vec<F>> = vs.iter().map(|v| ix.iter().map(|&j| v[j].clone()).collect()).collect();
                let mat = Matrix::from_rows(rows.len(), ix.len(), rows);
                let (r, piv) = mat.rref();
                let red: Vec<Vec<F>> = (0..piv.len()).map(|j| r.row(j).to_vec()).collect();
                if !piv.is_empty() {
                    piece.insert(d, (ix, red, piv));
                }
            }
            pieces.push(piece);
        }
        GradedSubspace { pieces, ambient: degs.iter().map(|d| d.len()).collect() }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.pieces[i].values().map(|p| p.1.len()).sum()
    }

    pub fn total_dim(&self) -> usize {
        (0..self.pieces.len()).map(|i| self.dim(i)).sum()
    }

    /// Residue of `v` after clearing pivot coordinates.
    pub fn reduce(&self, i: usize, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (ix, rows, piv) in self.pieces[i].values() {
            for (row, &p) in rows.iter().zip(piv) {
                let c = out[ix[p]].clone();
                if c.is_zero() {
                    continue;
                }
                for (x, &j) in row.iter().zip(ix) {
                    if !x.is_zero() {
                        out[j] = out[j].sub(&c.mul(x));
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, i: usize, v: &[F]) -> bool {
        self.reduce(i, v).iter().all(|x| x.is_zero())
    }

    /// Basis of the subspace in piece i, as ambient vectors with degrees.
    pub fn basis(&self, i: usize) -> Vec<(i64, Vec<F>)> {
        let mut out = Vec::new();
        for (&d, (ix, rows, _)) in &self.pieces[i] {
            for row in rows {
                let mut v = vec![F::zero(); self.ambient[i]];
                for (x, &j) in row.iter().zip(ix) {
                    v[j] = x.clone();
                }
                out.push((d, v));
            }
        }
        out
    }

    /// Coordinates of a vector known to lie in the subspace, in the order of [`Self::basis`].
    pub fn coords(&self, i: usize, v: &[F]) -> Vec<F> {
        let mut out = Vec::new();
        for (ix, _, piv) in self.pieces[i].values() {
            for &p in piv {
                out.push(v[ix[p]].clone());
            }
        }
        out
    }

    /// Ambient indices not hit by a pivot; a complement basis.
    pub fn complement(&self, i: usize) -> Vec<usize> {
        let mut hit = vec![false; self.ambient[i]];
        for (ix, _, piv) in self.pieces[i].values() {
            for &p in piv {
                hit[ix[p]] = true;
            }
        }
        (0..self.ambient[i]).filter(|&j| !hit[j]).collect()
    }
}

impl<F: Field> GradedModule<F> {
    pub fn zero(alg: &Alg<F>) -> Self {
        GradedModule {
            degs: vec![Vec::new(); alg.n_idem()],
            act: alg.gens.iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.degs[i].len()
    }

    pub fn total_dim(&self) -> usize {
        self.degs.iter().map(|d| d.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Graded dimension of each piece.
    pub fn graded_dims(&self) -> Vec<BTreeMap<i64, usize>> {
        self.degs
            .iter()
            .map(|d| {
                let mut m = BTreeMap::new();
                for &x in d {
                    *m.entry(x).or_insert(0) += 1;
                }
                m
            })
            .collect()
    }

    /// Internal degree shift: every basis vector moves up by `s`.
    pub fn shifted(&self, s: i64) -> Self {
        GradedModule { degs: self.degs.iter().map(|d| d.iter().map(|x| x + s).collect()).collect(), act: self.act.clone() }
    }

    /// The projective A e_s with generator in degree `shift`.
    pub fn projective(alg: &Alg<F>, s: usize, shift: i64) -> Self {
        let n = alg.n_idem();
        let degs: Vec<Vec<i64>> =
            (0..n).map(|t| alg.block(t, s).iter().map(|&b| alg.cols[s][b].deg + shift).collect()).collect();
        let act = alg
            .gens
            .iter()
            .enumerate()
            .map(|(gi, g)| match alg.proj_action(s, gi) {
                Some(m) => m.clone(),
                None => Matrix::zeros(degs[g.tgt].len(), degs[g.src].len()),
            })
            .collect();
        GradedModule { degs, act }
    }

    /// Images β·v of `v ∈ e_s M` under every basis element β of A e_s, indexed like `alg.cols[s]`.
    pub fn word_images(&self, alg: &Alg<F>, s: usize, v: &[F]) -> Vec<Vec<F>> {
        let mut out: Vec<Vec<F>> = Vec::with_capacity(alg.cols[s].len());
        for e in &alg.cols[s] {
            let img = match e.parent {
                None => v.to_vec(),
                Some((g, p)) => self.act[g].mul_vec(&out[p]),
            };
            out.push(img);
        }
        out
    }

    /// Action of an arbitrary element a ∈ e_t A e_s on v ∈ e_s M.
    pub fn act_elem(&self, alg: &Alg<F>, t: usize, s: usize, a: &Matrix<F>, v: &[F]) -> Vec<F> {
        let c = alg.coords(t, s, a);
        let imgs = self.word_images(alg, s, v);
        let mut out = vec![F::zero(); self.dim(t)];
        for (x, &b) in c.iter().zip(alg.block(t, s)) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(&imgs[b]) {
                if !y.is_zero() {
                    o.add_assign(&x.mul(y));
                }
            }
        }
        out
    }

    /// The submodule generated by homogeneous vectors.
    pub fn generated(&self, alg: &Alg<F>, gens: &[(usize, Vec<F>)]) -> GradedSubspace<F> {
        let mut all = Vec::new();
        for (s, v) in gens {
            for (b, img) in self.word_images(alg, *s, v).into_iter().enumerate() {
                all.push((alg.cols[*s][b].tgt, img));
            }
        }
        GradedSubspace::span(&self.degs, &all)
    }

    /// Checks that a subspace is closed under every generator.
    pub fn is_submodule(&self, alg: &Alg<F>, sub: &GradedSubspace<F>) -> bool {
        for (gi, g) in alg.gens.iter().enumerate() {
            for (_, v) in sub.basis(g.src) {
                if !sub.contains(g.tgt, &self.act[gi].mul_vec(&v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Submodule as a module in its own right, with inclusion matrices per idempotent.
    pub fn submodule(&self, alg: &Alg<F>, sub: &GradedSubspace<F>) -> (Self, Vec<Matrix<F>>) {
        let n = alg.n_idem();
        let bases: Vec<Vec<(i64, Vec<F>)>> = (0..n).map(|i| sub.basis(i)).collect();
        let degs = bases.iter().map(|b| b.iter().map(|x| x.0).collect()).collect();
        let incl: Vec<Matrix<F>> = (0..n)
            .map(|i| {
                let cols: Vec<Vec<F>> = bases[i].iter().map(|x| x.1.clone()).collect();
                Matrix::from_cols(self.dim(i), &cols)
            })
            .collect();
        let act = alg
            .gens
            .iter()
            .enumerate()
            .map(|(gi, g)| {
                let cols: Vec<Vec<F>> =
                    bases[g.src].iter().map(|(_, v)| sub.coords(g.tgt, &self.act[gi].mul_vec(v))).collect();
                Matrix::from_cols(bases[g.tgt].len(), &cols)
            })
            .collect();
        (GradedModule { degs, act }, incl)
    }

    /// Quotient M / sub with projection matrices per idempotent.
    pub fn quotient(&self, alg: &Alg<F>, sub: &GradedSubspace<F>) -> (Self, Vec<Matrix<F>>) {
        let n = alg.n_idem();
        let keep: Vec<Vec<usize>> = (0..n).map(|i| sub.complement(i)).collect();
        let degs: Vec<Vec<i64>> = (0..n).map(|i| keep[i].iter().map(|&j| self.degs[i][j]).collect()).collect();
        let proj: Vec<Matrix<F>> = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(keep[i].len(), self.dim(i));
                for j in 0..self.dim(i) {
                    let mut e = vec![F::zero(); self.dim(i)];
                    e[j] = F::one();
                    let r = sub.reduce(i, &e);
                    for (a, &q) in keep[i].iter().enumerate() {
                        if !r[q].is_zero() {
                            m.set(a, j, r[q].clone());
                        }
                    }
                }
                m
            })
            .collect();
        let act = alg
            .gens
            .iter()
            .enumerate()
            .map(|(gi, g)| {
                let mut m = Matrix::zeros(keep[g.tgt].len(), keep[g.src].len());
                for (c, &j) in keep[g.src].iter().enumerate() {
                    let img = proj[g.tgt].mul_vec(&self.act[gi].col(j));
                    for (r, x) in img.into_iter().enumerate() {
                        if !x.is_zero() {
                            m.set(r, c, x);
                        }
                    }
                }
                m
            })
            .collect();
        (GradedModule { degs, act }, proj)
    }

    /// Kernel of a degree-preserving module map given by matrices per idempotent.
    pub fn kernel_of(&self, maps: &[Matrix<F>], target_degs: &[Vec<i64>]) -> GradedSubspace<F> {
        let mut vecs = Vec::new();
        for (i, m) in maps.iter().enumerate() {
            let tgt = indices_by_degree(&target_degs[i]);
            for (d, ix) in indices_by_degree(&self.degs[i]) {
                let rows: Vec<usize> = tgt.get(&d).cloned().unwrap_or_default();
                let sub = m.submatrix(&rows, &ix);
                for k in sub.kernel() {
                    let mut v = vec![F::zero(); self.dim(i)];
                    for (x, &j) in k.into_iter().zip(&ix) {
                        v[j] = x;
                    }
                    vecs.push((i, v));
                }
            }
        }
        GradedSubspace::span(&self.degs, &vecs)
    }

    /// Checks that maps per idempotent intertwine the actions of all generators.
    pub fn is_module_map(&self, alg: &Alg<F>, other: &Self, maps: &[Matrix<F>]) -> bool {
        alg.gens
            .iter()
            .enumerate()
            .all(|(gi, g)| maps[g.tgt].mul(&self.act[gi]) == other.act[gi].mul(&maps[g.src]))
    }

    /// Checks the module axioms against the faithful relations: every product g·β that the
    /// algebra expresses in its basis acts the same way.
    pub fn is_module(&self, alg: &Alg<F>) -> bool {
        for s in 0..alg.n_idem() {
            let n = self.dim(s);
            if n == 0 {
                continue;
            }
            // images of the full piece e_s M under each basis element
            let mut imgs: Vec<Matrix<F>> = Vec::new();
            for e in &alg.cols[s] {
                let m = match e.parent {
                    None => Matrix::identity(n),
                    Some((g, p)) => self.act[g].mul(&imgs[p]),
                };
                imgs.push(m);
            }
            for (b, e) in alg.cols[s].iter().enumerate() {
                for &gi in alg.gens_from(e.tgt) {
                    let g = &alg.gens[gi];
                    let prod = g.mat.mul(&e.mat);
                    let c = alg.coords(g.tgt, s, &prod);
                    let mut lhs = Matrix::zeros(self.dim(g.tgt), n);
                    for (x, &bb) in c.iter().zip(alg.block(g.tgt, s)) {
                        if !x.is_zero() {
                            lhs.add_assign(&imgs[bb].scale(x));
                        }
                    }
                    if lhs != self.act[gi].mul(&imgs[b]) {
                        return false;
                    }
                }
            }
        }
        // idempotents with no algebra must act by zero
        (0..alg.n_idem()).all(|s| alg.rep_dim(s) > 0 || self.dim(s) == 0)
    }

    /// Direct sum of modules.
    pub fn direct_sum(parts: &[Self], alg: &Alg<F>) -> Self {
        let n = alg.n_idem();
        let degs: Vec<Vec<i64>> = (0..n).map(|i| parts.iter().flat_map(|p| p.degs[i].clone()).collect()).collect();
        let act = alg
            .gens
            .iter()
            .enumerate()
            .map(|(gi, g)| {
                let mut m = Matrix::zeros(degs[g.tgt].len(), degs[g.src].len());
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    m.put(r0, c0, &p.act[gi]);
                    r0 += p.dim(g.tgt);
                    c0 += p.dim(g.src);
                }
                m
            })
            .collect();
        GradedModule { degs, act }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::Q;
    use crate::tensor_algebra::TensorAlgebra;

    #[test]
    fn projectives_are_modules() {
        let a = Alg::from_tensor(&TensorAlgebra::<Q>::new(2, 2));
        for s in 0..a.n_idem() {
            let p = GradedModule::projective(&a, s, 0);
            assert!(p.is_module(&a));
            assert_eq!(p.total_dim(), a.cols[s].len());
        }
    }

    #[test]
    fn radical_quotient() {
        let a = Alg::from_tensor(&TensorAlgebra::<Q>::new(2, 1));
        let p = GradedModule::projective(&a, 0, 0);
        let mut gens = Vec::new();
        for t in 0..a.n_idem() {
            for (j, &d) in p.degs[t].iter().enumerate() {
                if d > 0 {
                    let mut v = vec![Q::zero(); p.dim(t)];
                    v[j] = Q::one();
                    gens.push((t, v));
                }
            }
        }
        let sub = p.generated(&a, &gens);
        assert!(p.is_submodule(&a, &sub));
        let (q, proj) = p.quotient(&a, &sub);
        assert!(q.is_module(&a));
        assert!(p.is_module_map(&a, &q, &proj));
    }
}
