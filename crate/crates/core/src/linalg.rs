//! Dense exact matrices and incremental row echelon forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff_poly::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<F>>) -> Self {
        assert_eq!(entries.len(), rows);
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&x| F::from_i64(x)).collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(t, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![F::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    o.add_mul(self.get(i, j), x);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                o.add_mul(x, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = a.add(b);
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.neg()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Copy `block` into self with its top-left corner at (r0, c0).
    pub fn put(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.put(0, 0, self);
        out.put(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.put(0, 0, self);
        out.put(self.rows, 0, other);
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(m.get(r, j));
                    if !sub.is_zero() {
                        let v = m.get(i, j).sub(&sub);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space {v : A v = 0}.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = m.get(r, free).neg();
            }
            out.push(v);
        }
        out
    }

    /// Some x with A x = b, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Some X with A X = B, if one exists.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let (m, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, m.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_matrix(&Self::identity(self.rows))?;
        if self.mul(&x) == Self::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    /// If self = c * Id for some scalar c, return c.
    pub fn scalar_value(&self) -> Option<F> {
        if self.rows != self.cols {
            return None;
        }
        let c = if self.rows == 0 { F::one() } else { self.get(0, 0).clone() };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let want = if r == k { &c } else { &F::zero() };
                if self.get(r, k) != want {
                    return None;
                }
            }
        }
        Some(c)
    }
}

/// Incrementally maintained echelon basis of a subspace of F^n that tracks,
/// for every stored row, its expression in terms of the vectors accepted so far.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    dim: usize,
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
    accepted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), accepted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.0)
    }

    /// Residue of v after elimination, and the combination of accepted vectors subtracted.
    pub fn reduce(&self, v: &[F]) -> (Vec<F>, Vec<F>) {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut combo = vec![F::zero(); self.accepted];
        for (p, row, rc) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                if !y.is_zero() {
                    x.add_mul(&f, y);
                }
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Coordinates of v in terms of the accepted vectors, when v lies in the span.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        let (res, combo) = self.reduce(v);
        if res.iter().all(|x| x.is_zero()) {
            Some(combo)
        } else {
            None
        }
    }

    /// Add v if independent; returns its index among accepted vectors.
    pub fn insert(&mut self, v: &[F]) -> Option<usize> {
        let (res, combo) = self.reduce(v);
        let p = res.iter().position(|x| !x.is_zero())?;
        let inv = res[p].inv();
        let row: Vec<F> = res.iter().map(|x| x.mul(&inv)).collect();
        // row = (v - Σ combo_j a_j) * inv
        let idx = self.accepted;
        self.accepted += 1;
        for r in self.rows.iter_mut() {
            r.2.push(F::zero());
        }
        let mut rc: Vec<F> = combo.iter().map(|c| c.neg().mul(&inv)).collect();
        rc.push(inv);
        self.rows.push((p, row, rc));
        Some(idx)
    }
}

/// Basis of the column space of the given vectors: returns indices of a maximal independent subset.
pub fn independent_subset<F: Field>(dim: usize, vecs: &[Vec<F>]) -> Vec<usize> {
    let mut e = Echelon::new(dim);
    let mut out = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        if e.insert(v).is_some() {
            out.push(i);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::{F2, Q};

    fn m(r: usize, c: usize, xs: &[i64]) -> Matrix<Q> {
        Matrix::from_i64(r, c, xs)
    }

    #[test]
    fn product_and_identity() {
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = m(3, 2, &[1, 0, 0, 1, 1, 1]);
        assert_eq!(a.mul(&b), m(2, 2, &[4, 5, 10, 11]));
        assert_eq!(Matrix::identity(2).mul(&a), a);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn rank_kernel_solve() {
        let a = m(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
        let b: Vec<Q> = [5, 10, 2].iter().map(|&x| Q::from_i64(x)).collect();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let bad: Vec<Q> = [5, 11, 2].iter().map(|&x| Q::from_i64(x)).collect();
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn inverse() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let f: Matrix<F2> = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert_eq!(f.rank(), 1);
    }

    #[test]
    fn echelon_coordinates() {
        let vs: Vec<Vec<Q>> = [[1, 1, 0], [0, 1, 1], [1, 2, 1], [1, 0, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_i64(x)).collect())
            .collect();
        let mut e = Echelon::new(3);
        assert_eq!(e.insert(&vs[0]), Some(0));
        assert_eq!(e.insert(&vs[1]), Some(1));
        assert_eq!(e.insert(&vs[2]), None);
        let c = e.coords(&vs[2]).unwrap();
        assert_eq!(c, vec![Q::one(), Q::one()]);
        assert!(e.coords(&vs[3]).is_none());
        assert_eq!(e.insert(&vs[3]), Some(2));
        let target: Vec<Q> = [3, -1, 7].iter().map(|&x| Q::from_i64(x)).collect();
        let c = e.coords(&target).unwrap();
        let mut recon = vec![Q::zero(); 3];
        for (j, idx) in [0usize, 1, 3].iter().enumerate() {
            for t in 0..3 {
                recon[t].add_mul(&c[j], &vs[*idx][t]);
            }
        }
        assert_eq!(recon, target);
    }
}
