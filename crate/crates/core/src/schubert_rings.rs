//! Graded quotient rings R/I_κ of the polynomial ring in the black-strand variables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff_poly::{complete_symmetric, Field, MultiPoly};
use crate::combinatorics::Kappa;
use crate::linalg::Matrix;

/// Which inequality defines the per-red generators h_p(Y_1..Y_κ(q)).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Inequality {
    /// p > q - κ(q) - 1
    Strict,
    /// p ≥ q - κ(q) - 1
    Weak,
}

/// Generators of I_κ inside k[Y_1..Y_k].
pub fn ideal_generators<F: Field>(kappa: &Kappa) -> Vec<MultiPoly<F>> {
    ideal_generators_with(kappa, Inequality::Strict)
}

pub fn ideal_generators_with<F: Field>(kappa: &Kappa, ineq: Inequality) -> Vec<MultiPoly<F>> {
    let k = kappa.k;
    let l = kappa.l();
    let mut gens = Vec::new();
    for q in 1..=l {
        let j = kappa.at(q);
        let lo = match ineq {
            Inequality::Strict => q as i64 - j as i64,
            Inequality::Weak => q as i64 - j as i64 - 1,
        }
        .max(0) as u32;
        // j consecutive complete symmetric functions generate all higher ones
        for p in lo..=lo + j as u32 {
            let h = complete_symmetric::<F>(p, j, k);
            if !h.is_zero() {
                gens.push(h);
            }
        }
    }
    if l >= k {
        for p in (l - k + 1)..=l {
            gens.push(complete_symmetric::<F>(p as u32, k, k));
        }
    } else {
        gens.push(MultiPoly::one(k));
    }
    gens
}

fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 >= cur.len() {
            if !cur.is_empty() {
                cur[pos] = left;
            }
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[pos] = a;
            rec(pos + 1, left - a, cur, out);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug)]
struct Piece<F: Field> {
    index: BTreeMap<Vec<u32>, usize>,
    /// reduced echelon rows of the ideal in this degree: (pivot, row)
    rows: Vec<(usize, Vec<F>)>,
    /// monomial index -> basis index, for standard monomials
    std: BTreeMap<usize, usize>,
}

/// R/I_κ with a monomial basis and an exact reduction map.
#[derive(Clone, Debug)]
pub struct QuotientRing<F: Field> {
    pub kappa: Kappa,
    nvars: usize,
    basis: Vec<Vec<u32>>,
    basis_deg: Vec<u32>,
    pieces: Vec<Piece<F>>,
}

impl<F: Field> QuotientRing<F> {
    pub fn build(kappa: &Kappa) -> Self {
        Self::build_with(kappa, Inequality::Strict)
    }

    pub fn build_with(kappa: &Kappa, ineq: Inequality) -> Self {
        let k = kappa.k;
        let gens = ideal_generators_with::<F>(kappa, ineq);
        let mut basis = Vec::new();
        let mut basis_deg = Vec::new();
        let mut pieces = Vec::new();
        let mut d = 0u32;
        loop {
            let monos = monomials(k, d);
            let index: BTreeMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let n = monos.len();
            let mut spanning: Vec<Vec<F>> = Vec::new();
            for g in &gens {
                let gd = g.degree().unwrap();
                if gd > d {
                    continue;
                }
                for m in monomials(k, d - gd) {
                    let prod = g.mul(&MultiPoly::monomial(m, F::one()));
                    let mut v = vec![F::zero(); n];
                    for (e, c) in prod.terms() {
                        v[index[e]] = c.clone();
                    }
                    spanning.push(v);
                }
            }
            let rows = if spanning.is_empty() {
                Vec::new()
            } else {
                let m = Matrix::from_rows(spanning.len(), n, spanning);
                let (r, piv) = m.rref();
                piv.iter().enumerate().map(|(i, &p)| (p, r.row(i).to_vec())).collect()
            };
            let pivset: Vec<usize> = rows.iter().map(|r: &(usize, Vec<F>)| r.0).collect();
            let mut std = BTreeMap::new();
            for i in 0..n {
                if !pivset.contains(&i) {
                    std.insert(i, basis.len());
                    basis.push(monos[i].clone());
                    basis_deg.push(d);
                }
            }
            let empty = std.is_empty();
            pieces.push(Piece { index, rows, std });
            if empty || k == 0 {
                break;
            }
            d += 1;
        }
        QuotientRing { kappa: kappa.clone(), nvars: k, basis, basis_deg, pieces }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Polynomial degree of basis element j.
    pub fn poly_degree(&self, j: usize) -> u32 {
        self.basis_deg[j]
    }

    /// Internal grading of basis element j: twice the polynomial degree plus Σκ.
    pub fn internal_degree(&self, j: usize) -> i64 {
        2 * self.basis_deg[j] as i64 + self.kappa.grading_offset()
    }

    pub fn basis_monomial(&self, j: usize) -> &[u32] {
        &self.basis[j]
    }

    pub fn basis_poly(&self, j: usize) -> MultiPoly<F> {
        MultiPoly::monomial(self.basis[j].clone(), F::one())
    }

    /// Graded dimensions by polynomial degree.
    pub fn graded_dims(&self) -> Vec<usize> {
        let top = self.basis_deg.iter().copied().max();
        match top {
            None => Vec::new(),
            Some(t) => (0..=t).map(|d| self.basis_deg.iter().filter(|&&x| x == d).count()).collect(),
        }
    }

    /// Coordinates of f modulo I_κ in the monomial basis.
    pub fn reduce(&self, f: &MultiPoly<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        let mut by_deg: BTreeMap<u32, Vec<(&Vec<u32>, &F)>> = BTreeMap::new();
        for (e, c) in f.terms() {
            by_deg.entry(e.iter().sum()).or_default().push((e, c));
        }
        for (d, terms) in by_deg {
            let Some(piece) = self.pieces.get(d as usize) else {
                continue;
            };
            if piece.std.is_empty() {
                continue;
            }
            let n = piece.index.len();
            let mut v = vec![F::zero(); n];
            for (e, c) in terms {
                v[piece.index[e]] = c.clone();
            }
            for (p, row) in &piece.rows {
                let f = v[*p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
            for (&mono, &b) in &piece.std {
                out[b] = v[mono].clone();
            }
        }
        out
    }

    /// The polynomial represented by a coordinate vector.
    pub fn lift(&self, coords: &[F]) -> MultiPoly<F> {
        let mut p = MultiPoly::zero(self.nvars);
        for (j, c) in coords.iter().enumerate() {
            p.add_term(self.basis[j].clone(), c.clone());
        }
        p
    }

    /// Matrix of a polynomial map from this ring to `target`, applied to each basis monomial.
    pub fn matrix_of<G>(&self, target: &QuotientRing<F>, op: G) -> Matrix<F>
    where
        G: Fn(&MultiPoly<F>) -> MultiPoly<F>,
    {
        let mut m = Matrix::zeros(target.dim(), self.dim());
        for j in 0..self.dim() {
            let img = target.reduce(&op(&self.basis_poly(j)));
            for (i, c) in img.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c);
                }
            }
        }
        m
    }
}
