//! Sparse multivariate polynomials in Y_1..Y_k.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::Field;

pub type Exponent = Vec<u32>;

/// A polynomial in a fixed number of variables, stored as exponent vector -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable Y_i, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(exp: Exponent, c: F) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u32]) -> F {
        self.terms.get(exp).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, exp: Exponent, c: F) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        if s.is_zero() {
            return r;
        }
        for (e, c) in &self.terms {
            r.terms.insert(e.clone(), c.mul(s));
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Multiply by the monomial Y_i^n (1-based i).
    pub fn mul_var(&self, i: usize, n: u32) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i - 1] += n;
            r.terms.insert(e, c.clone());
        }
        r
    }

    /// Swap Y_i and Y_{i+1} (1-based).
    pub fn swap_vars(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i - 1, i);
            r.terms.insert(e, c.clone());
        }
        r
    }

    /// Rename variables: Y_j becomes Y_{map[j-1]} in a ring with `nvars` variables.
    pub fn relabel(&self, nvars: usize, map: &[usize]) -> Self {
        let mut r = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (j, &x) in e.iter().enumerate() {
                ne[map[j] - 1] += x;
            }
            r.add_term(ne, c.clone());
        }
        r
    }
}

/// Complete homogeneous symmetric polynomial h_p(Y_1..Y_j) inside k variables.
pub fn complete_symmetric<F: Field>(p: u32, j: usize, k: usize) -> MultiPoly<F> {
    assert!(j <= k);
    let mut r = MultiPoly::zero(k);
    if p == 0 {
        return MultiPoly::one(k);
    }
    if j == 0 {
        return r;
    }
    let mut exp = vec![0u32; k];
    fn rec<F: Field>(pos: usize, j: usize, left: u32, exp: &mut Vec<u32>, out: &mut MultiPoly<F>) {
        if pos + 1 == j {
            exp[pos] = left;
            out.add_term(exp.clone(), F::one());
            exp[pos] = 0;
            return;
        }
        for a in 0..=left {
            exp[pos] = a;
            rec(pos + 1, j, left - a, exp, out);
        }
        exp[pos] = 0;
    }
    rec(0, j, p, &mut exp, &mut r);
    r
}

/// Elementary symmetric polynomial e_p in the named variables (1-based indices).
pub fn elementary_symmetric<F: Field>(p: usize, vars: &[usize], k: usize) -> MultiPoly<F> {
    let mut r = MultiPoly::zero(k);
    if p == 0 {
        return MultiPoly::one(k);
    }
    if p > vars.len() {
        return r;
    }
    // iterate subsets of size p via bitmask; variable lists here are tiny
    let n = vars.len();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let mut e = vec![0u32; k];
        for (b, &v) in vars.iter().enumerate() {
            if mask >> b & 1 == 1 {
                e[v - 1] += 1;
            }
        }
        r.add_term(e, F::one());
    }
    r
}

/// Divided difference (f - s_i f) / (Y_{i+1} - Y_i).
pub fn demazure<F: Field>(i: usize, f: &MultiPoly<F>) -> MultiPoly<F> {
    let k = f.nvars();
    assert!(i >= 1 && i < k, "demazure index out of range");
    let mut r = MultiPoly::zero(k);
    // Termwise: for Y_i^a Y_{i+1}^b, (m - s m)/(Y_{i+1}-Y_i).
    // If a > b: -(Y_i^{a-1} Y_{i+1}^b + ... + Y_i^b Y_{i+1}^{a-1}) times the rest.
    // If a < b: the negative of the swapped case.
    for (e, c) in f.terms() {
        let a = e[i - 1];
        let b = e[i];
        if a == b {
            continue;
        }
        let (hi, lo, sign) = if a > b { (a, b, c.neg()) } else { (b, a, c.clone()) };
        for t in 0..(hi - lo) {
            let mut ne = e.clone();
            ne[i - 1] = hi - 1 - t;
            ne[i] = lo + t;
            r.add_term(ne, sign.clone());
        }
    }
    r
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !c.is_one() {
                write!(f, "{}", c)?;
            }
            for (j, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "Y{}", j + 1)?,
                    _ => write!(f, "Y{}^{}", j + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::field::{F2, Q};

    type P = MultiPoly<Q>;

    fn y(k: usize, i: usize) -> P {
        P::var(k, i)
    }

    #[test]
    fn complete_examples() {
        assert_eq!(complete_symmetric::<Q>(2, 1, 2), y(2, 1).pow(2));
        assert_eq!(complete_symmetric::<Q>(0, 3, 3), P::one(3));
        let expect = y(2, 1).pow(2).add(&y(2, 1).mul(&y(2, 2))).add(&y(2, 2).pow(2));
        assert_eq!(complete_symmetric::<Q>(2, 2, 2), expect);
        assert!(complete_symmetric::<Q>(3, 0, 2).is_zero());
    }

    // brute force: sum of all monomials of degree p in the first j variables
    fn h_brute(p: u32, j: usize, k: usize) -> P {
        let mut r = P::zero(k);
        let bound = (p + 1) as usize;
        let total = bound.pow(j as u32);
        for code in 0..total {
            let mut e = vec![0u32; k];
            let mut c = code;
            for slot in e.iter_mut().take(j) {
                *slot = (c % bound) as u32;
                c /= bound;
            }
            if e.iter().sum::<u32>() == p {
                r.add_term(e, Q::one());
            }
        }
        if p == 0 {
            return P::one(k);
        }
        r
    }

    #[test]
    fn complete_matches_brute_force() {
        for k in 1..=4 {
            for j in 0..=k {
                for p in 0..=4 {
                    assert_eq!(complete_symmetric::<Q>(p, j, k), h_brute(p, j, k), "p={p} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_symmetric::<Q>(1, &[2], 2), y(2, 2));
        assert_eq!(elementary_symmetric::<Q>(2, &[2, 3], 3), y(3, 2).mul(&y(3, 3)));
        assert!(elementary_symmetric::<Q>(2, &[2], 2).is_zero());
    }

    // h_p(Y_1..Y_j) = sum_a (-1)^a e_a(Y_{j+1}..Y_m) h_{p-a}(Y_1..Y_m)
    #[test]
    fn inclusion_exclusion_identity() {
        let k = 4;
        for m in 1..=4usize {
            for j in 0..m {
                for p in 0..=4u32 {
                    let lhs = complete_symmetric::<Q>(p, j, k);
                    let extra: Vec<usize> = (j + 1..=m).collect();
                    let mut rhs = P::zero(k);
                    for a in 0..=p.min(extra.len() as u32) {
                        let term = elementary_symmetric::<Q>(a as usize, &extra, k)
                            .mul(&complete_symmetric::<Q>(p - a, m, k));
                        rhs = if a % 2 == 0 { rhs.add(&term) } else { rhs.sub(&term) };
                    }
                    assert_eq!(lhs, rhs, "p={p} j={j} m={m}");
                }
            }
        }
    }

    #[test]
    fn demazure_examples() {
        assert!(demazure(1, &P::one(2)).is_zero());
        assert_eq!(demazure(1, &y(2, 1)), P::constant(2, Q::from_i64(-1)));
        assert_eq!(demazure(1, &y(2, 1).pow(2)), y(2, 1).add(&y(2, 2)).neg());
        assert_eq!(demazure(1, &y(2, 2)), P::one(2));
    }

    #[test]
    fn demazure_is_divided_difference() {
        let k = 3;
        let f = y(k, 1).pow(3).mul(&y(k, 2)).add(&y(k, 2).pow(2).mul(&y(k, 3))).sub(&y(k, 1).scale(&Q::from_i64(5)));
        for i in 1..k {
            let d = demazure(i, &f);
            let lhs = d.mul(&y(k, i + 1).sub(&y(k, i)));
            assert_eq!(lhs, f.sub(&f.swap_vars(i)));
            assert!(demazure(i, &d).is_zero());
        }
    }

    #[test]
    fn demazure_over_f2() {
        let f = MultiPoly::<F2>::var(2, 1).pow(2);
        let d = demazure(1, &f);
        assert_eq!(d, MultiPoly::<F2>::var(2, 1).add(&MultiPoly::<F2>::var(2, 2)));
    }

    #[test]
    fn display() {
        let f = y(2, 1).pow(2).sub(&P::one(2));
        assert_eq!(f.to_string(), "Y1^2 + -1");
    }
}
