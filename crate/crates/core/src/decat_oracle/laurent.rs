//! Laurent polynomials in q with integer coefficients.

use alloc::collections::BTreeMap;
use core::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// q + q⁻¹
    pub fn quantum_two() -> Self {
        Self::from_pairs(&[(1, 1), (-1, 1)])
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_map(m: &BTreeMap<i64, i64>) -> Self {
        let mut p = Self::zero();
        for (&e, &c) in m {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, i64> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, &c) in &o.terms {
            r.add_term(e, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut r = Self::zero();
        for (&e, &x) in &self.terms {
            r.add_term(e, x * c);
        }
        r
    }

    /// Multiply by q^s.
    pub fn shift(&self, s: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + s, c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// q ↦ q⁻¹
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// q ↦ -q
    pub fn negate_q(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e, if e.rem_euclid(2) == 1 { -c } else { c })).collect() }
    }

    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Drops every term with exponent above `cutoff`.
    pub fn truncate_above(&self, cutoff: i64) -> Self {
        Self { terms: self.terms.range(..=cutoff).map(|(&e, &c)| (e, c)).collect() }
    }

    /// Drops every term with exponent below `cutoff`.
    pub fn truncate_below(&self, cutoff: i64) -> Self {
        Self { terms: self.terms.range(cutoff..).map(|(&e, &c)| (e, c)).collect() }
    }

    /// num/den as a power series in ascending powers of q, exact in exponents ≤ cutoff.
    /// The lowest coefficient of `den` must be ±1.
    pub fn series_div_ascending(num: &Self, den: &Self, cutoff: i64) -> Self {
        let d0 = den.min_exp().expect("nonzero denominator");
        let lead = den.coeff(d0);
        assert!(lead == 1 || lead == -1, "denominator not monic");
        let mut rem = num.clone();
        let mut out = Self::zero();
        while let Some(e) = rem.min_exp() {
            let qexp = e - d0;
            if qexp > cutoff {
                break;
            }
            let c = rem.coeff(e) * lead;
            out.add_term(qexp, c);
            rem = rem.sub(&den.shift(qexp).scale(c));
        }
        out
    }

    /// num/den in descending powers of q, exact in exponents ≥ cutoff.
    pub fn series_div_descending(num: &Self, den: &Self, cutoff: i64) -> Self {
        Self::series_div_ascending(&num.bar(), &den.bar(), -cutoff).bar()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter().rev() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "q^{}", e)?,
                (_, 1) => write!(f, "{}q", a)?,
                _ => write!(f, "{}q^{}", a, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let t = LaurentPoly::quantum_two();
        assert_eq!(t.mul(&t), LaurentPoly::from_pairs(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(t.bar(), t);
        assert_eq!(alloc::format!("{}", LaurentPoly::from_pairs(&[(3, 1), (-1, -2), (0, 4)])), "q^3 + 4 - 2q^-1");
    }

    #[test]
    fn geometric_series() {
        // 1/(1+q²) = 1 - q² + q⁴ - ...
        let s = LaurentPoly::series_div_ascending(&LaurentPoly::one(), &LaurentPoly::from_pairs(&[(0, 1), (2, 1)]), 6);
        assert_eq!(s, LaurentPoly::from_pairs(&[(0, 1), (2, -1), (4, 1), (6, -1)]));
        let d = LaurentPoly::series_div_descending(&LaurentPoly::one(), &LaurentPoly::quantum_two(), -5);
        assert_eq!(d, LaurentPoly::from_pairs(&[(-1, 1), (-3, -1), (-5, 1)]));
    }
}
