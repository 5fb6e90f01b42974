//! Exact coefficient fields: rationals and small prime fields.

use alloc::string::{String, ToString};
use core::fmt;
use core::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A field with exact arithmetic. Implemented by [`Q`] and [`Fp`].
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short name used on the command line and in output metadata.
    const NAME: &'static str;
    const CHARACTERISTIC: u64;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self = self.add(&a.mul(b));
        }
    }
    /// Integer value when the element is (the image of) a small integer.
    fn to_i64(&self) -> Option<i64>;
}

/// Exact rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(n: i64, d: i64) -> Q {
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Q {
    const NAME: &'static str = "q";
    const CHARACTERISTIC: u64 = 0;

    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn to_i64(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        let n = self.0.numer();
        if n.abs() > BigInt::from(i64::MAX) {
            return None;
        }
        n.to_string().parse().ok()
    }
}

/// Integers modulo a prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u32>(u32);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

impl<const P: u32> Fp<P> {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const fn prime_name(p: u32) -> &'static str {
    match p {
        2 => "2",
        3 => "3",
        5 => "5",
        7 => "7",
        _ => "p",
    }
}

impl<const P: u32> Field for Fp<P> {
    const NAME: &'static str = prime_name(P);
    const CHARACTERISTIC: u64 = P as u64;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u32)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + other.0 as u64) % P as u64) as u32)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - other.0 as u64) % P as u64) as u32)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let mut base = self.0 as u64;
        let mut e = P as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            e >>= 1;
        }
        Fp(acc as u32)
    }
    fn to_i64(&self) -> Option<i64> {
        Some(self.0 as i64)
    }
}

/// Parse a field name as accepted on the command line.
pub fn field_name_ok(name: &str) -> bool {
    matches!(name, "q" | "2" | "3")
}

pub fn describe<F: Field>() -> String {
    match F::CHARACTERISTIC {
        0 => "Q".to_string(),
        p => alloc::format!("F{}", p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms<F: Field>(xs: &[F]) {
        for a in xs {
            assert_eq!(a.add(&F::zero()), *a);
            assert_eq!(a.mul(&F::one()), *a);
            assert!(a.add(&a.neg()).is_zero());
            if !a.is_zero() {
                assert!(a.mul(&a.inv()).is_one());
            }
            for b in xs {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for c in xs {
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
                }
            }
        }
    }

    #[test]
    fn rationals() {
        let xs: alloc::vec::Vec<Q> = [(1, 2), (-3, 4), (0, 1), (5, 1), (7, 3)]
            .iter()
            .map(|&(n, d)| Q::new(n, d))
            .collect();
        axioms(&xs);
        assert_eq!(Q::new(6, 4).to_string(), "3/2");
        assert_eq!(Q::from_i64(-7).to_i64(), Some(-7));
    }

    #[test]
    fn prime_fields() {
        let xs: alloc::vec::Vec<F3> = (0..3).map(F3::from_i64).collect();
        axioms(&xs);
        let ys: alloc::vec::Vec<F2> = (0..2).map(F2::from_i64).collect();
        axioms(&ys);
        assert_eq!(F3::from_i64(-1), F3::from_i64(2));
        assert!(F2::from_i64(2).is_zero());
        assert_eq!(Fp::<7>::from_i64(3).inv(), Fp::<7>::from_i64(5));
    }
}
