//! The Grothendieck-group side: the quantum tensor power (ℂ_q²)^⊗ℓ, the vectors p_κ and
//! v_κ, the bilinear form matching graded Hom dimensions, the Kauffman-bracket Jones
//! polynomial of closed braids, and the classical Jones–Wenzl projector as a q-series.
//!
//! Conventions. x0 is the highest weight vector of ℂ_q², x1 = F x0, K x_a = q^{±1} x_a,
//! Δ(F) = F⊗K⁻¹ + 1⊗F and Δ(E) = E⊗1 + K⊗E. A tensor monomial is a bitmask whose bit
//! h-1 is set when factor h is x1.

mod laurent;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use laurent::LaurentPoly;

use crate::combinatorics::{enumerate_kappas, Kappa};

/// Graded Hom dimension in internal degree d pairs with q^(HOM_Q_SIGN·d).
pub const HOM_Q_SIGN: i64 = -1;

/// Vector of (ℂ_q²)^⊗ℓ with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QTensorVector {
    pub l: usize,
    pub coeffs: BTreeMap<u32, LaurentPoly>,
}

fn weight(bit: bool) -> i64 {
    if bit {
        -1
    } else {
        1
    }
}

impl QTensorVector {
    pub fn zero(l: usize) -> Self {
        QTensorVector { l, coeffs: BTreeMap::new() }
    }

    pub fn monomial(l: usize, mask: u32) -> Self {
        let mut v = Self::zero(l);
        v.add_term(mask, &LaurentPoly::one());
        v
    }

    pub fn highest(l: usize) -> Self {
        Self::monomial(l, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> LaurentPoly {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mask: u32, c: &LaurentPoly) {
        let e = self.coeffs.entry(mask).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.l, o.l);
        let mut r = self.clone();
        for (&m, c) in &o.coeffs {
            r.add_term(m, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&LaurentPoly::monomial(0, -1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut r = Self::zero(self.l);
        for (&m, x) in &self.coeffs {
            r.add_term(m, &x.mul(c));
        }
        r
    }

    /// Number of x1 factors, when homogeneous.
    pub fn weight_index(&self) -> Option<u32> {
        let mut it = self.coeffs.keys().map(|m| m.count_ones());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Appends a factor x0 on the right.
    pub fn append_x0(&self) -> Self {
        QTensorVector { l: self.l + 1, coeffs: self.coeffs.clone() }
    }

    pub fn apply_f(&self) -> Self {
        let mut r = Self::zero(self.l);
        for (&m, c) in &self.coeffs {
            for i in 0..self.l {
                if m & (1 << i) != 0 {
                    continue;
                }
                let e: i64 = (i + 1..self.l).map(|j| weight(m & (1 << j) != 0)).sum();
                r.add_term(m | (1 << i), &c.shift(-e));
            }
        }
        r
    }

    pub fn apply_e(&self) -> Self {
        let mut r = Self::zero(self.l);
        for (&m, c) in &self.coeffs {
            for i in 0..self.l {
                if m & (1 << i) == 0 {
                    continue;
                }
                let e: i64 = (0..i).map(|j| weight(m & (1 << j) != 0)).sum();
                r.add_term(m & !(1 << i), &c.shift(e));
            }
        }
        r
    }

    /// Inserts the invariant vector x0⊗x1 − q x1⊗x0 between factors i and i+1.
    pub fn coevaluation(&self, i: usize) -> Self {
        assert!(i <= self.l);
        let lowmask = (1u32 << i) - 1;
        let mut r = Self::zero(self.l + 2);
        for (&m, c) in &self.coeffs {
            let base = (m & lowmask) | ((m & !lowmask) << 2);
            r.add_term(base | (1 << (i + 1)), c);
            r.add_term(base | (1 << i), &c.shift(1).scale(-1));
        }
        r
    }

    /// Bilinear form with the tensor monomials orthonormal.
    pub fn pairing(&self, o: &Self) -> LaurentPoly {
        assert_eq!(self.l, o.l);
        let mut r = LaurentPoly::zero();
        for (m, c) in &self.coeffs {
            if let Some(d) = o.coeffs.get(m) {
                r = r.add(&c.mul(d));
            }
        }
        r
    }
}

impl fmt::Display for QTensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word: String = (0..self.l).map(|i| if m & (1 << i) != 0 { '1' } else { '0' }).collect();
            write!(f, "({})x{}", c, word)?;
        }
        Ok(())
    }
}

/// Scans the loading left to right: a red appends x0, a black applies F to everything so far.
pub fn vector_p(kappa: &Kappa) -> QTensorVector {
    if kappa.at_or_zero_first() > 0 {
        return QTensorVector::zero(kappa.l());
    }
    let mut v = QTensorVector::highest(0);
    for h in 1..=kappa.l() {
        v = v.append_x0();
        for _ in 0..kappa.gap(h) {
            v = v.apply_f();
        }
    }
    v
}

/// The pure tensor whose factor h is F^{gap(h)} x0; zero if some gap exceeds 1.
pub fn vector_v(kappa: &Kappa) -> QTensorVector {
    let l = kappa.l();
    if kappa.at_or_zero_first() > 0 || (1..=l).any(|h| kappa.gap(h) > 1) {
        return QTensorVector::zero(l);
    }
    let mask = (1..=l).filter(|&h| kappa.gap(h) == 1).fold(0u32, |m, h| m | (1 << (h - 1)));
    QTensorVector::monomial(l, mask)
}

/// The loading whose pure tensor is the given monomial.
pub fn kappa_of_mask(l: usize, mask: u32) -> Kappa {
    let mut vals = Vec::with_capacity(l);
    let mut c = 0;
    for h in 0..l {
        vals.push(c);
        if mask & (1 << h) != 0 {
            c += 1;
        }
    }
    Kappa::new(c, vals)
}

trait FirstGap {
    fn at_or_zero_first(&self) -> usize;
}

impl FirstGap for Kappa {
    fn at_or_zero_first(&self) -> usize {
        if self.l() == 0 {
            self.k
        } else {
            self.at(1)
        }
    }
}

pub fn pairing(u: &QTensorVector, w: &QTensorVector) -> LaurentPoly {
    u.pairing(w)
}

/// ⟨p_κ, p_κ'⟩ for every pair at (ℓ, k), keyed by the enumeration index.
pub fn pairing_table(l: usize, k: usize) -> BTreeMap<(usize, usize), LaurentPoly> {
    let ps: Vec<QTensorVector> = enumerate_kappas(l, k).iter().map(vector_p).collect();
    let mut out = BTreeMap::new();
    for (i, a) in ps.iter().enumerate() {
        for (j, b) in ps.iter().enumerate() {
            out.insert((i, j), a.pairing(b));
        }
    }
    out
}

/// Rewrites a graded dimension (internal degree -> dim) as a Laurent polynomial in the
/// pairing convention.
pub fn graded_dim_to_laurent(dims: &BTreeMap<i64, i64>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (&d, &n) in dims {
        p.add_term(HOM_Q_SIGN * d, n);
    }
    p
}

/// Coordinates of a weight-homogeneous vector in the p-basis of its weight space,
/// solved through the unitriangular transition to the v-basis.
pub fn p_coordinates(v: &QTensorVector) -> BTreeMap<Kappa, LaurentPoly> {
    let mut rem = v.clone();
    let mut out = BTreeMap::new();
    // the leading monomial of p_κ is the pointwise-smallest loading in its support
    while let Some(m) = rem.coeffs.keys().copied().min_by_key(|&m| kappa_rank(v.l, m)) {
        let c = rem.coeff(m);
        let kappa = kappa_of_mask(v.l, m);
        let p = vector_p(&kappa);
        debug_assert_eq!(p.coeff(m), LaurentPoly::one());
        rem = rem.sub(&p.scale(&c));
        out.insert(kappa, c);
    }
    out
}

fn kappa_rank(l: usize, mask: u32) -> usize {
    kappa_of_mask(l, mask).vals.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecatError {
    MalformedWord(String),
    UnsupportedClosure(String),
}

impl fmt::Display for DecatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecatError::MalformedWord(s) => write!(f, "malformed braid word: {}", s),
            DecatError::UnsupportedClosure(s) => write!(f, "unsupported closure: {}", s),
        }
    }
}

/// A braid word: letter ±i is σ_i^{±1} on strands i, i+1 (1-based), read bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, DecatError> {
        if strands == 0 {
            return Err(DecatError::MalformedWord("no strands".to_string()));
        }
        for &x in &letters {
            if x == 0 || x.unsigned_abs() as usize >= strands {
                return Err(DecatError::MalformedWord(alloc::format!("letter {} on {} strands", x, strands)));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Whitespace-separated signed integers; the strand count is the least that fits.
    pub fn parse(s: &str) -> Result<Self, DecatError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| DecatError::MalformedWord(tok.to_string()))?;
            letters.push(x);
        }
        let strands = letters.iter().map(|x| x.unsigned_abs() as usize + 1).max().unwrap_or(1);
        Self::new(strands, letters)
    }

    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|x| -x).collect() }
    }

    pub fn positive_crossings(&self) -> usize {
        self.letters.iter().filter(|&&x| x > 0).count()
    }

    pub fn negative_crossings(&self) -> usize {
        self.letters.iter().filter(|&&x| x < 0).count()
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let n = p[y];
        p[y] = r;
        y = n;
    }
    r
}

/// Circles of the trace closure when crossing c takes the horizontal smoothing iff
/// bit c of `horizontal` is set.
fn closure_circles(b: &BraidWord, horizontal: u64) -> usize {
    let n = b.strands;
    let m = b.letters.len();
    let node = |t: usize, j: usize| (t % (m.max(1))) * n + j;
    let total = m.max(1) * n;
    let mut parent: Vec<usize> = (0..total).collect();
    let union = |p: &mut Vec<usize>, a: usize, c: usize| {
        let (ra, rc) = (find(p, a), find(p, c));
        if ra != rc {
            p[ra] = rc;
        }
    };
    if m == 0 {
        return n;
    }
    for (t, &x) in b.letters.iter().enumerate() {
        let i = x.unsigned_abs() as usize - 1;
        for j in 0..n {
            if j != i && j != i + 1 {
                union(&mut parent, node(t, j), node(t + 1, j));
            }
        }
        if horizontal & (1 << t) != 0 {
            union(&mut parent, node(t, i), node(t, i + 1));
            union(&mut parent, node(t + 1, i), node(t + 1, i + 1));
        } else {
            union(&mut parent, node(t, i), node(t + 1, i));
            union(&mut parent, node(t, i + 1), node(t + 1, i + 1));
        }
    }
    (0..total).filter(|&x| find(&mut parent, x) == x).count()
}

/// Unreduced Jones polynomial of the trace closure, normalized so the unknot is q + q⁻¹,
/// as the state sum (−1)^{n−} q^{n+ − 2n−} Σ_s (−q)^{r(s)} (q + q⁻¹)^{circles(s)}.
pub fn kauffman_bracket(b: &BraidWord) -> LaurentPoly {
    let m = b.letters.len();
    assert!(m < 63, "too many crossings");
    let np = b.positive_crossings() as i64;
    let nn = b.negative_crossings() as i64;
    let circle = LaurentPoly::quantum_two();
    let mut sum = LaurentPoly::zero();
    for s in 0u64..(1u64 << m) {
        // a 1-smoothing is vertical at negative crossings and horizontal at positive ones
        let mut horizontal = 0u64;
        let mut r = 0;
        for (t, &x) in b.letters.iter().enumerate() {
            let one = s & (1 << t) != 0;
            if one {
                r += 1;
            }
            if one == (x > 0) {
                horizontal |= 1 << t;
            }
        }
        let c = closure_circles(b, horizontal);
        let sign = if r % 2 == 0 { 1 } else { -1 };
        sum = sum.add(&circle.pow(c as u32).shift(r).scale(sign));
    }
    let sign = if nn % 2 == 0 { 1 } else { -1 };
    sum.shift(np - 2 * nn).scale(sign)
}

pub fn parse_closure(s: &str) -> Result<(), DecatError> {
    if s == "trace" {
        Ok(())
    } else {
        Err(DecatError::UnsupportedClosure(s.to_string()))
    }
}

/// One weight space of the Jones–Wenzl projector: entries[r][c] is the coefficient of
/// basis[r] in the image of basis[c], as a q-series exact up to `cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JwBlock {
    pub basis: Vec<u32>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JwMatrix {
    pub l: usize,
    pub cutoff: i64,
    /// Indexed by the number of x1 factors.
    pub blocks: Vec<JwBlock>,
}

/// u_j = F^j x0^⊗ℓ, spanning the weight-j part of the top summand.
pub fn top_vector(l: usize, j: usize) -> QTensorVector {
    let mut u = QTensorVector::highest(l);
    for _ in 0..j {
        u = u.apply_f();
    }
    u
}

/// Projection onto the top summand: w ↦ (⟨u_j, w⟩ / ⟨u_j, u_j⟩) u_j, returned as the
/// numerator ⟨u_j, w⟩ and denominator ⟨u_j, u_j⟩.
pub fn jw_ratio(l: usize, w: &QTensorVector) -> (LaurentPoly, LaurentPoly) {
    let j = w.weight_index().unwrap_or(0) as usize;
    let u = top_vector(l, j);
    (u.pairing(w), u.pairing(&u))
}

pub fn jw_matrix(l: usize, cutoff: i64) -> JwMatrix {
    assert!(l >= 1 && l < 32);
    let mut blocks = Vec::new();
    for j in 0..=l {
        let basis: Vec<u32> = (0u32..(1u32 << l)).filter(|m| m.count_ones() as usize == j).collect();
        let u = top_vector(l, j);
        let den = u.pairing(&u);
        let mut entries = vec![vec![LaurentPoly::zero(); basis.len()]; basis.len()];
        for (c, &mc) in basis.iter().enumerate() {
            let num = u.coeff(mc);
            for (r, &mr) in basis.iter().enumerate() {
                let full = num.mul(&u.coeff(mr));
                entries[r][c] = LaurentPoly::series_div_ascending(&full, &den, cutoff);
            }
        }
        blocks.push(JwBlock { basis, entries });
    }
    JwMatrix { l, cutoff, blocks }
}

impl JwMatrix {
    /// Coefficient series s with JW(w) = s·u_j, for homogeneous w of weight j.
    pub fn top_coefficient(&self, w: &QTensorVector) -> LaurentPoly {
        let (num, den) = jw_ratio(self.l, w);
        if num.is_zero() {
            return num;
        }
        LaurentPoly::series_div_ascending(&num, &den, self.cutoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::separated_kappas;

    fn k(kk: usize, v: &[usize]) -> Kappa {
        Kappa::new(kk, v.to_vec())
    }

    #[test]
    fn two_strand_vectors() {
        assert_eq!(vector_p(&k(0, &[0])), QTensorVector::highest(1));
        let p00 = vector_p(&k(1, &[0, 0]));
        let p01 = vector_p(&k(1, &[0, 1]));
        assert_eq!(p00.coeff(0b10), LaurentPoly::one());
        assert_eq!(p00.coeff(0b01), LaurentPoly::monomial(-1, 1));
        assert_eq!(p01, QTensorVector::monomial(2, 0b01));
        assert_eq!(vector_v(&k(1, &[0, 1])), p01);
        assert!(vector_v(&k(1, &[1, 1])).is_zero());
        assert!(vector_p(&k(1, &[1, 1])).is_zero());
        assert!(vector_v(&k(2, &[0, 0])).is_zero());
    }

    #[test]
    fn two_strand_pairing() {
        let p00 = vector_p(&k(1, &[0, 0]));
        let p01 = vector_p(&k(1, &[0, 1]));
        assert_eq!(pairing(&p00, &p00), LaurentPoly::from_pairs(&[(0, 1), (-2, 1)]));
        assert_eq!(pairing(&p00, &p00).eval_one(), 2);
        assert_eq!(pairing(&p01, &p01).eval_one(), 1);
        assert_eq!(pairing(&p00, &p01), LaurentPoly::monomial(-1, 1));
    }

    #[test]
    fn p_to_v_is_unitriangular() {
        for l in 1..=4 {
            for kk in 0..=l {
                let seps = separated_kappas(l, kk);
                let vs: Vec<QTensorVector> = seps.iter().map(vector_v).collect();
                assert!(vs.iter().all(|v| !v.is_zero()));
                assert_eq!(seps.len(), crate::combinatorics::binomial(l, kk));
                for kappa in enumerate_kappas(l, kk) {
                    let p = vector_p(&kappa);
                    if kappa.is_separated() {
                        let m = *vector_v(&kappa).coeffs.keys().next().unwrap();
                        assert_eq!(p.coeff(m), LaurentPoly::one());
                    }
                    for &m in p.coeffs.keys() {
                        let other = kappa_of_mask(l, m);
                        assert!(kappa.pointwise_le(&other), "{:?} {:?}", kappa, other);
                    }
                }
            }
        }
    }

    #[test]
    fn p_coordinates_roundtrip() {
        for kappa in enumerate_kappas(3, 2) {
            let p = vector_p(&kappa);
            if p.is_zero() {
                continue;
            }
            let co = p_coordinates(&p);
            let mut back = QTensorVector::zero(3);
            for (kk, c) in &co {
                back = back.add(&vector_p(kk).scale(c));
            }
            assert_eq!(back, p);
        }
    }

    #[test]
    fn coevaluation_is_invariant() {
        let c = QTensorVector::highest(0).coevaluation(0);
        assert!(c.apply_f().is_zero());
        assert!(c.apply_e().is_zero());
        let v = vector_p(&k(1, &[0, 0]));
        let w = v.coevaluation(1);
        assert_eq!(w.l, 4);
        assert_eq!(w.apply_f(), v.apply_f().coevaluation(1));
    }

    #[test]
    fn unknot_and_trefoil() {
        let unknot = BraidWord::parse("").unwrap();
        assert_eq!(kauffman_bracket(&unknot), LaurentPoly::quantum_two());
        let tw = BraidWord::parse("1").unwrap();
        assert_eq!(kauffman_bracket(&tw), LaurentPoly::quantum_two());
        let tref = BraidWord::parse("1 1 1").unwrap();
        assert_eq!(kauffman_bracket(&tref), LaurentPoly::from_pairs(&[(1, 1), (3, 1), (5, 1), (9, -1)]));
        let hopf = BraidWord::parse("1 1").unwrap();
        assert_eq!(kauffman_bracket(&hopf), LaurentPoly::from_pairs(&[(0, 1), (2, 1), (4, 1), (6, 1)]));
    }

    #[test]
    fn mirror_bars() {
        for w in ["1 1 1", "1 1", "1 -2 1 -2", "1 2 1 1"] {
            let b = BraidWord::parse(w).unwrap();
            assert_eq!(kauffman_bracket(&b.mirror()), kauffman_bracket(&b).bar());
        }
    }

    #[test]
    fn braid_relations_preserve_bracket() {
        let pairs = [
            ("1 2 1", "2 1 2"),
            ("1 -1 2", "2"),
            ("-2 1 2", "1 2 -2"),
            ("1 2 1 2", "2 1 2 2"),
            ("1 3 -2", "3 1 -2"),
        ];
        for (a, b) in pairs {
            let mut x = BraidWord::parse(a).unwrap();
            let mut y = BraidWord::parse(b).unwrap();
            let n = x.strands.max(y.strands);
            x.strands = n;
            y.strands = n;
            assert_eq!(kauffman_bracket(&x), kauffman_bracket(&y), "{} vs {}", a, b);
        }
    }

    #[test]
    fn malformed_words() {
        assert!(BraidWord::parse("1 x").is_err());
        assert!(BraidWord::parse("0").is_err());
        assert!(BraidWord::new(2, vec![2]).is_err());
    }

    #[test]
    fn jw_small_cases() {
        let one = jw_matrix(1, 6);
        for b in &one.blocks {
            assert_eq!(b.entries, vec![vec![LaurentPoly::one()]]);
        }
        // on the middle weight space of two strands: 1 − e/(q + q⁻¹)
        let two = jw_matrix(2, 7);
        let mid = &two.blocks[1];
        assert_eq!(mid.basis, vec![0b01, 0b10]);
        let inv = LaurentPoly::series_div_ascending(&LaurentPoly::one(), &LaurentPoly::quantum_two(), 7);
        assert_eq!(inv, LaurentPoly::from_pairs(&[(1, 1), (3, -1), (5, 1), (7, -1)]));
        // coefficient of x1x0 in JW(x1x0): q⁻²/(1+q⁻²) = 1/(1+q²)
        assert_eq!(mid.entries[0][0], LaurentPoly::from_pairs(&[(0, 1), (2, -1), (4, 1), (6, -1)]));
    }

    #[test]
    fn jw_is_equivariant() {
        for l in 1..=4 {
            for j in 0..l {
                let (u, un) = (top_vector(l, j), top_vector(l, j + 1));
                let (d, dn) = (u.pairing(&u), un.pairing(&un));
                for mask in (0u32..(1 << l)).filter(|m| m.count_ones() as usize == j) {
                    let w = QTensorVector::monomial(l, mask);
                    // F∘P = P∘F on w
                    assert_eq!(u.pairing(&w).mul(&dn), un.pairing(&w.apply_f()).mul(&d));
                }
                for mask in (0u32..(1 << l)).filter(|m| m.count_ones() as usize == j + 1) {
                    let w = QTensorVector::monomial(l, mask);
                    // E u_{j+1} is proportional to u_j; compare E∘P and P∘E on w
                    let eu = un.apply_e();
                    let mj = *u.coeffs.keys().next().unwrap();
                    let (c, a) = (eu.coeff(mj), u.coeff(mj));
                    assert_eq!(eu.scale(&a), u.scale(&c));
                    assert_eq!(un.pairing(&w).mul(&c).mul(&d), u.pairing(&w.apply_e()).mul(&dn).mul(&a));
                }
            }
        }
    }
}
