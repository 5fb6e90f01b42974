//! Bounded complexes of graded projectives P_i⟨s⟩ with differentials given by right
//! multiplication.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::alg::Alg;
use crate::coeff_poly::Field;
use crate::linalg::Matrix;

/// The projective A e_idem with its generator in internal degree `shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub idem: usize,
    pub shift: i64,
}

/// Map (h, q) -> rank.
pub type BigradedTable = BTreeMap<(i64, i64), usize>;

/// Laurent polynomial as exponent -> coefficient.
pub type Laurent = BTreeMap<i64, i64>;

/// Cohomological complex of projectives.
///
/// `diffs[h][(a, b)]` is the element x ∈ e_a A e_b through which the summand a at
/// degree h maps to summand b at degree h+1 (e_a ↦ x). Following a path multiplies
/// these elements left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjComplex<F: Field> {
    pub terms: BTreeMap<i64, Vec<Summand>>,
    pub diffs: BTreeMap<i64, BTreeMap<(usize, usize), Matrix<F>>>,
}

impl<F: Field> Default for ProjComplex<F> {
    fn default() -> Self {
        ProjComplex { terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }
}

impl<F: Field> ProjComplex<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(idem: usize, h: i64, shift: i64) -> Self {
        let mut c = Self::zero();
        c.terms.insert(h, alloc::vec![Summand { idem, shift }]);
        c
    }

    pub fn term(&self, h: i64) -> &[Summand] {
        self.terms.get(&h).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn entry(&self, h: i64, a: usize, b: usize) -> Option<&Matrix<F>> {
        self.diffs.get(&h).and_then(|d| d.get(&(a, b)))
    }

    pub fn set_entry(&mut self, h: i64, a: usize, b: usize, x: Matrix<F>) {
        if x.is_zero() {
            if let Some(d) = self.diffs.get_mut(&h) {
                d.remove(&(a, b));
            }
        } else {
            self.diffs.entry(h).or_default().insert((a, b), x);
        }
    }

    pub fn num_summands(&self) -> usize {
        self.terms.values().map(|v| v.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.num_summands() == 0
    }

    /// Drop empty degrees.
    pub fn tidy(&mut self) {
        self.terms.retain(|_, v| !v.is_empty());
        self.diffs.retain(|_, d| {
            d.retain(|_, x| !x.is_zero());
            !d.is_empty()
        });
    }

    /// The brutal truncation keeping homological degrees ≥ m.
    pub fn truncate_below(&self, m: i64) -> Self {
        ProjComplex {
            terms: self.terms.range(m..).map(|(&h, v)| (h, v.clone())).collect(),
            diffs: self.diffs.range(m..).map(|(&h, d)| (h, d.clone())).collect(),
        }
    }

    /// Moves every term by (dh, dq); odd homological moves negate the differential.
    pub fn shift(&self, dh: i64, dq: i64) -> Self {
        let sign = if dh.rem_euclid(2) == 1 { F::one().neg() } else { F::one() };
        let terms = self
            .terms
            .iter()
            .map(|(&h, v)| (h + dh, v.iter().map(|s| Summand { idem: s.idem, shift: s.shift + dq }).collect()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&h, d)| (h + dh, d.iter().map(|(&k, x)| (k, x.scale(&sign))).collect()))
            .collect();
        ProjComplex { terms, diffs }
    }

    /// Tate twist ⟨n⟩: internal degree up by n, homological degree down by n.
    pub fn tate(&self, n: i64) -> Self {
        self.shift(-n, n)
    }

    /// Hom(−, A) as a complex over the opposite algebra: degrees and shifts negate and
    /// each entry is transposed. Applying it twice returns the original complex.
    pub fn dual(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&h, v)| (-h, v.iter().map(|s| Summand { idem: s.idem, shift: -s.shift }).collect()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&h, d)| (-h - 1, d.iter().map(|(&(a, b), x)| ((b, a), x.transpose())).collect()))
            .collect();
        ProjComplex { terms, diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&h, v) in &other.terms {
            let off_h = self.term(h).len();
            let off_next = self.term(h + 1).len();
            out.terms.entry(h).or_default().extend(v.iter().copied());
            if let Some(d) = other.diffs.get(&h) {
                for (&(a, b), x) in d {
                    out.set_entry(h, a + off_h, b + off_next, x.clone());
                }
            }
        }
        out
    }

    /// d_{h+1} ∘ d_h as entries (a at h, c at h+2).
    pub fn d_squared(&self, alg: &Alg<F>, h: i64) -> BTreeMap<(usize, usize), Matrix<F>> {
        let mut out: BTreeMap<(usize, usize), Matrix<F>> = BTreeMap::new();
        let (Some(d0), Some(d1)) = (self.diffs.get(&h), self.diffs.get(&(h + 1))) else {
            return out;
        };
        for (&(a, b), x) in d0 {
            for (&(b2, c), y) in d1.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(b, b2);
                let p = x.mul(y);
                let e = out.entry((a, c)).or_insert_with(|| {
                    Matrix::zeros(alg.rep_dim(self.term(h)[a].idem), alg.rep_dim(self.term(h + 2)[c].idem))
                });
                e.add_assign(&p);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn is_complex(&self, alg: &Alg<F>) -> bool {
        self.diffs.keys().all(|&h| self.d_squared(alg, h).is_empty())
    }

    /// Every entry lies in the algebra with the degree forced by the shifts.
    pub fn entries_homogeneous(&self, alg: &Alg<F>) -> bool {
        for (&h, d) in &self.diffs {
            for (&(a, b), x) in d {
                let (sa, sb) = (self.term(h)[a], self.term(h + 1)[b]);
                if alg.try_coords(sa.idem, sb.idem, x).is_none() {
                    return false;
                }
                if alg.elem_degree(sa.idem, sb.idem, x) != Some(sa.shift - sb.shift) {
                    return false;
                }
            }
        }
        true
    }

    /// Graded Euler characteristic as a formal combination Σ (-1)^h q^shift [P_idem].
    pub fn euler(&self) -> BTreeMap<usize, Laurent> {
        let mut out: BTreeMap<usize, Laurent> = BTreeMap::new();
        for (&h, v) in &self.terms {
            let sign = if h.rem_euclid(2) == 0 { 1 } else { -1 };
            for s in v {
                *out.entry(s.idem).or_default().entry(s.shift).or_insert(0) += sign;
            }
        }
        for l in out.values_mut() {
            l.retain(|_, c| *c != 0);
        }
        out.retain(|_, l| !l.is_empty());
        out
    }

    /// Cancels every degree-zero invertible scalar entry between equal summands.
    pub fn gaussian_eliminate(&self, alg: &Alg<F>) -> Self {
        let mut c = self.clone();
        loop {
            let mut found = None;
            'search: for (&h, d) in &c.diffs {
                for (&(a, b), x) in d {
                    let (sa, sb) = (c.term(h)[a], c.term(h + 1)[b]);
                    if sa != sb {
                        continue;
                    }
                    if let Some(v) = x.scalar_value() {
                        if !v.is_zero() {
                            found = Some((h, a, b, v));
                            break 'search;
                        }
                    }
                }
            }
            let Some((h, a, b, v)) = found else { break };
            c = c.cancel(alg, h, a, b, &v);
        }
        c.tidy();
        c
    }

    fn cancel(&self, alg: &Alg<F>, h: i64, a: usize, b: usize, v: &F) -> Self {
        let inv = v.inv();
        let d = self.diffs.get(&h).cloned().unwrap_or_default();
        let into_b: Vec<(usize, Matrix<F>)> =
            d.iter().filter(|((x, y), _)| *y == b && *x != a).map(|(&(x, _), m)| (x, m.clone())).collect();
        let from_a: Vec<(usize, Matrix<F>)> =
            d.iter().filter(|((x, y), _)| *x == a && *y != b).map(|(&(_, y), m)| (y, m.clone())).collect();
        let mut newd = d.clone();
        for (x, m) in &into_b {
            for (y, n) in &from_a {
                let corr = m.mul(n).scale(&inv);
                let cur = newd.get(&(*x, *y)).cloned().unwrap_or_else(|| {
                    Matrix::zeros(alg.rep_dim(self.term(h)[*x].idem), alg.rep_dim(self.term(h + 1)[*y].idem))
                });
                newd.insert((*x, *y), cur.sub(&corr));
            }
        }
        let mut out = self.clone();
        // reindex degree h (drop a) and h+1 (drop b)
        let ra = |i: usize| if i > a { i - 1 } else { i };
        let rb = |i: usize| if i > b { i - 1 } else { i };
        let mut dh = BTreeMap::new();
        for ((x, y), m) in newd {
            if x == a || y == b || m.is_zero() {
                continue;
            }
            dh.insert((ra(x), rb(y)), m);
        }
        out.diffs.insert(h, dh);
        if let Some(prev) = self.diffs.get(&(h - 1)) {
            out.diffs.insert(
                h - 1,
                prev.iter().filter(|((_, y), _)| *y != a).map(|(&(x, y), m)| ((x, ra(y)), m.clone())).collect(),
            );
        }
        if let Some(next) = self.diffs.get(&(h + 1)) {
            out.diffs.insert(
                h + 1,
                next.iter().filter(|((x, _), _)| *x != b).map(|(&(x, y), m)| ((rb(x), y), m.clone())).collect(),
            );
        }
        out.terms.get_mut(&h).unwrap().remove(a);
        out.terms.get_mut(&(h + 1)).unwrap().remove(b);
        out
    }

    /// Dimensions of e_t C in each (h, internal degree).
    pub fn graded_chain_dims(&self, alg: &Alg<F>, t: usize) -> BigradedTable {
        let mut out = BigradedTable::new();
        for (&h, v) in &self.terms {
            for s in v {
                for (d, n) in alg.graded_block_dim(t, s.idem) {
                    *out.entry((h, d + s.shift)).or_insert(0) += n;
                }
            }
        }
        out
    }

    /// Matrix of the vector-space map e_t C_h -> e_t C_{h+1} in internal degree q.
    fn piece_map(&self, alg: &Alg<F>, t: usize, h: i64, q: i64) -> (Matrix<F>, usize, usize) {
        let basis = |hh: i64| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for (z, s) in self.term(hh).iter().enumerate() {
                for &b in alg.block(t, s.idem) {
                    if alg.cols[s.idem][b].deg + s.shift == q {
                        out.push((z, b));
                    }
                }
            }
            out
        };
        let src = basis(h);
        let tgt = basis(h + 1);
        let mut m: Matrix<F> = Matrix::zeros(tgt.len(), src.len());
        if let Some(d) = self.diffs.get(&h) {
            for (c, &(z, b)) in src.iter().enumerate() {
                let beta = &alg.cols[self.term(h)[z].idem][b].mat;
                for (&(_, w), x) in d.range((z, 0)..(z + 1, 0)) {
                    let wi = self.term(h + 1)[w].idem;
                    let co = alg.coords(t, wi, &beta.mul(x));
                    for (r, &(zz, bb)) in tgt.iter().enumerate() {
                        if zz == w {
                            let li = alg.local_index(wi, bb);
                            if !co[li].is_zero() {
                                let v = m.get(r, c).add(&co[li]);
                                m.set(r, c, v);
                            }
                        }
                    }
                }
            }
        }
        (m, src.len(), tgt.len())
    }

    /// Homology of the vector-space complex e_t C, bigraded by (h, internal degree).
    pub fn homology(&self, alg: &Alg<F>, t: usize) -> BigradedTable {
        let dims = self.graded_chain_dims(alg, t);
        let mut out = BigradedTable::new();
        for (&(h, q), &n) in &dims {
            let (out_map, _, _) = self.piece_map(alg, t, h, q);
            let (in_map, _, _) = self.piece_map(alg, t, h - 1, q);
            let r = n - out_map.rank() - in_map.rank();
            if r > 0 {
                out.insert((h, q), r);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::Q;
    use crate::tensor_algebra::TensorAlgebra;

    #[test]
    fn identity_cone_cancels() {
        let a = Alg::from_tensor(&TensorAlgebra::<Q>::new(2, 1));
        let mut c = ProjComplex::zero();
        c.terms.insert(0, alloc::vec![Summand { idem: 0, shift: 3 }]);
        c.terms.insert(1, alloc::vec![Summand { idem: 0, shift: 3 }]);
        c.set_entry(0, 0, 0, a.identity(0).scale(&Q::from_i64(-2)));
        assert!(c.is_complex(&a));
        let m = c.gaussian_eliminate(&a);
        assert!(m.is_zero());
        assert!(m.euler().is_empty());
    }

    #[test]
    fn tate_twist_moves_both_gradings() {
        let c = ProjComplex::<Q>::single(1, 0, 0).tate(2);
        assert_eq!(c.term(-2), &[Summand { idem: 1, shift: 2 }]);
    }
}
