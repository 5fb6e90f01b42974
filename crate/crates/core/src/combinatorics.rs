//! Idempotent labels, box partitions, sign sequences and backdrops.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A weakly increasing function [1,l] -> [0,k]; value at h counts black strands left of red h.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Kappa {
    pub k: usize,
    pub vals: Vec<usize>,
}

/// A strand in the left-to-right reading of an idempotent.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strand {
    /// Red strand, 1-based.
    Red(usize),
    /// Black strand, 1-based.
    Black(usize),
}

impl Kappa {
    pub fn new(k: usize, vals: Vec<usize>) -> Kappa {
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "kappa must be weakly increasing");
        assert!(vals.iter().all(|&v| v <= k), "kappa value out of range");
        Kappa { k, vals }
    }

    pub fn zero(l: usize, k: usize) -> Kappa {
        Kappa { k, vals: vec![0; l] }
    }

    pub fn l(&self) -> usize {
        self.vals.len()
    }

    /// Value at red strand h (1-based).
    pub fn at(&self, h: usize) -> usize {
        self.vals[h - 1]
    }

    pub fn in_image(&self, v: usize) -> bool {
        self.vals.contains(&v)
    }

    /// Number of red strands strictly between black i and black i+1 (black 0 = left edge).
    pub fn reds_after_black(&self, i: usize) -> usize {
        self.vals.iter().filter(|&&v| v == i).count()
    }

    /// Index of the first red strand right of black i, if any.
    pub fn red_right_of_black(&self, i: usize) -> Option<usize> {
        self.vals.iter().position(|&v| v >= i).map(|p| p + 1)
    }

    /// Left endpoint has a black strand.
    pub fn is_violating(&self) -> bool {
        self.vals.first().is_some_and(|&v| v > 0)
    }

    /// Blacks that sit between red h and red h+1 (h = 0: left edge, h = l: right edge).
    pub fn gap(&self, h: usize) -> usize {
        let lo = if h == 0 { 0 } else { self.at(h) };
        let hi = if h == self.l() { self.k } else { self.at(h + 1) };
        hi - lo
    }

    /// No black at the left end and at most one black in each gap.
    pub fn is_separated(&self) -> bool {
        !self.is_violating() && (1..=self.l()).all(|h| self.gap(h) <= 1)
    }

    pub fn grading_offset(&self) -> i64 {
        self.vals.iter().sum::<usize>() as i64
    }

    /// Top of the generator moving black i left across a red: the last place with value i-1 becomes i.
    pub fn shift_plus(&self, i: usize) -> Option<Kappa> {
        if i == 0 || i > self.k {
            return None;
        }
        let p = self.vals.iter().rposition(|&v| v == i - 1)?;
        let mut vals = self.vals.clone();
        vals[p] = i;
        Some(Kappa { k: self.k, vals })
    }

    /// Top of the generator moving black i right across a red: the first place with value i becomes i-1.
    pub fn shift_minus(&self, i: usize) -> Option<Kappa> {
        if i == 0 || i > self.k {
            return None;
        }
        let p = self.vals.iter().position(|&v| v == i)?;
        let mut vals = self.vals.clone();
        vals[p] = i - 1;
        Some(Kappa { k: self.k, vals })
    }

    pub fn strands(&self) -> Vec<Strand> {
        let mut out = Vec::with_capacity(self.l() + self.k);
        let mut b = 0;
        for (h, &v) in self.vals.iter().enumerate() {
            while b < v {
                b += 1;
                out.push(Strand::Black(b));
            }
            out.push(Strand::Red(h + 1));
        }
        while b < self.k {
            b += 1;
            out.push(Strand::Black(b));
        }
        out
    }

    /// Inverse of [`Kappa::strands`]; `true` marks a red strand.
    pub fn from_reds(pattern: &[bool]) -> Kappa {
        let mut vals = Vec::new();
        let mut b = 0;
        for &red in pattern {
            if red {
                vals.push(b);
            } else {
                b += 1;
            }
        }
        Kappa { k: b, vals }
    }

    pub fn pointwise_le(&self, other: &Kappa) -> bool {
        self.vals.iter().zip(&other.vals).all(|(a, b)| a <= b)
    }

    pub fn label(&self) -> String {
        let mut s = String::from("(");
        for (i, v) in self.vals.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&alloc::format!("{}", v));
        }
        s.push(')');
        s
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All weakly increasing functions [1,l] -> [0,k], lexicographic order.
pub fn enumerate_kappas(l: usize, k: usize) -> Vec<Kappa> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(l: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Kappa>) {
        if cur.len() == l {
            out.push(Kappa { k, vals: cur.clone() });
            return;
        }
        for v in lo..=k {
            cur.push(v);
            rec(l, k, v, cur, out);
            cur.pop();
        }
    }
    rec(l, k, 0, &mut cur, &mut out);
    out
}

/// The separated kappas: these index the indecomposable projectives.
pub fn separated_kappas(l: usize, k: usize) -> Vec<Kappa> {
    enumerate_kappas(l, k).into_iter().filter(|x| x.is_separated()).collect()
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Partition with k parts, smallest first, fitting in a k x (l-k) box.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BoxPartition {
    pub l: usize,
    pub parts: Vec<usize>,
}

impl BoxPartition {
    pub fn new(l: usize, parts: Vec<usize>) -> BoxPartition {
        let k = parts.len();
        assert!(k <= l);
        assert!(parts.windows(2).all(|w| w[0] <= w[1]), "parts must be weakly increasing");
        assert!(parts.iter().all(|&p| p <= l - k), "partition does not fit the box");
        BoxPartition { l, parts }
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Red strand right of which the black of row j (1-based) sits at the bottom.
    pub fn slot(&self, j: usize) -> usize {
        j + self.parts[j - 1]
    }

    /// The bottom idempotent: one black right of red j+λ_j for each row.
    pub fn bottom_kappa(&self) -> Kappa {
        let vals = (1..=self.l).map(|p| (1..=self.k()).filter(|&j| self.slot(j) < p).count()).collect();
        Kappa { k: self.k(), vals }
    }

    pub fn sign_sequence(&self) -> SignSeq {
        let mut s = vec![false; self.l];
        for j in 1..=self.k() {
            s[self.slot(j) - 1] = true;
        }
        SignSeq(s)
    }

    pub fn from_sign_sequence(s: &SignSeq) -> BoxPartition {
        let l = s.0.len();
        let mut parts = Vec::new();
        for (pos, &plus) in s.0.iter().enumerate() {
            if plus {
                let j = parts.len() + 1;
                parts.push(pos + 1 - j);
            }
        }
        BoxPartition { l, parts }
    }
}

/// All partitions in the k x (l-k) box, ordered by their sign sequences.
pub fn enumerate_partitions(l: usize, k: usize) -> Vec<BoxPartition> {
    assert!(k <= l);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(l: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<BoxPartition>) {
        if cur.len() == k {
            out.push(BoxPartition { l, parts: cur.clone() });
            return;
        }
        for v in lo..=(l - k) {
            cur.push(v);
            rec(l, k, v, cur, out);
            cur.pop();
        }
    }
    rec(l, k, 0, &mut cur, &mut out);
    out
}

/// A length-l sequence over {+,-}; `true` is +.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignSeq(pub Vec<bool>);

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "+" } else { "−" })?;
        }
        Ok(())
    }
}

/// A labelling of the rows of a box partition, with an order on rows sharing a label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Backdrop {
    pub partition: BoxPartition,
    /// labels[j-1] is the label of row j (row 1 at the top).
    pub labels: Vec<usize>,
    /// Rows (1-based) listed in final left-to-right order: by label, ties by the chosen order.
    pub order: Vec<usize>,
}

impl Backdrop {
    pub fn is_valid(&self) -> bool {
        let k = self.partition.k();
        if self.labels.len() != k || self.order.len() != k {
            return false;
        }
        let mut seen = vec![false; k];
        for &r in &self.order {
            if r == 0 || r > k || seen[r - 1] {
                return false;
            }
            seen[r - 1] = true;
        }
        let sorted = self.order.windows(2).all(|w| self.labels[w[0] - 1] <= self.labels[w[1] - 1]);
        sorted
            && (1..=k).all(|j| {
                let lab = self.labels[j - 1];
                lab >= self.partition.slot(j) && lab <= self.partition.l
            })
    }

    /// kappa(p) = number of rows with label < p.
    pub fn kappa(&self) -> Kappa {
        let l = self.partition.l;
        let vals = (1..=l).map(|p| self.labels.iter().filter(|&&x| x < p).count()).collect();
        Kappa { k: self.partition.k(), vals }
    }

    /// Position (1-based) of row j among the blacks at the top.
    pub fn final_rank(&self, j: usize) -> usize {
        self.order.iter().position(|&r| r == j).unwrap() + 1
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every backdrop on the given partition, tie orders included.
pub fn backdrops_of(p: &BoxPartition) -> Vec<Backdrop> {
    let k = p.k();
    let l = p.l;
    let mut out = Vec::new();
    let mut labels = vec![0; k];
    fn rec(p: &BoxPartition, j: usize, labels: &mut Vec<usize>, out: &mut Vec<Backdrop>) {
        let k = p.k();
        if j > k {
            // group rows by label, then take all orders within each group
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for r in 1..=k {
                groups.entry(labels[r - 1]).or_default().push(r);
            }
            let mut orders: Vec<Vec<usize>> = vec![Vec::new()];
            for rows in groups.values() {
                let perms = permutations(rows);
                let mut next = Vec::new();
                for o in &orders {
                    for q in &perms {
                        let mut o2 = o.clone();
                        o2.extend(q);
                        next.push(o2);
                    }
                }
                orders = next;
            }
            for order in orders {
                out.push(Backdrop { partition: p.clone(), labels: labels.clone(), order });
            }
            return;
        }
        for lab in p.slot(j)..=p.l {
            labels[j - 1] = lab;
            rec(p, j + 1, labels, out);
        }
    }
    if l == 0 && k == 0 {
        out.push(Backdrop { partition: p.clone(), labels: Vec::new(), order: Vec::new() });
        return out;
    }
    rec(p, 1, &mut labels, &mut out);
    out
}

/// Backdrops grouped by partition.
pub fn enumerate_backdrops(l: usize, k: usize) -> BTreeMap<BoxPartition, Vec<Backdrop>> {
    enumerate_partitions(l, k).into_iter().map(|p| {
        let b = backdrops_of(&p);
        (p, b)
    }).collect()
}

/// Sum over partitions of (#backdrops)^2: the predicted dimension of the algebra.
pub fn cellular_dimension(l: usize, k: usize) -> usize {
    enumerate_backdrops(l, k).values().map(|v| v.len() * v.len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kap(k: usize, v: &[usize]) -> Kappa {
        Kappa::new(k, v.to_vec())
    }

    #[test]
    fn kappa_enumeration_counts() {
        assert_eq!(enumerate_kappas(2, 1), vec![kap(1, &[0, 0]), kap(1, &[0, 1]), kap(1, &[1, 1])]);
        assert_eq!(enumerate_kappas(0, 0).len(), 1);
        for l in 0..=5 {
            for k in 0..=3 {
                assert_eq!(enumerate_kappas(l, k).len(), binomial(l + k, k));
            }
        }
    }

    #[test]
    fn shifts() {
        let z = kap(1, &[0, 0]);
        assert_eq!(z.shift_plus(1), Some(kap(1, &[0, 1])));
        assert_eq!(kap(1, &[0, 1]).shift_minus(1), Some(z.clone()));
        assert_eq!(z.shift_minus(1), None);
        for l in 0..=4 {
            for k in 0..=3 {
                for x in enumerate_kappas(l, k) {
                    for i in 1..=k {
                        if let Some(up) = x.shift_plus(i) {
                            assert_eq!(up.grading_offset(), x.grading_offset() + 1);
                            assert_eq!(up.shift_minus(i).as_ref(), Some(&x));
                        }
                        if let Some(dn) = x.shift_minus(i) {
                            assert_eq!(dn.shift_plus(i).as_ref(), Some(&x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn strands_round_trip() {
        for x in enumerate_kappas(3, 2) {
            let pat: Vec<bool> = x.strands().iter().map(|s| matches!(s, Strand::Red(_))).collect();
            assert_eq!(Kappa::from_reds(&pat), x);
        }
        assert_eq!(kap(1, &[0, 1]).strands(), vec![Strand::Red(1), Strand::Black(1), Strand::Red(2)]);
    }

    #[test]
    fn offsets() {
        assert_eq!(kap(1, &[0, 0]).grading_offset(), 0);
        assert_eq!(kap(1, &[0, 1]).grading_offset(), 1);
    }

    #[test]
    fn sign_sequences() {
        let show = |l, parts: &[usize]| BoxPartition::new(l, parts.to_vec()).sign_sequence().to_string();
        assert_eq!(show(2, &[0]), "+−");
        assert_eq!(show(2, &[1]), "−+");
        assert_eq!(show(4, &[1, 2]), "−+−+");
        for l in 0..=6 {
            for k in 0..=l {
                let ps = enumerate_partitions(l, k);
                assert_eq!(ps.len(), binomial(l, k));
                let mut seqs: Vec<Vec<bool>> = Vec::new();
                for p in &ps {
                    let s = p.sign_sequence();
                    assert_eq!(s.0.iter().filter(|&&b| b).count(), k);
                    assert_eq!(&BoxPartition::from_sign_sequence(&s), p);
                    seqs.push(s.0);
                }
                seqs.sort();
                seqs.dedup();
                assert_eq!(seqs.len(), ps.len());
            }
        }
    }

    #[test]
    fn backdrop_examples() {
        let e = BoxPartition::new(2, vec![0]);
        let one = BoxPartition::new(2, vec![1]);
        let be = backdrops_of(&e);
        assert_eq!(be.len(), 2);
        assert_eq!(backdrops_of(&one).len(), 1);
        assert_eq!(backdrops_of(&one)[0].kappa(), kap(1, &[0, 0]));
        let lab1 = be.iter().find(|b| b.labels == vec![1]).unwrap();
        let lab2 = be.iter().find(|b| b.labels == vec![2]).unwrap();
        assert_eq!(lab1.kappa(), kap(1, &[0, 1]));
        assert_eq!(lab2.kappa(), kap(1, &[0, 0]));
    }

    #[test]
    fn backdrop_counts_l3() {
        let bd = enumerate_backdrops(3, 1);
        let counts: Vec<usize> = bd.values().map(|v| v.len()).collect();
        assert_eq!(counts, vec![3, 2, 1]);
    }

    #[test]
    fn backdrops_valid_and_distinct() {
        for l in 0..=5 {
            for k in 0..=l.min(3) {
                let mut all = Vec::new();
                for bs in enumerate_backdrops(l, k).values() {
                    for b in bs {
                        assert!(b.is_valid());
                        all.push(b.clone());
                    }
                }
                let n = all.len();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), n);
            }
        }
    }

    // brute force: every labelling and every permutation, keep the valid ones
    #[test]
    fn backdrop_enumeration_is_complete() {
        for (l, k) in [(2, 2), (3, 2), (4, 2), (4, 3)] {
            for p in enumerate_partitions(l, k) {
                let mut brute = 0;
                let total = l.pow(k as u32);
                let rows: Vec<usize> = (1..=k).collect();
                for code in 0..total {
                    let mut c = code;
                    let labels: Vec<usize> = (0..k).map(|_| { let x = c % l + 1; c /= l; x }).collect();
                    for order in permutations(&rows) {
                        let b = Backdrop { partition: p.clone(), labels: labels.clone(), order };
                        if b.is_valid() {
                            brute += 1;
                        }
                    }
                }
                assert_eq!(brute, backdrops_of(&p).len(), "l={l} k={k} p={:?}", p.parts);
            }
        }
    }

    #[test]
    fn cellular_dimension_small() {
        assert_eq!(cellular_dimension(2, 1), 5);
        assert_eq!(cellular_dimension(3, 1), 14);
        assert_eq!(cellular_dimension(2, 2), 9);
    }

    #[test]
    fn minimal_labels_give_bottom() {
        // labels equal to the minimum allowed, j + λ_j, reproduce the bottom placement
        for l in 1..=5 {
            for k in 0..=l.min(3) {
                for p in enumerate_partitions(l, k) {
                    let labels: Vec<usize> = (1..=k).map(|j| p.slot(j)).collect();
                    let order: Vec<usize> = (1..=k).collect();
                    let b = Backdrop { partition: p.clone(), labels, order };
                    assert!(b.is_valid());
                    assert_eq!(b.kappa(), p.bottom_kappa());
                    assert!(p.bottom_kappa().is_separated());
                }
            }
        }
    }

    #[test]
    fn separated_count() {
        for l in 0..=6 {
            for k in 0..=l {
                assert_eq!(separated_kappas(l, k).len(), binomial(l, k));
            }
        }
    }
}
