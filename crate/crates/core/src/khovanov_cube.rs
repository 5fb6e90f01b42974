//! Khovanov homology from the cube of resolutions, over the Frobenius algebra
//! H*(S²) = k[t]/t² with the usual merge and split maps.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff_poly::Field;
use crate::decat_oracle::{BraidWord, LaurentPoly};
use crate::linalg::Matrix;
use crate::module_cat::BigradedTable;

/// Largest crossing count accepted by the cube.
pub const MAX_CROSSINGS: usize = 14;

/// The rank-two Frobenius algebra with basis {1, t}, t² = 0, ε(t) = 1.
///
/// Basis index 0 is 1 (degree +1 in the Khovanov grading), index 1 is t (degree −1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobAlg;

impl FrobAlg {
    pub fn degree(x: usize) -> i64 {
        if x == 0 {
            1
        } else {
            -1
        }
    }

    /// m(x ⊗ y), or None when the product vanishes.
    pub fn mult(x: usize, y: usize) -> Option<usize> {
        match x + y {
            0 => Some(0),
            1 => Some(1),
            _ => None,
        }
    }

    /// Δ(x) as a list of x₁ ⊗ x₂ terms, each with coefficient one.
    pub fn comult(x: usize) -> Vec<(usize, usize)> {
        if x == 0 {
            vec![(0, 1), (1, 0)]
        } else {
            vec![(1, 1)]
        }
    }

    pub fn counit(x: usize) -> i64 {
        if x == 1 {
            1
        } else {
            0
        }
    }

    pub fn unit() -> usize {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeError {
    Malformed(String),
    TooLarge(usize),
}

impl fmt::Display for CubeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeError::Malformed(s) => write!(f, "malformed diagram: {}", s),
            CubeError::TooLarge(n) => write!(f, "{} crossings exceed the cube limit of {}", n, MAX_CROSSINGS),
        }
    }
}

/// A crossing with four arc ends. The 0-smoothing joins ends (0,1) and (2,3), the
/// 1-smoothing joins (0,3) and (1,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub ends: [usize; 4],
    pub positive: bool,
}

/// Arc ends, the joins that hold regardless of smoothing, and the crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    pub nodes: usize,
    pub joins: Vec<(usize, usize)>,
    pub crossings: Vec<Crossing>,
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

impl LinkDiagram {
    /// The trace closure of a braid. Node (t, p) is strand p below letter t, with the
    /// top level identified with the bottom.
    pub fn from_braid(b: &BraidWord) -> Self {
        let n = b.strands;
        let m = b.letters.len();
        if m == 0 {
            return LinkDiagram { nodes: n, joins: Vec::new(), crossings: Vec::new() };
        }
        let node = |t: usize, p: usize| (t % m) * n + p;
        let mut joins = Vec::new();
        let mut crossings = Vec::new();
        for (t, &x) in b.letters.iter().enumerate() {
            let i = x.unsigned_abs() as usize - 1;
            for p in 0..n {
                if p != i && p != i + 1 {
                    joins.push((node(t, p), node(t + 1, p)));
                }
            }
            let (a, bb, c, d) = (node(t, i), node(t, i + 1), node(t + 1, i), node(t + 1, i + 1));
            // positive: 0-smoothing vertical; negative: 0-smoothing horizontal
            let ends = if x > 0 { [a, c, d, bb] } else { [a, bb, d, c] };
            crossings.push(Crossing { ends, positive: x > 0 });
        }
        LinkDiagram { nodes: m * n, joins, crossings }
    }

    /// A planar diagram code: X[i,j,k,l] lists arc labels counterclockwise from the
    /// incoming under-strand; labels increase along the orientation.
    pub fn from_pd(code: &[[usize; 4]]) -> Result<Self, CubeError> {
        if code.is_empty() {
            return Err(CubeError::Malformed("empty planar diagram".to_string()));
        }
        let arcs = 2 * code.len();
        let mut seen = vec![0usize; arcs + 1];
        for x in code {
            for &a in x {
                if a == 0 || a > arcs {
                    return Err(CubeError::Malformed(alloc::format!("arc label {} out of range", a)));
                }
                seen[a] += 1;
            }
        }
        if seen[1..].iter().any(|&c| c != 2) {
            return Err(CubeError::Malformed("every arc must meet exactly two crossing ends".to_string()));
        }
        let next = |a: usize| a % arcs + 1;
        let crossings = code
            .iter()
            .map(|&[i, j, k, l]| Crossing { ends: [i - 1, j - 1, k - 1, l - 1], positive: j == next(l) && l != next(j) })
            .collect();
        Ok(LinkDiagram { nodes: arcs, joins: Vec::new(), crossings })
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.len() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// Circle index of every node in the resolution `state` (bit c = smoothing of c).
    pub fn circles(&self, state: u64) -> (usize, Vec<usize>) {
        let mut p: Vec<usize> = (0..self.nodes).collect();
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        for &(a, b) in &self.joins {
            union(a, b);
        }
        for (c, x) in self.crossings.iter().enumerate() {
            let e = x.ends;
            if state & (1 << c) == 0 {
                union(e[0], e[1]);
                union(e[2], e[3]);
            } else {
                union(e[0], e[3]);
                union(e[1], e[2]);
            }
        }
        let mut index = BTreeMap::new();
        let labels = (0..self.nodes)
            .map(|x| {
                let r = find(&mut p, x);
                let n = index.len();
                *index.entry(r).or_insert(n)
            })
            .collect();
        (index.len(), labels)
    }
}

/// One resolution of the cube.
#[derive(Clone, Debug)]
pub struct Vertex {
    pub state: u64,
    pub circles: usize,
    pub labels: Vec<usize>,
    /// A node on each circle.
    pub reps: Vec<usize>,
}

/// The cube of resolutions.
#[derive(Clone, Debug)]
pub struct Cube {
    pub diagram: LinkDiagram,
    pub vertices: Vec<Vertex>,
}

/// Builds every resolution of the diagram.
pub fn build_cube(d: &LinkDiagram) -> Result<Cube, CubeError> {
    let n = d.crossings.len();
    if n > MAX_CROSSINGS {
        return Err(CubeError::TooLarge(n));
    }
    let vertices = (0..1u64 << n)
        .map(|state| {
            let (circles, labels) = d.circles(state);
            let mut reps = vec![usize::MAX; circles];
            for (x, &c) in labels.iter().enumerate() {
                if reps[c] == usize::MAX {
                    reps[c] = x;
                }
            }
            Vertex { state, circles, labels, reps }
        })
        .collect();
    Ok(Cube { diagram: d.clone(), vertices })
}

impl Cube {
    fn n(&self) -> usize {
        self.diagram.crossings.len()
    }

    /// Khovanov bidegree of a generator at `state` with the circle labels `mask`
    /// (bit c set when circle c carries t).
    pub fn bidegree(&self, state: u64, mask: u64) -> (i64, i64) {
        let v = &self.vertices[state as usize];
        let r = state.count_ones() as i64;
        let np = self.diagram.n_plus() as i64;
        let nm = self.diagram.n_minus() as i64;
        let t = mask.count_ones() as i64;
        let q = (v.circles as i64 - 2 * t) + r + np - 2 * nm;
        (r - nm, q)
    }

    /// Image of a generator along the edge changing crossing c, as (mask, coefficient) terms
    /// before the edge sign.
    pub fn edge_map(&self, state: u64, c: usize, mask: u64) -> Vec<u64> {
        let v = &self.vertices[state as usize];
        let w = &self.vertices[(state | (1 << c)) as usize];
        let e = self.diagram.crossings[c].ends;
        let a = v.labels[e[0]];
        let b = v.labels[e[2]];
        let bit = |m: u64, i: usize| ((m >> i) & 1) as usize;
        // carry the untouched circles across
        let mut base = 0u64;
        for (ci, &rep) in v.reps.iter().enumerate() {
            if ci != a && ci != b && bit(mask, ci) == 1 {
                base |= 1 << w.labels[rep];
            }
        }
        if a != b {
            let target = w.labels[e[0]];
            match FrobAlg::mult(bit(mask, a), bit(mask, b)) {
                None => Vec::new(),
                Some(x) => vec![base | ((x as u64) << target)],
            }
        } else {
            let (c1, c2) = (w.labels[e[0]], w.labels[e[1]]);
            FrobAlg::comult(bit(mask, a))
                .into_iter()
                .map(|(x, y)| base | ((x as u64) << c1) | ((y as u64) << c2))
                .collect()
        }
    }

    /// Ranks of the homology in each bidegree (H, Q).
    pub fn homology<F: Field>(&self) -> BigradedTable {
        let n = self.n();
        // generators grouped by bidegree: (state, mask)
        let mut groups: BTreeMap<(i64, i64), Vec<(u64, u64)>> = BTreeMap::new();
        for v in &self.vertices {
            for mask in 0..1u64 << v.circles {
                groups.entry(self.bidegree(v.state, mask)).or_default().push((v.state, mask));
            }
        }
        let index: BTreeMap<(u64, u64), usize> = groups
            .values()
            .flat_map(|g| g.iter().enumerate().map(|(i, &x)| (x, i)))
            .collect();
        let differential = |h: i64, q: i64| -> Option<Matrix<F>> {
            let src = groups.get(&(h, q))?;
            let tgt = groups.get(&(h + 1, q))?;
            let mut m: Matrix<F> = Matrix::zeros(tgt.len(), src.len());
            for (col, &(state, mask)) in src.iter().enumerate() {
                for c in 0..n {
                    if state & (1 << c) != 0 {
                        continue;
                    }
                    let ones_before = (state & ((1u64 << c) - 1)).count_ones();
                    let sign = if ones_before % 2 == 0 { F::one() } else { F::one().neg() };
                    let next = state | (1 << c);
                    for img in self.edge_map(state, c, mask) {
                        let row = index[&(next, img)];
                        let val = m.get(row, col).add(&sign);
                        m.set(row, col, val);
                    }
                }
            }
            Some(m)
        };
        let mut out = BigradedTable::new();
        for (&(h, q), g) in &groups {
            let out_rank = differential(h, q).map(|m| m.rank()).unwrap_or(0);
            let in_rank = differential(h - 1, q).map(|m| m.rank()).unwrap_or(0);
            let r = g.len() - out_rank - in_rank;
            if r > 0 {
                out.insert((h, q), r);
            }
        }
        out
    }

    /// Checks d² = 0 on every generator.
    pub fn d_squared_vanishes<F: Field>(&self) -> bool {
        let n = self.n();
        let apply = |terms: &BTreeMap<(u64, u64), F>| -> BTreeMap<(u64, u64), F> {
            let mut out: BTreeMap<(u64, u64), F> = BTreeMap::new();
            for (&(state, mask), coef) in terms {
                for c in 0..n {
                    if state & (1 << c) != 0 {
                        continue;
                    }
                    let ones_before = (state & ((1u64 << c) - 1)).count_ones();
                    let s = if ones_before % 2 == 0 { coef.clone() } else { coef.neg() };
                    for img in self.edge_map(state, c, mask) {
                        let e = out.entry((state | (1 << c), img)).or_insert_with(F::zero);
                        *e = e.add(&s);
                    }
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        };
        self.vertices.iter().all(|v| {
            (0..1u64 << v.circles).all(|mask| {
                let start: BTreeMap<(u64, u64), F> = [((v.state, mask), F::one())].into_iter().collect();
                apply(&apply(&start)).is_empty()
            })
        })
    }
}

/// Khovanov homology of a diagram over F.
pub fn kh<F: Field>(d: &LinkDiagram) -> Result<BigradedTable, CubeError> {
    Ok(build_cube(d)?.homology::<F>())
}

/// Khovanov homology of the trace closure of a braid over F.
pub fn kh_braid<F: Field>(b: &BraidWord) -> Result<BigradedTable, CubeError> {
    kh::<F>(&LinkDiagram::from_braid(b))
}

/// Graded Euler characteristic Σ (−1)^H q^Q rank.
pub fn euler_characteristic(t: &BigradedTable) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (&(h, q), &n) in t {
        out.add_term(q, if h % 2 == 0 { n as i64 } else { -(n as i64) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::{F2, Q};
    use crate::decat_oracle::kauffman_bracket;

    fn table(pairs: &[(i64, i64)]) -> BigradedTable {
        pairs.iter().map(|&p| (p, 1)).collect()
    }

    #[test]
    fn frobenius_axioms() {
        // (ε ⊗ 1)Δ = id and m is associative on the basis
        for x in 0..2 {
            let mut back = [0i64; 2];
            for (a, b) in FrobAlg::comult(x) {
                back[b] += FrobAlg::counit(a);
            }
            let mut expect = [0i64; 2];
            expect[x] = 1;
            assert_eq!(back, expect);
            assert_eq!(FrobAlg::mult(FrobAlg::unit(), x), Some(x));
        }
        assert_eq!(FrobAlg::mult(1, 1), None);
    }

    #[test]
    fn unknot_has_one_circle() {
        let b = BraidWord::new(1, vec![]).unwrap();
        let cube = build_cube(&LinkDiagram::from_braid(&b)).unwrap();
        assert_eq!(cube.vertices.len(), 1);
        assert_eq!(cube.vertices[0].circles, 1);
        assert_eq!(kh_braid::<Q>(&b).unwrap(), table(&[(0, -1), (0, 1)]));
    }

    #[test]
    fn hopf_cube() {
        let b = BraidWord::parse("1 1").unwrap();
        let cube = build_cube(&LinkDiagram::from_braid(&b)).unwrap();
        let counts: Vec<usize> = cube.vertices.iter().map(|v| v.circles).collect();
        assert_eq!(counts, vec![2, 1, 1, 2]);
        assert!(cube.d_squared_vanishes::<Q>());
        assert_eq!(kh_braid::<Q>(&b).unwrap(), table(&[(0, 0), (0, 2), (2, 4), (2, 6)]));
    }

    #[test]
    fn trefoil() {
        let b = BraidWord::parse("1 1 1").unwrap();
        assert_eq!(kh_braid::<Q>(&b).unwrap(), table(&[(0, 1), (0, 3), (2, 5), (3, 9)]));
        // a stabilization and a conjugate of it
        for w in ["1 1 1 2", "2 1 1 1"] {
            assert_eq!(kh_braid::<Q>(&BraidWord::parse(w).unwrap()).unwrap(), kh_braid::<Q>(&b).unwrap(), "{}", w);
        }
    }

    #[test]
    fn trefoil_mod_two_has_torsion_pair() {
        // the 2-torsion in degree (3, 7) contributes to (2, 7) and (3, 7) over F₂
        let b = BraidWord::parse("1 1 1").unwrap();
        assert_eq!(kh_braid::<F2>(&b).unwrap(), table(&[(0, 1), (0, 3), (2, 5), (2, 7), (3, 7), (3, 9)]));
    }

    #[test]
    fn euler_matches_bracket() {
        for w in ["1", "1 1", "1 1 1", "-1 -1 -1", "1 -2 1 -2", "1 2 1 2", "1 1 2 -1 2", "1 -2 3 -2 1 2"] {
            let b = BraidWord::parse(w).unwrap();
            let cube = build_cube(&LinkDiagram::from_braid(&b)).unwrap();
            assert!(cube.d_squared_vanishes::<Q>());
            assert_eq!(euler_characteristic(&cube.homology::<Q>()), kauffman_bracket(&b), "{}", w);
        }
    }

    #[test]
    fn planar_diagram_trefoil() {
        // left-handed trefoil as a planar diagram code
        let d = LinkDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        assert_eq!(d.n_minus(), 3);
        let mirror = BraidWord::parse("-1 -1 -1").unwrap();
        assert_eq!(kh::<Q>(&d).unwrap(), kh_braid::<Q>(&mirror).unwrap());
        assert!(LinkDiagram::from_pd(&[[1, 2, 3, 9]]).is_err());
    }
}
