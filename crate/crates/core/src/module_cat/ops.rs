//! Simples, standard modules, the functors 𝔈 and 𝔉, graded Hom and Ext.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::alg::Alg;
use super::complex::{BigradedTable, Laurent};
use super::module::{indices_by_degree, GradedModule, GradedSubspace};
use super::resolve::Resolution;
use crate::coeff_poly::Field;
use crate::combinatorics::Kappa;
use crate::linalg::Matrix;
use crate::tensor_algebra::{Gen, TensorAlgebra};

/// Graded dimension of Hom(P_i, P_j) = e_i A e_j, as a Laurent polynomial in q.
pub fn hom_dim_graded<F: Field>(alg: &Alg<F>, i: usize, j: usize) -> Laurent {
    alg.graded_block_dim(i, j).into_iter().map(|(d, n)| (d, n as i64)).collect()
}

/// The simple quotient of a projective over a basic algebra.
pub fn simple_top<F: Field>(alg: &Alg<F>, b: usize) -> GradedModule<F> {
    let p = GradedModule::projective(alg, b, 0);
    let mut rad = Vec::new();
    for t in 0..alg.n_idem() {
        for j in 0..p.dim(t) {
            if t == b && j == 0 {
                continue;
            }
            let mut v = vec![F::zero(); p.dim(t)];
            v[j] = F::one();
            rad.push((t, v));
        }
    }
    let sub = GradedSubspace::span(&p.degs, &rad);
    debug_assert!(p.is_submodule(alg, &sub));
    p.quotient(alg, &sub).0
}

/// P_κ modulo the images of all maps from P_κ' with κ' > κ pointwise.
pub fn standard_module<F: Field>(t: &TensorAlgebra<F>, alg: &Alg<F>, kappa: &Kappa) -> GradedModule<F> {
    let s = t.idx(kappa);
    let p = GradedModule::projective(alg, s, 0);
    let mut gens = Vec::new();
    for (x, other) in t.kappas.iter().enumerate() {
        if other == kappa || !kappa.pointwise_le(other) {
            continue;
        }
        for &b in alg.block(x, s) {
            let mut v = vec![F::zero(); p.dim(x)];
            v[alg.local_index(s, b)] = F::one();
            gens.push((x, v));
        }
    }
    let sub = p.generated(alg, &gens);
    p.quotient(alg, &sub).0
}

/// The loading with one more black strand at the far right.
pub fn append_black(kappa: &Kappa) -> Kappa {
    Kappa::new(kappa.k + 1, kappa.vals.clone())
}

/// 𝔈M = e_φ M: restriction along the inclusion adding a black strand at the far right.
/// `upper` carries M (k blacks), `lower` has k-1 blacks.
pub fn functor_e<F: Field>(
    upper: &TensorAlgebra<F>,
    lower: &TensorAlgebra<F>,
    lower_alg: &Alg<F>,
    m: &GradedModule<F>,
) -> GradedModule<F> {
    assert_eq!(upper.k, lower.k + 1);
    let ugens: BTreeMap<Gen, usize> = upper.generators().into_iter().enumerate().map(|(i, g)| (g, i)).collect();
    let pieces: Vec<usize> = lower.kappas.iter().map(|x| upper.idx(&append_black(x))).collect();
    let degs = pieces.iter().map(|&p| m.degs[p].clone()).collect();
    let act = lower
        .generators()
        .iter()
        .zip(&lower_alg.gens)
        .map(|(g, ag)| {
            let up = Gen::new(g.kind, g.i, &append_black(&g.src));
            match ugens.get(&up) {
                Some(&ui) => m.act[ui].clone(),
                None => Matrix::zeros(m.dim(pieces[ag.tgt]), m.dim(pieces[ag.src])),
            }
        })
        .collect();
    GradedModule { degs, act }
}

/// Graded Ext^n(M, N) from a projective resolution of M: (n, q) -> dim, q the degree of
/// the cochain maps.
pub fn ext_bigraded<F: Field>(alg: &Alg<F>, res: &Resolution<F>, n: &GradedModule<F>) -> BigradedTable {
    let mut out = BigradedTable::new();
    let len = res.levels.len();
    let cochain = |lv: usize, q: i64| -> Vec<(usize, usize)> {
        // (summand, index in N piece) with degree shift + q
        let mut v = Vec::new();
        if lv >= len {
            return v;
        }
        for (z, s) in res.levels[lv].summands.iter().enumerate() {
            let by = indices_by_degree(&n.degs[s.idem]);
            if let Some(ix) = by.get(&(s.shift + q)) {
                for &j in ix {
                    v.push((z, j));
                }
            }
        }
        v
    };
    let coboundary = |lv: usize, q: i64| -> Matrix<F> {
        let src = cochain(lv, q);
        let tgt = cochain(lv + 1, q);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        if lv + 1 >= len {
            return m;
        }
        let free = &res.levels[lv];
        let up = &res.levels[lv + 1];
        for (c, &(z, j)) in src.iter().enumerate() {
            let mut images: Vec<Vec<F>> = free.summands.iter().map(|s| vec![F::zero(); n.dim(s.idem)]).collect();
            images[z][j] = F::one();
            let phi = free.map_to(alg, n, &images);
            for (r, &(z2, j2)) in tgt.iter().enumerate() {
                let s2 = up.summands[z2];
                let u = res.maps[lv + 1][s2.idem].mul_vec(&up.generator(z2));
                let val = phi[s2.idem].mul_vec(&u);
                if !val[j2].is_zero() {
                    m.set(r, c, val[j2].clone());
                }
            }
        }
        m
    };
    let mut qs: Vec<i64> = Vec::new();
    for lv in 0..len {
        for s in &res.levels[lv].summands {
            for &d in &n.degs[s.idem] {
                qs.push(d - s.shift);
            }
        }
    }
    qs.sort();
    qs.dedup();
    for q in qs {
        for lv in 0..len {
            let dim = cochain(lv, q).len();
            if dim == 0 {
                continue;
            }
            let outr = coboundary(lv, q).rank();
            let inr = if lv == 0 { 0 } else { coboundary(lv - 1, q).rank() };
            let r = dim - outr - inr;
            if r > 0 {
                out.insert((lv as i64, q), r);
            }
        }
    }
    out
}

/// A cocycle of Ext^n(M, M): images of the level-n generators in M.
pub type Cocycle<F> = Vec<Vec<F>>;

/// Yoneda product ξ·η of cocycles for Ext^a(M,M) and Ext^b(M,M) (η applied first),
/// computed by lifting η to a chain map. Returns the cocycle on level a+b, or `None`
/// when the resolution has no such level (the product vanishes).
pub fn yoneda<F: Field>(alg: &Alg<F>, res: &Resolution<F>, xi: (usize, &Cocycle<F>), eta: (usize, &Cocycle<F>)) -> Option<Cocycle<F>> {
    let (a, xi) = xi;
    let (b, eta) = eta;
    if a + b >= res.levels.len() {
        return None;
    }
    // lift η: level b+j -> level j
    let mut lifts: Vec<Vec<Matrix<F>>> = Vec::new();
    for j in 0..=a {
        let src = &res.levels[b + j];
        let mut images = Vec::new();
        for (z, s) in src.summands.iter().enumerate() {
            let t = s.idem;
            let rhs = if j == 0 {
                eta[z].clone()
            } else {
                let u = res.maps[b + j][t].mul_vec(&src.generator(z));
                lifts[j - 1][t].mul_vec(&u)
            };
            let deg = s.shift + cocycle_degree(res, b, eta);
            let x = res.solve(j, t, deg, &rhs).expect("lift exists");
            images.push(x);
        }
        lifts.push(src.map_to(alg, &res.levels[j].module, &images));
    }
    // ξ ∘ lift_a
    let free_a = &res.levels[a];
    let phi = free_a.map_to(alg, &res.target, xi);
    let top = &res.levels[a + b];
    Some(
        top.summands
            .iter()
            .enumerate()
            .map(|(z, s)| phi[s.idem].mul_vec(&lifts[a][s.idem].mul_vec(&top.generator(z))))
            .collect(),
    )
}

/// Internal degree of a homogeneous cocycle on level n.
pub fn cocycle_degree<F: Field>(res: &Resolution<F>, n: usize, c: &Cocycle<F>) -> i64 {
    for (z, s) in res.levels[n].summands.iter().enumerate() {
        for (j, x) in c[z].iter().enumerate() {
            if !x.is_zero() {
                return res.target.degs[s.idem][j] - s.shift;
            }
        }
    }
    0
}

/// Graded dimensions of the pieces of a module, as Laurent polynomials per idempotent.
pub fn graded_character<F: Field>(m: &GradedModule<F>) -> Vec<Laurent> {
    m.graded_dims().into_iter().map(|d| d.into_iter().map(|(q, n)| (q, n as i64)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::{F2, Q};
    use crate::combinatorics::enumerate_backdrops;
    use crate::module_cat::basic::Basic;

    fn level_labels<F: Field>(alg: &Alg<F>, r: &Resolution<F>) -> Vec<Vec<alloc::string::String>> {
        r.levels.iter().map(|l| l.summands.iter().map(|s| alg.labels[s.idem].clone()).collect()).collect()
    }

    fn two_strand<F: Field>() -> (Basic<F>, usize, usize) {
        let t = TensorAlgebra::<F>::new(2, 1);
        let a = Alg::from_tensor(&t);
        let b = Basic::of_tensor(&t, &a);
        let i0 = b.alg.labels.iter().position(|x| x == "(0,0)").unwrap();
        let i1 = b.alg.labels.iter().position(|x| x == "(0,1)").unwrap();
        (b, i0, i1)
    }

    fn resolutions_of_simples<F: Field>() {
        let (b, i0, i1) = two_strand::<F>();
        let l0 = simple_top(&b.alg, i0);
        let l1 = simple_top(&b.alg, i1);
        assert_eq!((l0.total_dim(), l1.total_dim()), (1, 1));
        let r0 = Resolution::new(&b.alg, &l0, 6);
        assert!(r0.complete);
        assert_eq!(level_labels(&b.alg, &r0), vec![vec!["(0,0)"], vec!["(0,1)"]]);
        let r1 = Resolution::new(&b.alg, &l1, 6);
        assert!(r1.complete);
        assert_eq!(level_labels(&b.alg, &r1), vec![vec!["(0,1)"], vec!["(0,0)"], vec!["(0,1)"]]);
        let c = r1.to_complex(&b.alg, 0);
        assert!(c.is_complex(&b.alg));
        assert!(c.entries_homogeneous(&b.alg));

        let ext = ext_bigraded(&b.alg, &r1, &l1);
        let mut by_n = BTreeMap::new();
        for (&(n, _), &d) in &ext {
            *by_n.entry(n).or_insert(0) += d;
        }
        assert_eq!(by_n, BTreeMap::from([(0, 1), (2, 1)]));
        let ext01 = ext_bigraded(&b.alg, &r0, &l1);
        assert!(!ext01.keys().any(|&(n, _)| n == 0));
    }

    #[test]
    fn simples_at_two_strands() {
        resolutions_of_simples::<Q>();
        resolutions_of_simples::<F2>();
    }

    #[test]
    fn degree_two_class_squares_to_zero() {
        let (b, _, i1) = two_strand::<Q>();
        let l1 = simple_top(&b.alg, i1);
        let r1 = Resolution::new(&b.alg, &l1, 6);
        let top = &r1.levels[2];
        let cls: Cocycle<Q> = top.summands.iter().map(|s| vec![Q::one(); l1.dim(s.idem)]).collect();
        let one: Cocycle<Q> = r1.levels[0].summands.iter().map(|s| vec![Q::one(); l1.dim(s.idem)]).collect();
        // the unit acts as the identity
        assert_eq!(yoneda(&b.alg, &r1, (2, &cls), (0, &one)), Some(cls.clone()));
        let sq = yoneda(&b.alg, &r1, (2, &cls), (2, &cls));
        assert!(sq.map_or(true, |c| c.iter().flatten().all(|x| x.is_zero())));
    }

    #[test]
    fn standard_modules_match_backdrops() {
        for (l, k) in [(2, 1), (3, 1), (2, 2), (3, 2), (4, 2)] {
            let t = TensorAlgebra::<Q>::new(l, k);
            let a = Alg::from_tensor(&t);
            for (part, bs) in enumerate_backdrops(l, k) {
                let s = standard_module(&t, &a, &part.bottom_kappa());
                assert_eq!(s.total_dim(), bs.len(), "l={l} k={k} {part:?}");
            }
        }
    }

    #[test]
    fn hom_dims_two_strand() {
        let t = TensorAlgebra::<Q>::new(2, 1);
        let a = Alg::from_tensor(&t);
        let i0 = t.idx(&Kappa::new(1, vec![0, 0]));
        let i1 = t.idx(&Kappa::new(1, vec![0, 1]));
        assert_eq!(hom_dim_graded(&a, i0, i0), BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(hom_dim_graded(&a, i1, i1), BTreeMap::from([(0, 1)]));
        assert_eq!(hom_dim_graded(&a, i0, i1), hom_dim_graded(&a, i1, i0));
    }

    #[test]
    fn e_functor_on_simples() {
        let up = TensorAlgebra::<Q>::new(2, 1);
        let ua = Alg::from_tensor(&up);
        let lo = TensorAlgebra::<Q>::new(2, 0);
        let la = Alg::from_tensor(&lo);
        let b = Basic::of_tensor(&up, &ua);
        // simples as modules over the ambient algebra: tops of P_κ for the two separated κ
        for (label, want) in [("(0,0)", 1), ("(0,1)", 0)] {
            let i = up.kappas.iter().position(|x| x.label() == label).unwrap();
            let bi = b.alg.labels.iter().position(|x| x == label).unwrap();
            assert_eq!(b.kappa[bi], i);
            let p = GradedModule::projective(&ua, i, 0);
            let mut rad = Vec::new();
            for t in 0..ua.n_idem() {
                for j in 0..p.dim(t) {
                    if !(t == i && j == 0) {
                        let mut v = vec![Q::zero(); p.dim(t)];
                        v[j] = Q::one();
                        rad.push((t, v));
                    }
                }
            }
            let sub = p.generated(&ua, &rad);
            let (l, _) = p.quotient(&ua, &sub);
            assert_eq!(l.total_dim(), 1);
            let e = functor_e(&up, &lo, &la, &l);
            assert!(e.is_module(&la));
            assert_eq!(e.total_dim(), want);
        }
    }

    #[test]
    fn e_of_projectives_is_projective() {
        for (l, k) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let up = TensorAlgebra::<Q>::new(l, k);
            let ua = Alg::from_tensor(&up);
            let lo = TensorAlgebra::<Q>::new(l, k - 1);
            let la = Alg::from_tensor(&lo);
            let lb = Basic::of_tensor(&lo, &la);
            for s in 0..ua.n_idem() {
                if ua.rep_dim(s) == 0 {
                    continue;
                }
                let e = functor_e(&up, &lo, &la, &GradedModule::projective(&ua, s, 0));
                assert!(e.is_module(&la));
                let (eb, _) = lb.restrict_module(&la, &e);
                let r = Resolution::new(&lb.alg, &eb, 4);
                assert!(r.complete && r.levels.len() <= 1, "l={l} k={k} s={s}");
            }
        }
    }
}
