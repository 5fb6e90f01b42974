use proptest::prelude::*;
use stendhal::cupcap::tangle::{Pipeline, TangleWord};
use stendhal::decat_oracle::{kauffman_bracket, BraidWord, LaurentPoly};
use stendhal::khovanov_cube::{build_cube, euler_characteristic, kh_braid, LinkDiagram};
use stendhal::module_cat::BigradedTable;
use stendhal::{Field, Fp, F2, F3, Q};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..6, -5i64..5), 0..5).prop_map(|v| LaurentPoly::from_pairs(&v))
}

fn braid(strands: usize, len: usize) -> impl Strategy<Value = BraidWord> {
    let s = strands as i64;
    prop::collection::vec((1..s, any::<bool>()), 0..=len)
        .prop_map(move |v| BraidWord::new(strands, v.into_iter().map(|(i, p)| if p { i } else { -i }).collect()).unwrap())
}

fn total(t: &BigradedTable) -> usize {
    t.values().sum()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn prime_field_inverses(x in 1i64..1000) {
        let a = <Fp<7>>::from_i64(x);
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv()).is_one());
        }
        let q = Q::from_i64(x);
        prop_assert!(q.mul(&q.inv()).is_one());
    }

    #[test]
    fn braid_parse_round_trip(b in braid(4, 8)) {
        let text: Vec<String> = b.letters.iter().map(|x| x.to_string()).collect();
        let back = BraidWord::parse(&text.join(" ")).unwrap();
        prop_assert_eq!(back.letters, b.letters);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn cube_is_a_complex_categorifying_jones(b in braid(3, 6)) {
        let cube = build_cube(&LinkDiagram::from_braid(&b)).unwrap();
        prop_assert!(cube.d_squared_vanishes::<Q>());
        prop_assert!(cube.d_squared_vanishes::<F2>());
        let jones = kauffman_bracket(&b);
        for t in [cube.homology::<Q>(), cube.homology::<F2>(), cube.homology::<F3>()] {
            prop_assert_eq!(euler_characteristic(&t), jones.clone());
        }
    }

    #[test]
    fn mirror_negates_bidegrees(b in braid(3, 5)) {
        let t = kh_braid::<Q>(&b).unwrap();
        let m = kh_braid::<Q>(&b.mirror()).unwrap();
        let flipped: BigradedTable = t.iter().map(|(&(h, q), &n)| ((-h, -q), n)).collect();
        prop_assert_eq!(m, flipped);
        prop_assert_eq!(kauffman_bracket(&b.mirror()), kauffman_bracket(&b).bar());
    }

    #[test]
    fn rationals_bound_mod_two_ranks(b in braid(3, 6)) {
        let q = kh_braid::<Q>(&b).unwrap();
        let f = kh_braid::<F2>(&b).unwrap();
        prop_assert!(total(&q) <= total(&f));
        prop_assert_eq!(total(&q) % 2, 0);
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn functor_engine_matches_cube(b in braid(2, 4)) {
        let word = TangleWord::braid_closure(&b);
        let mut p = Pipeline::<Q>::new(12);
        prop_assert_eq!(p.khovanov(&word).unwrap(), kh_braid::<Q>(&b).unwrap());
    }
}

#[test]
fn tangle_words_reject_bad_arity() {
    for w in ["cap 0", "cup 0, pos 1", "cup 0, cup 3", "cup 0, twist 0", "cup"] {
        assert!(TangleWord::parse(w).is_err(), "{}", w);
    }
}
