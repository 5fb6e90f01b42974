use stendhal::combinatorics::enumerate_kappas;
use stendhal::decat_oracle::{graded_dim_to_laurent, vector_p};
use stendhal::module_cat::{ops::hom_dim_graded, Alg};
use stendhal::tensor_algebra::TensorAlgebra;
use stendhal::{Field, F2, Q};

fn check<F: Field>(l: usize, k: usize) {
    let t = TensorAlgebra::<F>::new(l, k);
    let alg = Alg::from_tensor(&t);
    for a in &enumerate_kappas(l, k) {
        for b in &enumerate_kappas(l, k) {
            let hom = graded_dim_to_laurent(&hom_dim_graded(&alg, t.idx(a), t.idx(b)));
            let form = vector_p(a).pairing(&vector_p(b));
            assert_eq!(hom, form, "l={} k={} {} {}", l, k, a, b);
        }
    }
}

#[test]
fn calibration_at_two_strands() {
    for k in 0..=2 {
        check::<Q>(2, k);
    }
}

#[test]
fn graded_hom_matches_pairing() {
    for l in 1..=4 {
        for k in 0..=l.min(3) {
            check::<Q>(l, k);
        }
    }
}

#[test]
fn graded_hom_matches_pairing_mod_two() {
    for l in 1..=3 {
        for k in 0..=l {
            check::<F2>(l, k);
        }
    }
}
