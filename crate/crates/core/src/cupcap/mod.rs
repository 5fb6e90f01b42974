//! Cup and cap functors, their adjunction, the crossing bimodules and the truncated
//! Jones–Wenzl projection, all realized on the basic algebras of the tensor-product
//! algebras.

pub mod adjunction;
pub mod bimod;
pub mod tangle;
pub mod cup;
pub mod jw;

use crate::coeff_poly::Field;
use crate::module_cat::basic::Basic;
use crate::module_cat::Alg;
use crate::tensor_algebra::TensorAlgebra;

pub use cup::{cup_bimodule, cup_black, ins_kappa, mirror, CupBimodule, CupError};

/// A tensor-product algebra with its matrix algebra and basic algebra.
#[derive(Clone, Debug)]
pub struct Level<F: Field> {
    pub l: usize,
    pub k: usize,
    pub t: TensorAlgebra<F>,
    pub amb: Alg<F>,
    pub basic: Basic<F>,
}

impl<F: Field> Level<F> {
    pub fn new(l: usize, k: usize) -> Self {
        let t = TensorAlgebra::new(l, k);
        let amb = Alg::from_tensor(&t);
        let basic = Basic::of_tensor(&t, &amb);
        Level { l, k, t, amb, basic }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::{F2, Q};
    use crate::combinatorics::Kappa;
    use crate::decat_oracle::{graded_dim_to_laurent, vector_p};

    #[test]
    fn ins_places_one_black_in_the_cup() {
        let k = Kappa::new(1, vec![0, 1]);
        assert_eq!(ins_kappa(&k, 0).vals, vec![0, 1, 1, 2]);
        assert_eq!(ins_kappa(&k, 1).vals, vec![0, 1, 2, 2]);
        assert_eq!(ins_kappa(&k, 2).vals, vec![0, 1, 1, 2]);
        assert_eq!(cup_black(&ins_kappa(&k, 1), 1), 2);
    }

    fn coevaluation_matches<F: Field>(l: usize, k: usize, i: usize) {
        let lo = Level::<F>::new(l, k);
        let up = Level::<F>::new(l + 2, k + 1);
        let c = cup_bimodule(&up.t, &up.amb, &lo.t, &lo.amb, i).expect("cup builds");
        for (kappa_i, kappa) in lo.t.kappas.iter().enumerate() {
            let coev = vector_p(kappa).coevaluation(i);
            let col = &c.bimodule.cols[kappa_i];
            for (mu_i, mu) in up.t.kappas.iter().enumerate() {
                let dims: alloc::collections::BTreeMap<i64, i64> =
                    col.graded_dims()[mu_i].iter().map(|(&d, &n)| (d, n as i64)).collect();
                let lhs = graded_dim_to_laurent(&dims);
                // the class of the cup is −q⁻¹ times the coevaluation
                let rhs = vector_p(mu).pairing(&coev).shift(-1).scale(-1);
                assert_eq!(lhs, rhs, "l={} k={} i={} {} {}", l, k, i, kappa, mu);
            }
        }
    }

    #[test]
    fn cup_on_zero_strands_is_l1() {
        let lo = Level::<Q>::new(0, 0);
        let up = Level::<Q>::new(2, 1);
        let c = cup_bimodule(&up.t, &up.amb, &lo.t, &lo.amb, 0).unwrap();
        let col = &c.bimodule.cols[0];
        assert_eq!(col.total_dim(), 1);
        let l01 = up.t.idx(&Kappa::new(1, vec![0, 1]));
        assert_eq!(col.dim(l01), 1);
    }

    #[test]
    fn cup_two_strands_all_positions() {
        for k in 0..=2 {
            for i in 0..=2 {
                coevaluation_matches::<Q>(2, k, i);
            }
        }
        coevaluation_matches::<F2>(2, 1, 1);
    }

    #[test]
    fn cup_small() {
        coevaluation_matches::<Q>(0, 0, 0);
        coevaluation_matches::<Q>(1, 0, 0);
        coevaluation_matches::<Q>(1, 1, 0);
        coevaluation_matches::<Q>(1, 1, 1);
    }
}
