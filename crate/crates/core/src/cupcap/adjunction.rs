//! The cup and cap bimodules over basic algebras and the unit and counit of their
//! adjunction.

use alloc::vec::Vec;

use super::bimod::{bimodule_homs, is_surjective, kernel_bimodule, tensor_bimodules, BimoduleMap};
use super::cup::{cup_bimodule, mirror, CupError};
use super::Level;
use crate::coeff_poly::Field;
use crate::module_cat::basic::Basic;
use crate::module_cat::Bimodule;

/// Cup at position i from level (ℓ,k) to (ℓ+2,k+1), restricted to basic algebras.
#[derive(Clone, Debug)]
pub struct CupCap<F: Field> {
    pub i: usize,
    /// Upper–lower bimodule of the cup.
    pub cup: Bimodule<F>,
    /// Lower–upper bimodule of the cap.
    pub cap: Bimodule<F>,
}

impl<F: Field> CupCap<F> {
    pub fn new(upper: &Level<F>, lower: &Level<F>, i: usize) -> Result<Self, CupError> {
        let c = cup_bimodule(&upper.t, &upper.amb, &lower.t, &lower.amb, i)?;
        let cup = Basic::restrict_bimodule(&upper.basic, &upper.amb, &lower.basic, &lower.amb, &c.bimodule);
        let m = mirror(&upper.amb, &lower.amb, &c.bimodule);
        let cap = Basic::restrict_bimodule(&lower.basic, &lower.amb, &upper.basic, &upper.amb, &m);
        Ok(CupCap { i, cup, cap })
    }

    /// The upper–upper bimodule of cap followed by cup.
    pub fn cup_cap(&self, upper: &Level<F>, lower: &Level<F>) -> Bimodule<F> {
        tensor_bimodules(&upper.basic.alg, &lower.basic.alg, &upper.basic.alg, &self.cup, &self.cap)
    }

    /// The lower–lower bimodule of cup followed by cap.
    pub fn cap_cup(&self, upper: &Level<F>, lower: &Level<F>) -> Bimodule<F> {
        tensor_bimodules(&lower.basic.alg, &upper.basic.alg, &lower.basic.alg, &self.cap, &self.cup)
    }
}

/// Bimodule maps from the regular bimodule in degree `deg`.
pub fn maps_from_regular<F: Field>(level: &Level<F>, x: &Bimodule<F>, deg: i64) -> Vec<BimoduleMap<F>> {
    let a = &level.basic.alg;
    bimodule_homs(a, a, &Bimodule::regular(a), x, deg)
}

/// Bimodule maps to the regular bimodule in degree `deg`.
pub fn maps_to_regular<F: Field>(level: &Level<F>, x: &Bimodule<F>, deg: i64) -> Vec<BimoduleMap<F>> {
    let a = &level.basic.alg;
    bimodule_homs(a, a, x, &Bimodule::regular(a), deg)
}

/// Degrees searched for the unit of the adjunction.
const UNIT_WINDOW: i64 = 4;

/// The unit T → 𝔎 ⊗ 𝔎̇ of the adjunction on the upper level, with its degree: the
/// unique map, up to scalar, in the lowest degree admitting one.
pub fn unit_map<F: Field>(upper: &Level<F>, x: &Bimodule<F>) -> Result<(i64, BimoduleMap<F>), CupError> {
    for d in -UNIT_WINDOW..=UNIT_WINDOW {
        let mut found = maps_from_regular(upper, x, d);
        match found.len() {
            0 => continue,
            1 => return Ok((d, found.pop().unwrap())),
            n => {
                return Err(CupError::PresentationIncomplete(alloc::format!("unit space in degree {} has dimension {}", d, n)))
            }
        }
    }
    Err(CupError::PresentationIncomplete("no unit found".into()))
}

/// The kernel of the unit, the bimodule of the crossing.
#[derive(Clone, Debug)]
pub struct CrossingBimodule<F: Field> {
    pub unit_degree: i64,
    pub bimodule: Bimodule<F>,
}

impl<F: Field> CrossingBimodule<F> {
    pub fn new(upper: &Level<F>, lower: &Level<F>, cc: &CupCap<F>) -> Result<Self, CupError> {
        let a = &upper.basic.alg;
        let x = cc.cup_cap(upper, lower);
        let (d, phi) = unit_map(upper, &x)?;
        if !is_surjective(&x, &phi) {
            return Err(CupError::PresentationIncomplete("unit is not surjective".into()));
        }
        let bimodule = kernel_bimodule(a, a, &Bimodule::regular(a), &x, &phi, d);
        Ok(CrossingBimodule { unit_degree: d, bimodule })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_poly::{F2, Q};
    use crate::cupcap::bimod::*;

    fn kernel_at_two_strands<F: Field>() {
        let lo = Level::<F>::new(0, 0);
        let up = Level::<F>::new(2, 1);
        let a = &up.basic.alg;
        let cc = CupCap::new(&up, &lo, 0).unwrap();
        let x = cc.cup_cap(&up, &lo);
        assert!(x.is_bimodule(a, a));
        assert_eq!(total_dim(&x), 1);
        let (d, phi) = unit_map(&up, &x).unwrap();
        assert_eq!(d, 0);
        let reg = Bimodule::regular(a);
        assert!(is_bimodule_map(a, a, &reg, &x, &phi));
        assert!(is_surjective(&x, &phi));
        let b = CrossingBimodule::new(&up, &lo, &cc).unwrap();
        assert_eq!(total_dim(&b.bimodule), 4);
        assert!(b.bimodule.is_bimodule(a, a));
        // no bimodule map back to the algebra in any degree
        for d in -4..=4 {
            assert!(maps_to_regular(&up, &x, d).is_empty());
        }
    }

    #[test]
    fn unit_kernel_is_four_dimensional() {
        kernel_at_two_strands::<Q>();
        kernel_at_two_strands::<F2>();
    }

    #[test]
    fn unit_at_four_strands() {
        let lo = Level::<Q>::new(2, 1);
        let up = Level::<Q>::new(4, 2);
        let a = &up.basic.alg;
        for i in 0..3 {
            let cc = CupCap::new(&up, &lo, i).unwrap();
            let x = cc.cup_cap(&up, &lo);
            let (d, phi) = unit_map(&up, &x).unwrap();
            assert_eq!(d, 0);
            assert!(is_surjective(&x, &phi));
            let b = CrossingBimodule::new(&up, &lo, &cc).unwrap();
            assert_eq!(total_dim(&b.bimodule) + total_dim(&x), a.dim());
        }
    }

    #[test]
    fn tensor_with_regular_is_identity() {
        let lo = Level::<Q>::new(1, 1);
        let up = Level::<Q>::new(3, 2);
        let cc = CupCap::new(&up, &lo, 1).unwrap();
        let lreg = Bimodule::regular(&lo.basic.alg);
        let t = tensor_bimodules(&up.basic.alg, &lo.basic.alg, &lo.basic.alg, &cc.cup, &lreg);
        for (c, col) in t.cols.iter().enumerate() {
            assert_eq!(col.degs, cc.cup.cols[c].degs);
        }
        assert!(t.is_bimodule(&up.basic.alg, &lo.basic.alg));
    }
}
