//! Tensor-product algebras of sl2 realized through their faithful polynomial representation,
//! with module, complex and functor machinery and two Khovanov homology engines.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod coeff_poly;
pub mod combinatorics;
pub mod cupcap;
pub mod decat_oracle;
pub mod khovanov_cube;
pub mod linalg;
pub mod module_cat;
pub mod schubert_rings;
pub mod tensor_algebra;

pub use coeff_poly::{Field, Fp, MultiPoly, F2, F3, Q};
