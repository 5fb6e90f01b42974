//! Scalars and polynomials.

pub mod field;
pub mod poly;

pub use field::{Field, Fp, F2, F3, Q};
pub use poly::{complete_symmetric, demazure, elementary_symmetric, MultiPoly};
