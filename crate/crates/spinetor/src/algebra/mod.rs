//! Exact algebra: integer Smith normal form, integer polynomials, the
//! rational function field and fraction-free determinants.

pub mod bareiss;
pub mod laurent;
pub mod poly;
pub mod snf;
pub mod sparse;

pub use laurent::{default_names, LaurentRational};
pub use poly::Poly;
