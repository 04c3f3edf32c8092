//! Reidemeister–Turaev torsion of combinatorial Euler structures on
//! branched standard spines, encoded by their dual branched ideal
//! triangulations, together with tunnel digging for knot exteriors.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod euler;
pub mod fixtures;
pub mod homology;
pub mod knot;
pub mod spine;
pub mod torsion;

pub use error::{Error, Result};
