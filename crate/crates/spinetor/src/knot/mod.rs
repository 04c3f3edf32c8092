//! Knots on branched spines and their exteriors.

pub mod diagram;
pub mod dig;

pub use diagram::{parse_diagram, Event, KnotDiagram};
pub use dig::{dig_tunnel, DigResult, Side, VertexTag};

use crate::complex::AttachedComplex;
use crate::error::Result;
use crate::homology::{Cocycle, TreeChoice};

impl DigResult {
    /// The cocycle of the exterior, oriented so that the meridian has class
    /// `+1` when the free part of `H_1` has rank one.
    pub fn cocycle(&self, choice: TreeChoice) -> Result<Cocycle> {
        let mut c = Cocycle::compute(&self.triangulation, choice)?;
        if c.rank() == 1 && c.path_class(&self.meridian)[0] < 0 {
            c.transform(&[vec![-1]]);
        }
        Ok(c)
    }

    /// The attached complex of the exterior with the meridian-oriented cocycle.
    pub fn complex(&self, choice: TreeChoice) -> Result<AttachedComplex> {
        Ok(AttachedComplex::with_cocycle(&self.triangulation, self.cocycle(choice)?)?)
    }

    pub fn meridian_class(&self, c: &Cocycle) -> Vec<i64> {
        c.path_class(&self.meridian)
    }

    pub fn longitude_class(&self, c: &Cocycle) -> Vec<i64> {
        c.path_class(&self.longitude)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{check_complex, Colour};
    use crate::spine::{dual_spine, parse_triangulation};

    fn base() -> DigResult {
        let t = parse_triangulation(include_str!("../../fixtures/abalone.tri")).unwrap();
        let d = parse_diagram(include_str!("../../fixtures/abalone_k.knot")).unwrap();
        dig_tunnel(&t, &d).unwrap()
    }

    #[test]
    fn dug_abalone_counts() {
        let r = base();
        let s = dual_spine(&r.triangulation);
        assert_eq!((s.vertices, s.edges.len(), s.regions.len()), (5, 10, 6));
    }

    #[test]
    fn meridian_generates_and_longitude_has_framing_minus_one() {
        let r = base();
        let c = r.cocycle(TreeChoice::Bfs).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(r.meridian_class(&c), vec![1]);
        assert_eq!(r.longitude_class(&c), vec![-1]);
    }

    #[test]
    fn dug_complex_counts_and_pattern() {
        let r = base();
        let c = r.complex(TreeChoice::Bfs).unwrap();
        assert_eq!(c.counts(&[Colour::White, Colour::Contact]), [3, 14, 16, 5]);
        let rep = check_complex(&c);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.contact_circles, 2);
    }
}
