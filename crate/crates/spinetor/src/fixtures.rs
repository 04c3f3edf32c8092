//! Built-in example inputs.

use crate::error::Result;
use crate::knot::{dig_tunnel, parse_diagram, DigResult, KnotDiagram};
use crate::spine::{parse_triangulation, BranchedTriangulation};

/// The one-tetrahedron triangulation dual to the abalone spine.
pub const ABALONE_TRI: &str = include_str!("../fixtures/abalone.tri");

/// A knot on the abalone with one crossing of the spine's edge.
pub const ABALONE_KNOT: &str = include_str!("../fixtures/abalone_k.knot");

pub fn abalone() -> BranchedTriangulation {
    parse_triangulation(ABALONE_TRI).expect("built-in fixture")
}

pub fn abalone_knot() -> KnotDiagram {
    parse_diagram(ABALONE_KNOT).expect("built-in fixture")
}

/// The abalone knot with the given sequence of double curls inserted at
/// the first arc.
pub fn curled_knot(signs: &[i8]) -> Result<KnotDiagram> {
    let mut d = abalone_knot();
    for s in signs {
        d = d.add_double_curl(*s, 0)?;
    }
    Ok(d)
}

/// The exterior of the abalone knot after the given curls.
pub fn dug_abalone(signs: &[i8]) -> Result<DigResult> {
    Ok(dig_tunnel(&abalone(), &curled_knot(signs)?)?)
}
