//! Consistency report and deterministic dump of an attached complex.

use serde::Serialize;

use super::local::Colour;
use super::{AttachedComplex, Cell, Incidence};
use crate::homology::H1Summary;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub counts: [usize; 4],
    /// Counts of the cells outside the white region and the contact circles.
    pub relative_counts: [usize; 4],
    pub euler_characteristic: i64,
    pub boundary_squares_to_zero: bool,
    pub pattern_valid: bool,
    pub pattern_error: Option<String>,
    pub contact_circles: usize,
    /// `chi(M) - (chi(closure of W) - chi(C))`.
    pub euler_residue: i64,
    pub h1: H1Summary,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.boundary_squares_to_zero && self.pattern_valid && self.euler_residue == 0
    }
}

pub fn check_complex(c: &AttachedComplex) -> ComplexReport {
    let all = [Colour::White, Colour::Black, Colour::Contact, Colour::Interior, Colour::Base];
    let chi = c.euler_characteristic(&all);
    let chi_white = c.euler_characteristic(&[Colour::White]);
    let pattern = c.boundary_pattern();
    ComplexReport {
        counts: c.counts(&[]),
        relative_counts: c.counts(&[Colour::White, Colour::Contact]),
        euler_characteristic: chi,
        boundary_squares_to_zero: c.boundary_squares_to_zero(),
        pattern_valid: pattern.is_ok(),
        pattern_error: pattern.as_ref().err().map(ToString::to_string),
        contact_circles: pattern.as_ref().map_or(0, |p| p.circles.len()),
        euler_residue: chi - chi_white,
        h1: c.cocycle().summary(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellDump<'a> {
    pub id: usize,
    #[serde(flatten)]
    pub cell: &'a Cell,
    pub boundary: &'a [Incidence],
}

/// Cells with their boundaries, ordered by id.
pub fn dump(c: &AttachedComplex) -> Vec<CellDump<'_>> {
    (0..c.cells().len()).map(|id| CellDump { id, cell: c.cell(id), boundary: c.boundary(id) }).collect()
}
