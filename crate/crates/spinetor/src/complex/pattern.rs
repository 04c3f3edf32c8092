//! The white/black/contact pattern on the boundary of the complex.

use std::collections::BTreeMap;

use serde::Serialize;

use super::local::{kite_corner_sign, Colour, LocalCell};
use super::AttachedComplex;
use crate::error::ComplexError;

/// A contact circle as a cyclic sequence of 1-cells, each with the sign
/// relating its own orientation to the orientation as boundary of the
/// black region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactCircle {
    pub edges: Vec<(usize, i8)>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryPattern {
    pub white: Vec<usize>,
    pub black: Vec<usize>,
    pub contact: Vec<usize>,
    pub circles: Vec<ContactCircle>,
}

impl AttachedComplex {
    /// Sign of each contact 1-cell relative to its orientation as part of
    /// the boundary of the black region.
    pub fn contact_orientation(&self, e: usize) -> i8 {
        let Some((i, LocalCell::S(a, [b, c]))) = self.cell(e).home else {
            panic!("cell {e} is not a contact edge");
        };
        let kite = if b < a { LocalCell::K(a, b) } else { LocalCell::K(a, c) };
        let sgn = kite_corner_sign(kite, self.triangulation().eps(i));
        let cyc = kite.cycle();
        let (s, t) = LocalCell::S(a, [b, c]).endpoints();
        let is = cyc.iter().position(|x| *x == s).expect("centre on kite");
        let fwd = cyc[(is + 1) % cyc.len()] == t;
        if fwd {
            sgn
        } else {
            -sgn
        }
    }

    /// Labels the boundary cells and extracts the oriented contact circles.
    pub fn boundary_pattern(&self) -> Result<BoundaryPattern, ComplexError> {
        let of = |col: Colour| -> Vec<usize> { (0..self.cells().len()).filter(|i| self.cell(*i).colour == col).collect() };
        let white = of(Colour::White);
        let black = of(Colour::Black);
        let contact = of(Colour::Contact);
        for &c in &contact {
            if self.cell(c).dim > 1 {
                return Err(ComplexError::Pattern(format!("contact cell {c} has dimension {}", self.cell(c).dim)));
            }
        }
        for &c in white.iter().chain(&black) {
            let own = self.cell(c).colour;
            for inc in self.boundary(c) {
                let fc = self.cell(inc.face).colour;
                if fc != own && fc != Colour::Contact {
                    return Err(ComplexError::Pattern(format!("cell {c} of colour {own:?} has a face {} of colour {fc:?}", inc.face)));
                }
            }
        }
        let mut faces_of: BTreeMap<usize, [usize; 2]> = BTreeMap::new();
        for &c in white.iter().chain(&black) {
            if self.cell(c).dim != 2 {
                continue;
            }
            let side = usize::from(self.cell(c).colour == Colour::Black);
            for inc in self.boundary(c) {
                if self.cell(inc.face).colour == Colour::Contact {
                    faces_of.entry(inc.face).or_default()[side] += 1;
                }
            }
        }
        let edges: Vec<usize> = contact.iter().copied().filter(|c| self.cell(*c).dim == 1).collect();
        for &e in &edges {
            if faces_of.get(&e) != Some(&[1, 1]) {
                return Err(ComplexError::Pattern(format!("contact edge {e} does not separate white from black")));
            }
        }

        // oriented successor of each contact vertex
        let mut next: BTreeMap<usize, (usize, i8)> = BTreeMap::new();
        for &e in &edges {
            let o = self.contact_orientation(e);
            let b = self.boundary(e);
            let end = |sign: i8| b.iter().find(|x| x.sign == sign).map(|x| x.face).expect("edge endpoint");
            let (from, _) = if o > 0 { (end(-1), end(1)) } else { (end(1), end(-1)) };
            if next.insert(from, (e, o)).is_some() {
                return Err(ComplexError::Pattern(format!("contact vertex {from} starts two contact edges")));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut circles = Vec::new();
        for &e in &edges {
            if seen.contains(&e) {
                continue;
            }
            let mut circle = ContactCircle { edges: Vec::new(), vertices: Vec::new() };
            let mut cur = e;
            loop {
                seen.insert(cur);
                let o = self.contact_orientation(cur);
                circle.edges.push((cur, o));
                let b = self.boundary(cur);
                let head = b.iter().find(|x| x.sign == o).map(|x| x.face).expect("edge endpoint");
                circle.vertices.push(head);
                let Some(&(nx, _)) = next.get(&head) else {
                    return Err(ComplexError::Pattern(format!("contact circle breaks at vertex {head}")));
                };
                if nx == e {
                    break;
                }
                if seen.contains(&nx) {
                    return Err(ComplexError::Pattern("contact edges do not form disjoint circles".into()));
                }
                cur = nx;
            }
            circles.push(circle);
        }
        let on_circles: usize = circles.iter().map(|c| c.vertices.len()).sum();
        if on_circles != contact.len() - edges.len() {
            return Err(ComplexError::Pattern("isolated contact vertex".into()));
        }
        Ok(BoundaryPattern { white, black, contact, circles })
    }
}
