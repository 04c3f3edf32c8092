//! Euler chains: spiders of legs joining a head cell to target cells, with
//! the index coefficient `(-1)^dim` of each target.

mod blacken;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use blacken::{blacken, Direction};

use crate::complex::local::{mid, LocalCell};
use crate::complex::{vadd, vsub, AttachedComplex, Colour};
use crate::error::ChainError;
use crate::spine::face_verts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// Covers every cell outside the white region and the contact circles.
    Convex,
    /// Covers every cell outside the white region.
    Concave,
    /// Covers every cell.
    Blackened,
}

impl ChainKind {
    pub fn name(self) -> &'static str {
        match self {
            ChainKind::Convex => "convex",
            ChainKind::Concave => "concave",
            ChainKind::Blackened => "blackened",
        }
    }

    fn covers(self, colour: Colour) -> bool {
        match self {
            ChainKind::Convex => !matches!(colour, Colour::White | Colour::Contact),
            ChainKind::Concave => colour != Colour::White,
            ChainKind::Blackened => true,
        }
    }
}

/// A leg runs inside one tetrahedron from an occurrence of the head cell to
/// an occurrence of the target cell, optionally followed by a loop whose
/// deck class is `detour`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Leg {
    pub head: usize,
    pub head_occ: (usize, LocalCell),
    pub target: usize,
    pub target_occ: (usize, LocalCell),
    pub coeff: i8,
    pub detour: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerChain {
    pub kind: ChainKind,
    pub legs: Vec<Leg>,
}

/// Result of the boundary bookkeeping for one family of cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BookkeepingCase {
    pub family: &'static str,
    pub cells: usize,
    pub failures: Vec<usize>,
}

fn ind(dim: usize) -> i8 {
    if dim.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn make_leg(c: &AttachedComplex, head_occ: (usize, LocalCell), target_occ: (usize, LocalCell), coeff: i8) -> Leg {
    let cell = |o: (usize, LocalCell)| c.occurrence(o.0, o.1).expect("leg ends are cells of the complex").cell;
    Leg { head: cell(head_occ), head_occ, target: cell(target_occ), target_occ, coeff, detour: vec![0; c.rank()] }
}

/// The canonical convex Euler chain: one leg from a black vertex of each
/// tetrahedron to every cell outside the white region and the contact
/// circles.
pub fn build_s_prime(c: &AttachedComplex) -> Result<EulerChain, ChainError> {
    use LocalCell::*;
    let mut legs = Vec::new();
    for cell in c.cells() {
        if !ChainKind::Convex.covers(cell.colour) || cell.colour == Colour::Base {
            continue;
        }
        let Some((i, n)) = cell.home else { continue };
        let head = match n {
            E(a, b) => P(b, a),
            H(k) => {
                let [x, y, z] = face_verts(k as usize).map(|r| r as u8);
                mid(z, x, y)
            }
            V => Z(3),
            K(a, b) | L(a, b, _) => P(a, b),
            S(a, bc) => M(a, bc),
            P(..) | M(..) | Z(..) => continue,
        };
        legs.push(make_leg(c, (i, head), (i, n), ind(n.dim())));
    }
    let z = EulerChain { kind: ChainKind::Convex, legs };
    z.check_bookkeeping(c)?;
    Ok(z)
}

/// Adds one half-edge leg along every contact edge, from its end in the
/// orientation as boundary of the black region.
pub fn build_s_second(c: &AttachedComplex, s: &EulerChain) -> Result<EulerChain, ChainError> {
    if s.kind != ChainKind::Convex {
        return Err(ChainError::KindMismatch { expected: "convex", found: s.kind.name() });
    }
    let mut legs = s.legs.clone();
    legs.extend(gamma_legs(c));
    Ok(EulerChain { kind: ChainKind::Concave, legs })
}

pub(crate) fn gamma_legs(c: &AttachedComplex) -> Vec<Leg> {
    let mut legs = Vec::new();
    for (id, cell) in c.cells().iter().enumerate() {
        if cell.colour != Colour::Contact || cell.dim != 1 {
            continue;
        }
        let (i, n) = cell.home.expect("contact edges are not collapsed");
        let (s, e) = n.endpoints();
        let end = if c.contact_orientation(id) > 0 { e } else { s };
        legs.push(make_leg(c, (i, end), (i, n), -1));
    }
    legs
}

/// Removes the contact half-edge legs of a concave chain.
pub fn convexify(c: &AttachedComplex, z: &EulerChain) -> Result<EulerChain, ChainError> {
    if z.kind != ChainKind::Concave {
        return Err(ChainError::KindMismatch { expected: "concave", found: z.kind.name() });
    }
    let legs = z.legs.iter().filter(|l| c.cell(l.target).colour != Colour::Contact).cloned().collect();
    Ok(EulerChain { kind: ChainKind::Convex, legs })
}

impl EulerChain {
    /// Formal boundary: each target gains its coefficient, each head loses it.
    pub fn formal_boundary(&self) -> BTreeMap<usize, i64> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for l in &self.legs {
            *acc.entry(l.target).or_default() += i64::from(l.coeff);
            *acc.entry(l.head).or_default() -= i64::from(l.coeff);
        }
        acc.retain(|_, v| *v != 0);
        acc
    }

    /// Cells whose formal boundary coefficient differs from the required
    /// `(-1)^dim` (or from zero outside the covered cells).
    pub fn bookkeeping_failures(&self, c: &AttachedComplex) -> Vec<usize> {
        let acc = self.formal_boundary();
        (0..c.cells().len())
            .filter(|id| {
                let cell = c.cell(*id);
                let want = if self.kind.covers(cell.colour) { i64::from(ind(cell.dim)) } else { 0 };
                acc.get(id).copied().unwrap_or(0) != want
            })
            .collect()
    }

    pub fn check_bookkeeping(&self, c: &AttachedComplex) -> Result<(), ChainError> {
        match self.bookkeeping_failures(c).len() {
            0 => Ok(()),
            n => Err(ChainError::Bookkeeping(n)),
        }
    }

    /// Bookkeeping split by family of target cell.
    pub fn bookkeeping_cases(&self, c: &AttachedComplex) -> Vec<BookkeepingCase> {
        let bad: BTreeSet<usize> = self.bookkeeping_failures(c).into_iter().collect();
        let families: [(&'static str, fn(LocalCell) -> bool); 7] = [
            ("solids", |n| matches!(n, LocalCell::V)),
            ("hexagons", |n| matches!(n, LocalCell::H(..))),
            ("edges", |n| matches!(n, LocalCell::E(..))),
            ("kites", |n| matches!(n, LocalCell::K(..))),
            ("long kite edges", |n| matches!(n, LocalCell::L(..))),
            ("short kite edges", |n| matches!(n, LocalCell::S(..))),
            ("vertices", |n| n.dim() == 0),
        ];
        families
            .iter()
            .map(|(family, pred)| {
                let ids: Vec<usize> = (0..c.cells().len()).filter(|id| c.cell(*id).home.map_or(*family == "vertices", |h| pred(h.1))).collect();
                BookkeepingCase { family, cells: ids.len(), failures: ids.into_iter().filter(|id| bad.contains(id)).collect() }
            })
            .collect()
    }

    /// Number of connected components of the union of the legs.
    pub fn components(&self) -> usize {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let y = *p.entry(x).or_insert(x);
            if y == x {
                return x;
            }
            let r = find(p, y);
            p.insert(x, r);
            r
        }
        for l in &self.legs {
            let a = find(&mut parent, l.head);
            let b = find(&mut parent, l.target);
            parent.insert(a, b);
        }
        let keys: Vec<usize> = parent.keys().copied().collect();
        keys.into_iter().map(|k| find(&mut parent, k)).collect::<BTreeSet<_>>().len()
    }

    /// Composes leg `i` with a loop of deck class `lambda`, so that the chain
    /// changes by that loop.  Legs are read as paths from their target back
    /// to their head, so the target's lift moves by `-coeff * lambda`.
    pub fn with_loop(&self, i: usize, lambda: &[i64]) -> EulerChain {
        let mut z = self.clone();
        let l = &mut z.legs[i];
        let s = i64::from(l.coeff);
        l.detour = l.detour.iter().zip(lambda).map(|(a, b)| a - s * b).collect();
        z
    }

    /// Deck lifts of all cells reached by the chain, with the given lifts of
    /// heads that are not themselves targets (zero by default).
    pub fn lifts(&self, c: &AttachedComplex, head_lifts: &BTreeMap<usize, Vec<i64>>) -> Result<BTreeMap<usize, Vec<i64>>, ChainError> {
        let k = c.rank();
        let targets: BTreeSet<usize> = self.legs.iter().map(|l| l.target).collect();
        let mut out: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for l in &self.legs {
            if !targets.contains(&l.head) {
                out.insert(l.head, head_lifts.get(&l.head).cloned().unwrap_or_else(|| vec![0; k]));
            }
        }
        let mut pending: Vec<&Leg> = self.legs.iter().collect();
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for l in pending {
                let Some(h) = out.get(&l.head).cloned() else {
                    rest.push(l);
                    continue;
                };
                let dh = &c.occurrence(l.head_occ.0, l.head_occ.1).expect("head").offset;
                let dt = &c.occurrence(l.target_occ.0, l.target_occ.1).expect("target").offset;
                let v = vadd(&vsub(&vadd(&h, dh), dt), &l.detour);
                if out.insert(l.target, v).is_some() {
                    return Err(ChainError::DuplicateTarget(l.target));
                }
            }
            if rest.len() == before {
                return Err(ChainError::Uncovered(rest[0].target));
            }
            pending = rest;
        }
        Ok(out)
    }
}

/// The class `sum ind(s) (l2(s) - l1(s))` of the difference `z1 - z2` of two
/// chains of the same kind, with all head lifts zero.
pub fn chain_difference(c: &AttachedComplex, z1: &EulerChain, z2: &EulerChain) -> Result<Vec<i64>, ChainError> {
    if z1.kind != z2.kind {
        return Err(ChainError::KindMismatch { expected: z1.kind.name(), found: z2.kind.name() });
    }
    let none = BTreeMap::new();
    let l1 = z1.lifts(c, &none)?;
    let l2 = z2.lifts(c, &none)?;
    let zero = vec![0; c.rank()];
    let mut acc = zero.clone();
    for id in l1.keys().chain(l2.keys()).collect::<BTreeSet<_>>() {
        let a = l1.get(id).unwrap_or(&zero);
        let b = l2.get(id).unwrap_or(&zero);
        let s = i64::from(ind(c.cell(*id).dim));
        acc = acc.iter().zip(a.iter().zip(b)).map(|(x, (p, q))| x + s * (q - p)).collect();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::TreeChoice;
    use crate::knot::{dig_tunnel, parse_diagram};
    use crate::spine::parse_triangulation;

    fn abalone() -> AttachedComplex {
        AttachedComplex::build(&parse_triangulation(include_str!("../../fixtures/abalone.tri")).unwrap()).unwrap()
    }

    fn dug() -> AttachedComplex {
        let t = parse_triangulation(include_str!("../../fixtures/abalone.tri")).unwrap();
        let d = parse_diagram(include_str!("../../fixtures/abalone_k.knot")).unwrap();
        dig_tunnel(&t, &d).unwrap().complex(TreeChoice::Bfs).unwrap()
    }

    #[test]
    fn closed_spine_has_one_spider_at_the_base_point() {
        let c = abalone();
        let z = build_s_prime(&c).unwrap();
        assert_eq!(z.components(), 1);
        assert!(z.legs.iter().all(|l| l.head == c.base()));
        assert_eq!(build_s_second(&c, &z).unwrap().legs.len(), z.legs.len());
    }

    #[test]
    fn dug_exterior_chain_has_three_components() {
        let c = dug();
        let z = build_s_prime(&c).unwrap();
        assert_eq!(z.components(), 3);
        assert!(z.bookkeeping_cases(&c).iter().all(|k| k.failures.is_empty()));
    }

    #[test]
    fn concave_chain_round_trips() {
        let c = dug();
        let z = build_s_prime(&c).unwrap();
        let s2 = build_s_second(&c, &z).unwrap();
        let contact_edges = c.cells().iter().filter(|x| x.colour == Colour::Contact && x.dim == 1).count();
        assert_eq!(s2.legs.len(), z.legs.len() + contact_edges);
        s2.check_bookkeeping(&c).unwrap();
        assert_eq!(convexify(&c, &s2).unwrap(), z);
        assert!(convexify(&c, &z).is_err());
    }

    #[test]
    fn loops_shift_the_difference_class() {
        let c = dug();
        let z = build_s_prime(&c).unwrap();
        assert_eq!(chain_difference(&c, &z, &z).unwrap(), vec![0]);
        for (i, lam) in [(0, 1), (5, -2), (17, 3)] {
            let z2 = z.with_loop(i, &[lam]);
            assert_eq!(chain_difference(&c, &z2, &z).unwrap(), vec![lam]);
        }
    }

    #[test]
    fn blackening_covers_every_cell() {
        let c = dug();
        let s2 = build_s_second(&c, &build_s_prime(&c).unwrap()).unwrap();
        for d in [Direction::Along, Direction::Against] {
            let b = blacken(&c, &s2, d).unwrap();
            assert!(b.bookkeeping_failures(&c).is_empty());
        }
        assert!(blacken(&abalone(), &build_s_second(&abalone(), &build_s_prime(&abalone()).unwrap()).unwrap(), Direction::Along).is_err());
    }
}
