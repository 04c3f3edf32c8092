//! Extension of a concave Euler chain over the white annulus.
//!
//! The white region of a knot exterior is an annulus made of white kites.
//! Its corners and side midpoints form a graph whose core is a circle
//! parallel to the contact circles.  Each white side is attached to one of
//! its corners: sides on the core go to the corner ahead of them in the
//! chosen direction, the remaining sides to the corner away from the core.

use std::collections::{BTreeMap, BTreeSet};

use super::{make_leg, ChainKind, EulerChain, Leg};
use crate::complex::{vadd, vsub, AttachedComplex, Colour, LocalCell};
use crate::error::ChainError;

/// Direction of travel around the white annulus, relative to the contact
/// circle through the lowest contact edge, oriented as boundary of the
/// black region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Along,
    Against,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Along => Direction::Against,
            Direction::Against => Direction::Along,
        }
    }

    /// The direction whose deck class equals `class`, when one does.
    pub fn with_class(c: &AttachedComplex, class: &[i64]) -> Result<Direction, ChainError> {
        let circle = contact_circle_class(c)?;
        if circle == class {
            Ok(Direction::Along)
        } else if circle.iter().zip(class).all(|(a, b)| *a == -b) {
            Ok(Direction::Against)
        } else {
            Err(ChainError::NotAnnulus)
        }
    }
}

type Occ = (usize, LocalCell);

/// A white side: its two corner occurrences and its midpoint occurrence.
struct Side {
    a: Occ,
    b: Occ,
    mid: Occ,
}

fn offset(c: &AttachedComplex, o: Occ) -> &[i64] {
    &c.occurrence(o.0, o.1).expect("white cell").offset
}

fn cell_of(c: &AttachedComplex, o: Occ) -> usize {
    c.occurrence(o.0, o.1).expect("white cell").cell
}

/// Deck class of the contact circle through the lowest contact edge.
pub(crate) fn contact_circle_class(c: &AttachedComplex) -> Result<Vec<i64>, ChainError> {
    let pattern = c.boundary_pattern().map_err(|_| ChainError::NotAnnulus)?;
    let circle = pattern.circles.first().ok_or(ChainError::NotAnnulus)?;
    Ok(c.walk_class(&circle.edges))
}

/// Sides of the white graph keyed by the midpoint's cell id.
fn white_sides(c: &AttachedComplex) -> BTreeMap<usize, Side> {
    let mut out = BTreeMap::new();
    for (id, cell) in c.cells().iter().enumerate() {
        if cell.colour != Colour::White {
            continue;
        }
        if let Some((i, LocalCell::M(a, [b, cc]))) = cell.home {
            out.insert(id, Side { a: (i, LocalCell::P(a, b)), b: (i, LocalCell::P(a, cc)), mid: (i, LocalCell::M(a, [b, cc])) });
        }
    }
    out
}

/// Assigns every white side the corner occurrence its short edges hang
/// from.
fn assign_sides(c: &AttachedComplex, direction: Direction) -> Result<BTreeMap<usize, Occ>, ChainError> {
    let sides = white_sides(c);
    let mut adj: BTreeMap<usize, Vec<(usize, Occ, Occ, usize)>> = BTreeMap::new();
    for (m, s) in &sides {
        let (ga, gb) = (cell_of(c, s.a), cell_of(c, s.b));
        adj.entry(ga).or_default().push((*m, s.a, s.b, gb));
        adj.entry(gb).or_default().push((*m, s.b, s.a, ga));
    }
    let mut alive: BTreeSet<usize> = adj.keys().copied().collect();
    loop {
        let leaf = alive.iter().copied().find(|v| {
            let deg = adj[v].iter().filter(|e| alive.contains(&e.3)).count();
            deg <= 1 && !adj[v].iter().any(|e| e.3 == *v)
        });
        match leaf {
            Some(v) => {
                alive.remove(&v);
            }
            None => break,
        }
    }
    let start = *alive.iter().next().ok_or(ChainError::NotAnnulus)?;
    let mut cycle = Vec::new();
    let mut used = BTreeSet::new();
    let mut class = vec![0; c.rank()];
    let mut cur = start;
    loop {
        let Some(&(m, qo, qo2, g2)) = adj[&cur].iter().find(|e| alive.contains(&e.3) && !used.contains(&e.0)) else {
            return Err(ChainError::NotAnnulus);
        };
        used.insert(m);
        class = vadd(&class, &vsub(offset(c, qo2), offset(c, qo)));
        cycle.push((qo, m, qo2));
        cur = g2;
        if cur == start {
            break;
        }
    }
    let core_sides = alive.iter().map(|v| adj[v].iter().filter(|e| alive.contains(&e.3)).count()).sum::<usize>();
    if core_sides != 2 * cycle.len() {
        return Err(ChainError::NotAnnulus);
    }
    let reference = contact_circle_class(c)?;
    let forward = if class == reference {
        true
    } else if class.iter().zip(&reference).all(|(a, b)| *a == -b) {
        false
    } else {
        return Err(ChainError::NotAnnulus);
    };
    let ahead = forward == (direction == Direction::Along);
    let mut assign = BTreeMap::new();
    for (a, m, b) in &cycle {
        assign.insert(*m, if ahead { *b } else { *a });
    }
    let mut seen: BTreeSet<usize> = alive.clone();
    let mut frontier: Vec<usize> = alive.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in frontier {
            for &(m, _, qo2, g2) in &adj[&v] {
                if seen.insert(g2) {
                    next.push(g2);
                    assign.insert(m, qo2);
                }
            }
        }
        frontier = next;
    }
    if assign.len() != sides.len() {
        return Err(ChainError::NotAnnulus);
    }
    Ok(assign)
}

fn white_legs(c: &AttachedComplex, direction: Direction) -> Result<Vec<Leg>, ChainError> {
    let sides = white_sides(c);
    let assign = assign_sides(c, direction)?;
    let mut legs = Vec::new();
    for cell in c.cells() {
        if cell.colour != Colour::White {
            continue;
        }
        let Some((i, n)) = cell.home else { continue };
        match n {
            LocalCell::K(a, b) | LocalCell::L(a, b, _) => {
                let coeff = if n.dim() % 2 == 0 { 1 } else { -1 };
                legs.push(make_leg(c, (i, LocalCell::P(a, b)), (i, n), coeff));
            }
            LocalCell::S(a, bc) => {
                let mo = (i, LocalCell::M(a, bc));
                let m = cell_of(c, mo);
                let hq = assign[&m];
                let want = vsub(offset(c, hq), offset(c, sides[&m].mid));
                let q = cell_of(c, hq);
                let qo = bc
                    .iter()
                    .map(|x| (i, LocalCell::P(a, *x)))
                    .find(|o| cell_of(c, *o) == q && vsub(offset(c, *o), offset(c, mo)) == want)
                    .ok_or(ChainError::NotAnnulus)?;
                legs.push(make_leg(c, qo, (i, n), -1));
            }
            LocalCell::Z(_) => return Err(ChainError::WhiteCentre),
            _ => {}
        }
    }
    for (m, q) in &assign {
        legs.push(make_leg(c, *q, sides[m].mid, 1));
    }
    Ok(legs)
}

/// Extends a concave chain by a chain on the white annulus, travelling
/// around it in `direction`.
pub fn blacken(c: &AttachedComplex, z: &EulerChain, direction: Direction) -> Result<EulerChain, ChainError> {
    if z.kind != ChainKind::Concave {
        return Err(ChainError::KindMismatch { expected: "concave", found: z.kind.name() });
    }
    let mut legs = z.legs.clone();
    legs.extend(white_legs(c, direction)?);
    let out = EulerChain { kind: ChainKind::Blackened, legs };
    out.check_bookkeeping(c)?;
    Ok(out)
}
