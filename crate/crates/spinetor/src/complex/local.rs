//! Cells of one truncated tetrahedron with its boundary kites.
//!
//! Corners are indexed by rank `0..4`.  Near corner `a` the truncation
//! triangle has vertices `P(a, b)` on the edge towards `b`, side midpoints
//! `M(a, {b, c})` and a centre `Z(a)`; the centre and midpoints cut it into
//! three kites `K(a, b)`.  `E(a, b)` is the part of the edge between the two
//! truncations, `L` and `S` are the long and short edges of the kites, `H(k)`
//! is the hexagonal face opposite corner `k` and `V` is the solid.

use std::sync::OnceLock;

use serde::Serialize;

use crate::spine::face_verts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LocalCell {
    P(u8, u8),
    M(u8, [u8; 2]),
    Z(u8),
    E(u8, u8),
    L(u8, u8, u8),
    S(u8, [u8; 2]),
    H(u8),
    K(u8, u8),
    V,
}

/// Colour of a cell with respect to the boundary pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Colour {
    White,
    Black,
    Contact,
    Interior,
    Base,
}

impl Colour {
    pub fn letter(self) -> char {
        match self {
            Colour::White => 'W',
            Colour::Black => 'B',
            Colour::Contact => 'C',
            Colour::Interior => 'I',
            Colour::Base => 'x',
        }
    }
}

fn others(ex: &[u8]) -> Vec<u8> {
    (0..4).filter(|r| !ex.contains(r)).collect()
}

fn pairs(v: &[u8]) -> Vec<[u8; 2]> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push([v[i], v[j]]);
        }
    }
    out
}

pub fn mid(a: u8, b: u8, c: u8) -> LocalCell {
    LocalCell::M(a, [b.min(c), b.max(c)])
}

/// All 87 local cells in a fixed order.
pub fn all_cells() -> &'static [LocalCell] {
    static CELLS: OnceLock<Vec<LocalCell>> = OnceLock::new();
    CELLS.get_or_init(|| {
        use LocalCell::*;
        let mut out = Vec::new();
        for a in 0..4 {
            for b in others(&[a]) {
                out.push(P(a, b));
            }
            for bc in pairs(&others(&[a])) {
                out.push(M(a, bc));
            }
            out.push(Z(a));
        }
        for [a, b] in pairs(&[0, 1, 2, 3]) {
            out.push(E(a, b));
        }
        for a in 0..4 {
            for b in others(&[a]) {
                for c in others(&[a, b]) {
                    out.push(L(a, b, c));
                }
            }
            for bc in pairs(&others(&[a])) {
                out.push(S(a, bc));
            }
        }
        for k in 0..4 {
            out.push(H(k));
        }
        for a in 0..4 {
            for b in others(&[a]) {
                out.push(K(a, b));
            }
        }
        out.push(V);
        out
    })
}

/// Position of a cell in [`all_cells`].
pub fn cell_index(n: LocalCell) -> usize {
    all_cells().iter().position(|c| *c == n).expect("catalogued cell")
}

pub const N_LOCAL: usize = 87;

impl LocalCell {
    pub fn dim(self) -> usize {
        use LocalCell::*;
        match self {
            P(..) | M(..) | Z(..) => 0,
            E(..) | L(..) | S(..) => 1,
            H(..) | K(..) => 2,
            V => 3,
        }
    }

    /// The corner whose truncation triangle contains the cell, if any.
    pub fn corner(self) -> Option<u8> {
        use LocalCell::*;
        match self {
            P(a, _) | M(a, _) | Z(a) | L(a, ..) | S(a, _) | K(a, _) => Some(a),
            E(..) | H(..) | V => None,
        }
    }

    /// Start and end of a 1-cell.
    pub fn endpoints(self) -> (LocalCell, LocalCell) {
        use LocalCell::*;
        match self {
            E(a, b) => (P(a, b), P(b, a)),
            L(a, b, c) => (P(a, b), mid(a, b, c)),
            S(a, bc) => (Z(a), M(a, bc)),
            _ => panic!("{self:?} is not a 1-cell"),
        }
    }

    /// Boundary cycle of a 2-cell as a list of 0-cells.
    pub fn cycle(self) -> Vec<LocalCell> {
        use LocalCell::*;
        match self {
            K(a, b) => {
                let cd = others(&[a, b]);
                vec![P(a, b), mid(a, b, cd[0]), Z(a), mid(a, b, cd[1])]
            }
            H(k) => {
                let [x, y, z] = face_verts(k as usize).map(|r| r as u8);
                vec![P(x, y), P(y, x), mid(y, x, z), P(y, z), P(z, y), mid(z, x, y), P(z, x), P(x, z), mid(x, y, z)]
            }
            _ => panic!("{self:?} is not a 2-cell"),
        }
    }

    /// Boundary pattern colour.
    pub fn colour(self) -> Colour {
        use LocalCell::*;
        let side = |a: u8, [b, c]: [u8; 2]| {
            if b < a && c < a {
                Colour::Black
            } else if b > a && c > a {
                Colour::White
            } else {
                Colour::Contact
            }
        };
        match self {
            E(..) | H(..) | V => Colour::Interior,
            P(a, b) | K(a, b) | L(a, b, _) => {
                if a > b {
                    Colour::Black
                } else {
                    Colour::White
                }
            }
            M(a, bc) | S(a, bc) => side(a, bc),
            Z(a) => match a {
                3 => Colour::Black,
                0 => Colour::White,
                _ => Colour::Contact,
            },
        }
    }

    /// Whether the cell lies on the face opposite corner `k`.
    pub fn on_face(self, k: u8) -> bool {
        use LocalCell::*;
        match self {
            P(a, b) | E(a, b) => k != a && k != b,
            M(a, [b, c]) | L(a, b, c) => k != a && k != b && k != c,
            _ => false,
        }
    }

    /// Image of a face cell under the vertex map `p`.
    pub fn transport(self, p: &[usize; 4]) -> LocalCell {
        use LocalCell::*;
        let m = |r: u8| p[r as usize] as u8;
        match self {
            P(a, b) => P(m(a), m(b)),
            M(a, [b, c]) => mid(m(a), m(b), m(c)),
            E(a, b) => E(m(a).min(m(b)), m(a).max(m(b))),
            L(a, b, c) => L(m(a), m(b), m(c)),
            Z(a) => Z(m(a)),
            _ => panic!("{self:?} does not lie on a face"),
        }
    }
}

/// Edge of the local complex joining two 0-cells.
fn edge_between(p: LocalCell, q: LocalCell) -> LocalCell {
    use LocalCell::*;
    let cand = match (p, q) {
        (P(a, b), P(c, d)) if a == d && b == c => E(a.min(b), a.max(b)),
        (P(a, b), M(..)) | (M(..), P(a, b)) => {
            let m = if let M(..) = p { p } else { q };
            let LocalCell::M(_, [x, y]) = m else { unreachable!() };
            L(a, b, if x == b { y } else { x })
        }
        (Z(a), M(_, bc)) | (M(_, bc), Z(a)) => S(a, bc),
        _ => panic!("no edge between {p:?} and {q:?}"),
    };
    debug_assert!({
        let (s, e) = cand.endpoints();
        (s == p && e == q) || (s == q && e == p)
    });
    cand
}

/// Sign relating a cell's own orientation to that of its image under `p`.
pub fn orient_sign(n: LocalCell, img: LocalCell, p: &[usize; 4]) -> i8 {
    match n.dim() {
        0 => 1,
        1 => {
            let (s, e) = n.endpoints();
            if (s.transport(p), e.transport(p)) == img.endpoints() {
                1
            } else {
                -1
            }
        }
        _ => {
            let cyc: Vec<LocalCell> = n.cycle().into_iter().map(|x| x.transport(p)).collect();
            let tc = img.cycle();
            let i0 = tc.iter().position(|x| *x == cyc[0]).expect("image cycle");
            if tc[(i0 + 1) % tc.len()] == cyc[1] {
                1
            } else {
                -1
            }
        }
    }
}

/// Integer coordinates, scaled by 24, of a 0-cell in a tetrahedron of
/// chirality `eps`.
fn point(n: LocalCell, eps: i8) -> [i64; 3] {
    use LocalCell::*;
    const V: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    let v = |r: u8| {
        let mut x = V[r as usize];
        if eps < 0 {
            x[0] = -x[0];
        }
        x
    };
    let add = |a: [i64; 3], b: [i64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    match n {
        P(a, b) => {
            let (va, vb) = (v(a), v(b));
            [0, 1, 2].map(|i| 24 * va[i] + 6 * (vb[i] - va[i]))
        }
        M(a, [b, c]) => add(point(P(a, b), eps), point(P(a, c), eps)).map(|x| x / 2),
        Z(a) => {
            let o = others(&[a]);
            o.iter().map(|b| point(P(a, *b), eps)).fold([0; 3], add).map(|x| x / 3)
        }
        _ => panic!("{n:?} is not a 0-cell"),
    }
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Outward normal direction of a 2-cell by Newell's formula, unnormalized.
pub fn newell_normal(n: LocalCell, eps: i8) -> [i64; 3] {
    let pts: Vec<[i64; 3]> = n.cycle().into_iter().map(|p| point(p, eps)).collect();
    let mut nrm = [0; 3];
    for i in 0..pts.len() {
        let c = cross(pts[i], pts[(i + 1) % pts.len()]);
        for j in 0..3 {
            nrm[j] += c[j];
        }
    }
    nrm
}

/// Sign of the 2-cell's orientation relative to the outward direction from
/// the centre of the tetrahedron.
pub fn outward_sign(n: LocalCell, eps: i8) -> i8 {
    let pts: Vec<[i64; 3]> = n.cycle().into_iter().map(|p| point(p, eps)).collect();
    let nrm = newell_normal(n, eps);
    let sum = pts.iter().fold([0; 3], |a, p| [a[0] + p[0], a[1] + p[1], a[2] + p[2]]);
    let d: i64 = (0..3).map(|i| nrm[i] * sum[i]).sum();
    if d > 0 {
        1
    } else {
        -1
    }
}

/// Sign of a kite's orientation relative to the direction pointing from the
/// tetrahedron's centre towards its corner.
pub fn kite_corner_sign(n: LocalCell, eps: i8) -> i8 {
    let LocalCell::K(a, _) = n else { panic!("{n:?} is not a kite") };
    let nrm = newell_normal(n, eps);
    let mut va = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]][a as usize];
    if eps < 0 {
        va[0] = -va[0];
    }
    let d: i64 = (0..3).map(|i| nrm[i] * va[i]).sum();
    if d > 0 {
        1
    } else {
        -1
    }
}

/// Boundary of a local cell with incidence signs.
pub fn local_boundary(n: LocalCell, eps: i8) -> Vec<(LocalCell, i8)> {
    match n.dim() {
        0 => Vec::new(),
        1 => {
            let (s, e) = n.endpoints();
            vec![(e, 1), (s, -1)]
        }
        2 => {
            let cyc = n.cycle();
            (0..cyc.len())
                .map(|x| {
                    let (p, q) = (cyc[x], cyc[(x + 1) % cyc.len()]);
                    let m = edge_between(p, q);
                    (m, if m.endpoints() == (p, q) { 1 } else { -1 })
                })
                .collect()
        }
        _ => all_cells().iter().filter(|m| m.dim() == 2).map(|m| (*m, outward_sign(*m, eps))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn catalogue_sizes() {
        let cells = all_cells();
        assert_eq!(cells.len(), N_LOCAL);
        let mut by_dim = [0; 4];
        for c in cells {
            by_dim[c.dim()] += 1;
        }
        assert_eq!(by_dim, [28, 42, 16, 1]);
    }

    #[test]
    fn local_boundary_squares_to_zero() {
        for eps in [-1, 1] {
            for n in all_cells().iter().filter(|c| c.dim() >= 2) {
                let mut acc: BTreeMap<LocalCell, i64> = BTreeMap::new();
                for (m, s) in local_boundary(*n, eps) {
                    for (p, t) in local_boundary(m, eps) {
                        *acc.entry(p).or_default() += (s * t) as i64;
                    }
                }
                assert!(acc.values().all(|v| *v == 0), "{n:?} eps {eps}");
            }
        }
    }

    #[test]
    fn kites_split_three_to_one() {
        // corner a has a black kites
        for a in 0..4u8 {
            let black = others(&[a]).into_iter().filter(|b| LocalCell::K(a, *b).colour() == Colour::Black).count();
            assert_eq!(black, a as usize);
        }
    }

    #[test]
    fn transport_preserves_dimension() {
        let p = crate::spine::phi(0, 3);
        for n in all_cells().iter().filter(|c| c.on_face(0)) {
            let img = n.transport(&p);
            assert_eq!(img.dim(), n.dim());
            assert!(img.on_face(3));
        }
    }
}
