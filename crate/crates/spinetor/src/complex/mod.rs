//! Cellularization of the truncated manifold with kite-subdivided boundary,
//! the trivial sphere collapsed to a point, and deck offsets recording how
//! each cell occurrence sits in the maximal free abelian cover.

pub mod local;
mod offsets;
pub mod pattern;
pub mod report;

use std::collections::BTreeMap;

use serde::Serialize;

pub use local::{Colour, LocalCell};
pub use pattern::{BoundaryPattern, ContactCircle};
pub use report::{check_complex, ComplexReport};

use crate::error::ComplexError;
use crate::homology::{Cocycle, TreeChoice};
use crate::spine::{phi, BranchedTriangulation};
use local::{all_cells, cell_index, local_boundary, orient_sign, N_LOCAL};
pub(crate) use offsets::{vadd, vneg, vsub};
use offsets::OffsetUnionFind;

/// A global cell: the class of its occurrences in the tetrahedra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub dim: usize,
    /// The smallest occurrence; `None` for the collapsed sphere point.
    pub home: Option<(usize, LocalCell)>,
    pub colour: Colour,
}

/// One term of a boundary: the home lift of `face` with coefficient
/// `sign * g^shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub face: usize,
    pub sign: i8,
    pub shift: Vec<i64>,
}

/// Where an occurrence of a local cell sits: the global cell, its deck
/// offset from the cell's home lift and the orientation sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub cell: usize,
    pub offset: Vec<i64>,
    pub sign: i8,
}

#[derive(Debug, Clone)]
pub struct AttachedComplex {
    tri: BranchedTriangulation,
    cocycle: Cocycle,
    cells: Vec<Cell>,
    boundary: Vec<Vec<Incidence>>,
    occ: Vec<Option<Occurrence>>,
    base: usize,
}

fn occ_id(tet: usize, n: LocalCell) -> usize {
    tet * N_LOCAL + cell_index(n)
}

impl AttachedComplex {
    /// Builds the complex with the default cocycle.
    pub fn build(t: &BranchedTriangulation) -> Result<Self, ComplexError> {
        Self::with_cocycle(t, Cocycle::compute(t, TreeChoice::Bfs)?)
    }

    /// Builds the complex using the given cocycle for deck offsets.
    pub fn with_cocycle(t: &BranchedTriangulation, cocycle: Cocycle) -> Result<Self, ComplexError> {
        let k = cocycle.rank();
        let n = t.n_tets();
        let mut uf = OffsetUnionFind::new(n * N_LOCAL, k);
        for (x, y) in t.face_pairs() {
            let p = phi(x.face, y.face);
            let c = cocycle.crossing(x);
            for &cell in all_cells() {
                let img = match cell {
                    LocalCell::H(h) if h as usize == x.face => LocalCell::H(y.face as u8),
                    _ if cell.on_face(x.face as u8) => cell.transport(&p),
                    _ => continue,
                };
                let s = orient_sign(cell, img, &p);
                uf.union(occ_id(x.tet, cell), occ_id(y.tet, img), &c, s)?;
            }
        }

        let ideal = ideal_vertex_map(t);
        let n_ideal = ideal.iter().copied().max().map_or(0, |m| m + 1);
        let mut link_cells: Vec<[std::collections::BTreeSet<usize>; 3]> = vec![Default::default(); n_ideal];
        for i in 0..n {
            for &cell in all_cells() {
                if let Some(a) = cell.corner() {
                    let r = uf.find(occ_id(i, cell));
                    link_cells[ideal[i * 4 + a as usize]][cell.dim()].insert(r);
                }
            }
        }
        let spheres: Vec<usize> = (0..n_ideal)
            .filter(|v| {
                let s = &link_cells[*v];
                s[0].len() as i64 - s[1].len() as i64 + s[2].len() as i64 == 2
            })
            .collect();
        if spheres.len() != 1 {
            return Err(ComplexError::SphereCount(spheres.len()));
        }
        let sphere = spheres[0];
        let on_sphere = |i: usize, cell: LocalCell| cell.corner().is_some_and(|a| ideal[i * 4 + a as usize] == sphere);

        // offsets of the sphere's 0-cells once the sphere is a single point
        let mut uf2 = OffsetUnionFind::new(n * N_LOCAL, k);
        for i in 0..n {
            for a in 0..4u8 {
                if ideal[i * 4 + a as usize] != sphere {
                    continue;
                }
                let zs: Vec<usize> =
                    all_cells().iter().filter(|c| c.dim() == 0 && c.corner() == Some(a)).map(|c| occ_id(i, *c)).collect();
                for z in &zs[1..] {
                    uf2.union(zs[0], *z, &vec![0; k], 1)?;
                }
            }
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            for &cell in all_cells() {
                if cell.dim() == 0 && on_sphere(i, cell) {
                    by_root.entry(uf.find(occ_id(i, cell))).or_default().push(occ_id(i, cell));
                }
            }
        }
        for occs in by_root.values() {
            let (_, d0, _) = uf.relative(occs[0]);
            for o in &occs[1..] {
                let (_, d, _) = uf.relative(*o);
                uf2.union(occs[0], *o, &vsub(&d, &d0), 1)?;
            }
        }

        let mut groups: BTreeMap<usize, Vec<(usize, LocalCell)>> = BTreeMap::new();
        let mut sphere_points = Vec::new();
        for i in 0..n {
            for &cell in all_cells() {
                if on_sphere(i, cell) {
                    if cell.dim() == 0 {
                        sphere_points.push(occ_id(i, cell));
                    }
                    continue;
                }
                groups.entry(uf.find(occ_id(i, cell))).or_default().push((i, cell));
            }
        }
        let roots: std::collections::BTreeSet<usize> = sphere_points.iter().map(|o| uf2.find(*o)).collect();
        if roots.len() != 1 {
            return Err(ComplexError::Pattern("sphere points do not form one class".into()));
        }

        let mut homes: Vec<(usize, LocalCell, Vec<(usize, LocalCell)>)> = groups
            .into_values()
            .map(|mut occs| {
                occs.sort();
                (occs[0].0, occs[0].1, occs)
            })
            .collect();
        homes.sort_by_key(|(i, c, _)| (c.dim(), *i, *c));

        let mut cells = vec![Cell { dim: 0, home: None, colour: Colour::Base }];
        let mut occ: Vec<Option<Occurrence>> = vec![None; n * N_LOCAL];
        for o in &sphere_points {
            let (_, d, _) = uf2.relative(*o);
            occ[*o] = Some(Occurrence { cell: 0, offset: d, sign: 1 });
        }
        for (hi, hc, occs) in homes {
            let id = cells.len();
            let (_, dh, sh) = uf.relative(occ_id(hi, hc));
            for (i, c) in occs {
                let (_, d, s) = uf.relative(occ_id(i, c));
                occ[occ_id(i, c)] = Some(Occurrence { cell: id, offset: vsub(&d, &dh), sign: s * sh });
            }
            cells.push(Cell { dim: hc.dim(), home: Some((hi, hc)), colour: hc.colour() });
        }

        let mut boundary = Vec::with_capacity(cells.len());
        for c in &cells {
            let Some((i, cell)) = c.home else {
                boundary.push(Vec::new());
                continue;
            };
            let mut terms = Vec::new();
            for (m, e) in local_boundary(cell, t.eps(i)) {
                if let Some(o) = &occ[occ_id(i, m)] {
                    terms.push(Incidence { face: o.cell, sign: e * o.sign, shift: vneg(&o.offset) });
                }
            }
            boundary.push(terms);
        }
        Ok(AttachedComplex { tri: t.clone(), cocycle, cells, boundary, occ, base: 0 })
    }

    pub fn triangulation(&self) -> &BranchedTriangulation {
        &self.tri
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// Free rank of `H_1`, the number of deck coordinates.
    pub fn rank(&self) -> usize {
        self.cocycle.rank()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    /// Overrides the colour of one cell, for exercising pattern validation.
    pub fn recolour(&mut self, id: usize, colour: Colour) {
        self.cells[id].colour = colour;
    }

    /// The collapsed sphere point.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn boundary(&self, id: usize) -> &[Incidence] {
        &self.boundary[id]
    }

    /// The global cell an occurrence belongs to; `None` for the collapsed
    /// sphere's cells of positive dimension.
    pub fn occurrence(&self, tet: usize, cell: LocalCell) -> Option<&Occurrence> {
        self.occ[occ_id(tet, cell)].as_ref()
    }

    /// Ids of the cells of dimension `d` in increasing order.
    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|i| self.cells[*i].dim == d).collect()
    }

    /// Cell counts by dimension, skipping the given colours.
    pub fn counts(&self, exclude: &[Colour]) -> [usize; 4] {
        let mut out = [0; 4];
        for c in &self.cells {
            if !exclude.contains(&c.colour) {
                out[c.dim] += 1;
            }
        }
        out
    }

    /// Euler characteristic of the cells whose colour is in `colours`.
    pub fn euler_characteristic(&self, colours: &[Colour]) -> i64 {
        let c = self.counts(&[Colour::White, Colour::Black, Colour::Contact, Colour::Interior, Colour::Base]
            .into_iter()
            .filter(|x| !colours.contains(x))
            .collect::<Vec<_>>());
        c[0] as i64 - c[1] as i64 + c[2] as i64 - c[3] as i64
    }

    /// Integer boundary matrix from dimension `d` to `d - 1`, as
    /// `rows = cells of dim d`, `cols = cells of dim d - 1`.
    pub fn integer_boundary(&self, d: usize) -> Vec<Vec<i64>> {
        let rows = self.cells_of_dim(d);
        let cols = self.cells_of_dim(d - 1);
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(j, c)| (*c, j)).collect();
        rows.iter()
            .map(|r| {
                let mut row = vec![0; cols.len()];
                for inc in &self.boundary[*r] {
                    row[pos[&inc.face]] += inc.sign as i64;
                }
                row
            })
            .collect()
    }

    /// True when the integer boundary squares to zero in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..=3).all(|d| {
            let a = self.integer_boundary(d);
            let b = self.integer_boundary(d - 1);
            a.iter().all(|row| {
                (0..b.first().map_or(0, Vec::len)).all(|j| row.iter().zip(&b).map(|(x, r)| x * r[j]).sum::<i64>() == 0)
            })
        })
    }

    /// Deck class of the oriented 1-cell `e`: the translation between the
    /// home lifts of its ends along the home lift of `e`.
    pub fn edge_class(&self, e: usize) -> Vec<i64> {
        let b = &self.boundary[e];
        let head = b.iter().find(|x| x.sign > 0).map(|x| x.shift.clone());
        let tail = b.iter().find(|x| x.sign < 0).map(|x| x.shift.clone());
        match (head, tail) {
            (Some(h), Some(t)) => vsub(&t, &h),
            _ => vec![0; self.rank()],
        }
    }

    /// Deck class of a walk given as a sequence of signed 1-cells.
    pub fn walk_class(&self, walk: &[(usize, i8)]) -> Vec<i64> {
        let mut acc = vec![0; self.rank()];
        for (e, s) in walk {
            let c = self.edge_class(*e);
            acc = if *s > 0 { vadd(&acc, &c) } else { vsub(&acc, &c) };
        }
        acc
    }
}

/// Index of the ideal vertex of each corner `tet * 4 + rank`.
fn ideal_vertex_map(t: &BranchedTriangulation) -> Vec<usize> {
    let mut out = vec![0; t.n_tets() * 4];
    for (v, class) in t.vertex_classes().iter().enumerate() {
        for (i, a) in class {
            out[i * 4 + a] = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spine::parse_triangulation;

    #[test]
    fn abalone_collapses_to_a_sphere() {
        let t = parse_triangulation(include_str!("../../fixtures/abalone.tri")).unwrap();
        let c = AttachedComplex::build(&t).unwrap();
        assert!(c.boundary_squares_to_zero());
        assert_eq!(c.rank(), 0);
        assert_eq!(c.euler_characteristic(&[Colour::Interior, Colour::Base]), 0);
        assert_eq!(c.counts(&[]), [1, 2, 2, 1]);
        assert!(c.cells().iter().all(|x| matches!(x.colour, Colour::Interior | Colour::Base)));
    }
}
