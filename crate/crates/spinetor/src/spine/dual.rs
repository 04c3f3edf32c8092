use std::collections::HashMap;

use serde::Serialize;

use super::{face_verts, perm_sign, BranchedTriangulation, FaceRef};

/// Position of a region germ along a spine edge, by the ranks of the
/// triangulation edge it is dual to: `Low = (a,b)`, `Mid = (a,c)`, `High = (b,c)`
/// for a face with ranks `a < b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Low,
    Mid,
    High,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Low, Role::Mid, Role::High];

    /// The rank pair (within the face) of the dual triangulation edge.
    pub fn local_edge(self, face: usize) -> (usize, usize) {
        let [a, b, c] = face_verts(face);
        match self {
            Role::Low => (a, b),
            Role::Mid => (a, c),
            Role::High => (b, c),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Role::Low => "low",
            Role::Mid => "mid",
            Role::High => "high",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        Role::ALL.into_iter().find(|r| r.name() == s)
    }
}

/// A region side at a spine edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Germ {
    pub region: usize,
    pub role: Role,
}

/// An edge of the spine, dual to a glued face pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpineEdge {
    /// Face on the tetrahedron the edge leaves (natural orientation).
    pub tail: (usize, usize),
    /// Face on the tetrahedron the edge enters.
    pub head: (usize, usize),
    pub germs: [Germ; 3],
}

/// A region of the spine, dual to an edge class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpineRegion {
    /// Boundary cycle as (spine edge, +1 if traversed along its natural orientation).
    pub boundary: Vec<(usize, i8)>,
}

/// The branched standard spine dual to a triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpineComplex {
    pub vertices: usize,
    pub edges: Vec<SpineEdge>,
    pub regions: Vec<SpineRegion>,
}

impl SpineComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.regions.len() as i64
    }
}

/// Region index of every tetrahedron edge.
pub(crate) fn region_index(t: &BranchedTriangulation) -> HashMap<(usize, (usize, usize)), usize> {
    let mut out = HashMap::new();
    for (r, cl) in t.edge_classes().into_iter().enumerate() {
        for occ in cl {
            out.insert(occ, r);
        }
    }
    out
}

/// Builds the dual spine of a closed triangulation.
pub fn dual_spine(t: &BranchedTriangulation) -> SpineComplex {
    let regions_of = region_index(t);
    let pairs = t.face_pairs();
    let mut edge_of: HashMap<FaceRef, usize> = HashMap::new();
    let mut edges = Vec::with_capacity(pairs.len());
    for (n, (a, b)) in pairs.iter().enumerate() {
        edge_of.insert(*a, n);
        edge_of.insert(*b, n);
        let (tail, head) = if t.outgoing(*a) { (*a, *b) } else { (*b, *a) };
        let germs = Role::ALL.map(|role| Germ { region: regions_of[&(a.tet, role.local_edge(a.face))], role });
        edges.push(SpineEdge { tail: (tail.tet, tail.face), head: (head.tet, head.face), germs });
    }
    let mut regions = Vec::new();
    for cl in t.edge_classes() {
        let (i, (a, b)) = cl[0];
        let rest: Vec<usize> = (0..4).filter(|r| *r != a && *r != b).collect();
        let (c, d) = (rest[0], rest[1]);
        let s = -t.eps(i) * perm_sign(&[a, b, c, d]);
        let mut cycle = t.edge_cycle(i, (a, b));
        if s < 0 {
            cycle = cycle.iter().rev().map(|f| t.glued(*f).expect("closed")).collect();
        }
        let boundary = cycle.iter().map(|f| (edge_of[f], if t.outgoing(*f) { 1 } else { -1 })).collect();
        regions.push(SpineRegion { boundary });
    }
    SpineComplex { vertices: t.n_tets(), edges, regions }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abalone_spine_counts() {
        let g = |f| Some(FaceRef::new(0, f));
        let t = BranchedTriangulation::from_ranked(vec![1], vec![[g(3), g(2), g(1), g(0)]]).unwrap();
        let s = dual_spine(&t);
        assert_eq!((s.vertices, s.edges.len(), s.regions.len()), (1, 2, 2));
        assert_eq!(s.euler_characteristic(), 1);
        let sides: usize = s.regions.iter().map(|r| r.boundary.len()).sum();
        assert_eq!(sides, 3 * s.edges.len());
    }
}
