//! Branched ideal triangulations and their dual branched standard spines.
//!
//! Internally every tetrahedron is stored with its vertices indexed by rank
//! in the branching order (0 = source, 3 = sink).  Faces are indexed by the
//! rank of the opposite vertex.  Branched gluings preserve the order of the
//! face vertices, so a gluing is determined by the pair of faces alone.

mod dual;
mod format;
mod parse;

pub use dual::{dual_spine, Germ, Role, SpineComplex, SpineEdge, SpineRegion};
pub use format::format_triangulation;
pub use parse::{parse_raw, parse_triangulation, validate_branching, RawTet, RawTriangulation, TetReport, ValidationReport};

use crate::error::SpineError;

/// A face of a tetrahedron, indexed by the rank of its opposite vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceRef {
    pub tet: usize,
    pub face: usize,
}

impl FaceRef {
    pub fn new(tet: usize, face: usize) -> Self {
        Self { tet, face }
    }
}

/// A rank-labelled tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tet {
    /// Chirality: orientation of the rank order is `-eps`.
    pub eps: i8,
    pub glue: [Option<FaceRef>; 4],
    /// Input vertex label carried by each rank.
    pub label_of_rank: [u8; 4],
}

/// A branched ideal triangulation in rank-labelled form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchedTriangulation {
    tets: Vec<Tet>,
}

/// Ranks of the three vertices of face `k`, in increasing order.
pub fn face_verts(k: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for r in 0..4 {
        if r != k {
            out[n] = r;
            n += 1;
        }
    }
    out
}

/// The order-preserving vertex map from face `k` to face `l`, as a rank map
/// defined on the vertices of face `k` (entry `k` is unused).
pub fn phi(k: usize, l: usize) -> [usize; 4] {
    let a = face_verts(k);
    let b = face_verts(l);
    let mut p = [usize::MAX; 4];
    for x in 0..3 {
        p[a[x]] = b[x];
    }
    p
}

/// Sign of a permutation of `0..n` given as an image array.
pub(crate) fn perm_sign(p: &[usize]) -> i8 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// The label assignment used when writing a tetrahedron of chirality `eps`.
pub fn canonical_labels(eps: i8) -> [u8; 4] {
    if eps < 0 {
        [0, 1, 2, 3]
    } else {
        [1, 0, 2, 3]
    }
}

/// An unordered triangulation edge inside one tetrahedron, as a rank pair.
pub type LocalEdge = (usize, usize);

impl BranchedTriangulation {
    /// Builds a triangulation from rank-labelled data, checking involutivity,
    /// orientability and connectedness.
    pub fn from_ranked(eps: Vec<i8>, glue: Vec<[Option<FaceRef>; 4]>) -> Result<Self, SpineError> {
        let tets = eps
            .into_iter()
            .zip(glue)
            .map(|(e, g)| Tet { eps: e, glue: g, label_of_rank: canonical_labels(e) })
            .collect();
        Self::from_tets(tets)
    }

    pub(crate) fn from_tets(tets: Vec<Tet>) -> Result<Self, SpineError> {
        if tets.is_empty() {
            return Err(SpineError::Empty);
        }
        let t = Self { tets };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), SpineError> {
        let n = self.tets.len();
        for (i, tet) in self.tets.iter().enumerate() {
            for k in 0..4 {
                let Some(g) = tet.glue[k] else { continue };
                let back = self.tets.get(g.tet).and_then(|t| t.glue.get(g.face).copied().flatten());
                if g.face > 3 || back != Some(FaceRef::new(i, k)) {
                    return Err(SpineError::NonInvolutive { tet: i, face: k });
                }
                let sign = if (k + g.face) % 2 == 0 { 1 } else { -1 };
                if self.tets[g.tet].eps != -sign * tet.eps {
                    return Err(SpineError::Orientation { tet: i, face: k });
                }
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for g in self.tets[i].glue.iter().flatten() {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    stack.push(g.tet);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SpineError::Disconnected);
        }
        Ok(())
    }

    pub fn n_tets(&self) -> usize {
        self.tets.len()
    }

    pub fn tets(&self) -> &[Tet] {
        &self.tets
    }

    pub fn eps(&self, i: usize) -> i8 {
        self.tets[i].eps
    }

    pub fn glued(&self, f: FaceRef) -> Option<FaceRef> {
        self.tets[f.tet].glue[f.face]
    }

    /// True when the spine edge dual to face `f` leaves the tetrahedron of `f`.
    pub fn outgoing(&self, f: FaceRef) -> bool {
        let s = if f.face.is_multiple_of(2) { 1 } else { -1 };
        self.eps(f.tet) * s == -1
    }

    /// Glued face pairs `(a, b)` with `a < b`, in increasing order.
    pub fn face_pairs(&self) -> Vec<(FaceRef, FaceRef)> {
        let mut out = Vec::new();
        for i in 0..self.n_tets() {
            for k in 0..4 {
                let a = FaceRef::new(i, k);
                if let Some(b) = self.glued(a) {
                    if a <= b {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// Number of unglued faces.
    pub fn boundary_faces(&self) -> usize {
        self.tets.iter().map(|t| t.glue.iter().filter(|g| g.is_none()).count()).sum()
    }

    /// Equivalence classes of tetrahedron edges, each sorted, in sorted order.
    pub fn edge_classes(&self) -> Vec<Vec<(usize, LocalEdge)>> {
        let idx = |i: usize, e: LocalEdge| i * 16 + e.0 * 4 + e.1;
        let mut uf = UnionFind::new(self.n_tets() * 16);
        for i in 0..self.n_tets() {
            for k in 0..4 {
                let Some(g) = self.glued(FaceRef::new(i, k)) else { continue };
                let p = phi(k, g.face);
                let fv = face_verts(k);
                for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                    let (a, b) = (fv[x], fv[y]);
                    let (c, d) = (p[a].min(p[b]), p[a].max(p[b]));
                    uf.union(idx(i, (a, b)), idx(g.tet, (c, d)));
                }
            }
        }
        self.classes(&mut uf, |i| local_edges().into_iter().map(move |e| (i, e)), |(i, e)| idx(i, e))
    }

    /// Equivalence classes of tetrahedron corners (ideal vertices).
    pub fn vertex_classes(&self) -> Vec<Vec<(usize, usize)>> {
        let idx = |i: usize, a: usize| i * 4 + a;
        let mut uf = UnionFind::new(self.n_tets() * 4);
        for i in 0..self.n_tets() {
            for k in 0..4 {
                let Some(g) = self.glued(FaceRef::new(i, k)) else { continue };
                let p = phi(k, g.face);
                for a in face_verts(k) {
                    uf.union(idx(i, a), idx(g.tet, p[a]));
                }
            }
        }
        self.classes(&mut uf, |i| (0..4).map(move |a| (i, a)), |(i, a)| idx(i, a))
    }

    fn classes<T, I, F>(&self, uf: &mut UnionFind, items: impl Fn(usize) -> I, key: F) -> Vec<Vec<T>>
    where
        T: Ord + Copy,
        I: Iterator<Item = T>,
        F: Fn(T) -> usize,
    {
        let mut groups: std::collections::BTreeMap<usize, Vec<T>> = Default::default();
        for i in 0..self.n_tets() {
            for it in items(i) {
                groups.entry(uf.find(key(it))).or_default().push(it);
            }
        }
        let mut out: Vec<Vec<T>> = groups.into_values().collect();
        for g in &mut out {
            g.sort();
        }
        out.sort();
        out
    }

    /// The cyclic sequence of faces crossed when walking around the edge
    /// class of local edge `e` of tetrahedron `i`, starting through the face
    /// opposite the smaller remaining vertex.
    pub fn edge_cycle(&self, i: usize, e: LocalEdge) -> Vec<FaceRef> {
        let others: Vec<usize> = (0..4).filter(|r| *r != e.0 && *r != e.1).collect();
        let start = (i, e, others[0]);
        let mut st = start;
        let mut steps = Vec::new();
        loop {
            let (ti, ed, k) = st;
            steps.push(FaceRef::new(ti, k));
            let g = self.glued(FaceRef::new(ti, k)).expect("edge cycle through unglued face");
            let p = phi(k, g.face);
            let (x, y) = (p[ed.0], p[ed.1]);
            let ne = (x.min(y), x.max(y));
            let rest: Vec<usize> = (0..4).filter(|r| *r != ne.0 && *r != ne.1).collect();
            let nk = if rest[0] == g.face { rest[1] } else { rest[0] };
            st = (g.tet, ne, nk);
            if st == start {
                return steps;
            }
        }
    }
}

/// The six edges of a tetrahedron as rank pairs in lexicographic order.
pub fn local_edges() -> [LocalEdge; 6] {
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
}

/// Plain union-find used for class computations.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abalone() -> BranchedTriangulation {
        let g = |f| Some(FaceRef::new(0, f));
        BranchedTriangulation::from_ranked(vec![1], vec![[g(3), g(2), g(1), g(0)]]).unwrap()
    }

    #[test]
    fn phi_is_order_preserving() {
        let p = phi(0, 3);
        assert_eq!((p[1], p[2], p[3]), (0, 1, 2));
    }

    #[test]
    fn abalone_classes() {
        let t = abalone();
        assert_eq!(t.face_pairs().len(), 2);
        let ec = t.edge_classes();
        assert_eq!(ec.len(), 2);
        assert_eq!(ec.iter().map(Vec::len).collect::<Vec<_>>(), vec![5, 1]);
        assert_eq!(t.vertex_classes().len(), 1);
    }

    #[test]
    fn edge_cycle_lengths_match_class_sizes() {
        let t = abalone();
        for cl in t.edge_classes() {
            let (i, e) = cl[0];
            assert_eq!(t.edge_cycle(i, e).len(), cl.len());
        }
    }

    #[test]
    fn orientation_violation_is_rejected() {
        let g = |f| Some(FaceRef::new(0, f));
        let err = BranchedTriangulation::from_ranked(vec![1], vec![[g(2), g(3), g(0), g(1)]]).unwrap_err();
        assert!(matches!(err, SpineError::Orientation { .. }));
    }

    #[test]
    fn non_involutive_is_rejected() {
        let g = |f| Some(FaceRef::new(0, f));
        let err = BranchedTriangulation::from_ranked(vec![1], vec![[g(3), g(2), g(1), g(1)]]).unwrap_err();
        assert!(matches!(err, SpineError::NonInvolutive { .. }));
    }
}
