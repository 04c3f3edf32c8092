//! First homology of a closed ideal triangulation and an integral cocycle
//! on face crossings representing the projection onto its free part.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::snf::{row_hermite, smith_normal_form, IntMatrix};
use crate::error::ComplexError;
use crate::spine::{BranchedTriangulation, FaceRef};

/// How the spanning tree of the dual graph is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeChoice {
    /// Breadth-first from tetrahedron 0, neighbours in face order.
    #[default]
    Bfs,
    /// A random spanning tree determined by the seed.
    Seeded(u64),
}

/// Summary of `H_1`: free rank and torsion invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Summary {
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl std::fmt::Display for H1Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An integral cocycle on the dual graph: each glued face pair carries a
/// vector in `Z^k`, where `k` is the free rank of `H_1`.
#[derive(Debug, Clone)]
pub struct Cocycle {
    rank: usize,
    torsion: Vec<BigInt>,
    pairs: Vec<(FaceRef, FaceRef)>,
    index: BTreeMap<FaceRef, (usize, i64)>,
    values: Vec<Vec<i64>>,
}

impl Cocycle {
    /// Computes `H_1` and a cocycle for its free part.  The basis of the free
    /// part is normalized so that the result does not depend on `choice`.
    pub fn compute(t: &BranchedTriangulation, choice: TreeChoice) -> Result<Self, ComplexError> {
        if let Some(f) = unglued_face(t) {
            return Err(ComplexError::Unglued { tet: f.tet, face: f.face });
        }
        let pairs = t.face_pairs();
        let mut index = BTreeMap::new();
        for (n, (x, y)) in pairs.iter().enumerate() {
            index.insert(*x, (n, 1));
            index.insert(*y, (n, -1));
        }
        let tree = spanning_tree(t, &pairs, choice);
        let nontree: Vec<usize> = (0..pairs.len()).filter(|n| !tree[*n]).collect();
        let col: BTreeMap<usize, usize> = nontree.iter().enumerate().map(|(c, n)| (*n, c)).collect();
        let mut rows: IntMatrix = Vec::new();
        for class in t.edge_classes() {
            let (i, e) = class[0];
            let mut row = vec![BigInt::zero(); nontree.len()];
            for f in t.edge_cycle(i, e) {
                let (n, s) = index[&f];
                if let Some(c) = col.get(&n) {
                    row[*c] += s;
                }
            }
            rows.push(row);
        }
        let mut values = vec![Vec::new(); pairs.len()];
        let (rank, torsion) = if nontree.is_empty() {
            (0, Vec::new())
        } else {
            let snf = smith_normal_form(&rows);
            let factors = snf.invariant_factors();
            let r = factors.len();
            let k = nontree.len() - r;
            for n in 0..pairs.len() {
                values[n] = match col.get(&n) {
                    Some(c) => (0..k).map(|q| to_i64(&snf.v[*c][r + q])).collect(),
                    None => vec![0; k],
                };
            }
            (k, factors.into_iter().filter(|d| !d.is_one()).collect())
        };
        let mut out = Cocycle { rank, torsion, pairs, index, values };
        out.normalize_basis(t);
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn summary(&self) -> H1Summary {
        H1Summary { rank: self.rank, torsion: self.torsion.iter().map(BigInt::to_string).collect() }
    }

    /// The class of crossing face `f` from its tetrahedron into the glued one.
    pub fn crossing(&self, f: FaceRef) -> Vec<i64> {
        let (n, s) = self.index[&f];
        self.values[n].iter().map(|x| s * x).collect()
    }

    /// Sum of crossing classes along a sequence of faces.
    pub fn path_class(&self, faces: &[FaceRef]) -> Vec<i64> {
        let mut acc = vec![0; self.rank];
        for f in faces {
            for (a, b) in acc.iter_mut().zip(self.crossing(*f)) {
                *a += b;
            }
        }
        acc
    }

    /// Applies the integral change of coordinates `x -> m x` to every value.
    pub fn transform(&mut self, m: &[Vec<i64>]) {
        for v in &mut self.values {
            *v = m.iter().map(|row| row.iter().zip(v.iter()).map(|(a, b)| a * b).sum()).collect();
        }
    }

    pub fn face_pairs(&self) -> &[(FaceRef, FaceRef)] {
        &self.pairs
    }

    /// Puts the free basis in Hermite form relative to the fundamental loops
    /// of the breadth-first tree.
    fn normalize_basis(&mut self, t: &BranchedTriangulation) {
        if self.rank == 0 {
            return;
        }
        let loops = fundamental_loops(t, &self.pairs);
        let mt: IntMatrix =
            (0..self.rank).map(|q| loops.iter().map(|l| BigInt::from(self.path_class(l)[q])).collect()).collect();
        let (_, w) = row_hermite(&mt);
        let w: Vec<Vec<i64>> = w.iter().map(|r| r.iter().map(to_i64).collect()).collect();
        self.transform(&w);
    }
}

fn unglued_face(t: &BranchedTriangulation) -> Option<FaceRef> {
    (0..t.n_tets()).flat_map(|i| (0..4).map(move |k| FaceRef::new(i, k))).find(|f| t.glued(*f).is_none())
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("cocycle coordinate fits in i64")
}

fn adjacency(t: &BranchedTriangulation, pairs: &[(FaceRef, FaceRef)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); t.n_tets()];
    for (n, (x, y)) in pairs.iter().enumerate() {
        adj[x.tet].push((y.tet, n));
        adj[y.tet].push((x.tet, n));
    }
    adj
}

fn spanning_tree(t: &BranchedTriangulation, pairs: &[(FaceRef, FaceRef)], choice: TreeChoice) -> Vec<bool> {
    let adj = adjacency(t, pairs);
    let mut in_tree = vec![false; pairs.len()];
    let mut seen = vec![false; t.n_tets()];
    match choice {
        TreeChoice::Bfs => {
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(x) = queue.pop_front() {
                for &(y, n) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        in_tree[n] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        TreeChoice::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let root = rng.gen_range(0..t.n_tets());
            seen[root] = true;
            let mut frontier = vec![root];
            while !frontier.is_empty() {
                let x = frontier.swap_remove(rng.gen_range(0..frontier.len()));
                let mut nb = adj[x].clone();
                nb.shuffle(&mut rng);
                for (y, n) in nb {
                    if !seen[y] {
                        seen[y] = true;
                        in_tree[n] = true;
                        frontier.push(y);
                    }
                }
            }
        }
    }
    in_tree
}

/// For each face pair outside the breadth-first tree, the closed sequence
/// of face crossings formed by the pair and the tree paths to its ends.
pub fn fundamental_loops(t: &BranchedTriangulation, pairs: &[(FaceRef, FaceRef)]) -> Vec<Vec<FaceRef>> {
    let tree = spanning_tree(t, pairs, TreeChoice::Bfs);
    let mut parent: Vec<Option<FaceRef>> = vec![None; t.n_tets()];
    let mut depth = vec![0usize; t.n_tets()];
    let mut queue = VecDeque::from([0]);
    let mut seen = vec![false; t.n_tets()];
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for k in 0..4 {
            let f = FaceRef::new(x, k);
            let Some(g) = t.glued(f) else { continue };
            let n = pairs.iter().position(|p| *p == (f.min(g), f.max(g))).expect("pair");
            if tree[n] && !seen[g.tet] {
                seen[g.tet] = true;
                parent[g.tet] = Some(g);
                depth[g.tet] = depth[x] + 1;
                queue.push_back(g.tet);
            }
        }
    }
    let up = |mut x: usize| {
        let mut path = Vec::new();
        while let Some(f) = parent[x] {
            path.push(f);
            x = t.glued(f).expect("tree face is glued").tet;
        }
        path
    };
    let mut loops = Vec::new();
    for (n, (a, b)) in pairs.iter().enumerate() {
        if tree[n] {
            continue;
        }
        let mut l = Vec::new();
        let rev: Vec<FaceRef> = up(a.tet).into_iter().rev().map(|f| t.glued(f).expect("glued")).collect();
        l.extend(rev);
        l.push(*a);
        l.extend(up(b.tet));
        loops.push(l);
    }
    loops
}
