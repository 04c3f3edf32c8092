//! Digging a tunnel along a knot diagram.
//!
//! Each passage of the knot through a spine edge adds two tetrahedra, one
//! on each side of the tunnel, which are threaded into the cut edge.  Each
//! self-crossing adds four tetrahedra, one for each pair of tunnel walls
//! meeting there.  The tunnel walls on the left and on the right of the
//! knot close up into two loops of tetrahedra.

use std::collections::BTreeMap;

use serde::Serialize;

use super::diagram::{KnotDiagram, Station};
use crate::error::KnotError;
use crate::spine::{face_verts, phi, BranchedTriangulation, FaceRef, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    const BOTH: [Side; 2] = [Side::Left, Side::Right];

    fn value(self) -> i64 {
        match self {
            Side::Left => 1,
            Side::Right => -1,
        }
    }
}

/// Where a new tetrahedron comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexTag {
    /// A passage through a spine edge, on one side of the tunnel.  `floor`
    /// is true when the passage involves the high germ.
    Passage { station: usize, side: Side, floor: bool },
    /// A self-crossing, where the over strand's wall on `over_side` meets
    /// the under strand's wall on `under_side`.
    Crossing { id: usize, over_side: Side, under_side: Side },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Strand {
    Over,
    Under,
    Tunnel,
    Ell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chamber {
    Out,
    Tunnel,
}

type V2 = [i64; 2];
const U: V2 = [1, 0];
const W: V2 = [0, 1];

fn scale(s: i64, v: V2) -> V2 {
    [s * v[0], s * v[1]]
}

fn dot(a: V2, b: V2) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

#[derive(Debug, Clone)]
struct NewVertex {
    eps: i8,
    faces: BTreeMap<(Strand, i64), usize>,
    chambers: [Chamber; 4],
    tag: VertexTag,
}

impl NewVertex {
    /// A tetrahedron where strand `alpha` (direction, wall side) crosses
    /// strand `beta`.
    fn new(alpha: (Strand, V2, V2), beta: (Strand, V2, V2), chambers: [Chamber; 4], tag: VertexTag) -> Self {
        let x = scale(-1, alpha.2);
        let y = scale(-1, beta.2);
        let eps = (x[0] * y[1] - x[1] * y[0]) as i8;
        let mut faces = BTreeMap::new();
        let s = dot(alpha.1, y);
        faces.insert((alpha.0, s), 1);
        faces.insert((alpha.0, -s), 0);
        let s = dot(beta.1, x);
        faces.insert((beta.0, s), 2);
        faces.insert((beta.0, -s), 3);
        NewVertex { eps, faces, chambers, tag }
    }

    fn face(&self, strand: Strand, dir: i64) -> usize {
        self.faces[&(strand, dir)]
    }
}

/// The exterior of a knot: its triangulation, the origin of each new
/// tetrahedron, and face-crossing sequences of a meridian and of the
/// longitude running along the left tunnel wall.
#[derive(Debug, Clone)]
pub struct DigResult {
    pub triangulation: BranchedTriangulation,
    pub tags: Vec<(usize, VertexTag)>,
    pub meridian: Vec<FaceRef>,
    pub longitude: Vec<FaceRef>,
}

struct Passage {
    tail: FaceRef,
    head: FaceRef,
    list: Vec<(usize, [usize; 2])>,
}

/// Digs the tunnel of `d` into the spine dual to `t`.
pub fn dig_tunnel(t: &BranchedTriangulation, d: &KnotDiagram) -> Result<DigResult, KnotError> {
    let stations = d.stations(t)?;
    let pairs = t.face_pairs();
    let mut verts: Vec<NewVertex> = Vec::new();
    let mut loops: BTreeMap<Side, Vec<(usize, Strand)>> = Side::BOTH.into_iter().map(|s| (s, Vec::new())).collect();
    let mut ell: BTreeMap<usize, Passage> = BTreeMap::new();
    let mut xv: BTreeMap<(usize, Side, Side), usize> = BTreeMap::new();
    let mut passage_vertex: BTreeMap<(usize, Side), usize> = BTreeMap::new();
    let mut floor_of: BTreeMap<usize, bool> = BTreeMap::new();

    for (si, st) in stations.iter().enumerate() {
        match *st {
            Station::Cross { edge, from, to, position } => {
                let (a, b) = pairs[edge];
                let (tail, head) = if t.outgoing(a) { (a, b) } else { (b, a) };
                let s2d = from == Role::Mid;
                let dbl = if s2d { to } else { from };
                let q = if s2d { U } else { scale(-1, U) };
                let dl = if s2d { scale(-1, W) } else { W };
                let floor = dbl == Role::High;
                floor_of.insert(si, floor);
                let mut vs = BTreeMap::new();
                for sd in Side::BOTH {
                    let strip = scale(-sd.value(), W);
                    let tag = VertexTag::Passage { station: si, side: sd, floor };
                    let v = if floor {
                        NewVertex::new((Strand::Tunnel, U, strip), (Strand::Ell, dl, q), [Chamber::Out, Chamber::Out, Chamber::Tunnel, Chamber::Out], tag)
                    } else {
                        NewVertex::new((Strand::Ell, dl, q), (Strand::Tunnel, U, strip), [Chamber::Out, Chamber::Tunnel, Chamber::Out, Chamber::Out], tag)
                    };
                    verts.push(v);
                    let id = verts.len() - 1;
                    vs.insert(sd, id);
                    passage_vertex.insert((si, sd), id);
                    loops.get_mut(&sd).expect("side").push((id, Strand::Tunnel));
                }
                let order = if s2d { [vs[&Side::Left], vs[&Side::Right]] } else { [vs[&Side::Right], vs[&Side::Left]] };
                ell.entry(edge).or_insert(Passage { tail, head, list: Vec::new() }).list.push((position, order));
            }
            Station::Crossing { id, over, sign } => {
                let sg = i64::from(sign);
                let mut xvertex = |so: Side, us: Side| {
                    *xv.entry((id, so, us)).or_insert_with(|| {
                        let uu = scale(sg, W);
                        let wu = scale(-sg, U);
                        let tag = VertexTag::Crossing { id, over_side: so, under_side: us };
                        verts.push(NewVertex::new(
                            (Strand::Over, U, scale(-so.value(), W)),
                            (Strand::Under, uu, scale(-us.value(), wu)),
                            [Chamber::Out, Chamber::Tunnel, Chamber::Tunnel, Chamber::Out],
                            tag,
                        ));
                        verts.len() - 1
                    })
                };
                let (first, second) = match (over, sign > 0) {
                    (true, true) | (false, false) => (Side::Left, Side::Right),
                    _ => (Side::Right, Side::Left),
                };
                for sd in Side::BOTH {
                    for other in [first, second] {
                        let (v, strand) = if over { (xvertex(sd, other), Strand::Over) } else { (xvertex(other, sd), Strand::Under) };
                        loops.get_mut(&sd).expect("side").push((v, strand));
                    }
                }
            }
        }
    }

    let n0 = t.n_tets();
    let total = n0 + verts.len();
    let mut eps: Vec<i8> = (0..n0).map(|i| t.eps(i)).collect();
    eps.extend(verts.iter().map(|v| v.eps));
    let mut glue: Vec<[Option<FaceRef>; 4]> = (0..n0).map(|i| t.tets()[i].glue).collect();
    glue.extend(std::iter::repeat_n([None; 4], verts.len()));
    let mut chambers: Vec<[Chamber; 4]> = vec![[Chamber::Out; 4]; n0];
    chambers.extend(verts.iter().map(|v| v.chambers));

    for p in ell.values() {
        glue[p.tail.tet][p.tail.face] = None;
        glue[p.head.tet][p.head.face] = None;
    }
    let mut pair = |a: FaceRef, b: FaceRef| -> Result<(), KnotError> {
        if glue[a.tet][a.face].is_some() || glue[b.tet][b.face].is_some() {
            return Err(KnotError::Invalid(format!("face ({}, {}) or ({}, {}) glued twice while digging", a.tet, a.face, b.tet, b.face)));
        }
        glue[a.tet][a.face] = Some(b);
        glue[b.tet][b.face] = Some(a);
        Ok(())
    };
    let fr = |v: usize, strand: Strand, dir: i64| FaceRef::new(n0 + v, verts[v].face(strand, dir));
    for lst in loops.values() {
        let m = lst.len();
        for x in 0..m {
            let (v, s) = lst[x];
            let (v2, s2) = lst[(x + 1) % m];
            pair(fr(v, s, 1), fr(v2, s2, -1))?;
        }
    }
    for p in ell.values_mut() {
        p.list.sort();
        let mut prev = p.tail;
        for v in p.list.iter().flat_map(|(_, o)| o.iter().copied()) {
            pair(prev, fr(v, Strand::Ell, -1))?;
            prev = fr(v, Strand::Ell, 1);
        }
        pair(prev, p.head)?;
    }

    for i in 0..total {
        for k in 0..4 {
            let Some(g) = glue[i][k] else {
                return Err(KnotError::Invalid(format!("face ({i}, {k}) left unglued while digging")));
            };
            let p = phi(k, g.face);
            for r in face_verts(k) {
                if chambers[i][r] != chambers[g.tet][p[r]] {
                    return Err(KnotError::NonStandard(format!("tunnel walls do not match across face ({i}, {k})")));
                }
            }
        }
    }
    let triangulation = BranchedTriangulation::from_ranked(eps, glue).map_err(|e| KnotError::NonStandard(e.to_string()))?;

    let meridian = meridian(&floor_of, &passage_vertex, &loops, &ell, &fr)?;
    let longitude = loops[&Side::Left].iter().map(|(v, s)| fr(*v, *s, 1)).collect();
    let tags = verts.iter().enumerate().map(|(v, x)| (n0 + v, x.tag)).collect();
    Ok(DigResult { triangulation, tags, meridian, longitude })
}

/// A meridian: from the first floor passage along the left wall to the
/// next arch passage, across the cut edge, back along the right wall and
/// across the cut edge again.
fn meridian(
    floor_of: &BTreeMap<usize, bool>,
    passage_vertex: &BTreeMap<(usize, Side), usize>,
    loops: &BTreeMap<Side, Vec<(usize, Strand)>>,
    ell: &BTreeMap<usize, Passage>,
    fr: &dyn Fn(usize, Strand, i64) -> FaceRef,
) -> Result<Vec<FaceRef>, KnotError> {
    let st: Vec<usize> = floor_of.keys().copied().collect();
    let missing = || KnotError::NonStandard("the knot needs passages through both the high and the low germ".into());
    let sf_pos = st.iter().position(|s| floor_of[s]).ok_or_else(missing)?;
    let sf = st[sf_pos];
    let sa = (0..st.len()).map(|x| st[(sf_pos + x) % st.len()]).find(|s| !floor_of[s]).ok_or_else(missing)?;
    let vx = |s: usize, sd: Side| passage_vertex[&(s, sd)];
    let mut steps = Vec::new();
    let ell_step = |a: usize, b: usize| -> FaceRef {
        for p in ell.values() {
            for (_, o) in &p.list {
                if o.contains(&a) && o.contains(&b) {
                    let d = if o[0] == a { 1 } else { -1 };
                    return fr(a, Strand::Ell, d);
                }
            }
        }
        unreachable!("passage vertices share a cut edge")
    };
    let left = &loops[&Side::Left];
    let right = &loops[&Side::Right];
    let mut ia = left.iter().position(|e| e.0 == vx(sf, Side::Left)).expect("in loop");
    while left[ia].0 != vx(sa, Side::Left) {
        let (v, s) = left[ia];
        steps.push(fr(v, s, 1));
        ia = (ia + 1) % left.len();
    }
    steps.push(ell_step(vx(sa, Side::Left), vx(sa, Side::Right)));
    let mut ib = right.iter().position(|e| e.0 == vx(sa, Side::Right)).expect("in loop");
    while right[ib].0 != vx(sf, Side::Right) {
        let (v, s) = right[ib];
        steps.push(fr(v, s, -1));
        ib = (ib + right.len() - 1) % right.len();
    }
    steps.push(ell_step(vx(sf, Side::Right), vx(sf, Side::Left)));
    Ok(steps)
}
