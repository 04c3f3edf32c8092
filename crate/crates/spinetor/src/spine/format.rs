use std::fmt::Write;

use super::parse::EDGE_LABELS;
use super::{face_verts, phi, BranchedTriangulation, FaceRef};

/// Writes a triangulation in the text format, using each tetrahedron's
/// stored vertex labels.
pub fn format_triangulation(t: &BranchedTriangulation) -> String {
    let mut out = String::new();
    writeln!(out, "tets {}", t.n_tets()).unwrap();
    let rank_of = |i: usize| {
        let mut r = [0usize; 4];
        for (rank, label) in t.tets()[i].label_of_rank.iter().enumerate() {
            r[*label as usize] = rank;
        }
        r
    };
    for i in 0..t.n_tets() {
        let ri = rank_of(i);
        for f in 0..4 {
            let k = ri[f];
            match t.glued(FaceRef::new(i, k)) {
                None => writeln!(out, "face {i} {f} -> boundary").unwrap(),
                Some(g) => {
                    let lj = t.tets()[g.tet].label_of_rank;
                    let target = lj[g.face] as usize;
                    let p = phi(k, g.face);
                    let dst = face_verts(target);
                    let word: String = face_verts(f)
                        .iter()
                        .map(|a| {
                            let label = lj[p[ri[*a]]] as usize;
                            let pos = dst.iter().position(|x| *x == label).expect("label on face");
                            char::from(b'0' + pos as u8)
                        })
                        .collect();
                    writeln!(out, "face {i} {f} -> {} {target} {word}", g.tet).unwrap();
                }
            }
        }
        let bits: Vec<&str> = EDGE_LABELS.iter().map(|(a, b)| if ri[*a] < ri[*b] { "+" } else { "-" }).collect();
        writeln!(out, "edges {i}: {}", bits.join(" ")).unwrap();
    }
    out
}
