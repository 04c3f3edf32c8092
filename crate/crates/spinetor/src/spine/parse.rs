use super::{perm_sign, BranchedTriangulation, FaceRef, Tet};
use crate::error::SpineError;

/// A gluing entry as written in the text format, in input vertex labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawGluing {
    pub tet: usize,
    pub face: usize,
    /// `perm[x] = y`: the x-th vertex of the source face (in increasing label
    /// order) goes to the y-th vertex of the target face.
    pub perm: [usize; 3],
}

/// One tetrahedron as written in the text format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTet {
    pub faces: [Option<RawGluing>; 4],
    /// Orientation of edges `01 02 03 12 13 23`; `true` means lower label to higher.
    pub edges: [bool; 6],
}

/// A triangulation exactly as read, before any consistency checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTriangulation {
    pub tets: Vec<RawTet>,
}

/// Per-tetrahedron branching summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetReport {
    pub source: Option<u8>,
    pub sink: Option<u8>,
    /// Faces (by opposite label) whose three edges form an oriented cycle.
    pub cyclic_faces: Vec<u8>,
}

/// Result of checking the branching condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub tets: Vec<TetReport>,
    pub pass: bool,
}

pub(crate) const EDGE_LABELS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn labels_of_face(f: usize) -> [usize; 3] {
    super::face_verts(f)
}

impl RawTet {
    /// True when the edge between labels `a` and `b` points from `a` to `b`.
    pub fn points(&self, a: usize, b: usize) -> bool {
        let (lo, hi) = (a.min(b), a.max(b));
        let pos = EDGE_LABELS.iter().position(|e| *e == (lo, hi)).expect("distinct labels");
        self.edges[pos] == (a < b)
    }

    fn out_degree(&self, v: usize) -> usize {
        (0..4).filter(|w| *w != v && self.points(v, *w)).count()
    }

    /// Rank of every label, if the edge orientations form a total order.
    pub fn ranks(&self) -> Option<[usize; 4]> {
        let mut r = [0; 4];
        let mut seen = [false; 4];
        for v in 0..4 {
            r[v] = 3 - self.out_degree(v);
            if seen[r[v]] {
                return None;
            }
            seen[r[v]] = true;
        }
        Some(r)
    }

    /// Full label map of the gluing on face `f`.
    fn label_map(&self, f: usize) -> Option<[usize; 4]> {
        let g = self.faces[f]?;
        let src = labels_of_face(f);
        let dst = labels_of_face(g.face);
        let mut m = [0; 4];
        m[f] = g.face;
        for x in 0..3 {
            m[src[x]] = dst[g.perm[x]];
        }
        Some(m)
    }
}

/// Checks the branching condition tetrahedron by tetrahedron.
pub fn validate_branching(t: &RawTriangulation) -> ValidationReport {
    let mut tets = Vec::new();
    for tet in &t.tets {
        let cyclic_faces: Vec<u8> = (0..4)
            .filter(|f| labels_of_face(*f).iter().all(|v| {
                labels_of_face(*f).iter().filter(|w| *w != v && tet.points(*v, **w)).count() == 1
            }))
            .map(|f| f as u8)
            .collect();
        let find = |deg| (0..4).filter(|v| tet.out_degree(*v) == deg).collect::<Vec<_>>();
        let one = |v: Vec<usize>| if v.len() == 1 { Some(v[0] as u8) } else { None };
        tets.push(TetReport { source: one(find(3)), sink: one(find(0)), cyclic_faces });
    }
    let pass = tets.iter().all(|r| r.cyclic_faces.is_empty() && r.source.is_some() && r.sink.is_some());
    ValidationReport { tets, pass }
}

impl RawTriangulation {
    /// Checks every invariant and converts to rank-labelled form.
    pub fn to_branched(&self) -> Result<BranchedTriangulation, SpineError> {
        let n = self.tets.len();
        if n == 0 {
            return Err(SpineError::Empty);
        }
        for (i, tet) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let Some(g) = tet.faces[f] else { continue };
                let bad = SpineError::NonInvolutive { tet: i, face: f };
                let back = self.tets.get(g.tet).and_then(|t| t.faces.get(g.face).copied().flatten()).ok_or(bad.clone())?;
                if back.tet != i || back.face != f {
                    return Err(bad);
                }
                for x in 0..3 {
                    if back.perm[g.perm[x]] != x {
                        return Err(bad);
                    }
                }
                let m = tet.label_map(f).expect("glued face");
                if perm_sign(&m) != -1 {
                    return Err(SpineError::Orientation { tet: i, face: f });
                }
                let other = &self.tets[g.tet];
                let fl = labels_of_face(f);
                for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                    let (a, b) = (fl[x], fl[y]);
                    if tet.points(a, b) != other.points(m[a], m[b]) {
                        return Err(SpineError::EdgeMismatch { tet: i, face: f });
                    }
                }
            }
        }
        let report = validate_branching(self);
        for (i, r) in report.tets.iter().enumerate() {
            if let Some(f) = r.cyclic_faces.first() {
                return Err(SpineError::Branching { tet: i, face: *f as usize });
            }
        }
        let ranks: Vec<[usize; 4]> = self.tets.iter().map(|t| t.ranks().expect("branching checked")).collect();
        let mut tets = Vec::with_capacity(n);
        for (i, tet) in self.tets.iter().enumerate() {
            let r = ranks[i];
            let mut label_of_rank = [0u8; 4];
            for (label, rank) in r.iter().enumerate() {
                label_of_rank[*rank] = label as u8;
            }
            let mut glue = [None; 4];
            for f in 0..4 {
                if let Some(g) = tet.faces[f] {
                    glue[r[f]] = Some(FaceRef::new(g.tet, ranks[g.tet][g.face]));
                }
            }
            tets.push(Tet { eps: -perm_sign(&r), glue, label_of_rank });
        }
        BranchedTriangulation::from_tets(tets)
    }
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s + 1, &text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &text[s..]));
        }
        Self { line, tokens, pos: 0 }
    }

    fn err(&self, col: usize, msg: impl Into<String>) -> SpineError {
        SpineError::Syntax { line: self.line, col, msg: msg.into() }
    }

    fn end_col(&self) -> usize {
        self.tokens.last().map(|(c, t)| c + t.len()).unwrap_or(1)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), SpineError> {
        let tok = self.tokens.get(self.pos).copied().ok_or_else(|| self.err(self.end_col(), format!("expected {what}")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SpineError> {
        let (c, t) = self.next(kw)?;
        if t != kw {
            return Err(self.err(c, format!("expected `{kw}`, found `{t}`")));
        }
        Ok(())
    }

    fn number(&mut self, what: &str, bound: usize) -> Result<usize, SpineError> {
        let (c, t) = self.next(what)?;
        let t = t.strip_suffix(':').unwrap_or(t);
        let v: usize = t.parse().map_err(|_| self.err(c, format!("expected {what}, found `{t}`")))?;
        if v >= bound {
            return Err(self.err(c, format!("{what} {v} out of range")));
        }
        Ok(v)
    }

    fn finish(&self) -> Result<(), SpineError> {
        match self.tokens.get(self.pos) {
            Some((c, t)) => Err(self.err(*c, format!("unexpected `{t}`"))),
            None => Ok(()),
        }
    }
}

/// Reads the text format without checking gluing consistency.
pub fn parse_raw(text: &str) -> Result<RawTriangulation, SpineError> {
    let mut n: Option<usize> = None;
    let mut faces: Vec<[Option<Option<RawGluing>>; 4]> = Vec::new();
    let mut edges: Vec<Option<[bool; 6]>> = Vec::new();
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(line, body);
        let Some(&(col, head)) = cur.tokens.first() else { continue };
        let Some(count) = n else {
            cur.keyword("tets")?;
            let v = cur.number("tetrahedron count", usize::MAX)?;
            if v == 0 {
                return Err(cur.err(col + 5, "tetrahedron count must be positive"));
            }
            cur.finish()?;
            n = Some(v);
            faces = vec![[None; 4]; v];
            edges = vec![None; v];
            continue;
        };
        match head {
            "face" => {
                cur.pos = 1;
                let i = cur.number("tetrahedron index", count)?;
                let f = cur.number("face index", 4)?;
                cur.keyword("->")?;
                let (c, t) = cur.next("target tetrahedron or `boundary`")?;
                let entry = if t == "boundary" {
                    None
                } else {
                    cur.pos -= 1;
                    let j = cur.number("target tetrahedron", count)?;
                    let g = cur.number("target face", 4)?;
                    let (pc, word) = cur.next("vertex correspondence")?;
                    let digits: Vec<usize> = word.chars().filter_map(|ch| ch.to_digit(10).map(|d| d as usize)).collect();
                    let mut seen = [false; 3];
                    let ok = word.len() == 3 && digits.len() == 3 && digits.iter().all(|d| *d < 3 && !std::mem::replace(&mut seen[*d], true));
                    if !ok {
                        return Err(cur.err(pc, format!("`{word}` is not a permutation of 012")));
                    }
                    Some(RawGluing { tet: j, face: g, perm: [digits[0], digits[1], digits[2]] })
                };
                cur.finish()?;
                if faces[i][f].is_some() {
                    return Err(cur.err(c, format!("face {i} {f} given twice")));
                }
                faces[i][f] = Some(entry);
            }
            "edges" => {
                cur.pos = 1;
                let i = cur.number("tetrahedron index", count)?;
                let mut bits = [false; 6];
                for b in &mut bits {
                    let (c, t) = cur.next("edge orientation")?;
                    *b = match t {
                        "+" => true,
                        "-" => false,
                        _ => return Err(cur.err(c, format!("expected `+` or `-`, found `{t}`"))),
                    };
                }
                cur.finish()?;
                if edges[i].is_some() {
                    return Err(cur.err(col, format!("edges of tetrahedron {i} given twice")));
                }
                edges[i] = Some(bits);
            }
            other => return Err(cur.err(col, format!("unknown directive `{other}`"))),
        }
    }
    let Some(count) = n else { return Err(SpineError::Empty) };
    let mut tets = Vec::with_capacity(count);
    for i in 0..count {
        let mut fs = [None; 4];
        for f in 0..4 {
            fs[f] = faces[i][f].ok_or(SpineError::Syntax {
                line: last_line + 1,
                col: 1,
                msg: format!("missing face {i} {f}"),
            })?;
        }
        let e = edges[i].ok_or(SpineError::Syntax { line: last_line + 1, col: 1, msg: format!("missing edges of tetrahedron {i}") })?;
        tets.push(RawTet { faces: fs, edges: e });
    }
    Ok(RawTriangulation { tets })
}

/// Reads and validates a triangulation.
pub fn parse_triangulation(text: &str) -> Result<BranchedTriangulation, SpineError> {
    parse_raw(text)?.to_branched()
}
