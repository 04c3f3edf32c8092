use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use spinetor::knot::{dig_tunnel, parse_diagram, DigResult, KnotDiagram};
use spinetor::spine::{parse_raw, parse_triangulation, validate_branching, BranchedTriangulation};

/// How a command failed, which fixes its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input data: exit code 1.
    Invalid(String),
    /// Bad command line: exit code 2.
    Usage(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<spinetor::Error> for Failure {
    fn from(e: spinetor::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Whether the text is a knot diagram rather than a triangulation.
pub fn is_diagram(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("knot on"))
}

/// A triangulation given directly, or obtained by digging a knot.
pub struct Input {
    pub digest: String,
    pub triangulation: BranchedTriangulation,
    pub knot: Option<(KnotDiagram, DigResult)>,
}

/// Parses and branching-checks a triangulation file.
pub fn parse_spine(text: &str) -> Result<BranchedTriangulation, Failure> {
    let raw = parse_raw(text).map_err(|e| Failure::Invalid(e.to_string()))?;
    let report = validate_branching(&raw);
    if !report.pass {
        let bad: Vec<String> = report
            .tets
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.cyclic_faces.is_empty() || r.source.is_none() || r.sink.is_none())
            .map(|(i, _)| i.to_string())
            .collect();
        return Err(Failure::Invalid(format!("branching fails on tetrahedra {}", bad.join(", "))));
    }
    parse_triangulation(text).map_err(|e| Failure::Invalid(e.to_string()))
}

/// The spine file a diagram refers to, relative to the diagram's directory.
pub fn spine_path(diagram_path: &Path, d: &KnotDiagram, spine: Option<&Path>) -> PathBuf {
    match spine {
        Some(p) => p.to_path_buf(),
        None => diagram_path.parent().unwrap_or(Path::new(".")).join(&d.spine),
    }
}

pub fn load_diagram(path: &Path, spine: Option<&Path>) -> Result<(KnotDiagram, BranchedTriangulation, Sha256), Failure> {
    let text = read(path)?;
    let d = parse_diagram(&text).map_err(|e| Failure::Invalid(e.to_string()))?;
    let sp = spine_path(path, &d, spine);
    let spine_text = read(&sp)?;
    let t = parse_spine(&spine_text)?;
    d.validate(&t).map_err(|e| Failure::Invalid(e.to_string()))?;
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    h.update(spine_text.as_bytes());
    Ok((d, t, h))
}

/// Loads a triangulation, or a knot diagram whose tunnel is then dug.
pub fn load(path: &Path, spine: Option<&Path>) -> Result<Input, Failure> {
    let text = read(path)?;
    if is_diagram(&text) {
        let (d, t, h) = load_diagram(path, spine)?;
        let r = dig_tunnel(&t, &d).map_err(|e| Failure::Invalid(e.to_string()))?;
        return Ok(Input { digest: format!("{:x}", h.finalize()), triangulation: r.triangulation.clone(), knot: Some((d, r)) });
    }
    if spine.is_some() {
        return Err(Failure::Usage("--spine only applies to knot diagrams".into()));
    }
    let t = parse_spine(&text)?;
    Ok(Input { digest: format!("{:x}", Sha256::digest(text.as_bytes())), triangulation: t, knot: None })
}
