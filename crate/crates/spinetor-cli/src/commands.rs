use std::path::Path;

use serde::Serialize;

use spinetor::complex::{check_complex, AttachedComplex, ComplexReport};
use spinetor::error::TorsionError;
use spinetor::euler::{blacken, build_s_prime, build_s_second, Direction};
use spinetor::homology::{Cocycle, TreeChoice};
use spinetor::knot::parse_diagram;
use spinetor::spine::{dual_spine, format_triangulation, BranchedTriangulation};
use spinetor::torsion::{Rel, Representation, TwistedComplex};

use crate::input::{self, Failure, Input};

fn emit<T: Serialize>(report: &T, json: bool, text: impl FnOnce(&T) -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable report"));
    } else {
        print!("{}", text(report));
    }
}

#[derive(Serialize)]
struct SpineShape {
    vertices: usize,
    edges: usize,
    regions: usize,
}

fn shape(t: &BranchedTriangulation) -> SpineShape {
    let s = dual_spine(t);
    SpineShape { vertices: s.vertices, edges: s.edges.len(), regions: s.regions.len() }
}

fn complex_of(inp: &Input, choice: TreeChoice) -> Result<AttachedComplex, Failure> {
    Ok(match &inp.knot {
        Some((_, r)) => r.complex(choice)?,
        None => AttachedComplex::with_cocycle(&inp.triangulation, Cocycle::compute(&inp.triangulation, choice).map_err(spinetor::Error::from)?)
            .map_err(spinetor::Error::from)?,
    })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct ValidateReport {
    input_sha256: String,
    valid: bool,
    checks: Vec<Check>,
}

pub fn validate(path: &Path, spine: Option<&Path>, json: bool) -> Result<u8, Failure> {
    let inp = match input::load(path, spine) {
        Ok(i) => i,
        Err(Failure::Invalid(msg)) => {
            let report = ValidateReport {
                input_sha256: String::new(),
                valid: false,
                checks: vec![Check { name: "parse", pass: false, detail: msg }],
            };
            emit(&report, json, validate_text);
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let mut checks = vec![Check { name: "parse", pass: true, detail: format!("tetrahedra: {}", inp.triangulation.n_tets()) }];
    match complex_of(&inp, TreeChoice::Bfs) {
        Ok(c) => {
            let r = check_complex(&c);
            checks.push(Check { name: "boundary squares to zero", pass: r.boundary_squares_to_zero, detail: String::new() });
            checks.push(Check {
                name: "boundary pattern",
                pass: r.pattern_valid,
                detail: r.pattern_error.clone().unwrap_or_else(|| format!("{} contact circles", r.contact_circles)),
            });
            checks.push(Check { name: "euler residue", pass: r.euler_residue == 0, detail: r.euler_residue.to_string() });
            let s = build_s_prime(&c);
            checks.push(Check {
                name: "chain bookkeeping",
                pass: s.as_ref().map(|s| s.check_bookkeeping(&c).is_ok()).unwrap_or(false),
                detail: s.err().map(|e| e.to_string()).unwrap_or_default(),
            });
        }
        Err(f) => checks.push(Check { name: "cell complex", pass: false, detail: f.message().to_string() }),
    }
    let valid = checks.iter().all(|c| c.pass);
    let report = ValidateReport { input_sha256: inp.digest, valid, checks };
    emit(&report, json, validate_text);
    Ok(if valid { 0 } else { 1 })
}

fn validate_text(r: &ValidateReport) -> String {
    let mut out = String::new();
    if !r.input_sha256.is_empty() {
        out += &format!("input sha256: {}\n", r.input_sha256);
    }
    for c in &r.checks {
        let status = if c.pass { "ok" } else { "FAILED" };
        if c.detail.is_empty() {
            out += &format!("{}: {status}\n", c.name);
        } else {
            out += &format!("{}: {status} ({})\n", c.name, c.detail);
        }
    }
    out += if r.valid { "valid\n" } else { "invalid\n" };
    out
}

#[derive(Serialize)]
struct KnotInfo {
    crossings: usize,
    meridian_class: Vec<i64>,
    longitude_class: Vec<i64>,
}

#[derive(Serialize)]
struct InfoReport {
    input_sha256: String,
    tetrahedra: usize,
    spine: SpineShape,
    h1: String,
    complex: ComplexReport,
    knot: Option<KnotInfo>,
}

pub fn info(path: &Path, spine: Option<&Path>, json: bool) -> Result<u8, Failure> {
    let inp = input::load(path, spine)?;
    let c = complex_of(&inp, TreeChoice::Bfs)?;
    let knot = inp.knot.as_ref().map(|(d, r)| KnotInfo {
        crossings: d.crossing_count(),
        meridian_class: r.meridian_class(c.cocycle()),
        longitude_class: r.longitude_class(c.cocycle()),
    });
    let report = InfoReport {
        input_sha256: inp.digest.clone(),
        tetrahedra: inp.triangulation.n_tets(),
        spine: shape(&inp.triangulation),
        h1: c.cocycle().summary().to_string(),
        complex: check_complex(&c),
        knot,
    };
    emit(&report, json, |r| {
        let mut out = format!("input sha256: {}\n", r.input_sha256);
        out += &format!("tetrahedra: {}\n", r.tetrahedra);
        out += &format!("spine: {} vertices, {} edges, {} regions\n", r.spine.vertices, r.spine.edges, r.spine.regions);
        out += &format!("H_1: {}\n", r.h1);
        let [a, b, cc, d] = r.complex.counts;
        out += &format!("cells: {a} {b} {cc} {d}\n");
        let [a, b, cc, d] = r.complex.relative_counts;
        out += &format!("cells rel white: {a} {b} {cc} {d}\n");
        out += &format!("contact circles: {}\n", r.complex.contact_circles);
        out += &format!("euler characteristic: {}\n", r.complex.euler_characteristic);
        if let Some(k) = &r.knot {
            out += &format!("crossings: {}\n", k.crossings);
            out += &format!("meridian class: {:?}\n", k.meridian_class);
            out += &format!("longitude class: {:?}\n", k.longitude_class);
        }
        out
    });
    Ok(0)
}

#[derive(Serialize)]
struct DigReport {
    input_sha256: String,
    spine: SpineShape,
    output: Option<String>,
    triangulation: Option<String>,
}

pub fn dig(path: &Path, spine: Option<&Path>, output: Option<&Path>, json: bool) -> Result<u8, Failure> {
    let text = input::read(path)?;
    if !input::is_diagram(&text) {
        return Err(Failure::Usage(format!("{} is not a knot diagram", path.display())));
    }
    let inp = input::load(path, spine)?;
    let tri = format_triangulation(&inp.triangulation);
    if let Some(out) = output {
        input::write(out, &tri)?;
    }
    let report = DigReport {
        input_sha256: inp.digest,
        spine: shape(&inp.triangulation),
        output: output.map(|p| p.display().to_string()),
        triangulation: if output.is_none() { Some(tri) } else { None },
    };
    emit(&report, json, |r| match &r.triangulation {
        Some(t) => t.clone(),
        None => format!(
            "wrote {}: {} vertices, {} edges, {} regions\n",
            r.output.as_deref().unwrap_or_default(),
            r.spine.vertices,
            r.spine.edges,
            r.spine.regions
        ),
    });
    Ok(0)
}

pub fn curl(path: &Path, sign: i8, site: usize, count: usize, output: Option<&Path>) -> Result<u8, Failure> {
    let mut d = parse_diagram(&input::read(path)?).map_err(|e| Failure::Invalid(e.to_string()))?;
    for _ in 0..count {
        d = d.add_double_curl(sign, site).map_err(|e| Failure::Invalid(e.to_string()))?;
    }
    let text = d.to_string();
    match output {
        Some(p) => input::write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

pub struct TorsionOptions {
    pub rel: Option<Rel>,
    pub blacken: bool,
    pub rep: Vec<String>,
    pub tree_seed: Option<u64>,
}

#[derive(Serialize)]
struct TorsionReport {
    input_sha256: String,
    spine: SpineShape,
    h1: String,
    rel: &'static str,
    structure: &'static str,
    representation: Vec<String>,
    cells: [usize; 4],
    acyclic: bool,
    torsion: Option<String>,
    monomial: Option<String>,
}

pub fn torsion(path: &Path, spine: Option<&Path>, opts: &TorsionOptions, json: bool) -> Result<u8, Failure> {
    let rel = match (opts.blacken, opts.rel) {
        (true, Some(Rel::WBar)) => return Err(Failure::Usage("--blacken uses the absolute complex; drop --rel wbar".into())),
        (true, _) => Rel::Nothing,
        (false, r) => r.unwrap_or(Rel::WBar),
    };
    let inp = input::load(path, spine)?;
    let choice = opts.tree_seed.map_or(TreeChoice::Bfs, TreeChoice::Seeded);
    let c = complex_of(&inp, choice)?;
    let rep = Representation::with_assignments(c.rank(), &opts.rep).map_err(|e| Failure::Usage(e.to_string()))?;
    let s = build_s_prime(&c).map_err(spinetor::Error::from)?;
    let chain = if opts.blacken {
        let z = build_s_second(&c, &s).map_err(spinetor::Error::from)?;
        let direction = match &inp.knot {
            Some((_, r)) => Direction::with_class(&c, &r.longitude_class(c.cocycle())).map_err(spinetor::Error::from)?,
            None => Direction::Along,
        };
        blacken(&c, &z, direction).map_err(spinetor::Error::from)?
    } else {
        s
    };
    let lifts = chain.lifts(&c, &Default::default()).map_err(spinetor::Error::from)?;
    let tc = TwistedComplex::build(&c, &lifts, &rep, rel).map_err(|e| match e {
        spinetor::Error::Chain(_) => Failure::Invalid(format!("the chain does not cover the complex rel {}; use --blacken", rel_name(rel))),
        e => e.into(),
    })?;
    let (acyclic, torsion, monomial) = match tc.torsion() {
        Ok(t) => {
            let mono = t.monomial_exponents().map(|_| t.value().format(tc.names()));
            (true, Some(t.to_string()), mono)
        }
        Err(TorsionError::NotAcyclic) => (false, None, None),
        Err(e) => return Err(Failure::Invalid(e.to_string())),
    };
    let report = TorsionReport {
        input_sha256: inp.digest.clone(),
        spine: shape(&inp.triangulation),
        h1: c.cocycle().summary().to_string(),
        rel: rel_name(rel),
        structure: if opts.blacken { "blackened" } else { "convex" },
        representation: (0..rep.rank()).map(|i| format!("{} -> {}", rep.names()[i], rep.image_of_generator(i).format(rep.names()))).collect(),
        cells: tc.sizes(),
        acyclic,
        torsion,
        monomial,
    };
    emit(&report, json, |r| {
        let mut out = format!("input sha256: {}\n", r.input_sha256);
        out += &format!("spine: {} vertices, {} edges, {} regions\n", r.spine.vertices, r.spine.edges, r.spine.regions);
        out += &format!("H_1: {}\n", r.h1);
        out += &format!("structure: {}\n", r.structure);
        out += &format!("rel: {}\n", r.rel);
        if !r.representation.is_empty() {
            out += &format!("representation: {}\n", r.representation.join(", "));
        }
        let [a, b, cc, d] = r.cells;
        out += &format!("cells: {a} {b} {cc} {d}\n");
        match &r.torsion {
            Some(t) => out += &format!("torsion: {t}\n"),
            None => out += "torsion: undefined (complex is not acyclic for this representation)\n",
        }
        if let Some(m) = &r.monomial {
            out += &format!("monomial: {m}\n");
        }
        out
    });
    Ok(0)
}

fn rel_name(rel: Rel) -> &'static str {
    match rel {
        Rel::WBar => "wbar",
        Rel::Nothing => "none",
    }
}
