mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::t_pow;
use spinetor::algebra::LaurentRational;
use spinetor::complex::{check_complex, AttachedComplex};
use spinetor::euler::{blacken, build_s_prime, build_s_second, Direction, EulerChain};
use spinetor::fixtures::{abalone, dug_abalone};
use spinetor::homology::TreeChoice;
use spinetor::spine::dual_spine;
use spinetor::torsion::{chain_torsion, Rel, Representation, TwistedComplex};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn setup(signs: &[i8], choice: TreeChoice) -> Result<(AttachedComplex, EulerChain), String> {
    let r = dug_abalone(signs).map_err(|e| e.to_string())?;
    let c = r.complex(choice).map_err(|e| e.to_string())?;
    let s = build_s_prime(&c).map_err(|e| e.to_string())?;
    Ok((c, s))
}

fn rel_torsion(c: &AttachedComplex, z: &EulerChain) -> Result<spinetor::torsion::TorsionValue, String> {
    chain_torsion(c, z, &Representation::free(1), Rel::WBar).map_err(|e| e.to_string())
}

fn abalone_end_to_end() -> Outcome {
    let start = Instant::now();
    let r = dug_abalone(&[]).map_err(|e| e.to_string())?;
    let sp = dual_spine(&r.triangulation);
    let shape = (sp.vertices, sp.edges.len(), sp.regions.len());
    ensure(shape == (5, 10, 6), format!("dug spine {shape:?}"))?;
    let c = r.complex(TreeChoice::Bfs).map_err(|e| e.to_string())?;
    let s = build_s_prime(&c).map_err(|e| e.to_string())?;
    let tc = TwistedComplex::build(&c, &s.lifts(&c, &BTreeMap::new()).map_err(|e| e.to_string())?, &Representation::free(1), Rel::WBar)
        .map_err(|e| e.to_string())?;
    ensure(tc.sizes() == [3, 14, 16, 5], format!("cell counts {:?}", tc.sizes()))?;
    let tau = tc.torsion().map_err(|e| e.to_string())?;
    ensure(tau.equals(&t_pow(-1)), format!("torsion {tau}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("spine 5/10/6, cells 3/14/16/5, torsion {tau}, {elapsed:.2?}"))
}

fn curl_family() -> Outcome {
    let start = Instant::now();
    let (c, s) = setup(&[], TreeChoice::Bfs)?;
    let base = rel_torsion(&c, &s)?.monomial_exponents().ok_or("base torsion is not a monomial")?[0];
    let mut shifts = Vec::new();
    for sign in [1i8, -1] {
        for n in 1..=3 {
            let (c, s) = setup(&vec![sign; n], TreeChoice::Bfs)?;
            let tau = rel_torsion(&c, &s)?;
            let e = tau.monomial_exponents().ok_or(format!("{n} curls of sign {sign}: {tau}"))?[0];
            ensure(e - base == i64::from(sign) * n as i64, format!("{n} curls of sign {sign}: {tau}"))?;
            shifts.push(e - base);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("exponent shifts {shifts:?}, {elapsed:.2?}"))
}

fn equivariance() -> Outcome {
    let (c, s) = setup(&[], TreeChoice::Bfs)?;
    let rep = Representation::free(1);
    let base = rel_torsion(&c, &s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut classes = BTreeSet::new();
    for i in 0..20 {
        let steps = rng.gen_range(2..24);
        let walk = common::random_closed_walk(&c, &mut rng, steps);
        let lambda = c.walk_class(&walk);
        let leg = rng.gen_range(0..s.legs.len());
        let z = s.with_loop(leg, &lambda);
        let diff = spinetor::euler::chain_difference(&c, &z, &s).map_err(|e| e.to_string())?;
        ensure(diff == lambda, format!("trial {i}: difference {diff:?} for loop {lambda:?}"))?;
        let tau = rel_torsion(&c, &z)?;
        let expected = base.value() * &rep.image(&lambda);
        ensure(tau.equals(&expected), format!("trial {i}: loop {lambda:?} gave {tau}"))?;
        classes.insert(lambda[0]);
    }
    Ok(format!("20 loops, classes {classes:?}"))
}

fn choice_independence() -> Outcome {
    let rep = Representation::free(1);
    let (c0, s0) = setup(&[], TreeChoice::Bfs)?;
    let lifts0 = s0.lifts(&c0, &BTreeMap::new()).map_err(|e| e.to_string())?;
    let tc0 = TwistedComplex::build(&c0, &lifts0, &rep, Rel::WBar).map_err(|e| e.to_string())?;
    let expected = tc0.torsion().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..20 {
        let (c, s) = setup(&[], TreeChoice::Seeded(rng.gen()))?;
        ensure(rel_torsion(&c, &s)? == expected, format!("tree trial {i}"))?;
        let tau = tc0.torsion_with_priority(Some(rng.gen())).map_err(|e| e.to_string())?;
        ensure(tau == expected, format!("minor trial {i}: {tau}"))?;
        let heads: BTreeSet<usize> = s0.legs.iter().map(|l| l.head).collect();
        let shifted: BTreeMap<usize, Vec<i64>> = heads.iter().map(|h| (*h, vec![rng.gen_range(-5..6)])).collect();
        let lifts = s0.lifts(&c0, &shifted).map_err(|e| e.to_string())?;
        let tau = TwistedComplex::build(&c0, &lifts, &rep, Rel::WBar).and_then(|t| Ok(t.torsion()?)).map_err(|e| e.to_string())?;
        ensure(tau == expected, format!("head lift trial {i}: {tau}"))?;
        let tau = tc0.shuffled(rng.gen()).torsion().map_err(|e| e.to_string())?;
        ensure(tau == expected, format!("cell order trial {i}: {tau}"))?;
    }
    Ok(format!("80 re-selections all give {expected}"))
}

fn circle() -> Outcome {
    let rep = Representation::free(1);
    let tc = TwistedComplex::circle(&rep, &[1]);
    ensure(tc.is_acyclic(), "circle complex is not acyclic")?;
    let tau = tc.torsion().map_err(|e| e.to_string())?;
    ensure(tau.equals(&(&t_pow(1) - &LaurentRational::one(1))), format!("circle torsion {tau}"))?;
    Ok(format!("circle torsion {tau}"))
}

fn structural() -> Outcome {
    let mut complexes = vec![AttachedComplex::build(&abalone()).map_err(|e| e.to_string())?];
    for signs in [vec![], vec![1], vec![-1], vec![1, 1]] {
        complexes.push(setup(&signs, TreeChoice::Bfs)?.0);
    }
    let mut cases = 0;
    for (i, c) in complexes.iter().enumerate() {
        ensure(c.boundary_squares_to_zero(), format!("fixture {i}: integer boundary does not square to zero"))?;
        let rep = check_complex(c);
        ensure(rep.euler_residue == 0, format!("fixture {i}: Euler residue {}", rep.euler_residue))?;
        let s = build_s_prime(c).map_err(|e| e.to_string())?;
        for case in s.bookkeeping_cases(c) {
            ensure(case.failures.is_empty(), format!("fixture {i}: {} fails at {:?}", case.family, case.failures))?;
            cases += usize::from(case.cells > 0);
        }
        if c.rank() == 1 {
            let lifts: BTreeMap<usize, Vec<i64>> = (0..c.cells().len()).map(|id| (id, vec![(id % 7) as i64 - 3])).collect();
            let tc = TwistedComplex::build(c, &lifts, &Representation::free(1), Rel::Nothing).map_err(|e| e.to_string())?;
            ensure(tc.squares_to_zero(), format!("fixture {i}: twisted boundary does not square to zero"))?;
        }
    }
    Ok(format!("{} fixtures, {cases} nonempty bookkeeping cases", complexes.len()))
}

fn multiplicativity() -> Outcome {
    let r = dug_abalone(&[]).map_err(|e| e.to_string())?;
    let c = r.complex(TreeChoice::Bfs).map_err(|e| e.to_string())?;
    let rep = Representation::free(1);
    let s = build_s_prime(&c).map_err(|e| e.to_string())?;
    let lon = r.longitude_class(c.cocycle());
    ensure(lon == vec![-1], format!("longitude class {lon:?}"))?;
    let z = build_s_second(&c, &s).map_err(|e| e.to_string())?;
    let dir = Direction::with_class(&c, &lon).map_err(|e| e.to_string())?;
    let b = blacken(&c, &z, dir).map_err(|e| e.to_string())?;
    let rel = TwistedComplex::build(&c, &s.lifts(&c, &BTreeMap::new()).map_err(|e| e.to_string())?, &rep, Rel::WBar).map_err(|e| e.to_string())?;
    let abs = TwistedComplex::build(&c, &b.lifts(&c, &BTreeMap::new()).map_err(|e| e.to_string())?, &rep, Rel::Nothing).map_err(|e| e.to_string())?;
    let tau_rel = common::dense_torsion(&rel).ok_or("relative complex not acyclic")?;
    let tau_abs = common::dense_torsion(&abs).ok_or("absolute complex not acyclic")?;
    let factor = &rep.image(&lon) - &LaurentRational::one(1);
    ensure(tau_abs.abs_sign() == (&tau_rel * &factor).abs_sign(), "dense oracle disagrees with the product")?;
    let engine = abs.torsion().map_err(|e| e.to_string())?;
    ensure(engine.equals(&tau_abs), format!("engine gives {engine}"))?;
    let names = rep.names().to_vec();
    Ok(format!("blackened {engine} = ({}) * ({})", tau_rel.format(&names), factor.format(&names)))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("abalone end-to-end", abalone_end_to_end),
        ("curl family", curl_family),
        ("equivariance", equivariance),
        ("choice independence", choice_independence),
        ("circle", circle),
        ("structural suite", structural),
        ("multiplicativity", multiplicativity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}. {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
