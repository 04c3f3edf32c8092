#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spinetor::algebra::bareiss::{bareiss_select, clear_denominators, det_laurent};
use spinetor::algebra::LaurentRational;
use spinetor::complex::AttachedComplex;
use spinetor::torsion::TwistedComplex;

/// `t^e` in one variable.
pub fn t_pow(e: i64) -> LaurentRational {
    LaurentRational::var(1, 0).pow(e)
}

/// Rank of an integer matrix over `Q`, or over `F_p` when `p` is given.
pub fn rank(m: &[Vec<i64>], p: Option<i64>) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(BigInt::from(p.map_or(*x, |p| x.rem_euclid(p))))).collect())
        .collect();
    let reduce = |x: BigRational| -> BigRational {
        match p {
            None => x,
            Some(p) => {
                let n = x.numer().clone();
                let d = x.denom().clone();
                let pb = BigInt::from(p);
                let inv = d.modpow(&(&pb - 2), &pb);
                BigRational::from_integer(((n * inv) % &pb + &pb) % &pb)
            }
        }
    };
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|i| !a[*i][c].is_zero()) else { continue };
        a.swap(r, piv);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in 0..cols {
                    let v = &a[i][j] - &(&f * &a[r][j]);
                    a[i][j] = reduce(v);
                }
            }
        }
        r += 1;
    }
    r
}

/// Betti numbers of the absolute complex over `Q` or `F_p`.
pub fn betti(c: &AttachedComplex, p: Option<i64>) -> [usize; 4] {
    let n = c.counts(&[]);
    let ranks: Vec<usize> = (0..5).map(|d| if d == 0 || d > 3 { 0 } else { rank(&c.integer_boundary(d), p) }).collect();
    [0, 1, 2, 3].map(|i| n[i] - ranks[i] - ranks[i + 1])
}

/// A random closed walk in the 1-skeleton starting and ending at `x0`.
pub fn random_closed_walk(c: &AttachedComplex, rng: &mut ChaCha8Rng, steps: usize) -> Vec<(usize, i8)> {
    let mut adj: BTreeMap<usize, Vec<(usize, i8, usize)>> = BTreeMap::new();
    for e in c.cells_of_dim(1) {
        let b = c.boundary(e);
        let head = b.iter().find(|x| x.sign > 0).map(|x| x.face);
        let tail = b.iter().find(|x| x.sign < 0).map(|x| x.face);
        let (h, t) = match (head, tail) {
            (Some(h), Some(t)) => (h, t),
            _ => {
                let v = b.first().map_or(c.base(), |x| x.face);
                (v, v)
            }
        };
        adj.entry(t).or_default().push((e, 1, h));
        adj.entry(h).or_default().push((e, -1, t));
    }
    let start = c.base();
    let mut walk = Vec::new();
    let mut cur = start;
    for _ in 0..steps {
        let options = &adj[&cur];
        let (e, s, next) = options[rng.gen_range(0..options.len())];
        walk.push((e, s));
        cur = next;
    }
    let mut parent: BTreeMap<usize, (usize, i8, usize)> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([start]);
    let mut seen = std::collections::BTreeSet::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(e, s, w) in &adj[&v] {
            if seen.insert(w) {
                parent.insert(w, (e, s, v));
                queue.push_back(w);
            }
        }
    }
    while cur != start {
        let (e, s, v) = parent[&cur];
        walk.push((e, -s));
        cur = v;
    }
    walk
}

/// Torsion by dense fraction-free elimination, choosing each minor by
/// Bareiss column selection on the transposed boundary matrix.
pub fn dense_torsion(tc: &TwistedComplex) -> Option<LaurentRational> {
    let k = tc.nvars();
    let sizes = tc.sizes();
    let mut tau = LaurentRational::one(k);
    let mut cols: Vec<usize> = (0..sizes[3]).collect();
    for d in (1..4).rev() {
        let n = sizes[d - 1];
        let rows = tc.matrix(d);
        let tr: Vec<Vec<LaurentRational>> = cols
            .iter()
            .map(|j| (0..n).map(|i| rows[i].get(j).cloned().unwrap_or_else(|| LaurentRational::zero(k))).collect())
            .collect();
        let picked = if tr.is_empty() {
            Vec::new()
        } else {
            let polys = tr.iter().map(|r| clear_denominators(r, k).0).collect();
            bareiss_select(polys, &(0..n).collect::<Vec<_>>())?.0
        };
        let sub: Vec<Vec<LaurentRational>> = tr.iter().map(|r| picked.iter().map(|p| r[*p].clone()).collect()).collect();
        let det = if sub.is_empty() { LaurentRational::one(k) } else { det_laurent(&sub, k) };
        tau = if d % 2 == 1 { &tau * &det } else { &tau / &det };
        cols = (0..n).filter(|i| !picked.contains(i)).collect();
    }
    cols.is_empty().then_some(tau)
}
