//! Twisted chain complexes of the maximal free abelian cover and their
//! Reidemeister torsion.

mod rep;

pub use rep::Representation;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::sparse::{select_rows_det, sparse_rank, SparseRow};
use crate::algebra::LaurentRational;
use crate::complex::{vadd, vsub, AttachedComplex, Colour};
use crate::error::{ChainError, TorsionError};
use crate::euler::EulerChain;

/// Which cells the twisted complex is taken relative to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rel {
    /// Relative to the closure of the white region: white and contact
    /// cells are dropped.
    WBar,
    /// The absolute complex.
    Nothing,
}

impl Rel {
    pub fn keeps(self, colour: Colour) -> bool {
        match self {
            Rel::WBar => !matches!(colour, Colour::White | Colour::Contact),
            Rel::Nothing => true,
        }
    }
}

/// A finite based chain complex over `Q(t_1..t_k)` concentrated in
/// dimensions 0 to 3.
///
/// `matrix(d)` has one sparse row per basis cell of dimension `d - 1`,
/// keyed by the positions of the cells of dimension `d`.
#[derive(Debug, Clone)]
pub struct TwistedComplex {
    names: Vec<String>,
    cells: [Vec<usize>; 4],
    mats: [Vec<SparseRow>; 4],
}

impl TwistedComplex {
    /// The complex spanned by the chosen lifts of the cells kept by `rel`.
    pub fn build(c: &AttachedComplex, lifts: &BTreeMap<usize, Vec<i64>>, rep: &Representation, rel: Rel) -> Result<TwistedComplex, crate::Error> {
        if rep.rank() != c.rank() {
            return Err(TorsionError::Representation(format!(
                "representation has {} generators but the free part of H_1 has rank {}",
                rep.rank(),
                c.rank()
            ))
            .into());
        }
        let mut cells: [Vec<usize>; 4] = Default::default();
        for (id, cell) in c.cells().iter().enumerate() {
            if rel.keeps(cell.colour) {
                cells[cell.dim].push(id);
            }
        }
        let missing = cells.iter().flatten().filter(|id| !lifts.contains_key(id)).count();
        if missing > 0 {
            return Err(ChainError::Uncovered(missing).into());
        }
        let nvars = rep.rank();
        let mut mats: [Vec<SparseRow>; 4] = Default::default();
        for d in 1..4 {
            let pos: BTreeMap<usize, usize> = cells[d - 1].iter().enumerate().map(|(j, id)| (*id, j)).collect();
            let mut rows = vec![SparseRow::new(); cells[d - 1].len()];
            for (j, g) in cells[d].iter().enumerate() {
                for inc in c.boundary(*g) {
                    let Some(&i) = pos.get(&inc.face) else { continue };
                    let e = vsub(&vadd(&lifts[g], &inc.shift), &lifts[&inc.face]);
                    let v = &LaurentRational::from_int(nvars, inc.sign as i64) * &rep.image(&e);
                    let slot = rows[i].entry(j).or_insert_with(|| LaurentRational::zero(nvars));
                    *slot = &*slot + &v;
                }
            }
            for r in &mut rows {
                r.retain(|_, v| !v.is_zero());
            }
            mats[d] = rows;
        }
        Ok(TwistedComplex { names: rep.names().to_vec(), cells, mats })
    }

    /// The twisted circle: one vertex, one edge, boundary `image(g) - 1`.
    pub fn circle(rep: &Representation, g: &[i64]) -> TwistedComplex {
        let k = rep.rank();
        let v = &rep.image(g) - &LaurentRational::one(k);
        let row: SparseRow = if v.is_zero() { SparseRow::new() } else { [(0, v)].into_iter().collect() };
        TwistedComplex {
            names: rep.names().to_vec(),
            cells: [vec![0], vec![1], Vec::new(), Vec::new()],
            mats: [Vec::new(), vec![row], Vec::new(), Vec::new()],
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sizes(&self) -> [usize; 4] {
        [self.cells[0].len(), self.cells[1].len(), self.cells[2].len(), self.cells[3].len()]
    }

    /// Cell ids forming the basis in dimension `d`, in basis order.
    pub fn cells(&self, d: usize) -> &[usize] {
        &self.cells[d]
    }

    /// Rows indexed by the basis of dimension `d - 1`.
    pub fn matrix(&self, d: usize) -> &[SparseRow] {
        &self.mats[d]
    }

    /// The same complex with the basis of each dimension reordered at
    /// random.
    pub fn shuffled(&self, seed: u64) -> TwistedComplex {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<usize>> = self
            .cells
            .iter()
            .map(|c| {
                let mut p: Vec<usize> = (0..c.len()).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let mut cells: [Vec<usize>; 4] = Default::default();
        let mut mats: [Vec<SparseRow>; 4] = Default::default();
        for d in 0..4 {
            cells[d] = perms[d].iter().map(|j| self.cells[d][*j]).collect();
        }
        for d in 1..4 {
            let mut inv = vec![0; perms[d].len()];
            for (new, old) in perms[d].iter().enumerate() {
                inv[*old] = new;
            }
            mats[d] = perms[d - 1]
                .iter()
                .map(|old| self.mats[d][*old].iter().map(|(j, v)| (inv[*j], v.clone())).collect())
                .collect();
        }
        TwistedComplex { names: self.names.clone(), cells, mats }
    }

    /// Whether every composite of consecutive boundary maps vanishes.
    pub fn squares_to_zero(&self) -> bool {
        let k = self.nvars();
        for d in 2..4 {
            for row in &self.mats[d - 1] {
                let mut acc: BTreeMap<usize, LaurentRational> = BTreeMap::new();
                for (m, a) in row {
                    for (j, b) in &self.mats[d][*m] {
                        let slot = acc.entry(*j).or_insert_with(|| LaurentRational::zero(k));
                        *slot = &*slot + &(a * b);
                    }
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    fn rank_of(&self, d: usize) -> usize {
        if d == 0 || d > 3 {
            0
        } else {
            sparse_rank(&self.mats[d], self.nvars())
        }
    }

    /// Whether the homology over the function field vanishes.
    pub fn is_acyclic(&self) -> bool {
        let ranks: Vec<usize> = (0..5).map(|d| self.rank_of(d)).collect();
        (0..4).all(|i| ranks[i] + ranks[i + 1] == self.cells[i].len())
    }

    /// The matrix of `d` with every variable set to one, rows indexed by the
    /// basis in dimension `d - 1`.
    pub fn specialize_at_one(&self, d: usize) -> Option<Vec<Vec<i64>>> {
        let one = vec![BigRational::one(); self.nvars()];
        let mut out = vec![vec![0; self.cells[d].len()]; self.cells[d - 1].len()];
        for (i, row) in self.mats[d].iter().enumerate() {
            for (j, v) in row {
                let x = v.eval(&one)?;
                if !x.is_integer() {
                    return None;
                }
                out[i][*j] = x.to_integer().to_i64()?;
            }
        }
        Some(out)
    }

    /// Torsion computed with the default minor choices.
    pub fn torsion(&self) -> Result<TorsionValue, TorsionError> {
        self.torsion_with_priority(None)
    }

    /// Torsion computed with row priorities drawn from `seed`, which steers
    /// the choice of nonsingular minors.
    pub fn torsion_with_priority(&self, seed: Option<u64>) -> Result<TorsionValue, TorsionError> {
        let k = self.nvars();
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut tau = LaurentRational::one(k);
        let mut cols: Vec<usize> = (0..self.cells[3].len()).collect();
        for d in (1..4).rev() {
            let n = self.cells[d - 1].len();
            let mut priority: Vec<usize> = (0..n).collect();
            if let Some(r) = rng.as_mut() {
                priority.shuffle(r);
            }
            let Some((picked, det)) = select_rows_det(&self.mats[d], &cols, &priority, k) else {
                return Err(if self.is_acyclic() { TorsionError::MinorSelection } else { TorsionError::NotAcyclic });
            };
            tau = if d % 2 == 1 { &tau * &det } else { &tau / &det };
            let mut taken = vec![false; n];
            for p in picked {
                taken[p] = true;
            }
            cols = (0..n).filter(|i| !taken[*i]).collect();
        }
        if !cols.is_empty() {
            return Err(TorsionError::NotAcyclic);
        }
        Ok(TorsionValue::new(tau, self.names.clone()))
    }
}

/// A torsion value, defined up to sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionValue {
    value: LaurentRational,
    names: Vec<String>,
}

impl TorsionValue {
    pub fn new(value: LaurentRational, names: Vec<String>) -> TorsionValue {
        TorsionValue { value: value.abs_sign(), names }
    }

    /// The representative with positive leading coefficient.
    pub fn value(&self) -> &LaurentRational {
        &self.value
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Equality up to sign.
    pub fn equals(&self, other: &LaurentRational) -> bool {
        self.value == other.abs_sign()
    }

    /// The exponent vector when the value is a monomial with coefficient one.
    pub fn monomial_exponents(&self) -> Option<Vec<i64>> {
        let c = self.value.monomial_coefficient()?;
        (c == BigRational::from_integer(BigInt::one())).then(|| self.value.shift().to_vec())
    }

    /// `self / other`, up to sign.
    pub fn ratio(&self, other: &TorsionValue) -> LaurentRational {
        &self.value / &other.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "± {}", self.value.format(&self.names))
    }
}

/// Torsion of the chain `z` with head lifts at the origin.
pub fn chain_torsion(c: &AttachedComplex, z: &EulerChain, rep: &Representation, rel: Rel) -> Result<TorsionValue, crate::Error> {
    let lifts = z.lifts(c, &BTreeMap::new())?;
    Ok(TwistedComplex::build(c, &lifts, rep, rel)?.torsion()?)
}

/// Whether rerouting leg `leg` of `z` around the loop `lambda` multiplies
/// the torsion by the image of the difference class, up to sign.
pub fn torsion_equivariance_check(
    c: &AttachedComplex,
    z: &EulerChain,
    leg: usize,
    lambda: &[i64],
    rep: &Representation,
    rel: Rel,
) -> Result<bool, crate::Error> {
    let z2 = z.with_loop(leg, lambda);
    let diff = crate::euler::chain_difference(c, &z2, z)?;
    let t1 = chain_torsion(c, z, rep, rel)?;
    let t2 = chain_torsion(c, &z2, rep, rel)?;
    let expected = t1.value() * &rep.image(&diff);
    Ok(t2.equals(&expected))
}
