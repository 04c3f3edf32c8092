//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// A Smith decomposition `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn from_i64(a: &[Vec<i64>]) -> IntMatrix {
    a.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = a.len();
    let n = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); n]; m];
    for i in 0..m {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

struct State {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        for r in &mut self.v {
            r.swap(i, j);
        }
    }

    /// row_j -= q * row_i
    fn row_sub(&mut self, j: usize, i: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[i].clone();
            for (x, y) in m[j].iter_mut().zip(src) {
                *x -= q * y;
            }
        }
    }

    /// col_j -= q * col_i
    fn col_sub(&mut self, j: usize, i: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                let y = r[i].clone();
                r[j] -= q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Computes the Smith normal form of an integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut s = State { a: a.clone(), u: identity(m), v: identity(n) };
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !s.a[i][j].is_zero() && best.is_none_or(|(bi, bj)| s.a[i][j].abs() < s.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(s);
            };
            s.swap_rows(t, bi);
            s.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..m {
                if !s.a[i][t].is_zero() {
                    let q = s.a[i][t].div_floor(&s.a[t][t]);
                    s.row_sub(i, t, &q);
                    clean &= s.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !s.a[t][j].is_zero() {
                    let q = s.a[t][j].div_floor(&s.a[t][t]);
                    s.col_sub(j, t, &q);
                    clean &= s.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let p = s.a[t][t].clone();
            let bad = (t + 1..m).find(|i| (t + 1..n).any(|j| !s.a[*i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.row_sub(t, i, &minus_one);
                }
                None => {
                    if p.is_negative() {
                        s.negate_row(t);
                    }
                    break;
                }
            }
        }
    }
    finish(s)
}

/// Row-style Hermite normal form: returns `(h, w)` with `w * a = h`, `w`
/// unimodular, `h` in reduced row echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn row_hermite(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut s = State { a: a.clone(), u: identity(m), v: identity(n) };
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m).filter(|i| !s.a[*i][c].is_zero()).min_by(|x, y| s.a[*x][c].abs().cmp(&s.a[*y][c].abs()));
            let Some(b) = best else { break };
            s.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..m {
                if !s.a[i][c].is_zero() {
                    let q = s.a[i][c].div_floor(&s.a[r][c]);
                    s.row_sub(i, r, &q);
                    done &= s.a[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if s.a[r][c].is_zero() {
            continue;
        }
        if s.a[r][c].is_negative() {
            s.negate_row(r);
        }
        for i in 0..r {
            let q = s.a[i][c].div_floor(&s.a[r][c]);
            if !q.is_zero() {
                s.row_sub(i, r, &q);
            }
        }
        r += 1;
    }
    (s.a, s.u)
}

fn finish(s: State) -> Smith {
    Smith { u: s.u, d: s.a, v: s.v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(mat_mul(&mat_mul(&s.u, a), &s.v), s.d);
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for (i, r) in s.d.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&from_i64(&[vec![0, 0, 0], vec![0, 0, 0]]));
        assert!(s.invariant_factors().is_empty());
    }

    #[test]
    fn hermite_of_small_matrix() {
        let a = from_i64(&[vec![0, 2, 4], vec![0, -3, 1]]);
        let (h, w) = row_hermite(&a);
        assert_eq!(mat_mul(&w, &a), h);
        assert_eq!(h, from_i64(&[vec![0, 1, 9], vec![0, 0, 14]]));
    }

    proptest! {
        #[test]
        fn hermite_is_canonical(rows in 1usize..4, seed in proptest::collection::vec(-5i64..6, 12), mix in proptest::collection::vec(-2i64..3, 3)) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..4).map(|j| seed[i * 4 + j]).collect()).collect();
            let a = from_i64(&a);
            let (h, w) = row_hermite(&a);
            prop_assert_eq!(mat_mul(&w, &a), h.clone());
            // adding a multiple of one row to another keeps the row space
            let mut b = a.clone();
            if rows > 1 {
                let r0 = b[0].clone();
                for (x, y) in b[1].iter_mut().zip(r0) {
                    *x += BigInt::from(mix[0]) * y;
                }
                b.swap(0, 1);
            }
            prop_assert_eq!(row_hermite(&b).0, h);
        }

        #[test]
        fn decomposition_is_valid(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 25)) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            check(&from_i64(&a));
        }
    }
}
