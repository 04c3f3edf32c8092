//! Sparse Gaussian elimination over the rational function field with
//! Markowitz pivoting that prefers monomial (unit) pivots.

use std::collections::{BTreeMap, BTreeSet};

use super::laurent::LaurentRational;

pub type SparseRow = BTreeMap<usize, LaurentRational>;

/// Chooses `cols.len()` rows such that the square submatrix on those rows
/// and the columns `cols` is nonsingular, and returns the chosen rows with
/// that submatrix's determinant up to sign.  `priority[i]` breaks ties
/// between rows (lower first).  Returns `None` when the columns are
/// linearly dependent.
pub fn select_rows_det(rows: &[SparseRow], cols: &[usize], priority: &[usize], nvars: usize) -> Option<(Vec<usize>, LaurentRational)> {
    let wanted: BTreeSet<usize> = cols.iter().copied().collect();
    let mut work: Vec<SparseRow> =
        rows.iter().map(|r| r.iter().filter(|(c, _)| wanted.contains(c)).map(|(c, v)| (*c, v.clone())).collect()).collect();
    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = wanted.iter().map(|c| (*c, BTreeSet::new())).collect();
    for (i, r) in work.iter().enumerate() {
        for c in r.keys() {
            col_rows.get_mut(c).expect("filtered").insert(i);
        }
    }
    let mut active = vec![true; work.len()];
    let mut det = LaurentRational::one(nvars);
    let mut chosen = Vec::with_capacity(cols.len());
    for _ in 0..cols.len() {
        let mut best: Option<((bool, usize, usize, usize), usize, usize)> = None;
        for (i, r) in work.iter().enumerate() {
            if !active[i] {
                continue;
            }
            for (c, v) in r {
                let cost = (r.len() - 1) * (col_rows[c].len() - 1);
                let key = (!v.is_monomial(), cost, priority[i], *c);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, i, *c));
                }
            }
        }
        let (_, pi, pc) = best?;
        active[pi] = false;
        let prow = std::mem::take(&mut work[pi]);
        for c in prow.keys() {
            col_rows.get_mut(c).expect("tracked").remove(&pi);
        }
        let pv = prow[&pc].clone();
        let targets: Vec<usize> = col_rows[&pc].iter().copied().collect();
        for k in targets {
            let f = &work[k][&pc] / &pv;
            for (c, x) in &prow {
                let cur = work[k].remove(c).unwrap_or_else(|| LaurentRational::zero(nvars));
                let v = &cur - &(&f * x);
                if v.is_zero() || *c == pc {
                    col_rows.get_mut(c).expect("tracked").remove(&k);
                } else {
                    col_rows.get_mut(c).expect("tracked").insert(k);
                    work[k].insert(*c, v);
                }
            }
        }
        col_rows.remove(&pc);
        det = &det * &pv;
        chosen.push(pi);
    }
    Some((chosen, det))
}

/// Rank of a sparse matrix over the rational function field.
pub fn sparse_rank(rows: &[SparseRow], nvars: usize) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        while let Some((&c, _)) = r.iter().find(|(c, _)| pivots.contains_key(c)) {
            let p = &pivots[&c];
            let f = &r[&c] / &p[&c];
            for (pc, pv) in p {
                let cur = r.remove(pc).unwrap_or_else(|| LaurentRational::zero(nvars));
                let v = &cur - &(&f * pv);
                if !v.is_zero() && *pc != c {
                    r.insert(*pc, v);
                }
            }
        }
        if let Some((&c, _)) = r.iter().next() {
            pivots.insert(c, r);
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::super::bareiss::det_laurent;
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn mono(c: i64, e: i64) -> LaurentRational {
        LaurentRational::monomial(&BigRational::from_integer(c.into()), &[e])
    }

    proptest! {
        #[test]
        fn agrees_with_bareiss(n in 1usize..6, entries in proptest::collection::vec((-2i64..3, -2i64..3), 36)) {
            let dense: Vec<Vec<LaurentRational>> =
                (0..n).map(|i| (0..n).map(|j| { let (c, e) = entries[i * 6 + j]; mono(c, e) }).collect()).collect();
            let rows: Vec<SparseRow> = dense.iter().map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()).collect();
            let cols: Vec<usize> = (0..n).collect();
            let d = det_laurent(&dense, 1);
            match select_rows_det(&rows, &cols, &cols, 1) {
                None => prop_assert!(d.is_zero()),
                Some((chosen, s)) => {
                    prop_assert_eq!(chosen.len(), n);
                    prop_assert_eq!(s.abs_sign(), d.abs_sign());
                }
            }
        }
    }

    #[test]
    fn rank_of_dependent_rows() {
        let row = |v: &[(usize, LaurentRational)]| -> SparseRow { v.iter().cloned().collect() };
        let t = mono(1, 1);
        let one = mono(1, 0);
        let rows = vec![
            row(&[(0, t.clone()), (1, one.clone())]),
            row(&[(0, &t * &t), (1, t.clone())]),
            row(&[(2, one.clone())]),
        ];
        assert_eq!(sparse_rank(&rows, 1), 2);
        assert_eq!(sparse_rank(&rows[..1], 1), 1);
        assert_eq!(sparse_rank(&[], 1), 0);
    }

    #[test]
    fn chooses_independent_rows_of_tall_matrix() {
        let t = mono(1, 1);
        let one = mono(1, 0);
        let rows: Vec<SparseRow> = vec![
            [(0, one.clone())].into_iter().collect(),
            [(0, t.clone())].into_iter().collect(),
            [(1, &t - &one)].into_iter().collect(),
        ];
        let (chosen, d) = select_rows_det(&rows, &[0, 1], &[1, 0, 2], 1).unwrap();
        assert_eq!(chosen.len(), 2);
        assert!(chosen.contains(&2));
        assert_eq!(d.abs_sign(), (&t * &(&t - &one)).abs_sign());
    }
}
