//! Union-find carrying a deck offset in `Z^k` and an orientation sign
//! relative to the root of each class.

use crate::error::ComplexError;

pub(crate) fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vsub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn vneg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

#[derive(Debug, Clone)]
pub(crate) struct OffsetUnionFind {
    parent: Vec<usize>,
    offset: Vec<Vec<i64>>,
    sign: Vec<i8>,
}

impl OffsetUnionFind {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        OffsetUnionFind { parent: (0..n).collect(), offset: vec![vec![0; k]; n], sign: vec![1; n] }
    }

    /// Root of `x`, compressing the path.
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.offset[x] = vadd(&self.offset[x], &self.offset[p]);
        self.sign[x] *= self.sign[p];
        self.parent[x] = r;
        r
    }

    /// Offset and sign of `x` relative to its root.
    pub(crate) fn relative(&mut self, x: usize) -> (usize, Vec<i64>, i8) {
        let r = self.find(x);
        (r, self.offset[x].clone(), self.sign[x])
    }

    /// Records `d(y) = d(x) + delta` and `o(y) = s * o(x)`.
    pub(crate) fn union(&mut self, x: usize, y: usize, delta: &[i64], s: i8) -> Result<(), ComplexError> {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            if vadd(&self.offset[x], delta) != self.offset[y] || self.sign[x] * s != self.sign[y] {
                return Err(ComplexError::OffsetClash);
            }
            return Ok(());
        }
        self.parent[ry] = rx;
        self.offset[ry] = vsub(&vadd(&self.offset[x], delta), &self.offset[y]);
        self.sign[ry] = self.sign[x] * s * self.sign[y];
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_compose_along_chains() {
        let mut uf = OffsetUnionFind::new(3, 1);
        uf.union(0, 1, &[2], -1).unwrap();
        uf.union(1, 2, &[3], 1).unwrap();
        let (r0, d0, s0) = uf.relative(0);
        let (r2, d2, s2) = uf.relative(2);
        assert_eq!(r0, r2);
        assert_eq!(d2[0] - d0[0], 5);
        assert_eq!(s0 * s2, -1);
        assert!(uf.union(0, 2, &[5], -1).is_ok());
        assert!(uf.union(0, 2, &[4], -1).is_err());
    }
}
