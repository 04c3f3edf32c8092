//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are kept in a map keyed by exponent vectors; the map order is the
//! lexicographic monomial order, so the last entry is the leading term.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn monomial(c: BigInt, exps: Vec<u32>) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(BigInt::one(), e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.nvars]).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, c: &BigInt, exps: &[u32]) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x * c))
            .collect();
        Self { nvars: self.nvars, terms }
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x / c)).collect() }
    }

    /// Componentwise minimum of the exponents over all terms.
    pub fn min_exponents(&self) -> Vec<u32> {
        let mut m: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Divides by the monomial `x^exps`, which must divide every term.
    pub fn div_monomial(&self, exps: &[u32]) -> Self {
        let terms = self.terms.iter().map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a - b).collect(), x.clone())).collect();
        Self { nvars: self.nvars, terms }
    }

    /// Greatest common divisor of the integer coefficients (nonnegative).
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let (c, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            r = &r - &d.mul_monomial(&c, &e);
            q.add_term(e, c);
        }
        Some(q)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn depends_on(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    /// Coefficient of `x_v^k`, as a polynomial not involving `x_v`.
    fn coeff_in(&self, v: usize, k: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    fn content_in(&self, v: usize) -> Poly {
        let mut degs: Vec<u32> = self.terms.keys().map(|e| e[v]).collect();
        degs.sort_unstable();
        degs.dedup();
        let mut g = Poly::zero(self.nvars);
        for k in degs {
            g = gcd(&g, &self.coeff_in(v, k));
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn pseudo_rem(&self, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v);
        let lb = b.coeff_in(v, db);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.coeff_in(v, dr);
            let mut shift = vec![0; self.nvars];
            shift[v] = dr - db;
            r = &(&lb * &r) - (&(&lr * b).mul_monomial(&BigInt::one(), &shift));
        }
        r
    }

    /// Makes the leading coefficient positive.
    pub fn normalize_sign(self) -> Self {
        if self.leading_coeff().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Substitutes integer values for all variables.
    pub fn eval(&self, at: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in at.iter().zip(e) {
                t *= num_traits::pow(x.clone(), *k as usize);
            }
            s += t;
        }
        s
    }
}

/// Greatest common divisor with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    let n = a.nvars;
    let Some(v) = (0..n).find(|v| a.depends_on(*v) || b.depends_on(*v)) else {
        let x = a.leading_coeff().gcd(&b.leading_coeff());
        return Poly::constant(n, x);
    };
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = p.pseudo_rem(&q, v);
        p = q;
        q = if r.is_zero() { r } else { r.div_exact(&r.content_in(v)).expect("content divides") };
    }
    let g = if p.degree_in(v) == 0 { Poly::one(n) } else { p.div_exact(&p.content_in(v)).expect("content divides") };
    (&c * &g).normalize_sign()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(nvars: usize, terms: &[(i64, &[u32])]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (c, e) in terms {
            out.add_term(e.to_vec(), BigInt::from(*c));
        }
        out
    }

    #[test]
    fn univariate_gcd() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = p(1, &[(1, &[2]), (1, &[1]), (-2, &[0])]);
        let b = p(1, &[(1, &[2]), (-4, &[1]), (3, &[0])]);
        assert_eq!(gcd(&a, &b), p(1, &[(1, &[1]), (-1, &[0])]));
    }

    #[test]
    fn integer_content_is_kept() {
        let a = p(1, &[(4, &[1]), (6, &[0])]);
        let b = p(1, &[(6, &[1]), (9, &[0])]);
        assert_eq!(gcd(&a, &b), p(1, &[(2, &[1]), (3, &[0])]));
    }

    #[test]
    fn bivariate_gcd() {
        // (x + y)(x - 2y) and (x + y)(x + 3)
        let s = p(2, &[(1, &[1, 0]), (1, &[0, 1])]);
        let a = &s * &p(2, &[(1, &[1, 0]), (-2, &[0, 1])]);
        let b = &s * &p(2, &[(1, &[1, 0]), (3, &[0, 0])]);
        assert_eq!(gcd(&a, &b), s);
    }

    #[test]
    fn exact_division() {
        let a = p(1, &[(1, &[2]), (-1, &[0])]);
        let d = p(1, &[(1, &[1]), (-1, &[0])]);
        assert_eq!(a.div_exact(&d), Some(p(1, &[(1, &[1]), (1, &[0])])));
        assert_eq!(d.div_exact(&a), None);
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-4i64..5, proptest::collection::vec(0u32..3, nvars)), 0..4).prop_map(move |ts| {
            let mut out = Poly::zero(nvars);
            for (c, e) in ts {
                out.add_term(e, BigInt::from(c));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn gcd_divides_and_is_multiplicative(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assume!(!c.is_zero());
            let ac = &a * &c;
            let bc = &b * &c;
            let g = gcd(&ac, &bc);
            if !ac.is_zero() {
                prop_assert!(ac.div_exact(&g).is_some());
            }
            if !bc.is_zero() {
                prop_assert!(bc.div_exact(&g).is_some());
            }
            if !(ac.is_zero() && bc.is_zero()) {
                prop_assert!(g.div_exact(&c).is_some());
            }
        }
    }
}
