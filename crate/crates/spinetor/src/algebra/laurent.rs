//! Elements of the fraction field Q(t_1, ..., t_k), stored as a monomial
//! times a reduced fraction of integer polynomials.

use std::fmt::Write;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Poly};

/// A nonzero-denominator rational function in canonical form: `num` and
/// `den` are coprime, neither is divisible by a variable, the leading
/// coefficient of `den` is positive, and `shift` carries the monomial part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentRational {
    num: Poly,
    den: Poly,
    shift: Vec<i64>,
}

impl LaurentRational {
    pub fn zero(nvars: usize) -> Self {
        Self { num: Poly::zero(nvars), den: Poly::one(nvars), shift: vec![0; nvars] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::new(Poly::constant(nvars, BigInt::from(c)), Poly::one(nvars), vec![0; nvars])
    }

    pub fn from_rational(nvars: usize, q: &BigRational) -> Self {
        Self::new(Poly::constant(nvars, q.numer().clone()), Poly::constant(nvars, q.denom().clone()), vec![0; nvars])
    }

    /// The Laurent monomial `c * t^exps`.
    pub fn monomial(c: &BigRational, exps: &[i64]) -> Self {
        let n = exps.len();
        Self::new(Poly::constant(n, c.numer().clone()), Poly::constant(n, c.denom().clone()), exps.to_vec())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(&BigRational::one(), &e)
    }

    /// Builds `num / den * t^shift` and brings it to canonical form.
    pub fn new(num: Poly, den: Poly, shift: Vec<i64>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let shift: Vec<i64> = (0..n).map(|i| shift[i] + mn[i] as i64 - md[i] as i64).collect();
        let mut num = num.div_monomial(&mn);
        let mut den = den.div_monomial(&md);
        let g = gcd(&num, &den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides");
            den = den.div_exact(&g).expect("gcd divides");
        }
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        Self { num, den, shift }
    }

    pub fn nvars(&self) -> usize {
        self.shift.len()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one() && self.shift.iter().all(|s| *s == 0)
    }

    /// True when the value is a constant times a Laurent monomial.
    pub fn is_monomial(&self) -> bool {
        self.num.n_terms() == 1 && self.den.n_terms() == 1
    }

    /// The constant factor when the value is a constant times a monomial.
    pub fn monomial_coefficient(&self) -> Option<BigRational> {
        if !self.is_monomial() {
            return None;
        }
        Some(BigRational::new(self.num.leading_coeff(), self.den.leading_coeff()))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone(), self.shift.iter().map(|s| -s).collect())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Self::one(self.nvars());
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Splits the shift into nonnegative numerator and denominator parts.
    fn split_shift(&self) -> (Vec<u32>, Vec<u32>) {
        let up = self.shift.iter().map(|s| (*s).max(0) as u32).collect();
        let down = self.shift.iter().map(|s| (-*s).max(0) as u32).collect();
        (up, down)
    }

    /// Numerator and denominator as ordinary polynomials with the monomial
    /// part distributed.
    pub fn to_fraction(&self) -> (Poly, Poly) {
        let (up, down) = self.split_shift();
        let one = BigInt::one();
        (self.num.mul_monomial(&one, &up), self.den.mul_monomial(&one, &down))
    }

    /// Evaluates at rational points, if the denominator does not vanish.
    pub fn eval(&self, at: &[BigRational]) -> Option<BigRational> {
        let ev = |p: &Poly| {
            let mut s = BigRational::zero();
            for (e, c) in p.terms() {
                let mut t = BigRational::from_integer(c.clone());
                for (x, k) in at.iter().zip(e) {
                    t *= num_traits::pow(x.clone(), *k as usize);
                }
                s += t;
            }
            s
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return None;
        }
        let mut v = ev(&self.num) / d;
        for (x, s) in at.iter().zip(&self.shift) {
            if x.is_zero() && *s != 0 {
                return None;
            }
            v *= num_traits::pow(if *s < 0 { x.recip() } else { x.clone() }, s.unsigned_abs() as usize);
        }
        Some(v)
    }

    /// Canonical representative of the class modulo sign.
    pub fn abs_sign(&self) -> Self {
        if self.num.leading_coeff().is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Writes the value using the given variable names.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mono = format_monomial(&self.shift.to_vec(), names);
        let num_const = self.num.n_terms() == 1 && self.num.leading().is_some_and(|(e, _)| e.iter().all(|x| *x == 0));
        let mut parts: Vec<String> = Vec::new();
        let mut sign = "";
        if num_const {
            let c = self.num.leading_coeff();
            if c.is_negative() {
                sign = "-";
            }
            let c = c.abs();
            if !c.is_one() || mono.is_none() {
                parts.push(c.to_string());
            }
        } else {
            parts.push(format!("({})", format_poly(&self.num, names)));
        }
        if let Some(m) = mono {
            parts.insert(if num_const { parts.len() } else { 0 }, m);
        }
        let mut out = format!("{sign}{}", parts.join(" * "));
        if !self.den.is_one() {
            let d = format_poly(&self.den, names);
            if self.den.n_terms() == 1 {
                write!(out, " / {d}").unwrap();
            } else {
                write!(out, " / ({d})").unwrap();
            }
        }
        out
    }
}

fn format_monomial(exps: &[i64], names: &[String]) -> Option<String> {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// Writes a polynomial with terms in decreasing lexicographic order.
pub fn format_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = format_monomial(&e.iter().map(|x| *x as i64).collect::<Vec<_>>(), names);
        match mono {
            None => write!(out, "{a}").unwrap(),
            Some(m) if a.is_one() => out.push_str(&m),
            Some(m) => write!(out, "{a}*{m}").unwrap(),
        }
    }
    out
}

/// Default variable names: `t` for one variable, `t1..tk` otherwise.
pub fn default_names(k: usize) -> Vec<String> {
    if k == 1 {
        vec!["t".into()]
    } else {
        (1..=k).map(|i| format!("t{i}")).collect()
    }
}

fn common(a: &LaurentRational, b: &LaurentRational) -> (Poly, Poly, Vec<i64>) {
    let n = a.nvars();
    let base: Vec<i64> = (0..n).map(|i| a.shift[i].min(b.shift[i])).collect();
    let one = BigInt::one();
    let ea: Vec<u32> = (0..n).map(|i| (a.shift[i] - base[i]) as u32).collect();
    let eb: Vec<u32> = (0..n).map(|i| (b.shift[i] - base[i]) as u32).collect();
    let x = (&a.num * &b.den).mul_monomial(&one, &ea);
    let y = (&b.num * &a.den).mul_monomial(&one, &eb);
    (x, y, base)
}

impl Add for &LaurentRational {
    type Output = LaurentRational;
    fn add(self, o: &LaurentRational) -> LaurentRational {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (x, y, base) = common(self, o);
        LaurentRational::new(&x + &y, &self.den * &o.den, base)
    }
}

impl Sub for &LaurentRational {
    type Output = LaurentRational;
    fn sub(self, o: &LaurentRational) -> LaurentRational {
        self + &(-o.clone())
    }
}

impl Mul for &LaurentRational {
    type Output = LaurentRational;
    fn mul(self, o: &LaurentRational) -> LaurentRational {
        if self.is_zero() || o.is_zero() {
            return LaurentRational::zero(self.nvars());
        }
        let shift = self.shift.iter().zip(&o.shift).map(|(a, b)| a + b).collect();
        LaurentRational::new(&self.num * &o.num, &self.den * &o.den, shift)
    }
}

impl Div for &LaurentRational {
    type Output = LaurentRational;
    fn div(self, o: &LaurentRational) -> LaurentRational {
        self * &o.inv()
    }
}

impl Neg for LaurentRational {
    type Output = LaurentRational;
    fn neg(self) -> LaurentRational {
        LaurentRational { num: -self.num, den: self.den, shift: self.shift }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t() -> LaurentRational {
        LaurentRational::var(1, 0)
    }

    fn names() -> Vec<String> {
        default_names(1)
    }

    #[test]
    fn canonical_forms_agree() {
        let one = LaurentRational::one(1);
        let a = &(&t() - &one) / &(&(&t() * &t()) - &one);
        let b = (&t() + &one).inv();
        assert_eq!(a, b);
    }

    #[test]
    fn formatting() {
        let one = LaurentRational::one(1);
        assert_eq!(t().inv().format(&names()), "t^-1");
        assert_eq!((-t().inv()).format(&names()), "-t^-1");
        let x = &t().inv() * &(&t().inv() - &one);
        assert_eq!(x.format(&names()), "t^-2 * (-t + 1)");
        assert_eq!(x.abs_sign().format(&names()), "t^-2 * (t - 1)");
        assert_eq!(LaurentRational::from_int(1, 3).format(&names()), "3");
        assert_eq!((&one / &(&t() + &one)).format(&names()), "1 / (t + 1)");
    }

    #[test]
    fn evaluation() {
        let one = LaurentRational::one(1);
        let x = &t().inv() * &(&t().inv() - &one);
        let two = BigRational::from_integer(2.into());
        assert_eq!(x.eval(&[two]), Some(BigRational::new((-1).into(), 4.into())));
    }

    fn arb(nvars: usize) -> impl Strategy<Value = LaurentRational> {
        let term = (-3i64..4, proptest::collection::vec(-2i64..3, nvars));
        (proptest::collection::vec(term.clone(), 1..3), proptest::collection::vec(term, 1..3)).prop_filter_map("nonzero", move |(a, b)| {
            let build = |ts: Vec<(i64, Vec<i64>)>| {
                ts.into_iter().fold(LaurentRational::zero(nvars), |acc, (c, e)| {
                    &acc + &LaurentRational::monomial(&BigRational::from_integer(c.into()), &e)
                })
            };
            let (x, y) = (build(a), build(b));
            if y.is_zero() { None } else { Some(&x / &y) }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn field_axioms(a in arb(2), b in arb(2), c in arb(2)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a / &a).is_one());
            }
        }
    }
}
