//! Representations of the free part of `H_1` into the units of a rational
//! function field.

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{default_names, LaurentRational};
use crate::error::TorsionError;

/// A homomorphism from `Z^k` to the multiplicative group of `Q(t_1..t_k)`.
///
/// By default generator `i` goes to the variable `t_i`.  Individual
/// generators can be sent to a nonzero rational number or to a power of a
/// variable instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    names: Vec<String>,
    images: Vec<LaurentRational>,
}

impl Representation {
    /// The tautological representation `g_i -> t_i`.
    pub fn free(k: usize) -> Representation {
        Representation { names: default_names(k), images: (0..k).map(|i| LaurentRational::var(k, i)).collect() }
    }

    /// The tautological representation modified by assignments of the form
    /// `name=value`, where the value is a nonzero rational such as `2` or
    /// `-1/3`, or a power of a variable such as `t2` or `t^-1`.
    pub fn with_assignments(k: usize, assignments: &[String]) -> Result<Representation, TorsionError> {
        let mut rep = Representation::free(k);
        for a in assignments {
            let (name, value) = a
                .split_once('=')
                .ok_or_else(|| TorsionError::Representation(format!("expected name=value, got `{a}`")))?;
            let i = rep.index_of(name.trim())?;
            rep.images[i] = rep.parse_value(value.trim())?;
        }
        Ok(rep)
    }

    fn index_of(&self, name: &str) -> Result<usize, TorsionError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| TorsionError::Representation(format!("unknown generator `{name}`")))
    }

    fn parse_value(&self, v: &str) -> Result<LaurentRational, TorsionError> {
        let k = self.names.len();
        if let Ok(q) = v.parse::<BigRational>() {
            if q.is_zero() {
                return Err(TorsionError::Representation("generators must map to units".into()));
            }
            return Ok(LaurentRational::from_rational(k, &q));
        }
        let (base, exp) = match v.split_once('^') {
            Some((b, e)) => {
                let e = e.parse::<i64>().map_err(|_| TorsionError::Representation(format!("bad exponent in `{v}`")))?;
                (b, e)
            }
            None => (v, 1),
        };
        let (neg, base) = match base.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, base),
        };
        let i = self.index_of(base)?;
        let m = LaurentRational::var(k, i).pow(exp);
        Ok(if neg { -m } else { m })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn image_of_generator(&self, i: usize) -> &LaurentRational {
        &self.images[i]
    }

    /// The image of the group element with coordinates `g`.
    pub fn image(&self, g: &[i64]) -> LaurentRational {
        let k = self.names.len();
        let mut out = LaurentRational::one(k);
        for (x, e) in self.images.iter().zip(g) {
            if *e != 0 {
                out = &out * &x.pow(*e);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_images_are_variables() {
        let r = Representation::free(2);
        assert_eq!(r.image(&[1, -2]).format(r.names()), "t1*t2^-2");
    }

    #[test]
    fn assignments() {
        let r = Representation::with_assignments(1, &["t=2".into()]).unwrap();
        assert_eq!(r.image(&[-1]).format(r.names()), "1 / 2");
        let r = Representation::with_assignments(1, &["t=t^-1".into()]).unwrap();
        assert_eq!(r.image(&[2]).format(r.names()), "t^-2");
        let r = Representation::with_assignments(2, &["t2=-t1".into()]).unwrap();
        assert_eq!(r.image(&[0, 1]).format(r.names()), "-t1");
        assert!(Representation::with_assignments(1, &["t=0".into()]).is_err());
        assert!(Representation::with_assignments(1, &["s=1".into()]).is_err());
        assert!(Representation::with_assignments(1, &["t".into()]).is_err());
    }
}
