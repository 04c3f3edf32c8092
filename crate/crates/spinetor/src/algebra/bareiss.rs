//! Fraction-free (Bareiss) elimination over integer polynomial rings.

use super::laurent::LaurentRational;
use super::poly::Poly;

/// Runs fraction-free elimination on the rows of `m`, visiting candidate
/// pivot columns in `order` and skipping columns that are dependent on the
/// pivots chosen so far.  Returns the chosen pivot columns and the last
/// pivot, which equals the determinant of the square submatrix on those
/// columns up to sign.  Returns `None` if fewer than `m.len()` independent
/// columns exist.
pub fn bareiss_select(mut m: Vec<Vec<Poly>>, order: &[usize]) -> Option<(Vec<usize>, Poly)> {
    let n = m.len();
    let nvars = m.iter().flatten().next().map_or(0, Poly::nvars);
    let mut prev = Poly::one(nvars);
    let mut picked = Vec::with_capacity(n);
    let mut r = 0;
    for (pos, &c) in order.iter().enumerate() {
        if r == n {
            break;
        }
        let Some(i) = (r..n).find(|i| !m[*i][c].is_zero()) else { continue };
        m.swap(r, i);
        let rest = &order[pos + 1..];
        for i in r + 1..n {
            let a = m[i][c].clone();
            for &j in rest {
                let v = &(&m[r][c] * &m[i][j]) - &(&a * &m[r][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = Poly::zero(nvars);
        }
        prev = m[r][c].clone();
        picked.push(c);
        r += 1;
    }
    (r == n).then_some((picked, prev))
}

/// Determinant of a square matrix of polynomials, exactly.
pub fn det_poly(m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(0);
    }
    let nvars = m[0][0].nvars();
    let order: Vec<usize> = (0..n).collect();
    let mut work = m;
    let mut sign = 1i8;
    let mut prev = Poly::one(nvars);
    for c in 0..n {
        let Some(i) = (c..n).find(|i| !work[*i][c].is_zero()) else { return Poly::zero(nvars) };
        if i != c {
            work.swap(c, i);
            sign = -sign;
        }
        for i in c + 1..n {
            let a = work[i][c].clone();
            for &j in &order[c + 1..] {
                let v = &(&work[c][c] * &work[i][j]) - &(&a * &work[c][j]);
                work[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            work[i][c] = Poly::zero(nvars);
        }
        prev = work[c][c].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

/// Scales a row of field elements to polynomials; returns the polynomial
/// row and the scale `s` such that `poly_row = s * row`.
pub fn clear_denominators(row: &[LaurentRational], nvars: usize) -> (Vec<Poly>, LaurentRational) {
    let mut scale = LaurentRational::one(nvars);
    for x in row.iter().filter(|x| !x.is_zero()) {
        let (_, den) = x.to_fraction();
        let s = LaurentRational::new(den, Poly::one(nvars), vec![0; nvars]);
        scale = &scale * &s;
    }
    let polys = row
        .iter()
        .map(|x| {
            let (num, den) = (x * &scale).to_fraction();
            debug_assert!(den.is_one());
            num
        })
        .collect();
    (polys, scale)
}

/// Determinant of a square matrix over the rational function field.
pub fn det_laurent(m: &[Vec<LaurentRational>], nvars: usize) -> LaurentRational {
    let mut scale = LaurentRational::one(nvars);
    let mut rows = Vec::with_capacity(m.len());
    for r in m {
        let (p, s) = clear_denominators(r, nvars);
        scale = &scale * &s;
        rows.push(p);
    }
    let d = det_poly(rows);
    &LaurentRational::new(d, Poly::one(nvars), vec![0; nvars]) / &scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn c(x: i64) -> Poly {
        Poly::constant(1, BigInt::from(x))
    }

    #[test]
    fn integer_determinant() {
        let m = vec![vec![c(2), c(1), c(0)], vec![c(1), c(3), c(1)], vec![c(0), c(1), c(4)]];
        assert_eq!(det_poly(m), c(18));
    }

    #[test]
    fn singular_matrix() {
        let m = vec![vec![c(1), c(2)], vec![c(2), c(4)]];
        assert!(det_poly(m).is_zero());
    }

    #[test]
    fn selection_skips_dependent_columns() {
        // columns 0 and 1 are proportional
        let m = vec![vec![c(1), c(2), c(0)], vec![c(1), c(2), c(5)]];
        let (cols, d) = bareiss_select(m, &[0, 1, 2]).unwrap();
        assert_eq!(cols, vec![0, 2]);
        assert_eq!(d, c(5));
    }

    #[test]
    fn laurent_determinant() {
        let t = LaurentRational::var(1, 0);
        let one = LaurentRational::one(1);
        let ti = t.inv();
        let m = vec![vec![ti.clone(), one.clone()], vec![one.clone(), t.clone()]];
        assert!(det_laurent(&m, 1).is_zero());
        let m = vec![vec![&t - &one, ti.clone()], vec![LaurentRational::zero(1), &one / &(&t + &one)]];
        assert_eq!(det_laurent(&m, 1), &(&t - &one) / &(&t + &one));
    }
}
