//! Exact rational arithmetic, linear algebra and elementary affine geometry.
//!
//! Everything here works over [`Rational`], an arbitrary-precision fraction
//! kept in lowest terms with a positive denominator after every operation.

mod geometry;
mod matrix;

pub use geometry::{
    affine_dim, collinear, line_intersection, Hyperplane, LineMeet, Point2, PointConfiguration,
};
pub(crate) use geometry::affine_dim_of;
pub use matrix::{det, solve_linear, LinearSolution, MatrixQ};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Serializes as `p/q`, always with an explicit denominator.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p`, `p/q` or `-p/q` (no whitespace, no leading `+`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_bigint(num).ok_or_else(bad)?;
    let den = match den {
        Some(d) => {
            if d.starts_with('-') {
                return Err(bad());
            }
            parse_bigint(d).ok_or_else(bad)?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

fn parse_bigint(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

/// Sign as -1, 0 or 1.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Nearest f64 (exact when representable).
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Huge components: divide in the log domain.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// taken from the continued fraction convergents and semiconvergents.
/// Returns `None` for non-finite input.
pub fn best_rational(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let max_den = max_den.max(1);
    let exact = Rational::from_float(x)?;
    let neg = exact.is_negative();
    let target = exact.abs();
    let mut rest = target.clone();
    // convergents p/q
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let bound = BigInt::from(max_den);
    let mut best = Rational::from_integer(target.floor().to_integer());
    loop {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > bound {
            // largest admissible semiconvergent
            let k = (&bound - &q0) / &q1;
            if k > BigInt::zero() {
                let semi = Rational::new(&k * &p1 + &p0, &k * &q1 + &q0);
                let conv = Rational::new(p1.clone(), q1.clone());
                best = if (&semi - &target).abs() < (&conv - &target).abs() {
                    semi
                } else {
                    conv
                };
            } else if !q1.is_zero() {
                best = Rational::new(p1.clone(), q1.clone());
            }
            break;
        }
        best = Rational::new(p2.clone(), q2.clone());
        let frac_part = &rest - Rational::from_integer(a);
        if frac_part.is_zero() {
            break;
        }
        rest = frac_part.recip();
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    Some(if neg { -best } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0/1", "-3/4", "5/1", "12345678901234567890/7"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&q), s);
        }
        assert!(parse_rational("6/-4").is_err());
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("+1").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn canonical_form_after_arithmetic() {
        let a = frac(2, 4) + frac(1, 4);
        assert_eq!(a.numer(), &BigInt::from(3));
        assert_eq!(a.denom(), &BigInt::from(4));
        let b = frac(1, -3);
        assert!(b.denom() > &BigInt::zero());
    }

    #[test]
    fn best_rational_recovers_simple_fractions() {
        assert_eq!(best_rational(0.5, 10).unwrap(), frac(1, 2));
        assert_eq!(best_rational(-0.75, 100).unwrap(), frac(-3, 4));
        assert_eq!(best_rational(std::f64::consts::PI, 1000).unwrap(), frac(355, 113));
        assert_eq!(best_rational(std::f64::consts::PI, 100).unwrap(), frac(311, 99));
        assert_eq!(best_rational(3.0, 5).unwrap(), int(3));
        assert!(best_rational(f64::NAN, 5).is_none());
    }
}
