use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{collinear, Point2, Rational};

/// A point of a projective line in the plane: finite, or the line's point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinePoint {
    Finite(Point2),
    Infinity,
}

/// Value of a projective scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaleValue {
    Finite(Rational),
    Infinity,
}

/// The projective coordinate on a line with `σ(p0) = 0`, `σ(p1) = 1` and
/// `σ(pinf) = ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveScale {
    p0: Point2,
    p1: Point2,
    pinf: LinePoint,
}

impl ProjectiveScale {
    pub fn new(p0: Point2, p1: Point2, pinf: LinePoint) -> Result<Self> {
        if p0 == p1 {
            return Err(Error::DegenerateInput("scale anchors 0 and 1 coincide".into()));
        }
        if let LinePoint::Finite(q) = &pinf {
            if q == &p0 || q == &p1 {
                return Err(Error::DegenerateInput("scale anchor at infinity coincides with 0 or 1".into()));
            }
            if !collinear(&[p0.clone(), p1.clone(), q.clone()]) {
                return Err(Error::NotCollinear);
            }
        }
        Ok(Self { p0, p1, pinf })
    }

    pub fn anchors(&self) -> (&Point2, &Point2, &LinePoint) {
        (&self.p0, &self.p1, &self.pinf)
    }

    /// Affine coordinate along the line with `p0 ↦ 0`, `p1 ↦ 1`.
    fn affine(&self, x: &Point2) -> Rational {
        let u = [&self.p1[0] - &self.p0[0], &self.p1[1] - &self.p0[1]];
        let w = [&x[0] - &self.p0[0], &x[1] - &self.p0[1]];
        (&w[0] * &u[0] + &w[1] * &u[1]) / (&u[0] * &u[0] + &u[1] * &u[1])
    }
}

/// `σ(x) = λ(1 − λ∞) / (λ − λ∞)` in the affine coordinate `λ`, or just `λ`
/// when the anchor at infinity is the line's own point at infinity.
pub fn projective_scale(scale: &ProjectiveScale, x: &LinePoint) -> Result<ScaleValue> {
    let x = match x {
        LinePoint::Infinity => {
            return Ok(match &scale.pinf {
                LinePoint::Infinity => ScaleValue::Infinity,
                LinePoint::Finite(q) => {
                    // limit of σ as λ → ∞
                    ScaleValue::Finite(Rational::from_integer(1.into()) - scale.affine(q))
                }
            })
        }
        LinePoint::Finite(x) => x,
    };
    if !collinear(&[scale.p0.clone(), scale.p1.clone(), x.clone()]) {
        return Err(Error::NotCollinear);
    }
    let l = scale.affine(x);
    Ok(match &scale.pinf {
        LinePoint::Infinity => ScaleValue::Finite(l),
        LinePoint::Finite(q) => {
            let li = scale.affine(q);
            let den = &l - &li;
            if den.is_zero() {
                ScaleValue::Infinity
            } else {
                ScaleValue::Finite(&l * (Rational::from_integer(1.into()) - &li) / den)
            }
        }
    })
}
