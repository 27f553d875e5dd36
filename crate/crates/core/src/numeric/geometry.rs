use num_traits::Zero;

use super::{dot, sub_vec, MatrixQ, Rational};
use crate::error::{Error, Result};

/// An ordered, labelled list of points in `dim`-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<Vec<Rational>>,
    labels: Vec<String>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>, labels: Vec<String>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        if let Some(p) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point {p} has {} coordinates, expected {dim}",
                points[p].len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Precondition(format!("duplicate label {l:?}")));
            }
        }
        Ok(Self {
            dim,
            points,
            labels,
        })
    }

    /// Labels default to `0`, `1`, ...
    pub fn from_points(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        let labels = (0..points.len()).map(|i| i.to_string()).collect();
        Self::new(dim, points, labels)
    }

    pub fn from_int_points(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::from_points(dim, points.iter().map(|p| super::int_vec(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sub-configuration on the given indices, same ambient dimension.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::InvalidIndex(format!("point {bad} of {}", self.len())));
        }
        Self::new(
            self.dim,
            indices.iter().map(|&i| self.points[i].clone()).collect(),
            indices.iter().map(|&i| self.labels[i].clone()).collect(),
        )
    }

    /// Applies `f` to every point, keeping labels.
    pub fn map_points(
        &self,
        dim: usize,
        f: impl Fn(&[Rational]) -> Vec<Rational>,
    ) -> Result<Self> {
        Self::new(
            dim,
            self.points.iter().map(|p| f(p)).collect(),
            self.labels.clone(),
        )
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.points.iter().flatten().all(|q| q.is_integer())
    }
}

/// The affine hyperplane `normal · x = offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateInput("zero hyperplane normal".into()));
        }
        Ok(Self { normal, offset })
    }

    /// `normal · x - offset`; negative on the interior side.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.offset
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.eval(x).is_zero()
    }

    /// Scales so that the first non-zero normal entry has absolute value 1.
    /// Orientation is preserved.
    pub fn canonical(&self) -> Hyperplane {
        use num_traits::Signed;
        let lead = self
            .normal
            .iter()
            .find(|q| !q.is_zero())
            .expect("non-zero normal")
            .abs();
        Hyperplane {
            normal: self.normal.iter().map(|q| q / &lead).collect(),
            offset: &self.offset / &lead,
        }
    }

    /// Hyperplane through `points` (affinely independent, `points.len() == d`)
    /// in `d`-space, oriented so that `interior` is strictly on the negative side.
    pub fn through(points: &[Vec<Rational>], interior: &[Rational]) -> Result<Hyperplane> {
        let d = interior.len();
        if points.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "{} points for a hyperplane in dimension {d}",
                points.len()
            )));
        }
        let diffs: Vec<Vec<Rational>> = points[1..]
            .iter()
            .map(|p| sub_vec(p, &points[0]))
            .collect();
        let normal = if diffs.is_empty() {
            vec![Rational::from_integer(1.into()); d]
        } else {
            let ns = MatrixQ::from_rows(&diffs)?.nullspace();
            if ns.len() != 1 {
                return Err(Error::DegenerateInput(
                    "hyperplane points are affinely dependent".into(),
                ));
            }
            ns.into_iter().next().unwrap()
        };
        let offset = dot(&normal, &points[0]);
        let h = Hyperplane::new(normal, offset)?;
        let side = h.eval(interior);
        if side.is_zero() {
            return Err(Error::DegenerateInput(
                "interior point lies on the hyperplane".into(),
            ));
        }
        Ok(if side > Rational::zero() { h.flipped() } else { h })
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.iter().map(|q| -q).collect(),
            offset: -self.offset.clone(),
        }
    }
}

/// Dimension of the affine hull of the points.
pub fn affine_dim(config: &PointConfiguration) -> Result<usize> {
    affine_dim_of(config.points())
}

pub(crate) fn affine_dim_of(points: &[Vec<Rational>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyInput("affine dimension of no points".into()));
    };
    if points.len() == 1 {
        return Ok(0);
    }
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| sub_vec(p, first)).collect();
    Ok(MatrixQ::from_rows(&diffs)?.rank())
}

/// A point of the plane.
pub type Point2 = [Rational; 2];

/// Result of intersecting two planar lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineMeet {
    Point(Point2),
    AtInfinity,
    Identical,
}

fn cross(a: &Point2, b: &Point2) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn diff(a: &Point2, b: &Point2) -> Point2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

/// Intersection of the line through `l1` with the line through `l2`.
pub fn line_intersection(l1: (&Point2, &Point2), l2: (&Point2, &Point2)) -> Result<LineMeet> {
    if l1.0 == l1.1 || l2.0 == l2.1 {
        return Err(Error::DegenerateLine);
    }
    let r = diff(l1.1, l1.0);
    let s = diff(l2.1, l2.0);
    let denom = cross(&r, &s);
    let qp = diff(l2.0, l1.0);
    if denom.is_zero() {
        return Ok(if cross(&qp, &r).is_zero() {
            LineMeet::Identical
        } else {
            LineMeet::AtInfinity
        });
    }
    let t = cross(&qp, &s) / denom;
    Ok(LineMeet::Point([
        &l1.0[0] + &r[0] * &t,
        &l1.0[1] + &r[1] * &t,
    ]))
}

/// True iff all points lie on one line. Fewer than three points are trivially collinear.
pub fn collinear(points: &[Point2]) -> bool {
    let Some(base) = points.first() else {
        return true;
    };
    // first point distinct from the base fixes the direction
    let Some(dir) = points.iter().map(|p| diff(p, base)).find(|d| !d[0].is_zero() || !d[1].is_zero())
    else {
        return true;
    };
    points.iter().all(|p| cross(&dir, &diff(p, base)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{frac, int};

    fn p(x: i64, y: i64) -> Point2 {
        [int(x), int(y)]
    }

    #[test]
    fn intersections() {
        assert_eq!(
            line_intersection((&p(0, 0), &p(1, 0)), (&p(0, 0), &p(0, 1))).unwrap(),
            LineMeet::Point(p(0, 0))
        );
        assert_eq!(
            line_intersection((&p(0, 0), &p(1, 0)), (&p(0, 1), &p(5, 1))).unwrap(),
            LineMeet::AtInfinity
        );
        assert_eq!(
            line_intersection((&p(0, 0), &p(1, 1)), (&p(0, 1), &p(1, 0))).unwrap(),
            LineMeet::Point([frac(1, 2), frac(1, 2)])
        );
        assert_eq!(
            line_intersection((&p(0, 0), &p(1, 1)), (&p(2, 2), &p(3, 3))).unwrap(),
            LineMeet::Identical
        );
        assert_eq!(
            line_intersection((&p(0, 0), &p(0, 0)), (&p(2, 2), &p(3, 3))),
            Err(Error::DegenerateLine)
        );
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&[p(0, 0), p(1, 1), p(2, 2)]));
        assert!(!collinear(&[p(0, 0), p(1, 0), p(0, 1)]));
        assert!(collinear(&[p(1, 1), p(1, 1), p(1, 1)]));
    }

    #[test]
    fn affine_dimensions() {
        let single = PointConfiguration::from_int_points(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(affine_dim(&single).unwrap(), 0);
        let line = PointConfiguration::from_int_points(2, &[&[0, 0], &[1, 1], &[2, 2]]).unwrap();
        assert_eq!(affine_dim(&line).unwrap(), 1);
        let empty = PointConfiguration::from_points(2, vec![]).unwrap();
        assert!(matches!(affine_dim(&empty), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn configuration_validation() {
        assert!(PointConfiguration::new(2, vec![vec![int(1)]], vec!["a".into()]).is_err());
        assert!(PointConfiguration::new(
            1,
            vec![vec![int(1)], vec![int(2)]],
            vec!["a".into(), "a".into()]
        )
        .is_err());
    }

    #[test]
    fn hyperplane_orientation() {
        let h = Hyperplane::through(&[vec![int(1), int(0)], vec![int(0), int(1)]], &[int(0), int(0)])
            .unwrap();
        assert!(h.eval(&[int(0), int(0)]) < int(0));
        assert!(h.contains(&[frac(1, 2), frac(1, 2)]));
    }
}
