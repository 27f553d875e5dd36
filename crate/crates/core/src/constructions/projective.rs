use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{affine_dim_of, det, int, solve_linear, sub_vec, LinearSolution, MatrixQ, PointConfiguration, Rational};

/// A projective transformation of `d`-space acting on homogeneous
/// coordinates `(x, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveTransform {
    matrix: MatrixQ,
}

impl ProjectiveTransform {
    /// Rejects non-square and singular matrices.
    pub fn new(matrix: MatrixQ) -> Result<Self> {
        if det(&matrix)?.is_zero() {
            return Err(Error::Precondition("singular projective matrix".into()));
        }
        Ok(Self { matrix })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            matrix: MatrixQ::identity(d + 1),
        }
    }

    pub fn matrix(&self) -> &MatrixQ {
        &self.matrix
    }

    /// Dimension of the space acted on.
    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    fn homogeneous(&self, x: &[Rational]) -> Vec<Rational> {
        let mut h = x.to_vec();
        h.push(int(1));
        self.matrix.mul_vec(&h).expect("point dimension matches transform")
    }

    /// The last homogeneous coordinate of the image; the map is admissible
    /// on a set where this has constant sign.
    pub fn denominator(&self, x: &[Rational]) -> Rational {
        self.homogeneous(x).pop().unwrap()
    }

    /// Image of `x`, or `None` if it is sent to infinity.
    pub fn apply(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let mut h = self.homogeneous(x);
        let w = h.pop().unwrap();
        if w.is_zero() {
            return None;
        }
        Some(h.into_iter().map(|c| c / &w).collect())
    }

    /// Applies to every point, failing if the configuration meets the
    /// hyperplane sent to infinity or straddles it.
    pub fn apply_config(&self, config: &PointConfiguration) -> Result<PointConfiguration> {
        let dens: Vec<Rational> = config.points().iter().map(|p| self.denominator(p)).collect();
        let positive = dens.iter().all(|w| w.is_positive());
        let negative = dens.iter().all(|w| w.is_negative());
        if !positive && !negative {
            return Err(Error::Precondition("configuration meets the hyperplane at infinity".into()));
        }
        config.map_points(self.dim(), |p| self.apply(p).expect("denominator checked"))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjectiveTransform) -> Result<ProjectiveTransform> {
        Ok(Self {
            matrix: self.matrix.checked_mul(&other.matrix)?,
        })
    }
}

/// Solves `M (a_k, 1) = λ_k (b_k, 1)` with `λ_0 = 1`, plus the extra
/// homogeneous conditions `M (x, 1) = μ (y, 1)` with a free scale `μ`.
pub(crate) fn solve_homography(
    d: usize,
    pairs: &[(Vec<Rational>, Vec<Rational>)],
) -> Result<LinearSolution> {
    let m = d + 1;
    let n_unknowns = m * m + pairs.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (k, (a, b)) in pairs.iter().enumerate() {
        let mut ah = a.clone();
        ah.push(int(1));
        let mut bh = b.clone();
        bh.push(int(1));
        for r in 0..m {
            let mut row = vec![int(0); n_unknowns];
            for c in 0..m {
                row[r * m + c] = ah[c].clone();
            }
            row[m * m + k] = -bh[r].clone();
            rows.push(row);
            rhs.push(int(0));
        }
    }
    let mut norm = vec![int(0); n_unknowns];
    norm[m * m] = int(1);
    rows.push(norm);
    rhs.push(int(1));
    solve_linear(&MatrixQ::from_rows(&rows)?, &rhs)
}

pub(crate) fn matrix_from_solution(d: usize, sol: &[Rational]) -> MatrixQ {
    let m = d + 1;
    MatrixQ::new(m, m, sol[..m * m].to_vec()).expect("square block")
}

/// Coordinates of points in an affine frame of their own affine hull;
/// full-dimensional point sets keep their coordinates.
pub(crate) fn local_coordinates(points: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let k = affine_dim_of(points)?;
    if k == points[0].len() {
        return Ok(points.to_vec());
    }
    let origin = &points[0];
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for p in &points[1..] {
        if basis.len() == k {
            break;
        }
        let mut cand = basis.clone();
        cand.push(sub_vec(p, origin));
        if MatrixQ::from_rows(&cand)?.rank() == cand.len() {
            basis = cand;
        }
    }
    if k == 0 {
        return Ok(vec![Vec::new(); points.len()]);
    }
    let b = MatrixQ::from_rows(&basis)?;
    let gram = &b * &b.transpose();
    let proj = &gram.inverse().ok_or_else(|| Error::Internal("singular Gram matrix".into()))? * &b;
    points.iter().map(|p| proj.mul_vec(&sub_vec(p, origin))).collect()
}

fn centroid(points: &[Vec<Rational>]) -> Vec<Rational> {
    let n = int(points.len() as i64);
    let mut c = vec![Rational::zero(); points[0].len()];
    for p in points {
        for (ci, x) in c.iter_mut().zip(p) {
            *ci += x;
        }
    }
    c.into_iter().map(|x| x / &n).collect()
}

/// A projective map of the affine hull of `f1` onto that of `f2` carrying
/// point `k` of `f1` to point `correspondence[k]` of `f2`, with positive
/// homogeneous scalars. A configuration that does not span its ambient space
/// is taken in local coordinates of its affine hull; the two hulls must have
/// equal dimension.
pub fn projective_equivalence(
    f1: &PointConfiguration,
    f2: &PointConfiguration,
    correspondence: &[usize],
) -> Option<ProjectiveTransform> {
    if f1.len() != f2.len() || correspondence.len() != f1.len() || f1.is_empty() {
        return None;
    }
    let mut seen = vec![false; f2.len()];
    for &c in correspondence {
        if c >= f2.len() || std::mem::replace(&mut seen[c], true) {
            return None;
        }
    }
    let a = local_coordinates(f1.points()).ok()?;
    let b_all = local_coordinates(f2.points()).ok()?;
    let k = a[0].len();
    if b_all[0].len() != k {
        return None;
    }
    let b: Vec<Vec<Rational>> = correspondence.iter().map(|&c| b_all[c].clone()).collect();
    let mut pairs: Vec<(Vec<Rational>, Vec<Rational>)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    if pairs.len() == k + 1 {
        // a simplex: pin the centroid so the affine map is chosen
        pairs.push((centroid(&a), centroid(&b)));
    }
    let sol = match solve_homography(k, &pairs).ok()? {
        LinearSolution::Unique(s) => s,
        LinearSolution::Family { particular, .. } => particular,
        LinearSolution::Inconsistent => return None,
    };
    let m = k + 1;
    if sol[m * m..].iter().any(|l| !l.is_positive()) {
        return None;
    }
    let t = ProjectiveTransform::new(matrix_from_solution(k, &sol)).ok()?;
    // the solver may have returned a member of a family; confirm the images
    for (p, q) in a.iter().zip(&b) {
        if t.apply(p).as_ref() != Some(q) {
            return None;
        }
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::frac;

    fn cfg(pts: &[[i64; 2]]) -> PointConfiguration {
        PointConfiguration::from_int_points(2, &pts.iter().map(|p| &p[..]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_on_self() {
        let sq = cfg(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        let m = projective_equivalence(&sq, &sq, &[0, 1, 2, 3]).unwrap().matrix().clone();
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { m[(0, 0)].clone() } else { int(0) };
                assert_eq!(m[(r, c)], expected);
            }
        }
    }

    #[test]
    fn square_to_quadrilateral() {
        let sq = cfg(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        let quad = cfg(&[[0, 0], [3, 0], [2, 2], [0, 1]]);
        let t = projective_equivalence(&sq, &quad, &[0, 1, 2, 3]).unwrap();
        for i in 0..4 {
            assert_eq!(t.apply(sq.point(i)).unwrap(), quad.point(i));
        }
    }

    #[test]
    fn pentagons_generally_inequivalent() {
        let a = cfg(&[[0, 0], [4, 0], [5, 3], [2, 5], [-1, 3]]);
        let b = cfg(&[[0, 0], [4, 0], [5, 3], [2, 6], [-1, 3]]);
        assert!(projective_equivalence(&a, &b, &[0, 1, 2, 3, 4]).is_none());
        assert!(projective_equivalence(&a, &a, &[0, 1, 2, 3, 4]).is_some());
    }

    #[test]
    fn planar_facet_in_space() {
        let tri3 = PointConfiguration::from_points(
            3,
            vec![
                vec![int(0), int(0), int(1)],
                vec![int(1), int(0), int(1)],
                vec![int(0), int(1), int(1)],
            ],
        )
        .unwrap();
        let tri2 = PointConfiguration::from_points(
            2,
            vec![vec![int(0), int(0)], vec![frac(1, 2), int(0)], vec![int(0), int(3)]],
        )
        .unwrap();
        assert!(projective_equivalence(&tri3, &tri2, &[0, 1, 2]).is_some());
    }
}
