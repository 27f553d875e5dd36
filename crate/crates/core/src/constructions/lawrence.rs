use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{convex_hull, face_lattice, FaceLattice, HullResult};
use crate::numeric::{affine_dim, int, PointConfiguration, Rational};

/// Heights used when none are given.
pub fn default_heights() -> (Rational, Rational) {
    (int(1), int(2))
}

fn fresh_label(taken: &[String], base: &str) -> String {
    let mut l = base.to_string();
    while taken.iter().any(|t| t == &l) {
        l.push('\'');
    }
    l
}

/// Replaces point `i` by `(p_i, h1)` and `(p_i, h2)` in one dimension more;
/// every other point gets last coordinate 0. The new points are appended,
/// labelled `<label>^1` and `<label>^2` (primed until fresh).
pub fn lawrence_extension(
    config: &PointConfiguration,
    i: usize,
    h1: &Rational,
    h2: &Rational,
) -> Result<PointConfiguration> {
    if !h1.is_positive() || h1 >= h2 {
        return Err(Error::InvalidHeights {
            h1: h1.to_string(),
            h2: h2.to_string(),
        });
    }
    if i >= config.len() {
        return Err(Error::InvalidIndex(format!("point {i} of {}", config.len())));
    }
    let mut points = Vec::with_capacity(config.len() + 1);
    let mut labels = Vec::with_capacity(config.len() + 1);
    for (k, (p, l)) in config.points().iter().zip(config.labels()).enumerate() {
        if k != i {
            let mut q = p.clone();
            q.push(Rational::zero());
            points.push(q);
            labels.push(l.clone());
        }
    }
    let base = &config.labels()[i];
    for h in [h1, h2] {
        let mut q = config.point(i).to_vec();
        q.push(h.clone());
        points.push(q);
    }
    let lo = fresh_label(config.labels(), &format!("{base}^1"));
    labels.push(lo.clone());
    let hi = fresh_label(&[config.labels(), &[lo][..]].concat(), &format!("{base}^2"));
    labels.push(hi);
    PointConfiguration::new(config.dim() + 1, points, labels)
}

/// Intersection of the line through the two labelled points with the
/// hyperplane where the last coordinate vanishes, in the base coordinates.
pub fn reconstruct_point(extended: &PointConfiguration, upper: &str, lower: &str) -> Result<Vec<Rational>> {
    let find = |l: &str| {
        extended
            .index_of(l)
            .ok_or_else(|| Error::InvalidIndex(format!("no point labelled {l:?}")))
    };
    let a = extended.point(find(upper)?);
    let b = extended.point(find(lower)?);
    let d = extended.dim();
    if d == 0 {
        return Err(Error::DimensionMismatch("zero-dimensional configuration".into()));
    }
    let (ha, hb) = (&a[d - 1], &b[d - 1]);
    if ha == hb {
        return Err(Error::NoIntersection(format!(
            "line through {upper:?} and {lower:?} is parallel to the base hyperplane"
        )));
    }
    let s = ha / (ha - hb);
    Ok((0..d - 1).map(|k| &a[k] + (&b[k] - &a[k]) * &s).collect())
}

/// Lawrence extensions of every point of a planar configuration in turn,
/// each along a fresh coordinate axis: `2n` points in dimension `n + 2`,
/// all of which are checked to be vertices.
pub fn lawrence_polytope(config: &PointConfiguration) -> Result<(PointConfiguration, HullResult, FaceLattice)> {
    if config.len() < 3 {
        return Err(Error::Precondition(format!("{} points, need at least 3", config.len())));
    }
    if config.dim() != 2 || affine_dim(config)? != 2 {
        return Err(Error::Precondition("configuration must span the plane".into()));
    }
    let (h1, h2) = default_heights();
    let mut current = config.clone();
    for label in config.labels() {
        let i = current.index_of(label).expect("label survives earlier extensions");
        current = lawrence_extension(&current, i, &h1, &h2)?;
    }
    let hull = convex_hull(&current)?;
    if hull.vertex_indices.len() != current.len() || hull.dim != current.dim() {
        return Err(Error::Internal(format!(
            "Lawrence polytope has {} vertices in dimension {}",
            hull.vertex_indices.len(),
            hull.dim
        )));
    }
    let lattice = face_lattice(&hull)?;
    Ok((current, hull, lattice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::frac;

    #[test]
    fn origin_in_dimension_one() {
        let c = PointConfiguration::from_points(1, vec![vec![int(0)], vec![int(3)]]).unwrap();
        let e = lawrence_extension(&c, 0, &int(1), &int(2)).unwrap();
        assert_eq!(e.dim(), 2);
        assert_eq!(e.points(), &[vec![int(3), int(0)], vec![int(0), int(1)], vec![int(0), int(2)]]);
        assert_eq!(e.labels(), &["1", "0^1", "0^2"]);
        assert_eq!(reconstruct_point(&e, "0^1", "0^2").unwrap(), vec![int(0)]);
    }

    #[test]
    fn heights_validated() {
        let c = PointConfiguration::from_int_points(1, &[&[0], &[1]]).unwrap();
        for (a, b) in [(int(0), int(1)), (int(2), int(1)), (int(1), int(1)), (int(-1), int(1))] {
            assert!(matches!(lawrence_extension(&c, 0, &a, &b), Err(Error::InvalidHeights { .. })));
        }
        assert!(lawrence_extension(&c, 0, &frac(1, 3), &frac(1, 2)).is_ok());
        assert!(lawrence_extension(&c, 5, &int(1), &int(2)).is_err());
    }

    #[test]
    fn parallel_line_has_no_intersection() {
        let e = PointConfiguration::from_int_points(2, &[&[0, 1], &[1, 1]]).unwrap();
        assert!(matches!(reconstruct_point(&e, "0", "1"), Err(Error::NoIntersection(_))));
    }

    #[test]
    fn triangle_gives_six_vertices_in_dimension_five() {
        let c = PointConfiguration::from_int_points(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let (q, hull, _) = lawrence_polytope(&c).unwrap();
        assert_eq!((q.dim(), q.len(), hull.vertex_indices.len()), (5, 6, 6));
    }
}
