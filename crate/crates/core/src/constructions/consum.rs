use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::projective::{matrix_from_solution, solve_homography, ProjectiveTransform};
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, face_lattice, lattice_isomorphic_under, FaceLattice, HullFacet, HullResult};
use crate::numeric::{add_vec, dot, frac, int, scale_vec, LinearSolution, MatrixQ, PointConfiguration, Rational};

/// Number of halvings tried for each placement parameter.
pub const PLACEMENT_STEPS: u32 = 20;

/// A connected sum together with the transform applied to the second summand.
#[derive(Debug, Clone)]
pub struct ConnectedSum {
    /// Points of the first summand followed by the images of the second
    /// summand's vertices off the glued facet.
    pub config: PointConfiguration,
    pub lattice: FaceLattice,
    pub transform: ProjectiveTransform,
    /// Position of the image of infinity between the facet and the apex, as a
    /// fraction of the apex height.
    pub parameter: Rational,
}

fn schedule() -> impl Iterator<Item = Rational> {
    (0..=PLACEMENT_STEPS).map(|j| Rational::new(1.into(), num_bigint::BigInt::from(2).pow(j)))
}

fn centroid(points: &[&[Rational]]) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); points[0].len()];
    for p in points {
        c = add_vec(&c, p);
    }
    scale_vec(&c, &frac(1, points.len() as i64))
}

struct Summand<'a> {
    config: &'a PointConfiguration,
    hull: HullResult,
    facet: HullFacet,
}

impl<'a> Summand<'a> {
    fn new(config: &'a PointConfiguration, facet: &[usize], which: &str) -> Result<Self> {
        let hull = convex_hull(config)?;
        if hull.dim != config.dim() || hull.vertex_indices.len() != config.len() {
            return Err(Error::Precondition(format!(
                "summand {which} must be full-dimensional with every point a vertex"
            )));
        }
        let mut f = facet.to_vec();
        f.sort_unstable();
        let facet = hull
            .facets
            .iter()
            .find(|h| h.vertices == f)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("{f:?} is not a facet of summand {which}")))?;
        Ok(Self { config, hull, facet })
    }

    fn facet_points(&self) -> Vec<&[Rational]> {
        self.facet.vertices.iter().map(|&v| self.config.point(v)).collect()
    }

    /// A point beyond the facet and beneath every other facet.
    fn apex(&self) -> Option<Vec<Rational>> {
        let g = centroid(&self.facet_points());
        let n = &self.facet.hyperplane.normal;
        schedule().find_map(|eps| {
            let z = add_vec(&g, &scale_vec(n, &eps));
            let ok = self
                .hull
                .facets
                .iter()
                .filter(|f| f.vertices != self.facet.vertices)
                .all(|f| f.hyperplane.eval(&z).is_negative());
            ok.then_some(z)
        })
    }
}

/// Glues `p2` onto `p1` along facets `f1` and `f2`, with vertex `f1[k]`
/// matched to `correspondence[k]`.
///
/// The second summand is moved by a projective map carrying its facet onto
/// the first, its apex point onto the first's, and the hyperplane at infinity
/// to a level between the facet and the apex; the level is halved until the
/// union's hull has exactly the facets of both summands except the glued pair.
pub fn connected_sum(
    p1: &PointConfiguration,
    f1: &[usize],
    p2: &PointConfiguration,
    f2: &[usize],
    correspondence: &[usize],
) -> Result<ConnectedSum> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch(format!("summands of dimension {} and {}", p1.dim(), p2.dim())));
    }
    let d = p1.dim();
    if f1.len() != f2.len() || correspondence.len() != f1.len() {
        return Err(Error::Precondition(format!(
            "facets with {} and {} vertices cannot be matched",
            f1.len(),
            f2.len()
        )));
    }
    let s1 = Summand::new(p1, f1, "1")?;
    let s2 = Summand::new(p2, f2, "2")?;
    let f2set: BTreeSet<usize> = f2.iter().copied().collect();
    if correspondence.iter().copied().collect::<BTreeSet<_>>() != f2set {
        return Err(Error::Precondition("correspondence is not a bijection between the facets".into()));
    }

    // combinatorial check on the two facet lattices
    let l1 = face_lattice(&s1.hull)?;
    let l2 = face_lattice(&s2.hull)?;
    let (sub1, verts1) = l1.face_lattice_of(f1)?;
    let (sub2, verts2) = l2.face_lattice_of(f2)?;
    let local: Vec<usize> = verts1
        .iter()
        .map(|v| {
            let k = f1.iter().position(|x| x == v).unwrap();
            verts2.binary_search(&correspondence[k]).unwrap()
        })
        .collect();
    if !lattice_isomorphic_under(&sub1, &sub2, &local) {
        return Err(Error::Precondition("facets are not combinatorially isomorphic under the correspondence".into()));
    }

    let z1 = s1.apex().ok_or_else(|| Error::PlacementFailure("no apex beyond facet 1".into()))?;
    let z2 = s2.apex().ok_or_else(|| Error::PlacementFailure("no apex beyond facet 2".into()))?;

    let mut pairs: Vec<(Vec<Rational>, Vec<Rational>)> = f1
        .iter()
        .zip(correspondence)
        .map(|(&a, &b)| (p2.point(b).to_vec(), p1.point(a).to_vec()))
        .collect();
    if f1.len() == d {
        let (a, b): (Vec<&[Rational]>, Vec<&[Rational]>) =
            pairs.iter().map(|(a, b)| (a.as_slice(), b.as_slice())).unzip();
        pairs.push((centroid(&a), centroid(&b)));
    }
    pairs.push((z2.clone(), z1.clone()));
    let (particular, basis) = match solve_homography(d, &pairs)? {
        LinearSolution::Family { particular, basis } => (particular, basis),
        LinearSolution::Unique(s) => (s, Vec::new()),
        LinearSolution::Inconsistent => {
            return Err(Error::Precondition("facets are not projectively equivalent".into()))
        }
    };
    let Some(dir) = basis.first() else {
        return Err(Error::Internal("no homology freedom in the placement family".into()));
    };
    let mp = matrix_from_solution(d, &particular);
    let mb = matrix_from_solution(d, dir);

    // direction from the apex into the second summand, as a point at infinity
    let mut inf = scale_vec(&s2.facet.hyperplane.normal, &int(-1));
    inf.push(int(0));
    let h1 = &s1.facet.hyperplane;
    let apex_height = h1.eval(&z1);
    let level = |m: &MatrixQ, t: &Rational| -> Result<Rational> {
        let u = m.mul_vec(&inf)?;
        let (x, w) = u.split_at(d);
        Ok(dot(&h1.normal, x) - &h1.offset * &w[0] - t * &apex_height * &w[0])
    };

    let new_index = |v: usize| -> usize {
        match correspondence.iter().position(|&c| c == v) {
            Some(k) => f1[k],
            None => p1.len() + (0..v).filter(|u| !f2set.contains(u)).count(),
        }
    };
    let mut expected: Vec<Vec<usize>> = s1
        .hull
        .facets
        .iter()
        .filter(|f| f.vertices != s1.facet.vertices)
        .map(|f| f.vertices.clone())
        .chain(
            s2.hull
                .facets
                .iter()
                .filter(|f| f.vertices != s2.facet.vertices)
                .map(|f| {
                    let mut v: Vec<usize> = f.vertices.iter().map(|&v| new_index(v)).collect();
                    v.sort_unstable();
                    v
                }),
        )
        .collect();
    expected.sort();

    for t in schedule() {
        let (c0, c1) = (level(&mp, &t)?, level(&mb, &t)?);
        if c1.is_zero() {
            continue;
        }
        let tau = -c0 / c1;
        let m = MatrixQ::new(
            d + 1,
            d + 1,
            (0..(d + 1) * (d + 1))
                .map(|i| {
                    let (r, c) = (i / (d + 1), i % (d + 1));
                    &mp[(r, c)] + &tau * &mb[(r, c)]
                })
                .collect(),
        )?;
        let Ok(transform) = ProjectiveTransform::new(m) else {
            continue;
        };
        let Ok(image) = transform.apply_config(p2) else {
            continue;
        };
        let mut points = p1.points().to_vec();
        let mut labels: Vec<String> = p1.labels().iter().map(|l| format!("1.{l}")).collect();
        for v in 0..p2.len() {
            if !f2set.contains(&v) {
                points.push(image.point(v).to_vec());
                labels.push(format!("2.{}", p2.labels()[v]));
            }
        }
        let glued_ok = f1
            .iter()
            .zip(correspondence)
            .all(|(&a, &b)| image.point(b) == p1.point(a));
        if !glued_ok {
            continue;
        }
        let config = PointConfiguration::new(d, points, labels)?;
        let hull = convex_hull(&config)?;
        if hull.vertex_indices.len() != config.len() {
            continue;
        }
        let mut facets = hull.facets_by_vertex_position();
        facets.sort();
        if facets != expected {
            continue;
        }
        let lattice = face_lattice(&hull)?;
        let boundary_kept = sub1
            .faces()
            .iter()
            .filter(|f| f.vertices.len() < verts1.len())
            .all(|f| lattice.contains(&f.vertices.iter().map(|&v| verts1[v]).collect::<Vec<_>>()));
        if !boundary_kept {
            continue;
        }
        return Ok(ConnectedSum {
            config,
            lattice,
            transform,
            parameter: t,
        });
    }
    Err(Error::PlacementFailure(format!(
        "projective maps fixing the glued facet, apex onto apex, infinity at level t of the apex height, \
         t = 1/2^j for j = 0..={PLACEMENT_STEPS}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn two_tetrahedra_make_a_bipyramid() {
        let t = corpus::simplex(3);
        let s = connected_sum(&t, &[1, 2, 3], &t, &[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(s.config.len(), 5);
        assert_eq!(s.lattice.f_vector(), vec![5, 9, 6]);
    }

    #[test]
    fn two_square_pyramids_make_an_octahedron() {
        let p = corpus::pyramid(4);
        let s = connected_sum(&p, &[0, 1, 2, 3], &p, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!(s.lattice.f_vector(), vec![6, 12, 8]);
        let oct = face_lattice(&convex_hull(&corpus::cross_polytope(3)).unwrap()).unwrap();
        assert!(crate::lattice::find_isomorphism(&s.lattice, &oct).is_some());
    }

    #[test]
    fn tetrahedron_and_cube_do_not_match() {
        let t = corpus::simplex(3);
        let c = corpus::cube(3);
        assert!(matches!(
            connected_sum(&t, &[1, 2, 3], &c, &[0, 1, 3, 2], &[0, 1, 3]),
            Err(Error::Precondition(_))
        ));
        // a triangle of the tetrahedron against three vertices of a cube square
        assert!(matches!(
            connected_sum(&t, &[1, 2, 3], &c, &[0, 1, 3], &[0, 1, 3]),
            Err(Error::Precondition(_))
        ));
    }
}
