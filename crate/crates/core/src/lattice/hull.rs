use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::FaceLattice;
use crate::error::{Error, Result};
use crate::numeric::{affine_dim, dot, sub_vec, Hyperplane, MatrixQ, PointConfiguration, Rational};

/// A facet of a hull: the input indices of its vertices and its supporting
/// hyperplane, with the polytope on the side `normal · x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullFacet {
    pub vertices: Vec<usize>,
    pub hyperplane: Hyperplane,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullResult {
    /// Sorted by vertex list.
    pub facets: Vec<HullFacet>,
    /// Input indices of the points that are vertices, ascending.
    pub vertex_indices: Vec<usize>,
    /// Dimension of the hull (affine dimension of the input).
    pub dim: usize,
}

impl HullResult {
    /// Facet vertex lists renumbered to positions in `vertex_indices`.
    pub fn facets_by_vertex_position(&self) -> Vec<Vec<usize>> {
        let pos: HashMap<usize, usize> = self
            .vertex_indices
            .iter()
            .enumerate()
            .map(|(p, &v)| (v, p))
            .collect();
        self.facets
            .iter()
            .map(|f| f.vertices.iter().map(|v| pos[v]).collect())
            .collect()
    }
}

/// Affine frame of a lower-dimensional point set: `x = origin + Σ y_k basis_k`.
struct Frame {
    origin: Vec<Rational>,
    /// (B Bᵀ)⁻¹ B, mapping `x - origin` to local coordinates.
    projector: MatrixQ,
}

impl Frame {
    fn new(points: &[Vec<Rational>], k: usize) -> Result<Self> {
        let origin = points[0].clone();
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for p in &points[1..] {
            if basis.len() == k {
                break;
            }
            let mut cand = basis.clone();
            cand.push(sub_vec(p, &origin));
            if MatrixQ::from_rows(&cand)?.rank() == cand.len() {
                basis = cand;
            }
        }
        let b = MatrixQ::from_rows(&basis)?;
        let gram = &b * &b.transpose();
        let projector = &gram
            .inverse()
            .ok_or_else(|| Error::Internal("singular Gram matrix".into()))?
            * &b;
        Ok(Self {
            origin,
            projector,
        })
    }

    fn local(&self, x: &[Rational]) -> Vec<Rational> {
        self.projector
            .mul_vec(&sub_vec(x, &self.origin))
            .expect("frame dimensions agree")
    }

    /// Lifts the local hyperplane `a · y = b` to an ambient hyperplane
    /// with the same trace on the affine span.
    fn lift(&self, h: &Hyperplane) -> Hyperplane {
        let coeffs = self
            .projector
            .transpose()
            .mul_vec(&h.normal)
            .expect("frame dimensions agree");
        let offset = &h.offset + dot(&coeffs, &self.origin);
        Hyperplane {
            normal: coeffs,
            offset,
        }
    }
}

struct SimplexFacet {
    verts: Vec<usize>,
    plane: Hyperplane,
    alive: bool,
}

/// Exact convex hull by beneath–beyond insertion in input order, followed by
/// merging of coplanar simplicial pieces into single facets.
pub fn convex_hull(config: &PointConfiguration) -> Result<HullResult> {
    let k = affine_dim(config)?;
    if k == 0 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let ambient = config.dim();
    let frame = if k < ambient {
        Some(Frame::new(config.points(), k)?)
    } else {
        None
    };
    let local: Vec<Vec<Rational>> = match &frame {
        Some(f) => config.points().iter().map(|p| f.local(p)).collect(),
        None => config.points().to_vec(),
    };

    // first occurrence of each distinct point
    let mut first_of: HashMap<&[Rational], usize> = HashMap::new();
    let unique: Vec<usize> = (0..local.len())
        .filter(|&i| first_of.insert(&local[i], i).is_none())
        .collect();

    let simplex = initial_simplex(&local, &unique, k)?;
    let mut interior = vec![Rational::zero(); k];
    for &i in &simplex {
        for (c, x) in interior.iter_mut().zip(&local[i]) {
            *c += x;
        }
    }
    let count = Rational::from_integer((k as i64 + 1).into());
    for c in &mut interior {
        *c /= &count;
    }

    let mut facets: Vec<SimplexFacet> = Vec::new();
    let mut ridges: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for skip in 0..simplex.len() {
        let mut verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, &v)| v)
            .collect();
        verts.sort_unstable();
        add_facet(&mut facets, &mut ridges, &local, verts, &interior)?;
    }

    for &p in &unique {
        if simplex.contains(&p) {
            continue;
        }
        let visible: Vec<usize> = (0..facets.len())
            .filter(|&f| facets[f].alive && facets[f].plane.eval(&local[p]) > Rational::zero())
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut horizon: Vec<Vec<usize>> = Vec::new();
        for &f in &visible {
            for ridge in ridges_of(&facets[f].verts) {
                let across = ridges[&ridge]
                    .iter()
                    .copied()
                    .find(|&g| g != f)
                    .ok_or_else(|| Error::Internal("ridge without a second facet".into()))?;
                if !visible.contains(&across) {
                    horizon.push(ridge);
                }
            }
        }
        for &f in &visible {
            facets[f].alive = false;
            for ridge in ridges_of(&facets[f].verts) {
                let owners = ridges.get_mut(&ridge).expect("ridge registered");
                owners.retain(|&g| g != f);
                if owners.is_empty() {
                    ridges.remove(&ridge);
                }
            }
        }
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(p);
            verts.sort_unstable();
            add_facet(&mut facets, &mut ridges, &local, verts, &interior)?;
        }
    }

    // merge coplanar pieces
    let mut groups: BTreeMap<Hyperplane, ()> = BTreeMap::new();
    for f in facets.iter().filter(|f| f.alive) {
        groups.insert(canonical_key(&f.plane), ());
    }
    let planes: Vec<Hyperplane> = groups.into_keys().collect();
    let on_plane: Vec<Vec<usize>> = planes
        .iter()
        .map(|h| unique.iter().copied().filter(|&i| h.contains(&local[i])).collect())
        .collect();

    // a point is a vertex iff the facets through it meet only in it
    let vertex_indices: Vec<usize> = unique
        .iter()
        .copied()
        .filter(|&i| {
            let mut common: Option<Vec<usize>> = None;
            for pts in on_plane.iter().filter(|pts| pts.contains(&i)) {
                common = Some(match common {
                    None => pts.clone(),
                    Some(c) => c.into_iter().filter(|x| pts.contains(x)).collect(),
                });
            }
            common.is_some_and(|c| c == [i])
        })
        .collect();

    let mut out: Vec<HullFacet> = planes
        .iter()
        .zip(&on_plane)
        .map(|(h, pts)| HullFacet {
            vertices: pts
                .iter()
                .copied()
                .filter(|v| vertex_indices.binary_search(v).is_ok())
                .collect(),
            hyperplane: match &frame {
                Some(f) => f.lift(h),
                None => h.clone(),
            },
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(HullResult {
        facets: out,
        vertex_indices,
        dim: k,
    })
}

fn canonical_key(h: &Hyperplane) -> Hyperplane {
    h.canonical()
}

impl PartialOrd for Hyperplane {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hyperplane {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.normal, &self.offset).cmp(&(&other.normal, &other.offset))
    }
}

fn initial_simplex(local: &[Vec<Rational>], unique: &[usize], k: usize) -> Result<Vec<usize>> {
    let mut chosen = vec![unique[0]];
    let mut diffs: Vec<Vec<Rational>> = Vec::new();
    for &i in &unique[1..] {
        if chosen.len() == k + 1 {
            break;
        }
        let mut cand = diffs.clone();
        cand.push(sub_vec(&local[i], &local[chosen[0]]));
        if MatrixQ::from_rows(&cand)?.rank() == cand.len() {
            diffs = cand;
            chosen.push(i);
        }
    }
    if chosen.len() != k + 1 {
        return Err(Error::Internal("could not find an initial simplex".into()));
    }
    Ok(chosen)
}

fn ridges_of(verts: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..verts.len()).map(move |skip| {
        verts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn add_facet(
    facets: &mut Vec<SimplexFacet>,
    ridges: &mut HashMap<Vec<usize>, Vec<usize>>,
    local: &[Vec<Rational>],
    verts: Vec<usize>,
    interior: &[Rational],
) -> Result<()> {
    let pts: Vec<Vec<Rational>> = verts.iter().map(|&v| local[v].clone()).collect();
    let plane = Hyperplane::through(&pts, interior)?;
    let id = facets.len();
    for ridge in ridges_of(&verts) {
        ridges.entry(ridge).or_default().push(id);
    }
    facets.push(SimplexFacet {
        verts,
        plane,
        alive: true,
    });
    Ok(())
}

/// Face lattice of a hull, over vertex positions `0..vertex_indices.len()`.
pub fn face_lattice(hull: &HullResult) -> Result<FaceLattice> {
    FaceLattice::from_facets(hull.vertex_indices.len(), &hull.facets_by_vertex_position())
}

/// True iff every point of `q` is a vertex of its hull and the hull has
/// exactly the facets of `lattice` under the identity correspondence.
pub fn is_realization(q: &PointConfiguration, lattice: &FaceLattice) -> bool {
    if q.len() != lattice.n_vertices() {
        return false;
    }
    let Ok(hull) = convex_hull(q) else {
        return false;
    };
    if hull.vertex_indices.len() != q.len() || hull.dim as i32 != lattice.dim() {
        return false;
    }
    let mut have: Vec<Vec<usize>> = hull.facets.iter().map(|f| f.vertices.clone()).collect();
    let mut want = lattice.facets();
    have.sort();
    want.sort();
    have == want
}

/// True iff the chosen points are affinely independent and number `dim + 1`.
pub fn candidate_basis(config: &PointConfiguration, basis: &[usize]) -> bool {
    if basis.len() != config.dim() + 1 || basis.iter().any(|&i| i >= config.len()) {
        return false;
    }
    let mut sorted = basis.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != basis.len() {
        return false;
    }
    config
        .select(basis)
        .and_then(|c| affine_dim(&c))
        .is_ok_and(|k| k == config.dim())
}

/// Bit length of the largest numerator or denominator among the coordinates.
pub fn coordinate_bits(config: &PointConfiguration) -> u64 {
    config
        .points()
        .iter()
        .flatten()
        .map(|q| q.numer().bits().max(q.denom().bits()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::numeric::int;

    #[test]
    fn cube_hull() {
        let h = convex_hull(&corpus::cube(3)).unwrap();
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.vertex_indices, (0..8).collect::<Vec<_>>());
        assert!(h.facets.iter().all(|f| f.vertices.len() == 4));
        let l = face_lattice(&h).unwrap();
        assert_eq!(l.f_vector(), vec![8, 12, 6]);
    }

    #[test]
    fn interior_point_is_dropped() {
        let h = convex_hull(&corpus::square_with_center()).unwrap();
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.vertex_indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn simplices() {
        for d in 2..=6 {
            let h = convex_hull(&corpus::simplex(d)).unwrap();
            assert_eq!(h.facets.len(), d + 1, "d = {d}");
            assert_eq!(h.dim, d);
        }
    }

    #[test]
    fn boundary_and_duplicate_points_are_not_vertices() {
        let c = PointConfiguration::from_int_points(
            2,
            &[&[0, 0], &[2, 0], &[1, 0], &[2, 2], &[0, 2], &[2, 2]],
        )
        .unwrap();
        let h = convex_hull(&c).unwrap();
        assert_eq!(h.vertex_indices, vec![0, 1, 3, 4]);
        assert_eq!(h.facets.len(), 4);
        for f in &h.facets {
            for i in 0..c.len() {
                assert!(f.hyperplane.eval(c.point(i)) <= int(0));
            }
        }
    }

    #[test]
    fn lower_dimensional_input() {
        // a square sitting in the plane z = 1 of 3-space
        let c = PointConfiguration::from_int_points(
            3,
            &[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]],
        )
        .unwrap();
        let h = convex_hull(&c).unwrap();
        assert_eq!(h.dim, 2);
        assert_eq!(h.facets.len(), 4);
        for f in &h.facets {
            for &v in &f.vertices {
                assert!(f.hyperplane.contains(c.point(v)));
            }
            for i in 0..4 {
                assert!(f.hyperplane.eval(c.point(i)) <= int(0));
            }
        }
        let seg = PointConfiguration::from_int_points(2, &[&[0, 0], &[3, 3], &[1, 1]]).unwrap();
        let h = convex_hull(&seg).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.vertex_indices, vec![0, 1]);
    }

    #[test]
    fn degenerate_inputs() {
        let same = PointConfiguration::from_int_points(2, &[&[1, 1], &[1, 1]]).unwrap();
        assert!(matches!(convex_hull(&same), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn realization_checks() {
        let cube = corpus::cube(3);
        let lattice = face_lattice(&convex_hull(&cube).unwrap()).unwrap();
        assert!(is_realization(&cube, &lattice));
        // push vertex 7 = (1,1,1) inside
        let mut pts = cube.points().to_vec();
        pts[7] = vec![int(0), int(0), int(0)];
        let inside = PointConfiguration::from_points(3, pts).unwrap();
        assert!(!is_realization(&inside, &lattice));
        // perturb one coordinate by 1/100: still a combinatorial cube? No: the
        // perturbed vertex leaves the planes of its three facets
        let mut pts = cube.points().to_vec();
        pts[7][0] = crate::numeric::frac(101, 100);
        let bent = PointConfiguration::from_points(3, pts).unwrap();
        assert!(!is_realization(&bent, &lattice));
    }

    #[test]
    fn basis_candidates() {
        let cube01 = PointConfiguration::from_int_points(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]],
        )
        .unwrap();
        assert!(candidate_basis(&cube01, &[0, 1, 2, 3]));
        assert!(!candidate_basis(&cube01, &[0, 1, 2, 4]));
        assert!(!candidate_basis(&cube01, &[0, 1, 2]));
        assert!(!candidate_basis(&cube01, &[0, 1, 2, 2]));
    }
}
