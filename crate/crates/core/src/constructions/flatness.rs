use std::fmt;
use std::sync::OnceLock;

use super::lawrence::{default_heights, lawrence_extension};
use crate::lattice::{convex_hull, face_lattice, find_isomorphism, FaceLattice};
use crate::numeric::{frac, int, Point2, PointConfiguration, Rational};

/// Facet types known to be necessarily flat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlatnessClass {
    Triangle,
    Pyramid,
    Prism,
    Tent,
    /// Not certified flat; says nothing about non-flatness.
    NotCertified,
}

impl fmt::Display for FlatnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Triangle => "triangle",
            Self::Pyramid => "pyramid",
            Self::Prism => "prism",
            Self::Tent => "tent",
            Self::NotCertified => "none",
        })
    }
}

/// Largest polygon size in the tent table.
pub const TENT_MAX_GON: usize = 12;

/// Classifies the lattice of a facet of a `d`-polytope.
pub fn flatness_class(facet: &FaceLattice, d: usize) -> FlatnessClass {
    if facet.dim() != d as i32 - 1 {
        return FlatnessClass::NotCertified;
    }
    match d {
        3 if facet.n_vertices() == 3 => FlatnessClass::Triangle,
        4 if is_pyramid(facet) => FlatnessClass::Pyramid,
        4 if is_prism(facet) => FlatnessClass::Prism,
        4 if is_tent(facet) => FlatnessClass::Tent,
        _ => FlatnessClass::NotCertified,
    }
}

/// A vertex lying in every facet but one, which holds all other vertices.
fn is_pyramid(l: &FaceLattice) -> bool {
    let n = l.n_vertices();
    let facets = l.facets();
    (0..n).any(|apex| {
        let missing: Vec<&Vec<usize>> = facets.iter().filter(|f| !f.contains(&apex)).collect();
        missing.len() == 1 && missing[0].len() == n - 1
    })
}

/// Two disjoint facets covering the vertices, every other facet a
/// quadrilateral meeting each of them in an edge.
fn is_prism(l: &FaceLattice) -> bool {
    let n = l.n_vertices();
    let facets = l.facets();
    if !n.is_multiple_of(2) {
        return false;
    }
    for (i, a) in facets.iter().enumerate() {
        for b in &facets[i + 1..] {
            if a.len() != n / 2 || b.len() != n / 2 || a.iter().any(|v| b.contains(v)) {
                continue;
            }
            let sides_ok = facets.iter().filter(|f| *f != a && *f != b).all(|f| {
                f.len() == 4
                    && f.iter().filter(|v| a.contains(v)).count() == 2
                    && f.iter().filter(|v| b.contains(v)).count() == 2
            });
            if sides_ok && facets.len() == n / 2 + 2 {
                return true;
            }
        }
    }
    false
}

fn is_tent(l: &FaceLattice) -> bool {
    tent_table()
        .iter()
        .filter(|t| t.lattice.n_vertices() == l.n_vertices() && t.lattice.f_vector() == l.f_vector())
        .any(|t| find_isomorphism(&t.lattice, l).is_some())
}

/// A tent: Lawrence extension of a `k`-gon plus an exterior point from which
/// `visible` edges of the polygon are seen.
#[derive(Debug, Clone)]
pub struct TentEntry {
    pub k: usize,
    pub visible: usize,
    pub config: PointConfiguration,
    pub lattice: FaceLattice,
}

/// The 3-polytope obtained from `polygon ∪ {q}` by a Lawrence extension on `q`.
pub fn tent_polytope(polygon: &[Point2], q: &Point2) -> crate::Result<PointConfiguration> {
    let mut points: Vec<Vec<Rational>> = polygon.iter().map(|p| p.to_vec()).collect();
    points.push(q.to_vec());
    let base = PointConfiguration::from_points(2, points)?;
    let (h1, h2) = default_heights();
    lawrence_extension(&base, polygon.len(), &h1, &h2)
}

fn side(a: &Point2, b: &Point2, p: &Point2) -> Rational {
    (&b[0] - &a[0]) * (&p[1] - &a[1]) - (&b[1] - &a[1]) * (&p[0] - &a[0])
}

/// Number of polygon edges seen from `q`, or `None` if `q` is on an edge line.
fn visible_edges(polygon: &[Point2], q: &Point2) -> Option<usize> {
    let k = polygon.len();
    let mut count = 0;
    for i in 0..k {
        let s = side(&polygon[i], &polygon[(i + 1) % k], q);
        let inside = side(&polygon[i], &polygon[(i + 1) % k], &polygon[(i + 2) % k]);
        if s == int(0) {
            return None;
        }
        if (s > int(0)) != (inside > int(0)) {
            count += 1;
        }
    }
    Some(count)
}

/// Tents for every `k ≤ TENT_MAX_GON` and every possible number of visible
/// edges, built on parabola polygons with the exterior point found on a grid.
pub fn tent_table() -> &'static [TentEntry] {
    static TABLE: OnceLock<Vec<TentEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for k in 3..=TENT_MAX_GON {
            let polygon: Vec<Point2> = (0..k as i64).map(|x| [int(x), int(x * x)]).collect();
            for m in 1..k {
                let q = grid_point(&polygon, m).expect("grid reaches every visibility count");
                let config = tent_polytope(&polygon, &q).expect("tent configuration");
                let hull = convex_hull(&config).expect("tent hull");
                let lattice = face_lattice(&hull).expect("tent lattice");
                out.push(TentEntry {
                    k,
                    visible: m,
                    config,
                    lattice,
                });
            }
        }
        out
    })
}

fn grid_point(polygon: &[Point2], m: usize) -> Option<Point2> {
    let k = polygon.len() as i64;
    for depth in 1..=4 * k * k {
        for x2 in -2..=2 * k {
            let q = [frac(2 * x2 - 1, 4), int(-depth) / int(4)];
            if visible_edges(polygon, &q) == Some(m) {
                return Some(q);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn lattice_of(c: &PointConfiguration) -> FaceLattice {
        face_lattice(&convex_hull(c).unwrap()).unwrap()
    }

    #[test]
    fn planar_facets() {
        assert_eq!(flatness_class(&lattice_of(&corpus::polygon(3)), 3), FlatnessClass::Triangle);
        assert_eq!(flatness_class(&lattice_of(&corpus::polygon(6)), 3), FlatnessClass::NotCertified);
    }

    #[test]
    fn solid_facets() {
        assert_eq!(flatness_class(&lattice_of(&corpus::pyramid(4)), 4), FlatnessClass::Pyramid);
        assert_eq!(flatness_class(&lattice_of(&corpus::simplex(3)), 4), FlatnessClass::Pyramid);
        assert_eq!(flatness_class(&lattice_of(&corpus::prism(5)), 4), FlatnessClass::Prism);
        assert_eq!(flatness_class(&lattice_of(&corpus::cube(3)), 4), FlatnessClass::Prism);
        assert_eq!(flatness_class(&lattice_of(&corpus::cross_polytope(3)), 4), FlatnessClass::NotCertified);
        assert_eq!(flatness_class(&lattice_of(&corpus::cube(3)), 3), FlatnessClass::NotCertified);
    }

    #[test]
    fn tent_table_is_complete() {
        let table = tent_table();
        assert_eq!(table.len(), (3..=TENT_MAX_GON).map(|k| k - 1).sum::<usize>());
        for t in table {
            assert_eq!(t.lattice.dim(), 3);
            assert_eq!(t.lattice.n_vertices(), t.k + 2);
        }
        let hexagon_tent = table.iter().find(|t| t.k == 6 && t.visible == 3).unwrap();
        let c = flatness_class(&hexagon_tent.lattice, 4);
        assert!(matches!(c, FlatnessClass::Tent | FlatnessClass::Pyramid | FlatnessClass::Prism));
        assert_eq!(c, FlatnessClass::Tent);
    }
}
