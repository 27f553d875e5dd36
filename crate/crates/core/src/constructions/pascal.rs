use num_traits::Signed;

use super::lawrence::{default_heights, lawrence_extension};
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, face_lattice, FaceLattice};
use crate::numeric::{collinear, int, line_intersection, LineMeet, Point2, PointConfiguration, Rational};

/// Parabola abscissae of the default hexagon. Consecutive integers 1..6 do
/// not work: the chords 3–4 and 6–1 are parallel.
pub const DEFAULT_PARABOLA_X: [i64; 6] = [1, 2, 3, 4, 5, 7];

/// The default hexagon, on the parabola `y = x²`.
pub fn default_hexagon() -> [Point2; 6] {
    DEFAULT_PARABOLA_X.map(|x| [int(x), int(x * x)])
}

fn turn(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

/// Hexagon vertices `1..6` followed by the intersections of opposite edge
/// lines, labelled `7` (12∩45), `8` (23∩56) and `9` (34∩61). Fails unless the
/// three intersections exist and are collinear, which by Pascal's theorem
/// they are for six points on a conic.
pub fn pascal_configuration(hexagon: &[Point2; 6]) -> Result<PointConfiguration> {
    for i in 0..6 {
        for j in i + 1..6 {
            if hexagon[i] == hexagon[j] {
                return Err(Error::DegenerateInput(format!("hexagon points {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    let turns: Vec<Rational> = (0..6)
        .map(|i| turn(&hexagon[i], &hexagon[(i + 1) % 6], &hexagon[(i + 2) % 6]))
        .collect();
    if !(turns.iter().all(Signed::is_positive) || turns.iter().all(Signed::is_negative)) {
        return Err(Error::DegenerateInput("hexagon is not strictly convex in the given order".into()));
    }
    let mut meets = Vec::with_capacity(3);
    for i in 0..3 {
        let e = (&hexagon[i], &hexagon[i + 1]);
        let f = (&hexagon[i + 3], &hexagon[(i + 4) % 6]);
        match line_intersection(e, f)? {
            LineMeet::Point(p) => meets.push(p),
            _ => {
                return Err(Error::ConfigurationDegenerate(format!(
                    "edges {}{} and {}{} are parallel",
                    i + 1,
                    i + 2,
                    i + 4,
                    (i + 4) % 6 + 1
                )))
            }
        }
    }
    if !collinear(&meets) {
        return Err(Error::NotCollinear);
    }
    let points = hexagon.iter().chain(&meets).map(|p| p.to_vec()).collect();
    let labels = (1..=9).map(|i| i.to_string()).collect();
    PointConfiguration::new(2, points, labels)
}

/// Lawrence extensions on the three intersection points of the default
/// Pascal configuration: a 5-polytope on 12 vertices with the hexagon as a
/// 2-face.
pub fn pascal_5polytope() -> Result<(PointConfiguration, FaceLattice)> {
    pascal_polytope(&default_hexagon())
}

/// Lawrence extensions on the intersection points 7, 8, 9 of the Pascal
/// configuration of `hexagon`.
pub fn pascal_polytope(hexagon: &[Point2; 6]) -> Result<(PointConfiguration, FaceLattice)> {
    let mut config = pascal_configuration(hexagon)?;
    let (h1, h2) = default_heights();
    for label in ["7", "8", "9"] {
        let i = config.index_of(label).expect("intersection labels");
        config = lawrence_extension(&config, i, &h1, &h2)?;
    }
    let hull = convex_hull(&config)?;
    if hull.vertex_indices.len() != config.len() {
        return Err(Error::Internal("not every point of the Pascal polytope is a vertex".into()));
    }
    let lattice = face_lattice(&hull)?;
    Ok((config, lattice))
}

/// Signed value of the Pascal line's equation at `p`; zero iff `p` is on it.
pub fn pascal_line_side(config: &PointConfiguration, p: &[Rational]) -> Rational {
    let a = config.point(6);
    let b = config.point(7);
    (&b[0] - &a[0]) * (&p[1] - &a[1]) - (&b[1] - &a[1]) * (&p[0] - &a[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn consecutive_parabola_points_are_degenerate() {
        let hex = [1, 2, 3, 4, 5, 6].map(|x: i64| [int(x), int(x * x)]);
        assert!(matches!(pascal_configuration(&hex), Err(Error::ConfigurationDegenerate(_))));
    }

    #[test]
    fn default_configuration_is_pascal() {
        let c = pascal_configuration(&default_hexagon()).unwrap();
        assert_eq!(c.len(), 9);
        let side = |i: usize| pascal_line_side(&c, c.point(i));
        assert!(side(8).is_zero());
        // the Pascal line misses the hexagon
        let s0 = side(0);
        assert!((0..6).all(|i| side(i) * &s0 > Rational::zero()));
    }

    #[test]
    fn off_conic_hexagon_fails() {
        let mut hex = default_hexagon();
        hex[5] = [int(7), int(50)];
        assert_eq!(pascal_configuration(&hex), Err(Error::NotCollinear));
    }
}
