//! Standard polytopes and graphs used by the fixture corpus, the self test
//! and the test suites.

use crate::lattice::Graph;
use crate::numeric::{best_rational, frac, int, PointConfiguration, Rational};

fn config(dim: usize, points: Vec<Vec<Rational>>) -> PointConfiguration {
    PointConfiguration::from_points(dim, points).expect("corpus configurations are well formed")
}

/// `0, e_1, ..., e_d`.
pub fn simplex(d: usize) -> PointConfiguration {
    let mut pts = vec![vec![int(0); d]];
    for i in 0..d {
        let mut p = vec![int(0); d];
        p[i] = int(1);
        pts.push(p);
    }
    config(d, pts)
}

/// The `2^d` sign vectors `{±1}^d`, in binary counting order.
pub fn cube(d: usize) -> PointConfiguration {
    let pts = (0..1usize << d)
        .map(|m| {
            (0..d)
                .map(|i| if m >> i & 1 == 1 { int(1) } else { int(-1) })
                .collect()
        })
        .collect();
    config(d, pts)
}

/// `±e_i` in the order `e_1, -e_1, e_2, -e_2, ...`.
pub fn cross_polytope(d: usize) -> PointConfiguration {
    let mut pts = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            let mut p = vec![int(0); d];
            p[i] = int(s);
            pts.push(p);
        }
    }
    config(d, pts)
}

/// Rational points on the unit circle at roughly equal angles, counterclockwise.
/// `phase` shifts all angles by that fraction of a step.
pub fn circle_polygon(k: usize, phase: f64) -> Vec<[Rational; 2]> {
    (0..k)
        .map(|i| {
            let angle = std::f64::consts::TAU * (i as f64 + 0.5 + phase) / k as f64 - std::f64::consts::PI;
            let t = best_rational((angle / 2.0).tan(), 97).expect("finite tangent");
            let one = int(1);
            let den = &one + &t * &t;
            [(&one - &t * &t) / &den, (int(2) * &t) / &den]
        })
        .collect()
}

/// A convex `k`-gon in the plane.
pub fn polygon(k: usize) -> PointConfiguration {
    config(
        2,
        circle_polygon(k, 0.0).into_iter().map(|[x, y]| vec![x, y]).collect(),
    )
}

/// Prism over a `k`-gon: bottom polygon first, then top.
pub fn prism(k: usize) -> PointConfiguration {
    let base = circle_polygon(k, 0.0);
    let mut pts = Vec::new();
    for z in [0, 1] {
        for [x, y] in &base {
            pts.push(vec![x.clone(), y.clone(), int(z)]);
        }
    }
    config(3, pts)
}

/// Pyramid over a `k`-gon, apex last.
pub fn pyramid(k: usize) -> PointConfiguration {
    let mut pts: Vec<Vec<Rational>> = circle_polygon(k, 0.0)
        .into_iter()
        .map(|[x, y]| vec![x, y, int(0)])
        .collect();
    pts.push(vec![int(0), int(0), int(1)]);
    config(3, pts)
}

/// Antiprism over a `k`-gon.
pub fn antiprism(k: usize) -> PointConfiguration {
    let mut pts = Vec::new();
    for (z, phase) in [(0, 0.0), (1, 0.5)] {
        for [x, y] in circle_polygon(k, phase) {
            pts.push(vec![x, y, int(z)]);
        }
    }
    config(3, pts)
}

/// Bipyramid over a `k`-gon, the two apexes last.
pub fn bipyramid(k: usize) -> PointConfiguration {
    let mut pts: Vec<Vec<Rational>> = circle_polygon(k, 0.0)
        .into_iter()
        .map(|[x, y]| vec![x, y, int(0)])
        .collect();
    pts.push(vec![int(0), int(0), int(1)]);
    pts.push(vec![int(0), int(0), int(-1)]);
    config(3, pts)
}

/// Unit square with its center appended.
pub fn square_with_center() -> PointConfiguration {
    let mut pts: Vec<Vec<Rational>> = [[0, 0], [1, 0], [1, 1], [0, 1]]
        .iter()
        .map(|p| vec![int(p[0]), int(p[1])])
        .collect();
    pts.push(vec![frac(1, 2), frac(1, 2)]);
    config(2, pts)
}

/// Named 3-polytopes with exact rational coordinates.
pub fn rational_3polytopes() -> Vec<(&'static str, PointConfiguration)> {
    vec![
        ("tetrahedron", simplex(3)),
        ("cube", cube(3)),
        ("octahedron", cross_polytope(3)),
        ("triangular-prism", prism(3)),
        ("pentagonal-prism", prism(5)),
        ("square-pyramid", pyramid(4)),
        ("pentagonal-pyramid", pyramid(5)),
        ("square-antiprism", antiprism(4)),
        ("triangular-bipyramid", bipyramid(3)),
    ]
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).expect("corpus graphs are simple")
}

pub fn complete_graph(n: usize) -> Graph {
    graph(
        n,
        &(0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect::<Vec<_>>(),
    )
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    graph(
        a + b,
        &(0..a)
            .flat_map(|i| (0..b).map(move |j| (i, a + j)))
            .collect::<Vec<_>>(),
    )
}

pub fn cycle_graph(n: usize) -> Graph {
    graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

pub fn path_graph(n: usize) -> Graph {
    graph(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

/// Hypercube graph `Q_3`: vertices are 3-bit masks, edges flip one bit.
pub fn cube_graph() -> Graph {
    let mut e = Vec::new();
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                e.push((v, w));
            }
        }
    }
    graph(8, &e)
}

/// Prism graph over a `k`-cycle: bottom `0..k`, top `k..2k`.
pub fn prism_graph(k: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..k {
        e.push((i, (i + 1) % k));
        e.push((k + i, k + (i + 1) % k));
        e.push((i, k + i));
    }
    graph(2 * k, &e)
}

/// Wheel: hub `0` joined to a cycle on `1..=k`.
pub fn wheel_graph(k: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..k {
        e.push((0, 1 + i));
        e.push((1 + i, 1 + (i + 1) % k));
    }
    graph(k + 1, &e)
}

pub fn octahedron_graph() -> Graph {
    // K_{2,2,2}: opposite pairs (0,1), (2,3), (4,5)
    let e: Vec<_> = (0..6usize)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .filter(|&(a, b)| a / 2 != b / 2)
        .collect();
    graph(6, &e)
}

pub fn petersen_graph() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    graph(10, &e)
}

pub fn dodecahedron_graph() -> Graph {
    // outer 5-cycle, middle 10-cycle, inner 5-cycle
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, 5 + 2 * i));
        e.push((15 + i, 15 + (i + 1) % 5));
        e.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        e.push((5 + j, 5 + (j + 1) % 10));
    }
    graph(20, &e)
}

pub fn icosahedron_graph() -> Graph {
    // apex 0, upper ring 1..=5, lower ring 6..=10, apex 11
    let mut e = Vec::new();
    for i in 0..5 {
        let (u, un) = (1 + i, 1 + (i + 1) % 5);
        let (l, ln) = (6 + i, 6 + (i + 1) % 5);
        e.extend([(0, u), (u, un), (u, l), (un, l), (l, ln), (l, 11)]);
    }
    graph(12, &e)
}

/// Edge graphs of hulls of random integer points, with 5 to 10 vertices.
/// Every one is 3-polytopal.
pub fn random_polytopal_graphs(count: usize, seed: u64) -> Vec<Graph> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(5..=10);
        let pts: Vec<Vec<Rational>> = (0..n).map(|_| (0..3).map(|_| int(rng.gen_range(-20..=20))).collect()).collect();
        let Ok(c) = PointConfiguration::from_points(3, pts) else { continue };
        let Ok(hull) = crate::lattice::convex_hull(&c) else { continue };
        if hull.dim != 3 || hull.vertex_indices.len() < 5 {
            continue;
        }
        let Ok(vertices) = c.select(&hull.vertex_indices) else { continue };
        let lattice = crate::lattice::convex_hull(&vertices).and_then(|h| crate::lattice::face_lattice(&h));
        if let Ok(l) = lattice {
            out.push(l.edge_graph());
        }
    }
    out
}

/// Named graphs of the Steinitz corpus.
pub fn graph_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("K4", complete_graph(4)),
        ("K5", complete_graph(5)),
        ("K3,3", complete_bipartite(3, 3)),
        ("cube", cube_graph()),
        ("octahedron", octahedron_graph()),
        ("triangular-prism", prism_graph(3)),
        ("pentagonal-prism", prism_graph(5)),
        ("wheel-6", wheel_graph(6)),
        ("petersen", petersen_graph()),
        ("path-5", path_graph(5)),
        ("cycle-6", cycle_graph(6)),
        ("K2,4", complete_bipartite(2, 4)),
        ("dodecahedron", dodecahedron_graph()),
        ("icosahedron", icosahedron_graph()),
    ]
}
