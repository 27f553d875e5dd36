//! Integer realization of 3-polytopal graphs.
//!
//! A Tutte drawing with a triangular outer face carries the unit equilibrium
//! stress on interior edges; completing it on the three outer edges and
//! lifting by Maxwell–Cremona gives a convex polytope. Graphs without a
//! triangular face have a 3-valent vertex, so their dual is realized instead
//! and polarized.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{is_3polytopal_detail, is_planar, PlanarEmbedding};
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, is_realization, FaceLattice, Graph};
use crate::numeric::{
    denominator_lcm, dot, int, solve_linear, LinearSolution, MatrixQ, PointConfiguration, Rational,
};

/// Face lattice induced by the face cycles of an embedding.
pub fn embedding_lattice(emb: &PlanarEmbedding) -> Result<FaceLattice> {
    let facets: Vec<Vec<usize>> = emb.faces.clone();
    FaceLattice::from_facets(emb.graph.n(), &facets)
}

/// Integer coordinates for a 3-polytopal graph; labels are vertex indices.
pub fn realize_3polytope(g: &Graph) -> Result<PointConfiguration> {
    if let Some(failed) = is_3polytopal_detail(g) {
        return Err(Error::Precondition(format!("graph is not {failed}")));
    }
    let emb = is_planar(g)
        .embedding
        .ok_or_else(|| Error::Internal("planar graph without embedding".into()))?;
    let points = match emb.faces.iter().position(|f| f.len() == 3) {
        Some(tri) => lift(&emb, tri)?,
        None => via_dual(&emb)?,
    };
    let config = PointConfiguration::from_points(3, integral(points))?;
    if !is_realization(&config, &embedding_lattice(&emb)?) {
        return Err(Error::Internal("lifted configuration fails verification".into()));
    }
    Ok(config)
}

/// Scales a point list by the common denominator and removes the gcd.
fn integral(points: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let l = denominator_lcm(points.iter().flatten());
    let scaled: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|x| (x * Rational::from(l.clone())).to_integer()).collect())
        .collect();
    let g = scaled
        .iter()
        .flatten()
        .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    scaled
        .into_iter()
        .map(|p| p.into_iter().map(|x| Rational::from(x / &g)).collect())
        .collect()
}

fn lift(emb: &PlanarEmbedding, outer: usize) -> Result<Vec<Vec<Rational>>> {
    let g = &emb.graph;
    let n = g.n();
    let adj = g.adjacency();
    let tri = &emb.faces[outer];
    let anchors = [[int(0), int(0)], [int(1), int(0)], [int(0), int(1)]];

    // Tutte drawing: each interior vertex at the mean of its neighbours.
    let mut pos: Vec<Option<[Rational; 2]>> = vec![None; n];
    for (k, &v) in tri.iter().enumerate() {
        pos[v] = Some(anchors[k].clone());
    }
    let interior: Vec<usize> = (0..n).filter(|v| !tri.contains(v)).collect();
    let index: HashMap<usize, usize> = interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let m = interior.len();
    if m > 0 {
        let mut lap = MatrixQ::zeros(m, m);
        let mut rhs = [vec![int(0); m], vec![int(0); m]];
        for (i, &v) in interior.iter().enumerate() {
            lap[(i, i)] = int(adj[v].len() as i64);
            for &w in &adj[v] {
                match index.get(&w) {
                    Some(&j) => lap[(i, j)] -= int(1),
                    None => {
                        let p = pos[w].as_ref().unwrap();
                        rhs[0][i] += &p[0];
                        rhs[1][i] += &p[1];
                    }
                }
            }
        }
        let inv = lap
            .inverse()
            .ok_or_else(|| Error::Internal("singular Tutte system".into()))?;
        let xs = inv.mul_vec(&rhs[0])?;
        let ys = inv.mul_vec(&rhs[1])?;
        for (i, &v) in interior.iter().enumerate() {
            pos[v] = Some([xs[i].clone(), ys[i].clone()]);
        }
    }
    let pos: Vec<[Rational; 2]> = pos.into_iter().map(Option::unwrap).collect();

    // Outer edge stresses balancing the interior forces at the three corners.
    let outer_edges = [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])];
    let mut a = MatrixQ::zeros(6, 3);
    let mut b = vec![int(0); 6];
    for (k, &v) in tri.iter().enumerate() {
        for &w in &adj[v] {
            let d = [&pos[w][0] - &pos[v][0], &pos[w][1] - &pos[v][1]];
            match outer_edges.iter().position(|&(x, y)| (x == v && y == w) || (x == w && y == v)) {
                Some(e) => {
                    a[(2 * k, e)] += &d[0];
                    a[(2 * k + 1, e)] += &d[1];
                }
                None => {
                    b[2 * k] -= &d[0];
                    b[2 * k + 1] -= &d[1];
                }
            }
        }
    }
    let outer_stress = match solve_linear(&a, &b)? {
        LinearSolution::Unique(s) => s,
        _ => return Err(Error::Internal("outer stress not determined".into())),
    };
    let stress = |u: usize, v: usize| -> Rational {
        match outer_edges.iter().position(|&(x, y)| (x == u && y == v) || (x == v && y == u)) {
            Some(e) => outer_stress[e].clone(),
            None => int(1),
        }
    };

    // Face functions z = A x + B y + C, propagated across edges.
    let mut dart_face: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in emb.faces.iter().enumerate() {
        for i in 0..f.len() {
            dart_face.insert((f[i], f[(i + 1) % f.len()]), fi);
        }
    }
    let mut plane: Vec<Option<[Rational; 3]>> = vec![None; emb.faces.len()];
    plane[outer] = Some([int(0), int(0), int(0)]);
    let mut queue = VecDeque::from([outer]);
    while let Some(fi) = queue.pop_front() {
        let f = &emb.faces[fi];
        let h = plane[fi].clone().unwrap();
        for i in 0..f.len() {
            let (u, v) = (f[i], f[(i + 1) % f.len()]);
            let gi = dart_face[&(v, u)];
            if plane[gi].is_some() {
                continue;
            }
            let w = stress(u, v);
            let (ex, ey) = (&pos[v][0] - &pos[u][0], &pos[v][1] - &pos[u][1]);
            let da = &w * &ey;
            let db = -(&w * &ex);
            let dc = &w * (&pos[u][1] * &ex - &pos[u][0] * &ey);
            plane[gi] = Some([&h[0] + da, &h[1] + db, &h[2] + dc]);
            queue.push_back(gi);
        }
    }
    let mut height: Vec<Option<Rational>> = vec![None; n];
    for (fi, f) in emb.faces.iter().enumerate() {
        let h = plane[fi].as_ref().unwrap();
        for &v in f {
            if height[v].is_none() {
                height[v] = Some(&h[0] * &pos[v][0] + &h[1] * &pos[v][1] + &h[2]);
            }
        }
    }
    Ok((0..n)
        .map(|v| vec![pos[v][0].clone(), pos[v][1].clone(), height[v].clone().unwrap()])
        .collect())
}

/// Realizes the dual graph and takes the polar about the vertex centroid.
fn via_dual(emb: &PlanarEmbedding) -> Result<Vec<Vec<Rational>>> {
    let mut dart_face: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in emb.faces.iter().enumerate() {
        for i in 0..f.len() {
            dart_face.insert((f[i], f[(i + 1) % f.len()]), fi);
        }
    }
    let dual_edges: Vec<(usize, usize)> = emb
        .graph
        .edges()
        .map(|(a, b)| (dart_face[&(a, b)], dart_face[&(b, a)]))
        .collect();
    let dual = Graph::new(emb.faces.len(), dual_edges)?;
    let dual_emb = is_planar(&dual)
        .embedding
        .ok_or_else(|| Error::Internal("dual graph not planar".into()))?;
    let tri = dual_emb
        .faces
        .iter()
        .position(|f| f.len() == 3)
        .ok_or_else(|| Error::Internal("neither graph nor dual has a triangle".into()))?;
    let q = PointConfiguration::from_points(3, lift(&dual_emb, tri)?)?;
    let hull = convex_hull(&q)?;
    let n = q.len() as i64;
    let mut c = vec![int(0); 3];
    for p in q.points() {
        for k in 0..3 {
            c[k] += &p[k];
        }
    }
    let c: Vec<Rational> = c.into_iter().map(|x| x / int(n)).collect();
    let mut out = Vec::with_capacity(emb.graph.n());
    for v in 0..emb.graph.n() {
        let mut around: Vec<usize> = dart_face
            .iter()
            .filter(|(&(a, _), _)| a == v)
            .map(|(_, &f)| f)
            .collect();
        around.sort_unstable();
        let facet = hull
            .facets
            .iter()
            .find(|f| f.vertices == around)
            .ok_or_else(|| Error::Internal(format!("no dual facet for vertex {v}")))?;
        let h = &facet.hyperplane;
        let slack = &h.offset - dot(&h.normal, &c);
        out.push(h.normal.iter().map(|a| a / &slack).collect());
    }
    Ok(out)
}

/// `e - 6` for the lattice of a 3-polytope with `e` edges.
pub fn realization_space_dim_3(l: &FaceLattice) -> Result<i64> {
    if l.dim() != 3 {
        return Err(Error::DimensionMismatch(format!("lattice of dimension {}, expected 3", l.dim())));
    }
    Ok(l.f_vector()[1] as i64 - 6)
}
