//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::Zero;
use polyreal::lattice::{is_realization, FaceLattice, Graph};
use polyreal::numeric::{frac, int, PointConfiguration, Rational};
use polyreal::semialgebra::{
    default_basis, emit_realization_system, evaluate_membership, free_vertices, projective_scale, realization_variables,
    LinePoint, ProjectiveScale, ScaleValue,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Brute force: no set of at most two vertices disconnects the graph.
pub fn three_connected_oracle(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 || !g.is_connected() {
        return false;
    }
    for a in 0..n {
        if !g.without_vertices(&[a]).is_connected() {
            return false;
        }
        for b in a + 1..n {
            if !g.without_vertices(&[a, b]).is_connected() {
                return false;
            }
        }
    }
    true
}

/// Searches for internally disjoint paths joining each pair, avoiding
/// branch vertices except at the ends.
pub fn disjoint_paths(adj: &[Vec<usize>], pairs: &[(usize, usize)], used: &mut Vec<bool>, used_edges: &mut Vec<Vec<bool>>) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else {
        return true;
    };
    fn walk(
        adj: &[Vec<usize>],
        v: usize,
        target: usize,
        rest: &[(usize, usize)],
        used: &mut Vec<bool>,
        used_edges: &mut Vec<Vec<bool>>,
    ) -> bool {
        for &w in &adj[v] {
            if used_edges[v][w] {
                continue;
            }
            if w == target {
                used_edges[v][w] = true;
                used_edges[w][v] = true;
                if disjoint_paths(adj, rest, used, used_edges) {
                    return true;
                }
                used_edges[v][w] = false;
                used_edges[w][v] = false;
            } else if !used[w] {
                used[w] = true;
                if walk(adj, w, target, rest, used, used_edges) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    walk(adj, a, b, rest, used, used_edges)
}

pub fn has_subdivision(g: &Graph, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let adj = g.adjacency();
    let mut used = vec![false; g.n()];
    for &b in branch {
        used[b] = true;
    }
    let mut used_edges = vec![vec![false; g.n()]; g.n()];
    let pairs: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (branch[i], branch[j])).collect();
    disjoint_paths(&adj, &pairs, &mut used, &mut used_edges)
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Kuratowski: planar iff no subdivision of K5 or K3,3.
pub fn planar_oracle(g: &Graph) -> bool {
    let deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    for s in subsets(g.n(), 5) {
        if s.iter().all(|&v| deg[v] >= 4) && has_subdivision(g, &s, &k5) {
            return false;
        }
    }
    let k33: Vec<(usize, usize)> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
    for s in subsets(g.n(), 6) {
        if s.iter().any(|&v| deg[v] < 3) {
            continue;
        }
        // the side containing s[0], as a 3-subset
        for side in subsets(5, 2) {
            let left: Vec<usize> = std::iter::once(s[0]).chain(side.iter().map(|&i| s[i + 1])).collect();
            let right: Vec<usize> = s.iter().copied().filter(|v| !left.contains(v)).collect();
            let branch: Vec<usize> = left.into_iter().chain(right).collect();
            if has_subdivision(g, &branch, &k33) {
                return false;
            }
        }
    }
    true
}

/// Σ (−1)^i f_i over proper faces equals 1 − (−1)^d.
pub fn euler_holds(l: &FaceLattice) -> bool {
    let d = l.dim();
    let f = l.f_vector();
    let sum: i64 = f.iter().enumerate().map(|(i, &fi)| if i % 2 == 0 { fi as i64 } else { -(fi as i64) }).sum();
    sum == 1 - if d % 2 == 0 { 1 } else { -1 }
}

/// Every interval of length two, including those through the empty face
/// and the polytope itself, has exactly two middle elements.
pub fn diamond_holds(l: &FaceLattice) -> bool {
    let faces: Vec<(i32, BTreeSet<usize>)> = l.faces().iter().map(|f| (f.rank, f.vertices.iter().copied().collect())).collect();
    for (r1, a) in &faces {
        for (r2, b) in &faces {
            if *r2 == r1 + 2 && a.is_subset(b) {
                let mid = faces.iter().filter(|(r, c)| *r == r1 + 1 && a.is_subset(c) && c.is_subset(b)).count();
                if mid != 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact inverse by Gauss-Jordan elimination, kept here so the test does not
/// lean on the library's linear algebra.
pub fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let prow = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `B diag(λ) B⁻¹` with the homogeneous basis points as the columns of `B`:
/// a projective map fixing every basis point.
pub fn basis_fixing_map(base: &PointConfiguration, basis: &[usize], lambda: &[Rational]) -> Vec<Vec<Rational>> {
    let d = base.dim();
    let b: Vec<Vec<Rational>> = (0..=d)
        .map(|r| basis.iter().map(|&v| if r < d { base.point(v)[r].clone() } else { int(1) }).collect())
        .collect();
    let bi = invert(&b);
    (0..=d)
        .map(|r| {
            (0..=d)
                .map(|c| (0..=d).fold(int(0), |acc, k| acc + &b[r][k] * &lambda[k] * &bi[k][c]))
                .collect()
        })
        .collect()
}

pub fn apply_map(m: &[Vec<Rational>], p: &[Rational]) -> Option<Vec<Rational>> {
    let d = p.len();
    let h: Vec<Rational> = m
        .iter()
        .map(|row| row[..d].iter().zip(p).fold(row[d].clone(), |acc, (a, x)| acc + a * x))
        .collect();
    let w = h[d].clone();
    (!w.is_zero()).then(|| h[..d].iter().map(|x| x / &w).collect())
}

/// Cross ratio of homogeneous points on a line, through a bilinear bracket
/// `[a, b] = det(a, b, o)` for a point `o` off the line.
pub fn cross_ratio(x: &[Rational; 3], p0: &[Rational; 3], p1: &[Rational; 3], pinf: &[Rational; 3]) -> Option<Rational> {
    let det3 = |a: &[Rational; 3], b: &[Rational; 3], c: &[Rational; 3]| {
        &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
            + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
    };
    let o = [[int(0), int(0), int(1)], [int(1), int(0), int(0)], [int(0), int(1), int(0)]]
        .into_iter()
        .find(|o| !det3(p0, p1, o).is_zero())
        .unwrap();
    let br = |a: &[Rational; 3], b: &[Rational; 3]| det3(a, b, &o);
    let den = br(x, pinf) * br(p1, p0);
    (!den.is_zero()).then(|| br(x, p0) * br(p1, pinf) / den)
}

pub fn to_line_point(h: &[Rational; 3]) -> LinePoint {
    if h[2].is_zero() {
        LinePoint::Infinity
    } else {
        LinePoint::Finite([&h[0] / &h[2], &h[1] / &h[2]])
    }
}

pub fn transform(m: &[[i64; 3]; 3], h: &[Rational; 3]) -> [Rational; 3] {
    std::array::from_fn(|r| (0..3).fold(int(0), |acc, c| acc + int(m[r][c]) * &h[c]))
}

pub fn det_i(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn scale_value(anchors: [&[Rational; 3]; 3], x: &[Rational; 3]) -> Option<ScaleValue> {
    let [p0, p1, pinf] = anchors.map(to_line_point);
    let (LinePoint::Finite(p0), LinePoint::Finite(p1)) = (p0, p1) else {
        return None;
    };
    let s = ProjectiveScale::new(p0, p1, pinf).ok()?;
    Some(projective_scale(&s, &to_line_point(x)).unwrap())
}

/// Compares the scale of random collinear points before and after `count`
/// random projective transforms, and against the cross ratio.
pub fn projective_scale_trials(rng: &mut ChaCha8Rng, count: usize) -> Result<usize, String> {
    let mut checked = 0;
    while checked < count {
        let a = [int(rng.gen_range(-5..=5)), int(rng.gen_range(-5..=5)), int(1)];
        let dir = [int(rng.gen_range(-4..=4)), int(rng.gen_range(-4..=4)), int(0)];
        if dir[0].is_zero() && dir[1].is_zero() {
            continue;
        }
        let on_line = |t: Rational| -> [Rational; 3] { [&a[0] + &t * &dir[0], &a[1] + &t * &dir[1], int(1)] };
        let p0 = on_line(int(0));
        let p1 = on_line(frac(rng.gen_range(1..=6), rng.gen_range(1..=3)));
        let pinf = if rng.gen_bool(0.3) { dir.clone() } else { on_line(frac(rng.gen_range(-9..=-1), rng.gen_range(1..=3))) };
        let x = on_line(frac(rng.gen_range(-20..=20), rng.gen_range(1..=5)));
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-4..=4)));
        if det_i(&m) == 0 {
            continue;
        }
        let before = scale_value([&p0, &p1, &pinf], &x).ok_or("anchors rejected")?;
        let expected = match cross_ratio(&x, &p0, &p1, &pinf) {
            Some(v) => ScaleValue::Finite(v),
            None => ScaleValue::Infinity,
        };
        if before != expected {
            return Err(format!("scale {before:?} but cross ratio {expected:?}"));
        }
        let img = |h: &[Rational; 3]| transform(&m, h);
        // anchors 0 and 1 must stay finite for the scale to be defined
        let Some(after) = scale_value([&img(&p0), &img(&p1), &img(&pinf)], &img(&x)) else {
            continue;
        };
        if after != before {
            return Err(format!("scale changed from {before:?} to {after:?} under {m:?}"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Outcome of comparing system membership with the hull oracle.
pub struct Agreement {
    pub positive: usize,
    pub negative: usize,
    pub mismatches: Vec<usize>,
}

/// Random rational configurations that keep the basis fixed: projective
/// maps fixing the basis, single-coordinate noise on a free vertex, or both.
pub fn membership_trials(base: &PointConfiguration, lattice: &FaceLattice, trials: usize, rng: &mut ChaCha8Rng) -> Agreement {
    let basis = default_basis(base);
    let sys = emit_realization_system(lattice, &basis, base).expect("system");
    let free = free_vertices(base.len(), &basis);
    let mut out = Agreement { positive: 0, negative: 0, mismatches: Vec::new() };
    let mut trial = 0;
    while trial < trials {
        let mut points = base.points().to_vec();
        if trial % 3 != 0 {
            let lambda: Vec<Rational> = (0..=base.dim()).map(|_| int(1) + frac(rng.gen_range(-3..=3), 8)).collect();
            let m = basis_fixing_map(base, &basis, &lambda);
            match points.iter().map(|p| apply_map(&m, p)).collect::<Option<Vec<_>>>() {
                Some(p) => points = p,
                None => continue,
            }
        }
        if trial % 3 != 1 && !free.is_empty() {
            let v = free[rng.gen_range(0..free.len())];
            let k = rng.gen_range(0..base.dim());
            points[v][k] += frac(rng.gen_range(-2..=2), rng.gen_range(1..=9));
        }
        let q = PointConfiguration::new(base.dim(), points, base.labels().to_vec()).expect("same shape");
        assert!(basis.iter().all(|&b| q.point(b) == base.point(b)), "basis moved");
        let x = realization_variables(&q, &basis);
        let member = evaluate_membership(&sys, &x).expect("arity");
        if member != is_realization(&q, lattice) {
            out.mismatches.push(trial);
        }
        if member {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        trial += 1;
    }
    out
}
