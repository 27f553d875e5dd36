use nalgebra::DMatrix;
use num_traits::{Signed, Zero};

use super::problem::{ConstraintKind, RealizationProblem};
use crate::lattice::is_realization;
use crate::numeric::{best_rational, dot, int, to_f64, MatrixQ, PointConfiguration, Rational};
use crate::semialgebra::{configuration_from_variables, realization_variables};

/// Largest move of the incidence repair, relative to the problem scale.
pub const REPAIR_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// Facet (as vertex list) whose condition fails, when one is identified.
    pub facet: Option<Vec<usize>>,
    pub vertex: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Accepted(PointConfiguration),
    Rejected(Rejection),
}

impl Certification {
    pub fn accepted(&self) -> Option<&PointConfiguration> {
        match self {
            Certification::Accepted(c) => Some(c),
            Certification::Rejected(_) => None,
        }
    }
}

/// Rounds the free coordinates to rationals with bounded denominators,
/// restores exact facet incidences, and checks the result exactly.
///
/// The repair fixes vertices one at a time. A facet hyperplane is fixed once
/// `d` affinely independent vertices on it are; a vertex is then projected
/// onto the fixed hyperplanes of its facets. Moves larger than
/// [`REPAIR_TOLERANCE`] are not made.
pub fn certify(coords: &[f64], prob: &RealizationProblem, max_denominator: u64) -> Certification {
    let reject = |reason: String| {
        Certification::Rejected(Rejection {
            facet: None,
            vertex: None,
            reason,
        })
    };
    if coords.len() != prob.free_vars() {
        return reject(format!("{} coordinates for {} variables", coords.len(), prob.free_vars()));
    }
    let mut rounded = Vec::with_capacity(coords.len());
    for &c in coords {
        match best_rational(c, max_denominator) {
            Some(q) => rounded.push(q),
            None => return reject(format!("coordinate {c} is not finite")),
        }
    }
    let Ok(config) = configuration_from_variables(prob.base(), prob.basis(), &rounded) else {
        return reject("coordinates do not fit the problem".into());
    };
    let config = repair(prob, config);
    match violated_condition(prob, &config) {
        Some(r) => Certification::Rejected(r),
        None => Certification::Accepted(config),
    }
}

fn repair(prob: &RealizationProblem, mut config: PointConfiguration) -> PointConfiguration {
    let d = prob.dim();
    let n = config.len();
    let facets = prob.facets();
    let mut fixed: Vec<bool> = (0..n).map(|v| prob.var_of(v).is_none()).collect();
    let mut planes: Vec<Option<(Vec<Rational>, Rational)>> = vec![None; facets.len()];
    let limit = REPAIR_TOLERANCE * prob.scale();
    loop {
        // fix every hyperplane that has enough fixed vertices
        for (f, facet) in facets.iter().enumerate() {
            if planes[f].is_none() {
                let known: Vec<usize> = facet.iter().copied().filter(|&v| fixed[v]).collect();
                planes[f] = hyperplane_through(&config, &known, d);
            }
        }
        let Some(v) = (0..n).find(|&v| !fixed[v]) else {
            return config;
        };
        let constraints: Vec<&(Vec<Rational>, Rational)> = facets
            .iter()
            .zip(&planes)
            .filter(|(facet, _)| facet.contains(&v))
            .filter_map(|(_, p)| p.as_ref())
            .collect();
        if let Some(q) = project(config.point(v), &constraints) {
            let moved = q
                .iter()
                .zip(config.point(v))
                .map(|(a, b)| to_f64(&(a - b)).abs())
                .fold(0.0, f64::max);
            if moved <= limit {
                let mut points = config.points().to_vec();
                points[v] = q;
                config = PointConfiguration::new(d, points, config.labels().to_vec()).expect("same shape");
            }
        }
        fixed[v] = true;
    }
}

/// Hyperplane `a·x = b` through the first `d` affinely independent of `vs`.
fn hyperplane_through(config: &PointConfiguration, vs: &[usize], d: usize) -> Option<(Vec<Rational>, Rational)> {
    let span = crate::semialgebra::first_independent(config, vs, d);
    if span.len() < d {
        return None;
    }
    let rows: Vec<Vec<Rational>> = span
        .iter()
        .map(|&v| {
            let mut r = config.point(v).to_vec();
            r.push(int(1));
            r
        })
        .collect();
    let ns = MatrixQ::from_rows(&rows).ok()?.nullspace();
    let mut h = ns.into_iter().next()?;
    let b = -h.pop()?;
    Some((h, b))
}

/// Closest point to `p` on the intersection of the hyperplanes, or `None` if
/// they do not meet.
fn project(p: &[Rational], planes: &[&(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
    if planes.is_empty() {
        return Some(p.to_vec());
    }
    // independent subset of the normals
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (a, b) in planes {
        rows.push(a.clone());
        if MatrixQ::from_rows(&rows).ok()?.rank() < rows.len() {
            rows.pop();
        } else {
            rhs.push(b.clone());
        }
    }
    // p + Aᵀ λ with (A Aᵀ) λ = b − A p
    let a = MatrixQ::from_rows(&rows).ok()?;
    let gram = a.checked_mul(&a.transpose()).ok()?;
    let resid: Vec<Rational> = rows.iter().zip(&rhs).map(|(r, b)| b - dot(r, p)).collect();
    let lambda = gram.inverse()?.mul_vec(&resid).ok()?;
    let mut q = p.to_vec();
    for (r, l) in rows.iter().zip(&lambda) {
        for (qi, ri) in q.iter_mut().zip(r) {
            *qi += ri * l;
        }
    }
    // every plane, including dependent ones, must hold
    planes.iter().all(|(a, b)| dot(a, &q) == *b).then_some(q)
}

/// First failing determinant condition, or a lattice mismatch not covered by
/// them; `None` iff `config` realizes the lattice.
pub fn violated_condition(prob: &RealizationProblem, config: &PointConfiguration) -> Option<Rejection> {
    for c in prob.constraints() {
        let v = prob.exact_det(c, config);
        let facet = prob.facets()[c.facet].clone();
        let vertex = c.tested_vertex();
        let reason = match c.kind {
            ConstraintKind::Equal if !v.is_zero() => format!("vertex {vertex} leaves the hyperplane of facet {facet:?}"),
            ConstraintKind::Strict(_) if v.is_zero() => format!("vertex {vertex} lies on the hyperplane of facet {facet:?}"),
            ConstraintKind::Strict(s) if (s > 0) != v.is_positive() => {
                format!("vertex {vertex} crosses the hyperplane of facet {facet:?}")
            }
            _ => continue,
        };
        return Some(Rejection {
            facet: Some(facet),
            vertex: Some(vertex),
            reason,
        });
    }
    (!is_realization(config, prob.lattice())).then(|| Rejection {
        facet: None,
        vertex: None,
        reason: "hull lattice differs from the target".into(),
    })
}

/// `free_vars` minus the numerical rank of the Jacobian of the equality
/// determinants at an exact realization.
pub fn tangent_dimension(config: &PointConfiguration, prob: &RealizationProblem, rank_tolerance: f64) -> usize {
    let x: Vec<f64> = realization_variables(config, prob.basis()).iter().map(to_f64).collect();
    let rows: Vec<Vec<f64>> = prob
        .constraints()
        .iter()
        .filter(|c| c.kind == ConstraintKind::Equal)
        .map(|c| {
            let mut row = vec![0.0; x.len()];
            for (k, g) in prob.det_gradient(c, &x).1 {
                row[k] = g;
            }
            row
        })
        .collect();
    if rows.is_empty() || x.is_empty() {
        return x.len();
    }
    let m = DMatrix::from_fn(rows.len(), x.len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let rank = if top == 0.0 { 0 } else { sv.iter().filter(|&&s| s > rank_tolerance * top).count() };
    x.len() - rank
}
