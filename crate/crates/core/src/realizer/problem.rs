use nalgebra::DMatrix;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{candidate_basis, is_realization, FaceLattice};
use crate::numeric::{det, int, to_f64, MatrixQ, PointConfiguration, Rational};
use crate::semialgebra::{free_vertices, realization_variables};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    /// The orientation determinant vanishes.
    Equal,
    /// The orientation determinant has this sign (±1).
    Strict(i8),
}

/// Orientation determinant of the rows `(q_v, 1)` for `vertices`: the first
/// `d` span the hyperplane of facet `facet`, the last is tested against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetConstraint {
    pub facet: usize,
    pub vertices: Vec<usize>,
    pub kind: ConstraintKind,
}

impl DetConstraint {
    pub fn tested_vertex(&self) -> usize {
        *self.vertices.last().expect("non-empty")
    }
}

/// A realization space: the lattice, a fixed basis and a base realization
/// providing the basis coordinates and the target signs.
#[derive(Debug, Clone)]
pub struct RealizationProblem {
    lattice: FaceLattice,
    basis: Vec<usize>,
    base: PointConfiguration,
    facets: Vec<Vec<usize>>,
    constraints: Vec<DetConstraint>,
    /// Variable offset of each vertex, `None` for basis vertices.
    var_of: Vec<Option<usize>>,
    /// Coordinates are divided by this before taking determinants.
    scale: f64,
}

impl RealizationProblem {
    pub fn new(lattice: FaceLattice, basis: &[usize], base: PointConfiguration) -> Result<Self> {
        let d = base.dim();
        let n = base.len();
        if lattice.n_vertices() != n || !is_realization(&base, &lattice) {
            return Err(Error::Precondition("base configuration does not realize the lattice".into()));
        }
        let mut basis = basis.to_vec();
        basis.sort_unstable();
        if !candidate_basis(&base, &basis) {
            return Err(Error::Precondition(format!("{basis:?} is not an affine basis of the vertices")));
        }
        let mut var_of = vec![None; n];
        for (k, v) in free_vertices(n, &basis).into_iter().enumerate() {
            var_of[v] = Some(k * d);
        }
        let facets = lattice.facets();
        let mut constraints = Vec::new();
        for (f, facet) in facets.iter().enumerate() {
            let span = crate::semialgebra::first_independent(&base, facet, d);
            if span.len() != d {
                return Err(Error::Internal(format!("facet {facet:?} does not span a hyperplane")));
            }
            for v in (0..n).filter(|v| !span.contains(v)) {
                let mut vertices = span.clone();
                vertices.push(v);
                let kind = if facet.contains(&v) {
                    ConstraintKind::Equal
                } else {
                    ConstraintKind::Strict(if exact_orientation(&base, &vertices).is_positive() { 1 } else { -1 })
                };
                constraints.push(DetConstraint { facet: f, vertices, kind });
            }
        }
        let scale = base
            .points()
            .iter()
            .flatten()
            .map(|q| to_f64(q).abs())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        Ok(Self {
            lattice,
            basis,
            base,
            facets,
            constraints,
            var_of,
            scale,
        })
    }

    /// Uses [`crate::semialgebra::default_basis`].
    pub fn with_default_basis(lattice: FaceLattice, base: PointConfiguration) -> Result<Self> {
        let basis = crate::semialgebra::default_basis(&base);
        Self::new(lattice, &basis, base)
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn base(&self) -> &PointConfiguration {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `d · (n − d − 1)`.
    pub fn free_vars(&self) -> usize {
        self.dim() * (self.base.len() - self.basis.len())
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn constraints(&self) -> &[DetConstraint] {
        &self.constraints
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub(crate) fn var_of(&self, v: usize) -> Option<usize> {
        self.var_of[v]
    }

    /// The base realization's free coordinates.
    pub fn base_variables(&self) -> Vec<f64> {
        realization_variables(&self.base, &self.basis).iter().map(to_f64).collect()
    }

    fn row(&self, v: usize, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut r: Vec<f64> = match self.var_of[v] {
            Some(k) => x[k..k + d].to_vec(),
            None => self.base.point(v).iter().map(to_f64).collect(),
        };
        for c in &mut r {
            *c /= self.scale;
        }
        r.push(1.0);
        r
    }

    fn matrix(&self, c: &DetConstraint, x: &[f64]) -> DMatrix<f64> {
        let m = c.vertices.len();
        let rows: Vec<Vec<f64>> = c.vertices.iter().map(|&v| self.row(v, x)).collect();
        DMatrix::from_fn(m, m, |i, j| rows[i][j])
    }

    /// Normalized determinant of a constraint.
    pub fn det_value(&self, c: &DetConstraint, x: &[f64]) -> f64 {
        self.matrix(c, x).determinant()
    }

    /// Normalized determinant and its gradient in the free variables, from
    /// the cofactors of the rows that carry variables.
    pub fn det_gradient(&self, c: &DetConstraint, x: &[f64]) -> (f64, Vec<(usize, f64)>) {
        let d = self.dim();
        let m = self.matrix(c, x);
        let mut grad = Vec::new();
        for (r, &v) in c.vertices.iter().enumerate() {
            if let Some(k) = self.var_of[v] {
                for col in 0..d {
                    grad.push((k + col, cofactor(&m, r, col) / self.scale));
                }
            }
        }
        (m.determinant(), grad)
    }

    /// `Σ hinge(target − s·D)² + Σ D²`.
    pub fn penalty(&self, x: &[f64], target: f64) -> f64 {
        self.constraints
            .iter()
            .filter(|c| self.involves_variables(c))
            .map(|c| {
                let v = self.det_value(c, x);
                match c.kind {
                    ConstraintKind::Equal => v * v,
                    ConstraintKind::Strict(s) => (target - s as f64 * v).max(0.0).powi(2),
                }
            })
            .sum()
    }

    pub fn penalty_gradient(&self, x: &[f64], target: f64) -> (f64, Vec<f64>) {
        let mut g = vec![0.0; x.len()];
        let mut f = 0.0;
        for c in self.constraints.iter().filter(|c| self.involves_variables(c)) {
            let (v, grad) = self.det_gradient(c, x);
            let w = match c.kind {
                ConstraintKind::Equal => {
                    f += v * v;
                    2.0 * v
                }
                ConstraintKind::Strict(s) => {
                    let h = (target - s as f64 * v).max(0.0);
                    f += h * h;
                    -2.0 * h * s as f64
                }
            };
            if w != 0.0 {
                for (k, dv) in grad {
                    g[k] += w * dv;
                }
            }
        }
        (f, g)
    }

    pub fn involves_variables(&self, c: &DetConstraint) -> bool {
        c.vertices.iter().any(|&v| self.var_of[v].is_some())
    }

    /// Smallest signed strict margin and largest equality residual.
    pub fn residuals(&self, x: &[f64]) -> (f64, f64) {
        let mut margin = f64::INFINITY;
        let mut eq = 0.0f64;
        for c in &self.constraints {
            let v = self.det_value(c, x);
            match c.kind {
                ConstraintKind::Equal => eq = eq.max(v.abs()),
                ConstraintKind::Strict(s) => margin = margin.min(s as f64 * v),
            }
        }
        (margin, eq)
    }

    /// Rows are `(q_v, 1)` with `q` exact.
    pub fn exact_det(&self, c: &DetConstraint, config: &PointConfiguration) -> Rational {
        exact_orientation(config, &c.vertices)
    }
}

fn cofactor(m: &DMatrix<f64>, r: usize, c: usize) -> f64 {
    let minor = m.clone().remove_row(r).remove_column(c);
    let sign = if (r + c).is_multiple_of(2) { 1.0 } else { -1.0 };
    let det = if minor.nrows() == 0 { 1.0 } else { minor.determinant() };
    sign * det
}

pub(crate) fn exact_orientation(config: &PointConfiguration, vs: &[usize]) -> Rational {
    let rows: Vec<Vec<Rational>> = vs
        .iter()
        .map(|&v| {
            let mut r = config.point(v).to_vec();
            r.push(int(1));
            r
        })
        .collect();
    det(&MatrixQ::from_rows(&rows).expect("rows agree")).expect("square")
}

/// Largest relative deviation, over all determinants, between the cofactor
/// gradient and its central finite difference with step `h`, measured in
/// the max norm of each gradient vector.
pub fn gradient_check(prob: &RealizationProblem, x: &[f64], h: f64) -> f64 {
    let mut worst = 0.0f64;
    for c in prob.constraints() {
        let (_, grad) = prob.det_gradient(c, x);
        let (mut err, mut size) = (0.0f64, 0.0f64);
        for (k, g) in grad {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[k] += h;
            xm[k] -= h;
            let fd = (prob.det_value(c, &xp) - prob.det_value(c, &xm)) / (2.0 * h);
            err = err.max((g - fd).abs());
            size = size.max(g.abs()).max(fd.abs());
        }
        if size > 1e-9 {
            worst = worst.max(err / size);
        }
    }
    worst
}
