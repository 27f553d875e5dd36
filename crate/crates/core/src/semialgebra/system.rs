use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::PolynomialZ;
use crate::error::{Error, Result};
use crate::lattice::{candidate_basis, is_realization, FaceLattice};
use crate::numeric::{denominator_lcm, det, int, MatrixQ, PointConfiguration, Rational};

/// `{x : f(x) = 0, g(x) > 0, h(x) >= 0}` for the listed polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SemialgebraicSystem {
    pub n_vars: usize,
    pub equations: Vec<PolynomialZ>,
    pub strict: Vec<PolynomialZ>,
    pub nonstrict: Vec<PolynomialZ>,
}

impl SemialgebraicSystem {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            ..Self::default()
        }
    }

    /// Rejects polynomials over a different number of variables.
    pub fn validate(&self) -> Result<()> {
        for p in self.equations.iter().chain(&self.strict).chain(&self.nonstrict) {
            if p.n_vars() != self.n_vars {
                return Err(Error::DimensionMismatch(format!(
                    "polynomial in {} variables inside a system in {}",
                    p.n_vars(),
                    self.n_vars
                )));
            }
        }
        Ok(())
    }

    /// No non-strict inequalities.
    pub fn primary(&self) -> bool {
        self.nonstrict.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.equations
            .iter()
            .chain(&self.strict)
            .chain(&self.nonstrict)
            .map(PolynomialZ::term_count)
            .sum()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.equations
            .iter()
            .chain(&self.strict)
            .chain(&self.nonstrict)
            .map(PolynomialZ::max_coeff_bits)
            .max()
            .unwrap_or(0)
    }
}

/// Exact membership test.
pub fn evaluate_membership(sys: &SemialgebraicSystem, x: &[Rational]) -> Result<bool> {
    if x.len() != sys.n_vars {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} for a system in {} variables",
            x.len(),
            sys.n_vars
        )));
    }
    Ok(sys.equations.iter().all(|p| p.eval(x).is_zero())
        && sys.strict.iter().all(|p| p.eval(x).is_positive())
        && sys.nonstrict.iter().all(|p| !p.eval(x).is_negative()))
}

/// Lexicographically first affinely independent `(d+1)`-subset of the points.
pub fn default_basis(config: &PointConfiguration) -> Vec<usize> {
    first_independent(config, &(0..config.len()).collect::<Vec<_>>(), config.dim() + 1)
}

/// Greedy, hence lexicographically first, affinely independent subset of
/// `candidates` of size at most `k`.
pub(crate) fn first_independent(config: &PointConfiguration, candidates: &[usize], k: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &v in candidates {
        if chosen.len() == k {
            break;
        }
        let mut row = config.point(v).to_vec();
        row.push(int(1));
        rows.push(row);
        if MatrixQ::from_rows(&rows).expect("rows agree").rank() == rows.len() {
            chosen.push(v);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// The variables of a realization space: coordinates of the non-basis
/// vertices in index order, `d` per vertex.
pub fn free_vertices(n: usize, basis: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !basis.contains(v)).collect()
}

/// Flattens the non-basis coordinates of a configuration into a variable vector.
pub fn realization_variables(config: &PointConfiguration, basis: &[usize]) -> Vec<Rational> {
    free_vertices(config.len(), basis)
        .into_iter()
        .flat_map(|v| config.point(v).to_vec())
        .collect()
}

/// Rebuilds a configuration from a base (for the basis) and variable values.
pub fn configuration_from_variables(
    base: &PointConfiguration,
    basis: &[usize],
    x: &[Rational],
) -> Result<PointConfiguration> {
    let d = base.dim();
    let free = free_vertices(base.len(), basis);
    if x.len() != free.len() * d {
        return Err(Error::DimensionMismatch(format!("{} values for {} variables", x.len(), free.len() * d)));
    }
    let mut points = base.points().to_vec();
    for (k, v) in free.into_iter().enumerate() {
        points[v] = x[k * d..(k + 1) * d].to_vec();
    }
    PointConfiguration::new(d, points, base.labels().to_vec())
}

/// A row `(q_v, 1)` of an orientation determinant, as polynomials with the
/// basis rows cleared of denominators.
fn symbolic_row(v: usize, base: &PointConfiguration, var_of: &[Option<usize>], n_vars: usize) -> Vec<PolynomialZ> {
    let d = base.dim();
    match var_of[v] {
        Some(first) => {
            let mut row: Vec<PolynomialZ> = (0..d).map(|k| PolynomialZ::var(n_vars, first + k)).collect();
            row.push(PolynomialZ::constant(n_vars, 1));
            row
        }
        None => {
            let p = base.point(v);
            let l = denominator_lcm(p.iter());
            let scale = Rational::from_integer(l.clone());
            let mut row: Vec<PolynomialZ> = p
                .iter()
                .map(|x| PolynomialZ::constant(n_vars, (x * &scale).to_integer()))
                .collect();
            row.push(PolynomialZ::constant(n_vars, l));
            row
        }
    }
}

/// Determinant of a square matrix of polynomials by expansion over column
/// subsets.
fn symbolic_det(rows: &[Vec<PolynomialZ>], n_vars: usize) -> PolynomialZ {
    let m = rows.len();
    // minors[mask] = det of the last popcount(mask) rows restricted to the columns in mask
    let mut minors: Vec<Option<PolynomialZ>> = vec![None; 1 << m];
    minors[0] = Some(PolynomialZ::constant(n_vars, 1));
    for mask in 1usize..1 << m {
        let k = mask.count_ones() as usize;
        let row = &rows[m - k];
        let mut acc = PolynomialZ::zero(n_vars);
        let mut sign_pos = true;
        for c in 0..m {
            if mask >> c & 1 == 1 {
                let sub = minors[mask & !(1 << c)].as_ref().unwrap();
                if !row[c].is_zero() && !sub.is_zero() {
                    let t = &row[c] * sub;
                    acc = if sign_pos { &acc + &t } else { &acc - &t };
                }
                sign_pos = !sign_pos;
            }
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << m) - 1].take().unwrap()
}

fn numeric_orientation(config: &PointConfiguration, vs: &[usize]) -> Rational {
    let rows: Vec<Vec<Rational>> = vs
        .iter()
        .map(|&v| {
            let mut r = config.point(v).to_vec();
            r.push(int(1));
            r
        })
        .collect();
    det(&MatrixQ::from_rows(&rows).expect("square")).expect("square")
}

/// The determinant-sign system of the realization space of `lattice` with
/// the given basis fixed at its coordinates in `base`.
///
/// For each facet the lexicographically first affinely independent `d`
/// vertices span its hyperplane; every other facet vertex gives an equation
/// and every vertex off the facet a strict inequality with the sign it has in
/// `base`. Constraints that involve no variables are omitted.
pub fn emit_realization_system(
    lattice: &FaceLattice,
    basis: &[usize],
    base: &PointConfiguration,
) -> Result<SemialgebraicSystem> {
    let d = base.dim();
    let n = base.len();
    if lattice.n_vertices() != n || !is_realization(base, lattice) {
        return Err(Error::Precondition("base configuration does not realize the lattice".into()));
    }
    let mut sorted = basis.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != d + 1 || sorted.iter().any(|&b| b >= n) || !candidate_basis(base, &sorted) {
        return Err(Error::Precondition(format!("{basis:?} is not an affine basis of the vertices")));
    }
    let free = free_vertices(n, &sorted);
    let n_vars = free.len() * d;
    let mut var_of = vec![None; n];
    for (k, &v) in free.iter().enumerate() {
        var_of[v] = Some(k * d);
    }
    let mut sys = SemialgebraicSystem::new(n_vars);
    for facet in lattice.facets() {
        let span = first_independent(base, &facet, d);
        if span.len() != d {
            return Err(Error::Internal(format!("facet {facet:?} does not span a hyperplane")));
        }
        let touches_vars = |v: usize| span.iter().chain([&v]).any(|&u| var_of[u].is_some());
        let span_rows: Vec<Vec<PolynomialZ>> = span.iter().map(|&u| symbolic_row(u, base, &var_of, n_vars)).collect();
        for v in 0..n {
            if span.contains(&v) || !touches_vars(v) {
                continue;
            }
            let mut rows = span_rows.clone();
            rows.push(symbolic_row(v, base, &var_of, n_vars));
            let poly = symbolic_det(&rows, n_vars);
            if facet.contains(&v) {
                sys.equations.push(poly);
            } else {
                let mut vs = span.clone();
                vs.push(v);
                let s = numeric_orientation(base, &vs);
                let sign = if s.is_positive() { BigInt::one() } else { BigInt::from(-1) };
                sys.strict.push(poly.scale(&sign));
            }
        }
    }
    Ok(sys)
}
