//! Fibers of stable projections.
//!
//! Over a base point `v` the fiber is the open polyhedral cone
//! `{v' : φ_i(v)·v' > 0, ψ_j(v)·v' = 0}`. Equalities are solved by a kernel
//! basis; the strict part is decided by Fourier–Motzkin elimination with
//! multipliers tracked, so emptiness comes with a Gordan certificate.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::PolynomialZ;
use crate::error::{Error, Result};
use crate::numeric::{dot, int, MatrixQ, Rational};

/// Polynomial data of a stable projection `W → V` with fibers in `ℝ^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableProjectionSpec {
    pub n: usize,
    pub d: usize,
    pub phi: Vec<Vec<PolynomialZ>>,
    pub psi: Vec<Vec<PolynomialZ>>,
}

impl StableProjectionSpec {
    pub fn new(n: usize, d: usize, phi: Vec<Vec<PolynomialZ>>, psi: Vec<Vec<PolynomialZ>>) -> Result<Self> {
        for t in phi.iter().chain(&psi) {
            if t.len() != d || t.iter().any(|p| p.n_vars() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "each functional needs {d} polynomials in {n} variables"
                )));
            }
        }
        Ok(Self { n, d, phi, psi })
    }
}

/// Outcome of the fiber search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberPoint {
    /// A point satisfying every constraint.
    Sample(Vec<Rational>),
    /// Non-negative multipliers on the strict functionals, not all zero,
    /// whose combination lies in the span of the equality functionals.
    Empty { multipliers: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    /// `a · v' > 0` for each `a`.
    pub strict: Vec<Vec<Rational>>,
    /// `b · v' = 0` for each `b`.
    pub equalities: Vec<Vec<Rational>>,
    pub outcome: FiberPoint,
}

impl Fiber {
    pub fn contains(&self, p: &[Rational]) -> bool {
        self.strict.iter().all(|a| dot(a, p).is_positive()) && self.equalities.iter().all(|b| dot(b, p).is_zero())
    }

    /// Re-checks the sample or the emptiness certificate exactly.
    pub fn verify(&self) -> bool {
        match &self.outcome {
            FiberPoint::Sample(p) => self.contains(p),
            FiberPoint::Empty { multipliers } => {
                if multipliers.len() != self.strict.len()
                    || multipliers.iter().any(Signed::is_negative)
                    || multipliers.iter().all(Zero::is_zero)
                {
                    return false;
                }
                let d = self.strict.first().map_or(0, Vec::len);
                let mut combo = vec![Rational::zero(); d];
                for (l, a) in multipliers.iter().zip(&self.strict) {
                    for (c, x) in combo.iter_mut().zip(a) {
                        *c += l * x;
                    }
                }
                // combo must vanish on the kernel of the equalities
                kernel(&self.equalities, d).iter().all(|k| dot(&combo, k).is_zero())
            }
        }
    }
}

fn kernel(rows: &[Vec<Rational>], d: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return (0..d)
            .map(|i| (0..d).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
    }
    MatrixQ::from_rows(rows).expect("rows of equal length").nullspace()
}

/// Evaluates the functionals at `v` and decides the fiber.
pub fn fiber_of_stable_projection(spec: &StableProjectionSpec, v: &[Rational]) -> Result<Fiber> {
    if v.len() != spec.n {
        return Err(Error::DimensionMismatch(format!("base point of length {}, expected {}", v.len(), spec.n)));
    }
    let eval = |t: &Vec<PolynomialZ>| t.iter().map(|p| p.eval(v)).collect::<Vec<Rational>>();
    let strict: Vec<Vec<Rational>> = spec.phi.iter().map(eval).collect();
    let equalities: Vec<Vec<Rational>> = spec.psi.iter().map(eval).collect();
    let outcome = solve_cone(&strict, &equalities, spec.d);
    Ok(Fiber {
        strict,
        equalities,
        outcome,
    })
}

/// A strict homogeneous constraint `coeffs · y > 0` with its multipliers
/// over the original strict constraints.
#[derive(Clone)]
struct Row {
    coeffs: Vec<Rational>,
    mult: Vec<Rational>,
}

fn solve_cone(strict: &[Vec<Rational>], equalities: &[Vec<Rational>], d: usize) -> FiberPoint {
    let basis = kernel(equalities, d);
    let m = basis.len();
    let k = strict.len();
    // constraints in kernel coordinates y, where v' = Σ y_i basis_i
    let mut rows: Vec<Row> = strict
        .iter()
        .enumerate()
        .map(|(i, a)| Row {
            coeffs: basis.iter().map(|b| dot(a, b)).collect(),
            mult: (0..k).map(|j| if i == j { int(1) } else { int(0) }).collect(),
        })
        .collect();
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(m);
    for var in 0..m {
        if let Some(r) = rows.iter().find(|r| r.coeffs.iter().all(Zero::is_zero)) {
            return FiberPoint::Empty { multipliers: r.mult.clone() };
        }
        stages.push(rows.clone());
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            let c = r.coeffs[var].clone();
            if c.is_positive() {
                pos.push(scale_row(&r, &(int(1) / c)));
            } else if c.is_negative() {
                neg.push(scale_row(&r, &(int(-1) / c)));
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                rest.push(Row {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a + b).collect(),
                    mult: p.mult.iter().zip(&q.mult).map(|(a, b)| a + b).collect(),
                });
            }
        }
        rows = dedup(rest);
    }
    if let Some(r) = rows.first() {
        return FiberPoint::Empty { multipliers: r.mult.clone() };
    }
    // back substitution, last eliminated variable first
    let mut y = vec![Rational::zero(); m];
    for var in (0..m).rev() {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for r in &stages[var] {
            let c = &r.coeffs[var];
            if c.is_zero() {
                continue;
            }
            let rest: Rational = (var + 1..m).map(|j| &r.coeffs[j] * &y[j]).sum();
            let bound = -rest / c;
            if c.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        y[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / int(2),
            (Some(l), None) => l + int(1),
            (None, Some(h)) => h - int(1),
            (None, None) => Rational::zero(),
        };
    }
    let mut point = vec![Rational::zero(); d];
    for (yi, b) in y.iter().zip(&basis) {
        for (p, x) in point.iter_mut().zip(b) {
            *p += yi * x;
        }
    }
    FiberPoint::Sample(point)
}

fn scale_row(r: &Row, s: &Rational) -> Row {
    Row {
        coeffs: r.coeffs.iter().map(|c| c * s).collect(),
        mult: r.mult.iter().map(|c| c * s).collect(),
    }
}

/// Drops rows whose coefficient vectors repeat (keeping the first).
fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = BTreeSet::new();
    rows.into_iter().filter(|r| seen.insert(r.coeffs.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_spec(d: usize, phi: &[&[i64]], psi: &[&[i64]]) -> StableProjectionSpec {
        let conv = |t: &&[i64]| t.iter().map(|&c| PolynomialZ::constant(0, c)).collect::<Vec<_>>();
        StableProjectionSpec::new(0, d, phi.iter().map(conv).collect(), psi.iter().map(conv).collect()).unwrap()
    }

    #[test]
    fn empty_index_sets_give_the_origin() {
        let f = fiber_of_stable_projection(&constant_spec(3, &[], &[]), &[]).unwrap();
        assert_eq!(f.outcome, FiberPoint::Sample(vec![int(0); 3]));
        assert!(f.verify());
    }

    #[test]
    fn single_positive_functional() {
        let f = fiber_of_stable_projection(&constant_spec(1, &[&[1]], &[]), &[]).unwrap();
        assert_eq!(f.outcome, FiberPoint::Sample(vec![int(1)]));
    }

    #[test]
    fn opposite_functionals_are_empty() {
        let f = fiber_of_stable_projection(&constant_spec(2, &[&[1, 0], &[-1, 0]], &[]), &[]).unwrap();
        assert!(matches!(f.outcome, FiberPoint::Empty { .. }));
        assert!(f.verify());
    }

    #[test]
    fn equalities_restrict_the_cone() {
        // v'_1 > 0, v'_2 > 0, v'_1 - v'_2 = 0 → diagonal
        let f = fiber_of_stable_projection(&constant_spec(2, &[&[1, 0], &[0, 1]], &[&[1, -1]]), &[]).unwrap();
        assert!(f.verify());
        // v'_1 > 0, v'_2 > 0, v'_1 + v'_2 = 0 → empty
        let f = fiber_of_stable_projection(&constant_spec(2, &[&[1, 0], &[0, 1]], &[&[1, 1]]), &[]).unwrap();
        assert!(matches!(f.outcome, FiberPoint::Empty { .. }));
        assert!(f.verify());
    }

    #[test]
    fn polynomial_functionals() {
        // φ(v) = (v, 1 - v): fiber non-empty for every v
        let spec = StableProjectionSpec::new(
            1,
            2,
            vec![vec![PolynomialZ::parse("x1", 1).unwrap(), PolynomialZ::parse("1 - x1", 1).unwrap()]],
            vec![],
        )
        .unwrap();
        for v in [-3, 0, 1, 5] {
            assert!(fiber_of_stable_projection(&spec, &[int(v)]).unwrap().verify());
        }
    }
}
