//! A deterministic family of primary systems for measuring the Shor compiler.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;

use super::{shor_compile, PolynomialZ, SemialgebraicSystem};
use crate::numeric::{int, Rational};

/// Solution shared by every member of the family.
pub const FAMILY_SOLUTION: [i64; 3] = [2, 3, 5];

/// Exponent vectors in three variables by total degree, constant excluded.
fn monomials(count: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut deg = 1;
    while out.len() < count {
        for a in (0..=deg).rev() {
            for b in (0..=deg - a).rev() {
                out.push(vec![a, b, deg - a - b]);
            }
        }
        deg += 1;
    }
    out.truncate(count);
    out
}

/// A system with `terms` terms in total, solved by [`FAMILY_SOLUTION`]:
/// for `terms ≥ 2` one equation whose last term is a balancing constant,
/// for `terms = 1` the inequality `x1 > 0`.
pub fn shor_family_system(terms: usize) -> (SemialgebraicSystem, Vec<Rational>) {
    let x: Vec<Rational> = FAMILY_SOLUTION.iter().map(|&v| int(v)).collect();
    let mut sys = SemialgebraicSystem::new(3);
    if terms <= 1 {
        sys.strict.push(PolynomialZ::var(3, 0));
        return (sys, x);
    }
    let mut coeffs: Vec<(Vec<u32>, BigInt)> = monomials(terms - 1)
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let c = (k % 7) as i64 + 1;
            (m, BigInt::from(if k % 2 == 0 { c } else { -c }))
        })
        .collect();
    let poly = |cs: &[(Vec<u32>, BigInt)]| PolynomialZ::from_terms(3, cs.iter().cloned()).expect("three variables");
    let mut value = poly(&coeffs).eval(&x);
    if value == int(0) {
        // a vanishing balance would drop a term; double the last coefficient
        let last = coeffs.last_mut().expect("at least one monomial");
        last.1 *= 2;
        value = poly(&coeffs).eval(&x);
    }
    coeffs.push((vec![0, 0, 0], -value.to_integer()));
    sys.equations.push(poly(&coeffs));
    (sys, x)
}

/// Least-squares polynomial fit of `ys` against `xs`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialFit {
    /// Coefficients by increasing degree.
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
}

pub fn fit_polynomial(xs: &[f64], ys: &[f64], degree: usize) -> PolynomialFit {
    let a = DMatrix::from_fn(xs.len(), degree + 1, |i, j| xs[i].powi(j as i32));
    let b = DVector::from_column_slice(ys);
    let coef = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-12)
        .expect("svd with both factors");
    let fitted = &a * &coef;
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean).powi(2)).sum();
    let ss_res: f64 = ys.iter().zip(fitted.iter()).map(|(y, f)| (y - f).powi(2)).sum();
    PolynomialFit {
        coefficients: coef.iter().copied().collect(),
        r_squared: if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot },
    }
}

/// Output size of the compiler over the family with `1..=max_terms` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    /// `(input term count, output variables + constraints)`.
    pub samples: Vec<(usize, usize)>,
    pub quadratic: PolynomialFit,
    /// Slope of the log-log least-squares line.
    pub exponent: f64,
}

pub fn shor_growth(max_terms: usize) -> GrowthReport {
    let samples: Vec<(usize, usize)> = (1..=max_terms)
        .map(|t| {
            let (sys, _) = shor_family_system(t);
            let c = shor_compile(&sys, None).expect("family systems are primary");
            (sys.term_count(), c.size())
        })
        .collect();
    let xs: Vec<f64> = samples.iter().map(|s| s.0 as f64).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1 as f64).collect();
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    GrowthReport {
        quadratic: fit_polynomial(&xs, &ys, 2),
        exponent: fit_polynomial(&lx, &ly, 1).coefficients[1],
        samples,
    }
}
