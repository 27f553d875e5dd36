use num_traits::Zero;

use super::{evaluate_membership, PolynomialZ, SemialgebraicSystem};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// `num / den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: PolynomialZ,
    pub den: PolynomialZ,
}

impl RationalFunction {
    pub fn new(num: PolynomialZ, den: PolynomialZ) -> Result<Self> {
        if num.n_vars() != den.n_vars() {
            return Err(Error::DimensionMismatch("numerator and denominator variable counts differ".into()));
        }
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        Ok(Self { num, den })
    }

    pub fn polynomial(p: PolynomialZ) -> Self {
        let n = p.n_vars();
        Self {
            num: p,
            den: PolynomialZ::constant(n, 1),
        }
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, x: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleOutcome {
    Pass,
    /// The sample is not in the set; nothing was checked.
    NotMember,
    /// `g(f(x))` differs from `x`.
    Mismatch { image: Vec<Rational> },
    /// A denominator of `f` (stage 1) or `g` (stage 2) vanishes.
    DenominatorVanishes { stage: u8, component: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMapReport {
    pub outcomes: Vec<SampleOutcome>,
}

impl RationalMapReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| **o == SampleOutcome::Pass).count()
    }

    /// At least one member sample and no failures.
    pub fn all_pass(&self) -> bool {
        self.passed() > 0
            && self
                .outcomes
                .iter()
                .all(|o| matches!(o, SampleOutcome::Pass | SampleOutcome::NotMember))
    }
}

fn apply(map: &[RationalFunction], x: &[Rational], stage: u8) -> std::result::Result<Vec<Rational>, SampleOutcome> {
    map.iter()
        .enumerate()
        .map(|(i, f)| f.eval(x).ok_or(SampleOutcome::DenominatorVanishes { stage, component: i }))
        .collect()
}

/// Checks `g(f(x)) = x` exactly at every sample lying in `sys_v`. A sanity
/// check on samples, not a proof that `f` is a rational equivalence.
pub fn rational_map_check(
    f: &[RationalFunction],
    g: &[RationalFunction],
    sys_v: &SemialgebraicSystem,
    samples: &[Vec<Rational>],
) -> Result<RationalMapReport> {
    if f.iter().any(|c| c.num.n_vars() != sys_v.n_vars) || g.len() != sys_v.n_vars {
        return Err(Error::DimensionMismatch("maps do not match the system's variables".into()));
    }
    if g.iter().any(|c| c.num.n_vars() != f.len()) {
        return Err(Error::DimensionMismatch("inverse map does not take the image coordinates".into()));
    }
    let mut outcomes = Vec::with_capacity(samples.len());
    for x in samples {
        if !evaluate_membership(sys_v, x)? {
            outcomes.push(SampleOutcome::NotMember);
            continue;
        }
        let outcome = apply(f, x, 1).and_then(|y| apply(g, &y, 2)).map_or_else(
            |e| e,
            |back| {
                if back == *x {
                    SampleOutcome::Pass
                } else {
                    SampleOutcome::Mismatch { image: back }
                }
            },
        );
        outcomes.push(outcome);
    }
    Ok(RationalMapReport { outcomes })
}
