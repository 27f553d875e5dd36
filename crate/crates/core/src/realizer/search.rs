use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::RealizationProblem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    /// Backtracking from a fixed initial step.
    Armijo { initial: f64 },
    /// Barzilai–Borwein step, safeguarded by backtracking.
    BarzilaiBorwein,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizerParams {
    pub max_iters: usize,
    pub restarts: usize,
    pub step: StepRule,
    /// Strict determinants must reach this value.
    pub margin: f64,
    /// Equality determinants must fall below this value.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for RealizerParams {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            restarts: 20,
            step: StepRule::BarzilaiBorwein,
            margin: 1e-3,
            tolerance: 1e-11,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub success: bool,
    /// Free coordinates (in the problem's units) of the success, or of the
    /// best iterate over all restarts.
    pub coords: Vec<f64>,
    /// Penalty value at `coords`.
    pub residual: f64,
    pub restart: usize,
    pub iterations: usize,
    /// Penalty per iteration of the reported restart.
    pub trace: Vec<f64>,
}

/// Penalty gradient descent with seeded restarts. Restart `r` draws its start
/// from stream `r` of a ChaCha generator keyed by the seed, so restarts are
/// independent of each other and of scheduling.
pub fn find_realization(prob: &RealizationProblem, params: &RealizerParams) -> SearchReport {
    let base = prob.base_variables();
    if base.is_empty() {
        return SearchReport {
            success: true,
            coords: base,
            residual: 0.0,
            restart: 0,
            iterations: 0,
            trace: vec![],
        };
    }
    let mut best: Option<SearchReport> = None;
    for r in 0..params.restarts.max(1) {
        let mut rng = ChaCha20Rng::seed_from_u64(params.seed);
        rng.set_stream(r as u64);
        let s = prob.scale();
        // work in normalized units
        let x0: Vec<f64> = base.iter().map(|b| b / s + rng.gen_range(-2.0..=2.0)).collect();
        let run = descend(prob, x0, params);
        let report = SearchReport {
            coords: run.x.iter().map(|v| v * s).collect(),
            restart: r,
            ..run.report
        };
        if report.success {
            return report;
        }
        if best.as_ref().is_none_or(|b| report.residual < b.residual) {
            best = Some(report);
        }
    }
    best.expect("at least one restart")
}

struct Run {
    x: Vec<f64>,
    report: SearchReport,
}

fn descend(prob: &RealizationProblem, mut x: Vec<f64>, params: &RealizerParams) -> Run {
    let s = prob.scale();
    let target = 2.0 * params.margin;
    let f = |y: &[f64]| {
        let u: Vec<f64> = y.iter().map(|v| v * s).collect();
        prob.penalty_gradient(&u, target)
    };
    let done = |y: &[f64]| {
        let u: Vec<f64> = y.iter().map(|v| v * s).collect();
        let (m, e) = prob.residuals(&u);
        m >= params.margin && e <= params.tolerance
    };
    let (mut fx, g_raw) = f(&x);
    // gradient in normalized units
    let mut g: Vec<f64> = g_raw.iter().map(|v| v * s).collect();
    let mut trace = vec![fx];
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut iterations = 0;
    let mut success = done(&x);
    while !success && iterations < params.max_iters {
        iterations += 1;
        let gg: f64 = g.iter().map(|v| v * v).sum();
        if gg == 0.0 || !gg.is_finite() {
            break;
        }
        let mut step = match (params.step, &prev) {
            (StepRule::Armijo { initial }, _) => initial,
            (StepRule::BarzilaiBorwein, Some((px, pg))) => {
                let sy: f64 = x.iter().zip(px).zip(g.iter().zip(pg)).map(|((a, b), (c, d))| (a - b) * (c - d)).sum();
                let ss: f64 = x.iter().zip(px).map(|(a, b)| (a - b) * (a - b)).sum();
                if sy > 0.0 { ss / sy } else { 1.0 }
            }
            (StepRule::BarzilaiBorwein, None) => 1.0 / gg.sqrt(),
        };
        let mut accepted = None;
        for _ in 0..60 {
            let y: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - step * b).collect();
            let (fy, gy) = f(&y);
            if fy <= fx - 1e-4 * step * gg {
                accepted = Some((y, fy, gy));
                break;
            }
            step *= 0.5;
        }
        let Some((y, fy, gy)) = accepted else {
            break;
        };
        prev = Some((std::mem::replace(&mut x, y), std::mem::replace(&mut g, gy.iter().map(|v| v * s).collect())));
        fx = fy;
        trace.push(fx);
        success = done(&x);
    }
    Run {
        report: SearchReport {
            success,
            coords: vec![],
            residual: fx,
            restart: 0,
            iterations,
            trace,
        },
        x,
    }
}
