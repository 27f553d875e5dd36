use polyreal::corpus;
use polyreal::lattice::{convex_hull, face_lattice, is_realization};
use polyreal::numeric::{to_f64, PointConfiguration};
use polyreal::realizer::*;
use polyreal::semialgebra::{emit_realization_system, evaluate_membership, realization_variables};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn problem(c: PointConfiguration) -> RealizationProblem {
    let l = face_lattice(&convex_hull(&c).unwrap()).unwrap();
    RealizationProblem::with_default_basis(l, c).unwrap()
}

fn problems() -> Vec<(String, RealizationProblem)> {
    let mut out: Vec<(String, RealizationProblem)> = corpus::rational_3polytopes()
        .into_iter()
        .map(|(n, c)| (n.to_string(), problem(c)))
        .collect();
    out.push(("square".into(), problem(corpus::cube(2))));
    out.push(("cross-polytope-4".into(), problem(corpus::cross_polytope(4))));
    out
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[test]
fn penalty_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, prob) in problems() {
        let base = prob.base_variables();
        if base.is_empty() {
            continue;
        }
        let s = prob.scale();
        for _ in 0..100 {
            let x: Vec<f64> = base.iter().map(|b| b + s * rng.gen_range(-0.3..0.3)).collect();
            let target = 2.0 * 1e-3;
            let (f, g) = prob.penalty_gradient(&x, target);
            assert!((f - prob.penalty(&x, target)).abs() <= 1e-12 * (1.0 + f));
            let h = 1e-6 * s;
            let fd: Vec<f64> = (0..x.len())
                .map(|k| {
                    let (mut xp, mut xm) = (x.clone(), x.clone());
                    xp[k] += h;
                    xm[k] -= h;
                    (prob.penalty(&xp, target) - prob.penalty(&xm, target)) / (2.0 * h)
                })
                .collect();
            let diff: Vec<f64> = g.iter().zip(&fd).map(|(a, b)| a - b).collect();
            let scale = norm(&g).max(norm(&fd));
            if scale > 1e-8 {
                assert!(norm(&diff) / scale < 1e-5, "{name}: {}", norm(&diff) / scale);
            }
            assert!(gradient_check(&prob, &x, h) < 1e-5, "{name}");
        }
    }
}

#[test]
fn normalized_determinants_match_exact_values() {
    for (name, prob) in problems() {
        let x = prob.base_variables();
        let d = prob.dim() as i32;
        for c in prob.constraints() {
            let exact = to_f64(&prob.exact_det(c, prob.base())) / prob.scale().powi(d);
            let v = prob.det_value(c, &x);
            assert!((v - exact).abs() <= 1e-12 * (1.0 + exact.abs()), "{name}: {v} vs {exact}");
            match c.kind {
                ConstraintKind::Equal => assert!(exact == 0.0),
                ConstraintKind::Strict(s) => assert!(s as f64 * exact > 0.0),
            }
        }
    }
}

#[test]
fn searches_are_reproducible() {
    let prob = problem(corpus::cube(3));
    for seed in [0, 1, 99] {
        let p = RealizerParams { seed, ..Default::default() };
        assert_eq!(find_realization(&prob, &p), find_realization(&prob, &p));
    }
    let a = find_realization(&prob, &RealizerParams { seed: 1, ..Default::default() });
    let b = find_realization(&prob, &RealizerParams { seed: 2, ..Default::default() });
    assert_ne!(a.coords, b.coords);
}

#[test]
fn certified_outputs_are_exact_realizations() {
    for (name, prob) in problems() {
        let sys = emit_realization_system(prob.lattice(), prob.basis(), prob.base()).unwrap();
        for seed in 0..3 {
            let params = RealizerParams { seed, ..Default::default() };
            let r = find_realization(&prob, &params);
            if !r.success {
                continue;
            }
            let (margin, eq) = prob.residuals(&r.coords);
            assert!(margin >= params.margin && eq <= params.tolerance, "{name}/{seed}: {margin} {eq}");
            if let Certification::Accepted(q) = certify(&r.coords, &prob, 1_000_000) {
                assert!(is_realization(&q, prob.lattice()), "{name}/{seed}");
                let x = realization_variables(&q, prob.basis());
                assert!(evaluate_membership(&sys, &x).unwrap(), "{name}/{seed}");
                for &b in prob.basis() {
                    assert_eq!(q.point(b), prob.base().point(b));
                }
                assert!(violated_condition(&prob, &q).is_none());
            }
        }
    }
}

#[test]
fn rejections_name_a_facet() {
    let prob = problem(corpus::cube(3));
    let mut x = prob.base_variables();
    // push one free vertex far through the opposite side
    let k = x.len() - 3;
    for c in &mut x[k..k + 3] {
        *c = -*c * 5.0;
    }
    match certify(&x, &prob, 1000) {
        Certification::Rejected(r) => {
            let f = r.facet.expect("a facet is named");
            assert!(prob.facets().contains(&f));
        }
        Certification::Accepted(q) => panic!("accepted {q:?}"),
    }
}
