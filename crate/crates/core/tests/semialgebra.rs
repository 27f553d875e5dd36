mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use polyreal::corpus;
use polyreal::lattice::{convex_hull, face_lattice, is_realization, FaceLattice};
use polyreal::numeric::{frac, PointConfiguration, Rational};
use polyreal::semialgebra::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lattice_of(c: &PointConfiguration) -> FaceLattice {
    face_lattice(&convex_hull(c).unwrap()).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng, mag: i64, den: i64) -> Rational {
    frac(rng.gen_range(-mag..=mag), rng.gen_range(1..=den))
}

fn membership_corpus() -> Vec<(String, PointConfiguration)> {
    let mut out: Vec<(String, PointConfiguration)> =
        corpus::rational_3polytopes().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    out.push(("square".into(), corpus::cube(2)));
    out.push(("pentagon".into(), corpus::polygon(5)));
    out.push(("simplex-4".into(), corpus::simplex(4)));
    out.push(("cross-polytope-4".into(), corpus::cross_polytope(4)));
    out.push(("cube-4".into(), corpus::cube(4)));
    out
}

#[test]
fn membership_agrees_with_hull_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, base) in membership_corpus() {
        let l = lattice_of(&base);
        let basis = default_basis(&base);
        let sys = emit_realization_system(&l, &basis, &base).unwrap();
        assert!(sys.primary(), "{name}");
        assert!(evaluate_membership(&sys, &realization_variables(&base, &basis)).unwrap(), "{name}: base");
        let a = common::membership_trials(&base, &l, 200, &mut rng);
        assert!(a.mismatches.is_empty(), "{name}: trials {:?}", a.mismatches);
        assert!(a.positive > 0, "{name}: no positive samples");
        if sys.n_vars > 0 {
            assert!(a.negative > 0, "{name}: no negative samples");
        }
    }
}

#[test]
fn variables_rebuild_the_configuration() {
    let base = corpus::cube(3);
    let basis = default_basis(&base);
    let x = realization_variables(&base, &basis);
    assert_eq!(x.len(), (base.len() - 4) * 3);
    assert_eq!(configuration_from_variables(&base, &basis, &x).unwrap(), base);
}

#[test]
fn pascal_polytope_system_agrees() {
    let (base, l) = polyreal::constructions::pascal_5polytope().unwrap();
    let basis = default_basis(&base);
    let sys = emit_realization_system(&l, &basis, &base).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let free = free_vertices(base.len(), &basis);
    for _ in 0..20 {
        let mut points = base.points().to_vec();
        let v = free[rng.gen_range(0..free.len())];
        points[v][rng.gen_range(0..5)] += random_rational(&mut rng, 1, 50);
        let q = PointConfiguration::new(5, points, base.labels().to_vec()).unwrap();
        let x = realization_variables(&q, &basis);
        assert_eq!(evaluate_membership(&sys, &x).unwrap(), is_realization(&q, &l));
    }
}

#[test]
fn projective_scale_is_invariant_under_transforms() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    assert_eq!(common::projective_scale_trials(&mut rng, 100), Ok(100));
}

#[test]
fn bad_bases_are_rejected() {
    let sq = corpus::cube(2);
    let l = lattice_of(&sq);
    assert!(emit_realization_system(&l, &[0, 1], &sq).is_err());
    let c = corpus::cube(3);
    // four vertices of one facet are affinely dependent
    let facet = &lattice_of(&c).facets()[0];
    assert!(emit_realization_system(&lattice_of(&c), &facet[..4], &c).is_err());
}

fn polynomial(n: usize) -> impl Strategy<Value = PolynomialZ> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, n), -4i64..=4), 0..5).prop_map(move |terms| {
        PolynomialZ::from_terms(n, terms.into_iter().map(|(m, c)| (m, BigInt::from(c)))).unwrap()
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-9i64..=9, 1i64..=4), n).prop_map(|v| v.into_iter().map(|(a, b)| frac(a, b)).collect())
}

/// A primary system with the given solution, all of whose coordinates exceed 1.
fn solved_system() -> impl Strategy<Value = (SemialgebraicSystem, Vec<Rational>)> {
    (1usize..=3).prop_flat_map(|n| {
        let x = proptest::collection::vec((5i64..=14, 1i64..=3), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| frac(a.max(b + 1), b)).collect::<Vec<_>>());
        (x, proptest::collection::vec(polynomial(n), 0..3), proptest::collection::vec(polynomial(n), 0..3)).prop_map(
            move |(x, eqs, strict)| {
                let mut sys = SemialgebraicSystem::new(n);
                for p in eqs {
                    let v = p.eval(&x);
                    let shifted = &p.scale(v.denom()) - &PolynomialZ::constant(n, v.numer().clone());
                    if !shifted.is_zero() {
                        sys.equations.push(shifted);
                    }
                }
                for p in strict {
                    let v = p.eval(&x);
                    if v.is_positive() {
                        sys.strict.push(p);
                    } else if v.is_negative() {
                        sys.strict.push(-&p);
                    }
                }
                (sys, x)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polynomial_text_round_trips(p in polynomial(3)) {
        let text = p.to_string();
        prop_assert_eq!(PolynomialZ::parse(&text, 3).unwrap(), p);
    }

    #[test]
    fn polynomial_ring_operations_commute_with_evaluation(p in polynomial(2), q in polynomial(2), x in point(2)) {
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        let (pos, neg) = p.split_signs();
        prop_assert_eq!(&pos - &neg, p.clone());
        prop_assert!(pos.terms().values().chain(neg.terms().values()).all(|c| c.is_positive()));
    }

    #[test]
    fn derivative_matches_symmetric_difference(p in polynomial(2), x in point(2)) {
        // p(x + t e0) is a polynomial in t; its linear coefficient is the derivative
        let t = |h: Rational| {
            let mut y = x.clone();
            y[0] += h;
            p.eval(&y)
        };
        let (h1, h2) = (frac(1, 1000), frac(-1, 1000));
        // exponents are at most 2, so the symmetric quotient is exact
        let quotient = (t(h1.clone()) - t(h2.clone())) / (h1 - h2);
        prop_assert_eq!(quotient, p.derivative(0).eval(&x));
    }

    #[test]
    fn shor_output_obeys_index_discipline_and_transports((sys, x) in solved_system()) {
        prop_assert!(evaluate_membership(&sys, &x).unwrap());
        let c = shor_compile(&sys, None).unwrap();
        prop_assert!(c.normal_form.index_discipline());
        prop_assert!(c.feasible(), "{:?}", c.contradictions);
        let y = shor_solution_transport(&c, &sys, &x).unwrap();
        prop_assert_eq!(y.len(), c.normal_form.n);
        prop_assert!(y[0].is_one());
        for (v, &k) in c.var_map.iter().enumerate() {
            prop_assert_eq!(&y[k - 1], &x[v]);
        }
        for con in &c.normal_form.constraints {
            prop_assert!(con.holds(&y));
        }
        for &(a, b) in &c.order {
            prop_assert!(y[a - 1] < y[b - 1]);
        }
        if c.completeness == Completeness::Total {
            prop_assert!(y.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn shor_rejects_non_solutions((sys, x) in solved_system(), bump in 1i64..5) {
        let c = shor_compile(&sys, None).unwrap();
        let mut z = x.clone();
        z[0] += frac(bump, 7);
        if !evaluate_membership(&sys, &z).unwrap() {
            prop_assert!(shor_solution_transport(&c, &sys, &z).is_err());
        }
    }
}
