//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::time::{Duration, Instant};

use common::{diamond_holds, euler_holds, planar_oracle, three_connected_oracle};
use polyreal::constructions::{connected_sum, lawrence_extension, lawrence_polytope, pascal_5polytope, reconstruct_point};
use polyreal::corpus;
use polyreal::lattice::{convex_hull, face_lattice, find_isomorphism, is_realization, FaceLattice, Graph};
use polyreal::numeric::{collinear, frac, int, PointConfiguration, Rational};
use polyreal::realizer::{certify, find_realization, gradient_check, tangent_dimension, RealizationProblem, RealizerParams};
use polyreal::semialgebra::{default_basis, emit_realization_system, shor_compile, shor_family_system, shor_growth, shor_solution_transport};
use polyreal::steinitz::{is_3polytopal, is_planar, realize_3polytope, Multigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lattice_of(c: &PointConfiguration) -> FaceLattice {
    face_lattice(&convex_hull(c).expect("hull")).expect("lattice")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn pascal() -> Outcome {
    let start = Instant::now();
    let (config, l) = pascal_5polytope().map_err(|e| e.to_string())?;
    let hull = convex_hull(&config).map_err(|e| e.to_string())?;
    ensure(hull.dim == 5 && l.dim() == 5, || format!("dimension {}", hull.dim))?;
    ensure(hull.vertex_indices.len() == 12 && l.n_vertices() == 12, || format!("{} vertices", hull.vertex_indices.len()))?;
    let idx = |labels: &[String]| -> Vec<usize> { labels.iter().map(|s| config.index_of(s).expect("label")).collect() };
    let hexagon = idx(&(1..=6).map(|i| i.to_string()).collect::<Vec<_>>());
    ensure(l.rank_of(&hexagon) == Some(2), || "hexagon is not a 2-face".into())?;
    let lifts = idx(&["7", "8", "9"].iter().flat_map(|k| [format!("{k}^1"), format!("{k}^2")]).collect::<Vec<_>>());
    ensure(l.rank_of(&lifts) == Some(4), || "extension points are not a facet".into())?;
    within(start, Duration::from_secs(10), "pipeline")?;
    Ok(format!("5-polytope, 12 vertices, f-vector {:?}, {:.2?}", l.f_vector(), start.elapsed()))
}

fn generic_planar(n: usize, rng: &mut ChaCha8Rng) -> PointConfiguration {
    loop {
        let pts: Vec<[Rational; 2]> = (0..n).map(|_| [int(rng.gen_range(-30..=30)), int(rng.gen_range(-30..=30))]).collect();
        let generic = (0..n).all(|a| {
            (a + 1..n).all(|b| pts[a] != pts[b] && (b + 1..n).all(|c| !collinear(&[pts[a].clone(), pts[b].clone(), pts[c].clone()])))
        });
        if generic {
            return PointConfiguration::from_points(2, pts.into_iter().map(|p| p.to_vec()).collect()).unwrap();
        }
    }
}

fn lawrence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut shapes = Vec::new();
    for n in 3..=7 {
        for _ in 0..2 {
            let c = generic_planar(n, &mut rng);
            let (e, hull, l) = lawrence_polytope(&c).map_err(|e| format!("n = {n}: {e}"))?;
            ensure(hull.dim == n + 2 && l.dim() == (n + 2) as i32, || format!("n = {n}: dimension {}", hull.dim))?;
            ensure(hull.vertex_indices.len() == 2 * n && e.len() == 2 * n, || {
                format!("n = {n}: {} vertices", hull.vertex_indices.len())
            })?;
        }
        shapes.push(format!("{n}->({}, {})", n + 2, 2 * n));
    }
    within(start, Duration::from_secs(30), "Lawrence polytopes")?;
    Ok(format!("{} in {:.2?}", shapes.join(" "), start.elapsed()))
}

/// Facet pairs of equal combinatorial type, matched by a lattice isomorphism.
fn gluing_correspondence(l1: &FaceLattice, f1: &[usize], l2: &FaceLattice, f2: &[usize]) -> Option<Vec<usize>> {
    let (s1, v1) = l1.face_lattice_of(f1).ok()?;
    let (s2, v2) = l2.face_lattice_of(f2).ok()?;
    let perm = find_isomorphism(&s1, &s2)?;
    Some(f1.iter().map(|v| v2[perm[v1.binary_search(v).unwrap()]]).collect())
}

fn connected_sums() -> Outcome {
    let polys = corpus::rational_3polytopes();
    let mut glued = 0;
    let mut skipped = Vec::new();
    for (i, (n1, p1)) in polys.iter().enumerate() {
        for (n2, p2) in &polys[i..] {
            let (l1, l2) = (lattice_of(p1), lattice_of(p2));
            for size in [3, 4] {
                let (Some(f1), Some(f2)) = (
                    l1.facets().into_iter().find(|f| f.len() == size),
                    l2.facets().into_iter().find(|f| f.len() == size),
                ) else {
                    continue;
                };
                let corr = gluing_correspondence(&l1, &f1, &l2, &f2).ok_or(format!("{n1}/{n2}: facets differ"))?;
                let s = match connected_sum(p1, &f1, p2, &f2, &corr) {
                    Ok(s) => s,
                    Err(e) => {
                        skipped.push(format!("{n1}+{n2} ({size}-gon): {e}"));
                        continue;
                    }
                };
                let q = s.lattice.facets().len();
                let (a, b) = (l1.facets().len(), l2.facets().len());
                ensure(q == a + b - 2, || format!("{n1}+{n2}: {q} facets, expected {}", a + b - 2))?;
                let (sub, verts) = l1.face_lattice_of(&f1).unwrap();
                for face in sub.faces().iter().filter(|f| f.rank >= 0 && f.rank < 2) {
                    let g: Vec<usize> = face.vertices.iter().map(|&v| verts[v]).collect();
                    ensure(s.lattice.contains(&g), || format!("{n1}+{n2}: boundary face {g:?} lost"))?;
                }
                ensure(is_realization(&s.config, &s.lattice), || format!("{n1}+{n2}: not a realization"))?;
                glued += 1;
            }
        }
    }
    ensure(glued >= 10, || format!("only {glued} gluings; skipped {skipped:?}"))?;
    Ok(format!("{glued} gluings, {} skipped", skipped.len()))
}

fn embedding_faces(g: &Graph) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> = is_planar(g)
        .embedding
        .expect("planar")
        .faces
        .into_iter()
        .map(|mut f| {
            f.sort_unstable();
            f
        })
        .collect();
    faces.sort();
    faces
}

fn steinitz() -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<(String, Graph)> =
        corpus::graph_corpus().into_iter().filter(|(_, g)| g.n() <= 10).map(|(n, g)| (n.to_string(), g)).collect();
    graphs.extend(corpus::random_polytopal_graphs(10, 4).into_iter().enumerate().map(|(k, g)| (format!("random-{k}"), g)));
    for (name, g) in &graphs {
        let expected = planar_oracle(g) && three_connected_oracle(g);
        ensure(is_3polytopal(&Multigraph::from(g)) == expected, || format!("{name}: verdict differs from brute force"))?;
    }
    let named = [
        ("K4", corpus::complete_graph(4)),
        ("prism", corpus::prism_graph(3)),
        ("cube", corpus::cube_graph()),
        ("dodecahedron", corpus::dodecahedron_graph()),
    ];
    for (name, g) in &named {
        let c = realize_3polytope(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.is_integral(), || format!("{name}: non-integral coordinates"))?;
        let l = lattice_of(&c);
        ensure(l.edge_graph() == *g, || format!("{name}: hull edge graph differs"))?;
        let mut facets = l.facets();
        facets.sort();
        ensure(facets == embedding_faces(g), || format!("{name}: hull facets differ from embedding faces"))?;
    }
    within(start, Duration::from_secs(60), "Steinitz suite")?;
    Ok(format!("{} graphs against brute force, 4 integer realizations, {:.2?}", graphs.len(), start.elapsed()))
}

fn dimension_formula() -> Outcome {
    let mut seen = Vec::new();
    for (name, c) in corpus::rational_3polytopes() {
        let l = lattice_of(&c);
        let e = l.f_vector()[1];
        let prob = RealizationProblem::with_default_basis(l, c.clone()).map_err(|e| e.to_string())?;
        let t = tangent_dimension(&c, &prob, 1e-8);
        ensure(t + 6 == e, || format!("{name}: tangent dimension {t}, e - 6 = {}", e as i64 - 6))?;
        seen.push(format!("{name} {t}"));
    }
    for required in ["tetrahedron 0", "triangular-prism 3", "cube 6", "octahedron 6"] {
        ensure(seen.iter().any(|s| s == required), || format!("missing {required}"))?;
    }
    Ok(seen.join(", "))
}

fn system_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut corpus_configs: Vec<(String, PointConfiguration)> =
        corpus::rational_3polytopes().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    corpus_configs.push(("square".into(), corpus::cube(2)));
    corpus_configs.push(("cross-polytope-4".into(), corpus::cross_polytope(4)));
    let mut total = 0;
    for (name, base) in &corpus_configs {
        let l = lattice_of(base);
        let sys = emit_realization_system(&l, &default_basis(base), base).map_err(|e| e.to_string())?;
        ensure(sys.primary(), || format!("{name}: system is not primary"))?;
        let a = common::membership_trials(base, &l, 200, &mut rng);
        ensure(a.mismatches.is_empty(), || format!("{name}: disagreement on trials {:?}", a.mismatches))?;
        ensure(a.positive > 0, || format!("{name}: no realizations sampled"))?;
        total += a.positive + a.negative;
    }
    Ok(format!("{} polytopes, {total} samples, all agree", corpus_configs.len()))
}

fn shor() -> Outcome {
    for terms in 1..=50 {
        let (sys, x) = shor_family_system(terms);
        ensure(sys.term_count() == terms, || format!("family member {terms} has {} terms", sys.term_count()))?;
        let c = shor_compile(&sys, None).map_err(|e| format!("{terms} terms: {e}"))?;
        ensure(c.normal_form.index_discipline(), || format!("{terms} terms: index discipline"))?;
        let y = shor_solution_transport(&c, &sys, &x).map_err(|e| format!("{terms} terms: {e}"))?;
        ensure(c.normal_form.constraints.iter().all(|k| k.holds(&y)), || format!("{terms} terms: constraint violated"))?;
    }
    let g = shor_growth(50);
    // independent least-squares fit of size against a quadratic in the term count
    let (xs, ys): (Vec<f64>, Vec<f64>) = g.samples.iter().map(|&(t, s)| (t as f64, s as f64)).unzip();
    let r2 = quadratic_r2(&xs, &ys);
    ensure(r2 >= 0.99, || format!("R² = {r2:.4}"))?;
    ensure((r2 - g.quadratic.r_squared).abs() < 1e-6, || format!("library R² {} vs {r2}", g.quadratic.r_squared))?;
    Ok(format!("50 systems, quadratic fit R² = {r2:.4}, growth exponent {:.2}", g.exponent))
}

/// R² of the least-squares quadratic, from the 3×3 normal equations.
fn quadratic_r2(xs: &[f64], ys: &[f64]) -> f64 {
    let mut a = [[0.0f64; 4]; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let p = [1.0, x, x * x];
        for r in 0..3 {
            for c in 0..3 {
                a[r][c] += p[r] * p[c];
            }
            a[r][3] += p[r] * y;
        }
    }
    for c in 0..3 {
        let piv = (c..3).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, piv);
        for r in 0..3 {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..4 {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    let coef: Vec<f64> = (0..3).map(|r| a[r][3] / a[r][r]).collect();
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean).powi(2)).sum();
    let ss_res: f64 = xs.iter().zip(ys).map(|(&x, &y)| (y - coef[0] - coef[1] * x - coef[2] * x * x).powi(2)).sum();
    1.0 - ss_res / ss_tot
}

fn realizer() -> Outcome {
    let mut summary = Vec::new();
    for (name, base) in [("cube", corpus::cube(3)), ("octahedron", corpus::cross_polytope(3))] {
        let prob = RealizationProblem::with_default_basis(lattice_of(&base), base).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x0 = prob.base_variables();
        for _ in 0..100 {
            let x: Vec<f64> = x0.iter().map(|b| b + prob.scale() * rng.gen_range(-0.3..0.3)).collect();
            let err = gradient_check(&prob, &x, 1e-6 * prob.scale());
            ensure(err < 1e-5, || format!("{name}: gradient relative error {err:e}"))?;
        }
        let mut ok = 0;
        let mut slowest = Duration::ZERO;
        for seed in 0..10 {
            let start = Instant::now();
            let r = find_realization(&prob, &RealizerParams { seed, ..Default::default() });
            let certified = r.success && certify(&r.coords, &prob, 1_000_000).accepted().is_some_and(|q| is_realization(q, prob.lattice()));
            let t = start.elapsed();
            ensure(t < Duration::from_secs(30), || format!("{name} seed {seed}: {t:.2?}"))?;
            slowest = slowest.max(t);
            ok += certified as usize;
        }
        ensure(ok >= 8, || format!("{name}: {ok}/10 seeds certified"))?;
        summary.push(format!("{name} {ok}/10 (slowest {slowest:.2?})"));
    }
    Ok(format!("{}; gradient checks < 1e-5", summary.join(", ")))
}

fn invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut configs: Vec<PointConfiguration> = corpus::rational_3polytopes().into_iter().map(|(_, c)| c).collect();
    for d in 2..=6 {
        configs.push(corpus::simplex(d));
        configs.push(corpus::cross_polytope(d));
        if d <= 5 {
            configs.push(corpus::cube(d));
        }
        for _ in 0..4 {
            let n = rng.gen_range(d + 2..=d + 6);
            let pts: Vec<Vec<Rational>> = (0..n).map(|_| (0..d).map(|_| int(rng.gen_range(-6..=6))).collect()).collect();
            let c = PointConfiguration::from_points(d, pts).unwrap();
            if polyreal::numeric::affine_dim(&c).unwrap() == d {
                configs.push(c);
            }
        }
    }
    configs.push(pascal_5polytope().unwrap().0);
    for c in &configs {
        let l = lattice_of(c);
        ensure(euler_holds(&l), || format!("Euler fails for f-vector {:?}", l.f_vector()))?;
        ensure(diamond_holds(&l), || format!("diamond fails for f-vector {:?}", l.f_vector()))?;
    }
    let mut round_trips = 0;
    for d in 2..=3 {
        for _ in 0..20 {
            let n = rng.gen_range(1..=6);
            let pts: Vec<Vec<Rational>> =
                (0..n).map(|_| (0..d).map(|_| frac(rng.gen_range(-20..=20), rng.gen_range(1..=5))).collect()).collect();
            let c = PointConfiguration::from_points(d, pts).unwrap();
            let i = rng.gen_range(0..n);
            let h1 = frac(rng.gen_range(1..=9), rng.gen_range(1..=4));
            let h2 = &h1 + frac(rng.gen_range(1..=9), rng.gen_range(1..=4));
            let e = lawrence_extension(&c, i, &h1, &h2).map_err(|e| e.to_string())?;
            let l = &c.labels()[i];
            let back = reconstruct_point(&e, &format!("{l}^1"), &format!("{l}^2")).map_err(|e| e.to_string())?;
            ensure(back.as_slice() == c.point(i), || format!("reconstructed {back:?}"))?;
            round_trips += 1;
        }
    }
    let transforms = common::projective_scale_trials(&mut rng, 100)?;
    Ok(format!(
        "{} hulls (d <= 6) satisfy Euler and diamond; {round_trips} Lawrence round trips; {transforms} projective transforms",
        configs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Pascal 5-polytope", pascal),
        ("Lawrence polytope identities", lawrence),
        ("connected-sum facet identity", connected_sums),
        ("Steinitz suite", steinitz),
        ("dimension formula", dimension_formula),
        ("realization-system agreement", system_agreement),
        ("Shor compiler", shor),
        ("numerical realizer", realizer),
        ("invariant suites", invariants),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
