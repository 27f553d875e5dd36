use std::path::Path;

use serde_json::{json, Value};

use polyreal::constructions::{
    connected_sum, flatness_class, lawrence_extension, lawrence_polytope, pascal_polytope, reconstruct_point,
};
use polyreal::format::{self, Document, Report, ShorDocument};
use polyreal::lattice::{convex_hull, face_lattice, is_realization, FaceLattice, HullResult};
use polyreal::numeric::{int, parse_rational, rational_to_string, PointConfiguration, Rational};
use polyreal::realizer::{
    certify, find_realization, tangent_dimension, Certification, RealizationProblem, RealizerParams,
};
use polyreal::semialgebra::{default_basis, emit_realization_system, shor_compile, shor_growth, Completeness};
use polyreal::steinitz::{polytopal_verdict, realize_3polytope};

use crate::output::{context, parse, write, CliError, Status};
use crate::Global;

fn coords(p: &[Rational]) -> String {
    join(p)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn finish(g: &Global, report: &Report) -> Result<(), CliError> {
    write(g, &report.command, &Document::Report(report.clone()))?;
    Ok(())
}

/// Hull and lattice of a configuration whose points must all be vertices.
fn polytope(config: &PointConfiguration) -> Result<(HullResult, FaceLattice), CliError> {
    let hull = context("hull", convex_hull(config))?;
    if hull.vertex_indices.len() != config.len() {
        let extra: Vec<&str> = (0..config.len())
            .filter(|i| !hull.vertex_indices.contains(i))
            .map(|i| config.labels()[i].as_str())
            .collect();
        return Err(CliError::precondition(format!("points {extra:?} are not vertices")));
    }
    let lattice = context("hull", face_lattice(&hull))?;
    Ok((hull, lattice))
}

pub fn hull(g: &Global, input: &Path) -> Result<Status, CliError> {
    let config = parse(input, format::parse_points)?;
    let hull = context("hull", convex_hull(&config))?;
    let lattice = context("hull", face_lattice(&hull))?;
    let labels = |idx: &[usize]| -> Vec<String> { idx.iter().map(|&i| config.labels()[i].clone()).collect() };
    let non_vertices: Vec<usize> = (0..config.len()).filter(|i| !hull.vertex_indices.contains(i)).collect();

    println!("dim {}", hull.dim);
    println!("{} vertices", hull.vertex_indices.len());
    println!("f-vector: {}", join(&lattice.f_vector()));
    if !non_vertices.is_empty() {
        println!("non-vertices: {}", labels(&non_vertices).join(" "));
    }

    let mut report = Report::new("hull", g.seed);
    report.push("dim", hull.dim);
    report.push("vertices", labels(&hull.vertex_indices));
    report.push("non_vertices", labels(&non_vertices));
    report.push("f_vector", lattice.f_vector());
    let facets: Vec<Value> = hull
        .facets
        .iter()
        .map(|f| {
            json!({
                "vertices": labels(&f.vertices),
                "normal": f.hyperplane.normal.iter().map(rational_to_string).collect::<Vec<_>>(),
                "offset": rational_to_string(&f.hyperplane.offset),
            })
        })
        .collect();
    report.push("facets", facets);
    write(g, "hull", &Document::Lattice(lattice))?;
    finish(g, &report)?;
    Ok(Status::Ok)
}

pub fn lattice(g: &Global, input: &Path) -> Result<Status, CliError> {
    let l = parse(input, format::parse_lattice)?;
    let euler = l.euler_sum() == l.expected_euler_sum();
    let diamond = l.has_diamond_property();
    let violations = l.violations();
    println!("dim {}", l.dim());
    println!("f-vector: {}", join(&l.f_vector()));
    println!("euler: {euler}");
    println!("diamond: {diamond}");
    for v in &violations {
        println!("violation: {v}");
    }
    let mut report = Report::new("lattice", g.seed);
    report.push("dim", l.dim());
    report.push("f_vector", l.f_vector());
    report.push("euler", euler);
    report.push("diamond", diamond);
    report.push("violations", violations.clone());
    finish(g, &report)?;
    Ok(Status::from_check(euler && diamond && violations.is_empty()))
}

pub fn steinitz(g: &Global, input: &Path, realize: bool) -> Result<Status, CliError> {
    let graph = parse(input, format::parse_graph)?;
    let v = polytopal_verdict(&graph);
    println!(
        "simple: {}; 3-connected: {}; planar: {}; 3-polytopal: {}",
        v.simple,
        v.three_connected,
        v.planar,
        v.polytopal()
    );
    let mut report = Report::new("steinitz", g.seed);
    report.push("simple", v.simple);
    report.push("three_connected", v.three_connected);
    report.push("planar", v.planar);
    report.push("polytopal", v.polytopal());
    let mut status = Status::Ok;
    if realize {
        let failing = [("simple", v.simple), ("planar", v.planar), ("3-connected", v.three_connected)]
            .into_iter()
            .find(|(_, ok)| !ok);
        if let Some((name, _)) = failing {
            finish(g, &report)?;
            return Err(CliError::precondition(format!("cannot realize: graph is not {name}")));
        }
        let simple = context("steinitz", graph.to_graph())?;
        let config = context("steinitz", realize_3polytope(&simple))?;
        let integral = config.is_integral();
        let verified = integral
            && convex_hull(&config)
                .and_then(|h| face_lattice(&h))
                .is_ok_and(|l| l.edge_graph() == simple && is_realization(&config, &l));
        for (l, p) in config.labels().iter().zip(config.points()) {
            println!("{l}: {}", coords(p));
        }
        println!("verified: {verified}");
        report.push("verified", verified);
        write(g, "steinitz", &Document::Points(config))?;
        status = Status::from_check(verified);
    }
    finish(g, &report)?;
    Ok(status)
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError {
        code: 2,
        message: format!("--{name}: {e}"),
    })
}

pub fn lawrence_extend(
    g: &Global,
    input: &Path,
    indices: &[usize],
    all: bool,
    h1: &str,
    h2: &str,
) -> Result<Status, CliError> {
    let config = parse(input, format::parse_points)?;
    let mut report = Report::new("lawrence", g.seed);
    let out = if all {
        let (ext, hull, _) = context("lawrence", lawrence_polytope(&config))?;
        println!("{} vertices", hull.vertex_indices.len());
        report.push("vertices", hull.vertex_indices.len());
        ext
    } else {
        let (h1, h2) = (rational_arg("h1", h1)?, rational_arg("h2", h2)?);
        if let Some(&bad) = indices.iter().find(|&&i| i >= config.len()) {
            return Err(CliError::precondition(format!("index {bad} with {} points", config.len())));
        }
        // extensions move points, so resolve indices to labels first
        let labels: Vec<String> = indices.iter().map(|&i| config.labels()[i].clone()).collect();
        let mut ext = config.clone();
        for l in &labels {
            let i = ext.index_of(l).ok_or_else(|| CliError::precondition(format!("point {l:?} extended twice")))?;
            ext = context("lawrence", lawrence_extension(&ext, i, &h1, &h2))?;
        }
        ext
    };
    println!("dim {}", out.dim());
    println!("{} points", out.len());
    report.push("dim", out.dim());
    report.push("points", out.len());
    write(g, "lawrence", &Document::Points(out))?;
    finish(g, &report)?;
    Ok(Status::Ok)
}

pub fn lawrence_reconstruct(g: &Global, input: &Path, upper: &str, lower: &str) -> Result<Status, CliError> {
    let config = parse(input, format::parse_points)?;
    let p = context("lawrence", reconstruct_point(&config, upper, lower))?;
    println!("point: {}", coords(&p));
    let label = upper.strip_suffix("^1").unwrap_or(upper).to_string();
    let out = context("lawrence", PointConfiguration::new(p.len(), vec![p.clone()], vec![label]))?;
    let mut report = Report::new("lawrence", g.seed);
    report.push("point", p.iter().map(rational_to_string).collect::<Vec<_>>());
    write(g, "lawrence", &Document::Points(out))?;
    finish(g, &report)?;
    Ok(Status::Ok)
}

pub fn pascal(g: &Global, xs: Option<&[String]>) -> Result<Status, CliError> {
    let xs: Vec<Rational> = match xs {
        Some(xs) => xs.iter().map(|s| rational_arg("x", s)).collect::<Result<_, _>>()?,
        None => polyreal::constructions::DEFAULT_PARABOLA_X.iter().map(|&x| int(x)).collect(),
    };
    if xs.len() != 6 {
        return Err(CliError {
            code: 2,
            message: format!("--x needs 6 values, got {}", xs.len()),
        });
    }
    let hexagon: [[Rational; 2]; 6] = std::array::from_fn(|i| [xs[i].clone(), &xs[i] * &xs[i]]);
    let (config, lattice) = context("pascal", pascal_polytope(&hexagon))?;
    let hexagon_idx: Vec<usize> = (1..=6).filter_map(|l| config.index_of(&l.to_string())).collect();
    let new_idx: Vec<usize> = (0..config.len()).filter(|i| config.labels()[*i].contains('^')).collect();
    let hexagon_face = lattice.rank_of(&hexagon_idx) == Some(2);
    let new_facet = lattice.rank_of(&new_idx) == Some(lattice.dim() - 1);
    println!("dim {}", lattice.dim());
    println!("{} vertices", config.len());
    println!("hexagon 2-face: {hexagon_face}");
    println!("extension points facet: {new_facet}");
    let mut report = Report::new("pascal", g.seed);
    report.push("dim", lattice.dim());
    report.push("vertices", config.len());
    report.push("hexagon_face", hexagon_face);
    report.push("extension_facet", new_facet);
    report.push("f_vector", lattice.f_vector());
    write(g, "pascal", &Document::Points(config))?;
    write(g, "pascal", &Document::Lattice(lattice))?;
    finish(g, &report)?;
    Ok(Status::from_check(hexagon_face && new_facet))
}

pub fn consum(g: &Global, first: &Path, second: &Path, facet1: &[usize], facet2: &[usize]) -> Result<Status, CliError> {
    let p1 = parse(first, format::parse_points)?;
    let p2 = parse(second, format::parse_points)?;
    let (_, l1) = polytope(&p1)?;
    let (_, l2) = polytope(&p2)?;
    let mut f2 = facet2.to_vec();
    f2.sort_unstable();
    let sum = context("consum", connected_sum(&p1, facet1, &p2, &f2, facet2))?;
    let (a, b) = (l1.facets().len(), l2.facets().len());
    let q = sum.lattice.facets().len();
    let identity = q + 2 == a + b;
    let class = match l1.face_lattice_of(facet1) {
        Ok((fl, _)) => flatness_class(&fl, p1.dim()).to_string(),
        Err(_) => "none".to_string(),
    };
    println!("facets: {q} (= {a} + {b} - 2)");
    println!("flatness: {class}");
    println!("parameter: {}", rational_to_string(&sum.parameter));
    let mut report = Report::new("consum", g.seed);
    report.push("facets", q);
    report.push("facets_first", a);
    report.push("facets_second", b);
    report.push("flatness", class);
    report.push("parameter", rational_to_string(&sum.parameter));
    write(g, "consum", &Document::Points(sum.config))?;
    write(g, "consum", &Document::Lattice(sum.lattice))?;
    finish(g, &report)?;
    Ok(Status::from_check(identity))
}

pub fn rs(g: &Global, input: &Path, basis: Option<&[usize]>) -> Result<Status, CliError> {
    let config = parse(input, format::parse_points)?;
    let (_, lattice) = polytope(&config)?;
    let basis = basis.map_or_else(|| default_basis(&config), <[usize]>::to_vec);
    let sys = context("rs", emit_realization_system(&lattice, &basis, &config))?;
    println!(
        "variables: {}; equations: {}; strict: {}; primary: {}",
        sys.n_vars,
        sys.equations.len(),
        sys.strict.len(),
        sys.primary()
    );
    let mut report = Report::new("rs", g.seed);
    report.push("basis", basis.clone());
    report.push("variables", sys.n_vars);
    report.push("equations", sys.equations.len());
    report.push("strict", sys.strict.len());
    report.push("primary", sys.primary());
    let primary = sys.primary();
    write(g, "rs", &Document::System(sys))?;
    finish(g, &report)?;
    Ok(Status::from_check(primary))
}

fn parse_bound(s: &str, n_vars: usize) -> Result<(usize, Rational), CliError> {
    let usage = |m: String| CliError { code: 2, message: m };
    let (v, b) = s.split_once('=').ok_or_else(|| usage(format!("--bound {s:?}: expected v=b")))?;
    let v: usize = v.trim().parse().map_err(|_| usage(format!("--bound {s:?}: bad variable")))?;
    if v == 0 || v > n_vars {
        return Err(usage(format!("--bound {s:?}: variable outside 1..={n_vars}")));
    }
    Ok((v - 1, rational_arg("bound", b.trim())?))
}

pub fn shor(g: &Global, input: Option<&Path>, bounds: &[String], growth: Option<usize>) -> Result<Status, CliError> {
    if let Some(n) = growth {
        if n < 3 {
            return Err(CliError {
                code: 2,
                message: "--growth needs at least 3 samples".into(),
            });
        }
        let r = shor_growth(n);
        for (input, output) in &r.samples {
            println!("terms {input}: size {output}");
        }
        println!("quadratic fit r2: {:.6}", r.quadratic.r_squared);
        println!("growth exponent: {:.3}", r.exponent);
        let mut report = Report::new("shor", g.seed);
        report.push("samples", r.samples.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>());
        report.push("r_squared", r.quadratic.r_squared);
        report.push("exponent", r.exponent);
        finish(g, &report)?;
        return Ok(Status::Ok);
    }
    let input = input.expect("clap requires an input without --growth");
    let sys = parse(input, format::parse_system)?;
    let mut var_bounds = vec![None; sys.n_vars];
    for b in bounds {
        let (v, value) = parse_bound(b, sys.n_vars)?;
        var_bounds[v] = Some(value);
    }
    let c = context("shor", shor_compile(&sys, Some(&var_bounds)))?;
    let completeness = match c.completeness {
        Completeness::Total => "total",
        Completeness::Partial => "partial",
    };
    println!("completeness: {completeness}");
    println!("variables: {}", c.normal_form.n);
    println!("constraints: {}", c.normal_form.constraints.len());
    println!("size: {}", c.size());
    println!("feasible: {}", c.feasible());
    for reason in &c.contradictions {
        println!("contradiction: {reason}");
    }
    let mut report = Report::new("shor", g.seed);
    report.push("completeness", completeness);
    report.push("variables", c.normal_form.n);
    report.push("constraints", c.normal_form.constraints.len());
    report.push("input_terms", sys.term_count());
    report.push("feasible", c.feasible());
    let discipline = c.normal_form.index_discipline();
    write(g, "shor", &Document::Shor(ShorDocument::from(&c)))?;
    finish(g, &report)?;
    Ok(Status::from_check(discipline))
}

/// Base realization for a lattice: the Steinitz realization of its edge
/// graph, which realizes the lattice itself in dimension 3.
fn base_for_lattice(l: &FaceLattice) -> Result<PointConfiguration, CliError> {
    if l.dim() != 3 {
        return Err(CliError::precondition(format!(
            "a {}-dimensional lattice needs a base realization; pass a points document",
            l.dim()
        )));
    }
    let base = context("realize", realize_3polytope(&l.edge_graph()))?;
    if !is_realization(&base, l) {
        return Err(CliError::precondition("the lattice is not the face lattice of its edge graph's polytope"));
    }
    Ok(base)
}

pub fn realize(
    g: &Global,
    input: &Path,
    basis: Option<&[usize]>,
    max_denominator: u64,
    restarts: Option<usize>,
    max_iters: Option<usize>,
) -> Result<Status, CliError> {
    let doc = parse(input, format::parse_document)?;
    let (lattice, base) = match doc {
        Document::Points(c) => {
            let (_, l) = polytope(&c)?;
            (l, c)
        }
        Document::Lattice(l) => {
            let base = base_for_lattice(&l)?;
            (l, base)
        }
        other => {
            return Err(CliError {
                code: 3,
                message: format!("expected a points or lattice document, found {}", other.kind()),
            })
        }
    };
    let basis = basis.map_or_else(|| default_basis(&base), <[usize]>::to_vec);
    let prob = context("realize", RealizationProblem::new(lattice, &basis, base))?;
    let defaults = RealizerParams::default();
    let params = RealizerParams {
        seed: g.seed,
        restarts: restarts.unwrap_or(defaults.restarts),
        max_iters: max_iters.unwrap_or(defaults.max_iters),
        ..defaults
    };
    let search = find_realization(&prob, &params);
    let mut report = Report::new("realize", g.seed);
    println!("seed: {}", g.seed);
    println!("free variables: {}", prob.free_vars());
    report.push("free_variables", prob.free_vars());
    report.push("search_success", search.success);
    report.push("restart", search.restart);
    report.push("iterations", search.iterations);
    report.push("residual", search.residual);
    let status = match certify(&search.coords, &prob, max_denominator) {
        Certification::Accepted(config) => {
            let t = tangent_dimension(&config, &prob, 1e-8);
            println!("certified: true");
            println!("tangent dimension: {t}");
            report.push("certified", true);
            report.push("tangent_dimension", t);
            write(g, "realize", &Document::Points(config))?;
            Status::Ok
        }
        Certification::Rejected(r) => {
            println!("certified: false");
            println!("best residual: {:e}", search.residual);
            println!("reason: {}", r.reason);
            report.push("certified", false);
            report.push("reason", r.reason);
            Status::Failed
        }
    };
    finish(g, &report)?;
    Ok(status)
}

pub fn selftest(g: &Global) -> Result<Status, CliError> {
    let checks = polyreal::selftest::run(g.seed);
    let mut report = Report::new("selftest", g.seed);
    for (name, ok) in &checks {
        println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
        report.push(name, *ok);
    }
    finish(g, &report)?;
    Ok(Status::from_check(checks.iter().all(|c| c.1)))
}
