//! Quick end-to-end checks across the modules, used by `polyreal selftest`.

use crate::constructions::{connected_sum, lawrence_polytope, pascal_5polytope};
use crate::corpus;
use crate::format::{parse_document, write_document, Document};
use crate::lattice::{convex_hull, face_lattice, is_realization};
use crate::realizer::{certify, find_realization, tangent_dimension, RealizationProblem, RealizerParams};
use crate::semialgebra::{default_basis, emit_realization_system, shor_compile, Completeness, PolynomialZ, SemialgebraicSystem};
use crate::steinitz::realize_3polytope;

fn cube_f_vector() -> bool {
    let c = corpus::cube(3);
    convex_hull(&c).and_then(|h| face_lattice(&h)).is_ok_and(|l| l.f_vector() == [8, 12, 6])
}

fn pascal() -> bool {
    pascal_5polytope().is_ok_and(|(c, l)| l.dim() == 5 && c.len() == 12)
}

fn lawrence() -> bool {
    lawrence_polytope(&corpus::polygon(4)).is_ok_and(|(c, h, _)| c.dim() == 6 && h.vertex_indices.len() == 8)
}

fn steinitz() -> bool {
    let g = corpus::complete_graph(4);
    realize_3polytope(&g).is_ok_and(|c| {
        c.is_integral() && convex_hull(&c).and_then(|h| face_lattice(&h)).is_ok_and(|l| is_realization(&c, &l))
    })
}

fn consum() -> bool {
    let t = corpus::simplex(3);
    connected_sum(&t, &[1, 2, 3], &t, &[1, 2, 3], &[1, 2, 3]).is_ok_and(|s| s.lattice.facets().len() == 6)
}

fn realization_system() -> bool {
    let c = corpus::cube(3);
    convex_hull(&c)
        .and_then(|h| face_lattice(&h))
        .and_then(|l| emit_realization_system(&l, &default_basis(&c), &c))
        .is_ok_and(|s| s.equations.len() == 6 && s.primary())
}

fn shor() -> bool {
    let mut sys = SemialgebraicSystem::new(1);
    let (Ok(eq), Ok(gt)) = (PolynomialZ::parse("x1^2 - 2", 1), PolynomialZ::parse("x1 - 1", 1)) else {
        return false;
    };
    sys.equations.push(eq);
    sys.strict.push(gt);
    shor_compile(&sys, None)
        .is_ok_and(|c| c.normal_form.constraints.len() == 2 && c.completeness == Completeness::Total)
}

fn realizer(seed: u64) -> bool {
    let c = corpus::cube(3);
    let Ok(prob) = convex_hull(&c)
        .and_then(|h| face_lattice(&h))
        .and_then(|l| RealizationProblem::with_default_basis(l, c))
    else {
        return false;
    };
    let r = find_realization(&prob, &RealizerParams { seed, ..Default::default() });
    certify(&r.coords, &prob, 1_000_000)
        .accepted()
        .is_some_and(|q| tangent_dimension(q, &prob, 1e-8) == 6)
}

fn formats() -> bool {
    let doc = Document::Points(corpus::cube(3));
    parse_document(&write_document(&doc)).is_ok_and(|d| d == doc)
}

/// Runs every check and returns `(name, passed)` pairs.
pub fn run(seed: u64) -> Vec<(String, bool)> {
    let checks: [(&str, &dyn Fn() -> bool); 9] = [
        ("cube f-vector", &cube_f_vector),
        ("pascal 5-polytope", &pascal),
        ("lawrence polytope", &lawrence),
        ("steinitz integer realization", &steinitz),
        ("connected sum facets", &consum),
        ("realization system", &realization_system),
        ("shor normal form", &shor),
        ("numerical realizer", &|| realizer(seed)),
        ("document round trip", &formats),
    ];
    checks.iter().map(|(n, f)| (n.to_string(), f())).collect()
}
