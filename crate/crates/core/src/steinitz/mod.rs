//! Recognition and integer realization of 3-polytopal graphs.

mod connectivity;
mod planarity;
mod realize;

pub use connectivity::{is_3connected, is_simple, Multigraph};
pub use planarity::{is_planar, PlanarEmbedding, Planarity};
pub use realize::{embedding_lattice, realization_space_dim_3, realize_3polytope};

use crate::lattice::Graph;

/// Verdicts of the three predicates characterising edge graphs of 3-polytopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolytopalVerdict {
    pub simple: bool,
    pub planar: bool,
    pub three_connected: bool,
}

impl PolytopalVerdict {
    pub fn polytopal(&self) -> bool {
        self.simple && self.planar && self.three_connected
    }
}

pub fn polytopal_verdict(g: &Multigraph) -> PolytopalVerdict {
    let simple = is_simple(g);
    let (planar, three_connected) = match g.to_graph() {
        Ok(s) => (is_planar(&s).planar, is_3connected(&s).unwrap_or(false)),
        Err(_) => (false, false),
    };
    PolytopalVerdict {
        simple,
        planar,
        three_connected,
    }
}

/// Simple, planar and 3-connected.
pub fn is_3polytopal(g: &Multigraph) -> bool {
    polytopal_verdict(g).polytopal()
}

/// Name of the first failing predicate, if any.
pub(crate) fn is_3polytopal_detail(g: &Graph) -> Option<&'static str> {
    let v = polytopal_verdict(&Multigraph::from(g));
    if !v.planar {
        Some("planar")
    } else if !v.three_connected {
        Some("3-connected")
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lattice::{convex_hull, face_lattice, is_realization};

    fn mg(g: &Graph) -> Multigraph {
        Multigraph::from(g)
    }

    #[test]
    fn planarity_small() {
        assert!(is_planar(&corpus::complete_graph(4)).planar);
        assert!(!is_planar(&corpus::complete_graph(5)).planar);
        assert!(!is_planar(&corpus::complete_bipartite(3, 3)).planar);
        assert!(!is_planar(&corpus::petersen_graph()).planar);
        let emb = is_planar(&corpus::dodecahedron_graph()).embedding.unwrap();
        assert!(emb.is_consistent());
        assert_eq!(emb.euler_characteristic(), 2);
        assert_eq!(emb.faces.len(), 12);
    }

    #[test]
    fn planar_with_cut_vertices() {
        // two triangles sharing vertex 2, plus a pendant edge
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]).unwrap();
        let emb = is_planar(&g).embedding.unwrap();
        assert!(emb.is_consistent());
        assert_eq!(emb.euler_characteristic(), 2);
    }

    #[test]
    fn polytopal_predicate() {
        assert!(is_3polytopal(&mg(&corpus::complete_graph(4))));
        assert!(!is_3polytopal(&mg(&corpus::complete_graph(5))));
        assert!(is_3polytopal(&mg(&corpus::dodecahedron_graph())));
        assert!(!is_3polytopal(&Multigraph::new(4, vec![(0, 1), (0, 1)]).unwrap()));
    }

    #[test]
    fn realizes_with_integers() {
        for (name, g) in [
            ("K4", corpus::complete_graph(4)),
            ("cube", corpus::cube_graph()),
            ("prism", corpus::prism_graph(3)),
            ("octahedron", corpus::octahedron_graph()),
            ("dodecahedron", corpus::dodecahedron_graph()),
            ("icosahedron", corpus::icosahedron_graph()),
        ] {
            let q = realize_3polytope(&g).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(q.is_integral(), "{name}");
            let emb = is_planar(&g).embedding.unwrap();
            assert!(is_realization(&q, &embedding_lattice(&emb).unwrap()), "{name}");
            let l = face_lattice(&convex_hull(&q).unwrap()).unwrap();
            assert_eq!(l.edge_graph(), g, "{name}");
        }
    }

    #[test]
    fn prism_f_vector() {
        let q = realize_3polytope(&corpus::prism_graph(3)).unwrap();
        let l = face_lattice(&convex_hull(&q).unwrap()).unwrap();
        assert_eq!(l.f_vector(), vec![6, 9, 5]);
    }

    #[test]
    fn rejects_non_polytopal() {
        let err = realize_3polytope(&corpus::complete_graph(5)).unwrap_err();
        assert!(err.to_string().contains("planar"));
        let err = realize_3polytope(&corpus::cycle_graph(5)).unwrap_err();
        assert!(err.to_string().contains("3-connected"));
    }

    #[test]
    fn dimension_formula() {
        let l = |q| face_lattice(&convex_hull(&q).unwrap()).unwrap();
        assert_eq!(realization_space_dim_3(&l(corpus::simplex(3))).unwrap(), 0);
        assert_eq!(realization_space_dim_3(&l(corpus::cube(3))).unwrap(), 6);
        assert_eq!(realization_space_dim_3(&l(corpus::cross_polytope(3))).unwrap(), 6);
        assert!(realization_space_dim_3(&l(corpus::cube(4))).is_err());
    }
}
