use super::{lattice_isomorphic_under, FaceLattice};

/// Finds a vertex bijection `perm` with `l1.relabel(perm) == l2`, if any.
///
/// Backtracking over vertices in breadth-first order of the edge graph,
/// pruned by facet-degree, edge-degree and edge adjacency.
pub fn find_isomorphism(l1: &FaceLattice, l2: &FaceLattice) -> Option<Vec<usize>> {
    let n = l1.n_vertices();
    if n != l2.n_vertices() || l1.faces().len() != l2.faces().len() || l1.f_vector() != l2.f_vector() {
        return None;
    }
    let (g1, g2) = (l1.edge_graph(), l2.edge_graph());
    let (adj1, adj2) = (g1.adjacency(), g2.adjacency());
    let sig = |l: &FaceLattice, adj: &[Vec<usize>], v: usize| {
        let facets = l.facets().iter().filter(|f| f.contains(&v)).count();
        (facets, adj[v].len())
    };
    let sig1: Vec<_> = (0..n).map(|v| sig(l1, &adj1, v)).collect();
    let sig2: Vec<_> = (0..n).map(|v| sig(l2, &adj2, v)).collect();

    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj1[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        depth: usize,
        order: &[usize],
        perm: &mut [usize],
        used: &mut [bool],
        ctx: &(&[(usize, usize)], &[(usize, usize)], &super::Graph, &super::Graph, &FaceLattice, &FaceLattice),
    ) -> bool {
        let (sig1, sig2, g1, g2, l1, l2) = *ctx;
        if depth == order.len() {
            return lattice_isomorphic_under(l1, l2, perm);
        }
        let v = order[depth];
        for cand in 0..perm.len() {
            if used[cand] || sig1[v] != sig2[cand] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| g1.has_edge(u, v) == g2.has_edge(perm[u], cand));
            if !consistent {
                continue;
            }
            perm[v] = cand;
            used[cand] = true;
            if search(depth + 1, order, perm, used, ctx) {
                return true;
            }
            used[cand] = false;
            perm[v] = usize::MAX;
        }
        false
    }
    let ctx = (&sig1[..], &sig2[..], &g1, &g2, l1, l2);
    search(0, &order, &mut perm, &mut used, &ctx).then_some(perm)
}
