use crate::error::{Error, Result};
use crate::lattice::Graph;

/// Graph input that may contain loops and parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidIndex(format!("edge ({a}, {b}) with {n} vertices")));
        }
        Ok(Self { n, edges })
    }

    /// The underlying simple graph, if there is one.
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied())
    }
}

impl From<&Graph> for Multigraph {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

pub fn is_simple(g: &Multigraph) -> bool {
    let mut seen = std::collections::HashSet::new();
    g.edges
        .iter()
        .all(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
}

/// True iff no vertex set of size at most two disconnects the graph.
pub fn is_3connected(g: &Graph) -> Result<bool> {
    if g.n() < 4 {
        return Err(Error::TooSmall(g.n()));
    }
    if !g.is_connected() {
        return Ok(false);
    }
    for v in 0..g.n() {
        let h = g.without_vertices(&[v]);
        if !h.is_connected() || has_cut_vertex(&h) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Articulation points by a single depth-first search.
fn has_cut_vertex(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut root_children = 0;
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    let mut stack = vec![(0usize, usize::MAX, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        if top.2 < adj[v].len() {
            let w = adj[v][top.2];
            top.2 += 1;
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}
