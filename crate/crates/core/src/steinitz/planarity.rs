//! Planarity testing with a combinatorial embedding witness.
//!
//! Each biconnected block is embedded by path addition (Demoucron, Malgrange
//! and Pertuiset); block rotations are then merged at cut vertices and the
//! faces of the whole graph are traced from the merged rotation system.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::lattice::Graph;

/// A combinatorial embedding of a connected plane graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    pub graph: Graph,
    /// Directed vertex cycles; every edge occurs once in each direction.
    pub faces: Vec<Vec<usize>>,
    pub outer_face: usize,
}

impl PlanarEmbedding {
    /// `|V| - |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.graph.n() as i64 - self.graph.edge_count() as i64 + self.faces.len() as i64
    }

    /// Every edge appears exactly once per direction among the face cycles.
    pub fn is_consistent(&self) -> bool {
        let mut darts = HashSet::new();
        for f in &self.faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                if !self.graph.has_edge(a, b) || !darts.insert((a, b)) {
                    return false;
                }
            }
        }
        darts.len() == 2 * self.graph.edge_count()
    }
}

/// Planarity verdict; the embedding is present for planar connected graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planarity {
    pub planar: bool,
    pub embedding: Option<PlanarEmbedding>,
}

pub fn is_planar(g: &Graph) -> Planarity {
    let n = g.n();
    let adj = g.adjacency();
    let blocks = biconnected_blocks(n, &adj);
    // rotation: successor of each neighbour around each vertex
    let mut rotation: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for block in &blocks {
        let Some(faces) = embed_block(block) else {
            return Planarity {
                planar: false,
                embedding: None,
            };
        };
        let mut local: HashMap<usize, HashMap<usize, usize>> = HashMap::new();
        for f in &faces {
            let k = f.len();
            for i in 0..k {
                let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
                // arriving along u -> v, leave along v -> w
                local.entry(v).or_default().insert(u, w);
            }
        }
        if faces.len() == 1 && faces[0].len() == 2 {
            // single edge
            let (a, b) = (faces[0][0], faces[0][1]);
            local.entry(a).or_default().insert(b, b);
            local.entry(b).or_default().insert(a, a);
        }
        for (v, succ) in local {
            merge_rotation(&mut rotation[v], succ);
        }
    }
    if !g.is_connected() {
        return Planarity {
            planar: true,
            embedding: None,
        };
    }
    let faces = trace_faces(g, &rotation);
    let outer_face = choose_outer(&faces);
    Planarity {
        planar: true,
        embedding: Some(PlanarEmbedding {
            graph: g.clone(),
            faces,
            outer_face,
        }),
    }
}

/// Smallest face, ties broken by the lexicographically smallest rotation of its cycle.
pub(crate) fn choose_outer(faces: &[Vec<usize>]) -> usize {
    (0..faces.len())
        .min_by_key(|&i| (faces[i].len(), min_rotation(&faces[i])))
        .unwrap_or(0)
}

fn min_rotation(cycle: &[usize]) -> Vec<usize> {
    (0..cycle.len())
        .map(|s| cycle[s..].iter().chain(&cycle[..s]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

fn merge_rotation(into: &mut HashMap<usize, usize>, other: HashMap<usize, usize>) {
    if into.is_empty() {
        *into = other;
        return;
    }
    // splice the other cycle in after some neighbour `a`
    let a = *into.keys().min().unwrap();
    let a_next = into[&a];
    let b = *other.keys().min().unwrap();
    let b_prev = *other.iter().find(|(_, &s)| s == b).unwrap().0;
    let mut other = other;
    into.insert(a, b);
    other.insert(b_prev, a_next);
    into.extend(other);
}

fn trace_faces(g: &Graph, rotation: &[HashMap<usize, usize>]) -> Vec<Vec<usize>> {
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = Vec::new();
    let darts: Vec<(usize, usize)> = g.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    for start in darts {
        if used.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut dart = start;
        loop {
            used.insert(dart);
            face.push(dart.0);
            let (u, v) = dart;
            let w = rotation[v][&u];
            dart = (v, w);
            if dart == start {
                break;
            }
        }
        faces.push(face);
    }
    faces
}

/// Biconnected blocks as edge lists (Hopcroft–Tarjan).
fn biconnected_blocks(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut dfs = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, parent, ref mut idx)) = dfs.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(&(p, _, _)) = dfs.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Embeds one biconnected block; `None` if it is not planar.
fn embed_block(edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if edges.len() == 1 {
        let (a, b) = edges[0];
        return Some(vec![vec![a, b]]);
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for l in adj.values_mut() {
        l.sort_unstable();
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    let cycle = find_cycle(&adj)?;
    let mut emb_vertices: HashSet<usize> = cycle.iter().copied().collect();
    let mut emb_edges: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        emb_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while emb_edges.len() < edges.len() {
        let fragments = fragments(&adj, &emb_vertices, &emb_edges);
        // admissible faces for each fragment
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.contacts.iter().all(|c| faces[f].contains(c)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice?;
        let path = fragment_path(&adj, &fragments[fi], &emb_vertices);
        for w in path.windows(2) {
            emb_edges.insert(key(w[0], w[1]));
        }
        emb_vertices.extend(path.iter().copied());
        let face = faces.swap_remove(face_idx);
        let (a, b) = split_face(&face, &path);
        faces.push(a);
        faces.push(b);
    }
    Some(faces)
}

struct Fragment {
    /// Attachment vertices in the embedded subgraph.
    contacts: Vec<usize>,
    /// Unembedded vertices (empty for a single chord edge).
    inner: HashSet<usize>,
    /// The chord, when the fragment is a single edge.
    chord: Option<(usize, usize)>,
}

fn fragments(
    adj: &BTreeMap<usize, Vec<usize>>,
    emb_v: &HashSet<usize>,
    emb_e: &HashSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (&a, nbrs) in adj {
        for &b in nbrs {
            if a < b && emb_v.contains(&a) && emb_v.contains(&b) && !emb_e.contains(&(a, b)) {
                out.push(Fragment {
                    contacts: vec![a, b],
                    inner: HashSet::new(),
                    chord: Some((a, b)),
                });
            }
        }
    }
    let mut seen: HashSet<usize> = HashSet::new();
    for &start in adj.keys() {
        if emb_v.contains(&start) || seen.contains(&start) {
            continue;
        }
        let mut inner = HashSet::new();
        let mut contacts = std::collections::BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            inner.insert(v);
            for &w in &adj[&v] {
                if emb_v.contains(&w) {
                    contacts.insert(w);
                } else if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        out.push(Fragment {
            contacts: contacts.into_iter().collect(),
            inner,
            chord: None,
        });
    }
    out
}

/// A path through the fragment between two distinct contacts.
fn fragment_path(adj: &BTreeMap<usize, Vec<usize>>, frag: &Fragment, emb_v: &HashSet<usize>) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let start = frag.contacts[0];
    // BFS from the first contact through inner vertices to another contact
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[&start] {
        if frag.inner.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if emb_v.contains(&w) && w != start {
                let mut path = vec![w, v];
                let mut cur = v;
                while let Some(&p) = prev.get(&cur) {
                    path.push(p);
                    if p == start {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                return path;
            }
            if frag.inner.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected block have two contacts")
}

/// Splits a face cycle by a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (u, w) = (path[0], *path.last().unwrap());
    let k = face.len();
    let i = face.iter().position(|&x| x == u).unwrap();
    let j = face.iter().position(|&x| x == w).unwrap();
    let seg = |from: usize, to: usize| {
        let mut s = vec![face[from]];
        let mut t = from;
        while t != to {
            t = (t + 1) % k;
            s.push(face[t]);
        }
        s
    };
    let interior = &path[1..path.len() - 1];
    let mut a = seg(i, j);
    a.extend(interior.iter().rev());
    let mut b = seg(j, i);
    b.extend(interior.iter());
    (a, b)
}

fn find_cycle(adj: &BTreeMap<usize, Vec<usize>>) -> Option<Vec<usize>> {
    let start = *adj.keys().next()?;
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut depth: HashMap<usize, usize> = HashMap::new();
    let mut stack = vec![(start, usize::MAX)];
    while let Some((v, p)) = stack.pop() {
        if depth.contains_key(&v) {
            continue;
        }
        let d = if p == usize::MAX { 0 } else { depth[&p] + 1 };
        depth.insert(v, d);
        parent.insert(v, p);
        for &w in &adj[&v] {
            if w == p {
                continue;
            }
            if let Some(&dw) = depth.get(&w) {
                if dw < d {
                    // back edge v -> w closes a cycle
                    let mut cyc = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[&cur];
                        cyc.push(cur);
                    }
                    return Some(cyc);
                }
            } else {
                stack.push((w, v));
            }
        }
    }
    None
}
