use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::bitset::VertexSet;
use super::Graph;
use crate::error::{Error, Result};

/// A face: sorted vertex indices and its rank (affine dimension, `-1` for the empty face).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub rank: i32,
    pub vertices: Vec<usize>,
}

/// The combinatorial type of a polytope: all faces as vertex sets, ordered by inclusion.
///
/// Faces are stored sorted by `(rank, vertices)`, so two lattices over the same
/// labels compare equal exactly when they have the same faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceLattice {
    n_vertices: usize,
    faces: Vec<Face>,
}

impl FaceLattice {
    /// Closes the facet vertex sets under intersection and ranks the result.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyInput("no facets".into()));
        }
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidIndex(format!("vertex {v} of {n_vertices}")));
            }
        }
        let facet_sets: Vec<VertexSet> = facets
            .iter()
            .map(|f| VertexSet::from_indices(n_vertices, f))
            .collect();
        let mut seen: HashSet<VertexSet> = HashSet::new();
        seen.insert(VertexSet::full(n_vertices));
        seen.insert(VertexSet::empty(n_vertices));
        let mut queue: Vec<VertexSet> = Vec::new();
        for f in &facet_sets {
            if seen.insert(f.clone()) {
                queue.push(f.clone());
            }
        }
        while let Some(face) = queue.pop() {
            for f in &facet_sets {
                let meet = face.and(f);
                if seen.insert(meet.clone()) {
                    queue.push(meet);
                }
            }
        }
        Ok(Self::rank_sets(n_vertices, seen.into_iter().collect()))
    }

    /// Builds from explicit faces (e.g. a parsed document), re-deriving ranks
    /// combinatorially and rejecting any rank that disagrees.
    pub fn from_faces(n_vertices: usize, faces: Vec<Face>) -> Result<Self> {
        let mut sets = Vec::with_capacity(faces.len());
        let mut seen = HashSet::new();
        for f in &faces {
            if let Some(&v) = f.vertices.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidIndex(format!("vertex {v} of {n_vertices}")));
            }
            let s = VertexSet::from_indices(n_vertices, &f.vertices);
            if s.len() != f.vertices.len() {
                return Err(Error::Precondition("repeated vertex inside a face".into()));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::Precondition(format!("duplicate face {:?}", f.vertices)));
            }
            sets.push(s);
        }
        if !seen.contains(&VertexSet::empty(n_vertices)) || !seen.contains(&VertexSet::full(n_vertices)) {
            return Err(Error::Precondition(
                "lattice must contain the empty face and the full vertex set".into(),
            ));
        }
        let lattice = Self::rank_sets(n_vertices, sets);
        let mut given: Vec<Face> = faces
            .into_iter()
            .map(|mut f| {
                f.vertices.sort_unstable();
                f
            })
            .collect();
        given.sort();
        if given != lattice.faces {
            return Err(Error::Precondition(
                "stated face ranks disagree with the inclusion order".into(),
            ));
        }
        Ok(lattice)
    }

    fn rank_sets(n_vertices: usize, mut sets: Vec<VertexSet>) -> Self {
        sets.sort_by_key(VertexSet::len);
        let mut ranks: Vec<i32> = Vec::with_capacity(sets.len());
        for i in 0..sets.len() {
            let r = (0..i)
                .filter(|&j| sets[j].len() < sets[i].len() && sets[j].is_subset(&sets[i]))
                .map(|j| ranks[j] + 1)
                .max()
                .unwrap_or(-1);
            ranks.push(r);
        }
        let mut faces: Vec<Face> = sets
            .iter()
            .zip(ranks)
            .map(|(s, rank)| Face {
                rank,
                vertices: s.to_vec(),
            })
            .collect();
        faces.sort();
        Self { n_vertices, faces }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Rank of the top element.
    pub fn dim(&self) -> i32 {
        self.faces.last().map_or(-1, |f| f.rank)
    }

    pub fn faces_of_rank(&self, rank: i32) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.rank == rank)
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.faces_of_rank(self.dim() - 1)
            .map(|f| f.vertices.clone())
            .collect()
    }

    /// Face counts for ranks `0..dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| self.faces_of_rank(r).count())
            .collect()
    }

    pub fn contains(&self, vertices: &[usize]) -> bool {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.faces.iter().any(|f| f.vertices == v)
    }

    pub fn rank_of(&self, vertices: &[usize]) -> Option<i32> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.faces.iter().find(|f| f.vertices == v).map(|f| f.rank)
    }

    /// Lattice with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> FaceLattice {
        let mut faces: Vec<Face> = self
            .faces
            .iter()
            .map(|f| {
                let mut vertices: Vec<usize> = f.vertices.iter().map(|&v| perm[v]).collect();
                vertices.sort_unstable();
                Face {
                    rank: f.rank,
                    vertices,
                }
            })
            .collect();
        faces.sort();
        FaceLattice {
            n_vertices: self.n_vertices,
            faces,
        }
    }

    /// The lattice of a face (all faces contained in it), with its vertices
    /// renumbered `0..k` in increasing order. Returns the lattice and the
    /// renumbering (position → original vertex).
    pub fn face_lattice_of(&self, face: &[usize]) -> Result<(FaceLattice, Vec<usize>)> {
        let mut verts = face.to_vec();
        verts.sort_unstable();
        if !self.contains(&verts) {
            return Err(Error::Precondition(format!("{verts:?} is not a face")));
        }
        let pos = |v: usize| verts.binary_search(&v).ok();
        let faces: Vec<Face> = self
            .faces
            .iter()
            .filter(|f| f.vertices.iter().all(|&v| pos(v).is_some()))
            .map(|f| Face {
                rank: f.rank,
                vertices: f.vertices.iter().map(|&v| pos(v).unwrap()).collect(),
            })
            .collect();
        let mut faces = faces;
        faces.sort();
        Ok((
            FaceLattice {
                n_vertices: verts.len(),
                faces,
            },
            verts,
        ))
    }

    /// Edge graph: the rank-1 faces.
    pub fn edge_graph(&self) -> Graph {
        Graph::new(
            self.n_vertices,
            self.faces_of_rank(1)
                .filter(|f| f.vertices.len() == 2)
                .map(|f| (f.vertices[0], f.vertices[1])),
        )
        .expect("edges of a lattice are distinct pairs")
    }

    /// Alternating face count over proper non-empty faces.
    pub fn euler_sum(&self) -> i64 {
        let d = self.dim();
        self.faces
            .iter()
            .filter(|f| f.rank >= 0 && f.rank < d)
            .map(|f| if f.rank % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// `1 - (-1)^d`, the value [`euler_sum`](Self::euler_sum) takes on polytopes.
    pub fn expected_euler_sum(&self) -> i64 {
        if self.dim() % 2 == 0 {
            0
        } else {
            2
        }
    }

    /// Atoms are exactly the singletons.
    pub fn atoms_are_vertices(&self) -> bool {
        let atoms: BTreeSet<Vec<usize>> = self
            .faces_of_rank(0)
            .map(|f| f.vertices.clone())
            .collect();
        let singletons: BTreeSet<Vec<usize>> = (0..self.n_vertices).map(|v| vec![v]).collect();
        atoms == singletons
    }

    /// Every cover relation raises the rank by exactly one.
    pub fn is_graded(&self) -> bool {
        let sets = self.sets();
        let down = self.down_sets(&sets);
        for (i, g) in self.faces.iter().enumerate() {
            for &j in &down[i] {
                let covered = !down[i]
                    .iter()
                    .any(|&k| k != j && self.faces[k].rank > self.faces[j].rank && sets[j].is_subset(&sets[k]));
                if covered && g.rank != self.faces[j].rank + 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Every interval of length two has exactly two middle elements.
    pub fn has_diamond_property(&self) -> bool {
        let sets = self.sets();
        let down = self.down_sets(&sets);
        for (i, g) in self.faces.iter().enumerate() {
            for &j in &down[i] {
                let f = &self.faces[j];
                if g.rank != f.rank + 2 {
                    continue;
                }
                let middle = down[i]
                    .iter()
                    .filter(|&&k| self.faces[k].rank == f.rank + 1 && sets[j].is_subset(&sets[k]))
                    .count();
                if middle != 2 {
                    return false;
                }
            }
        }
        true
    }

    /// For each face, the indices of the faces strictly below it.
    fn down_sets(&self, sets: &[VertexSet]) -> Vec<Vec<usize>> {
        (0..self.faces.len())
            .map(|i| {
                (0..i)
                    .filter(|&j| self.faces[j].rank < self.faces[i].rank && sets[j].is_subset(&sets[i]))
                    .collect()
            })
            .collect()
    }

    /// All structural invariants at once; returns the names of failed checks.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.atoms_are_vertices() {
            out.push("atoms");
        }
        if !self.is_graded() {
            out.push("graded");
        }
        if !self.has_diamond_property() {
            out.push("diamond");
        }
        if self.euler_sum() != self.expected_euler_sum() {
            out.push("euler");
        }
        out
    }

    fn sets(&self) -> Vec<VertexSet> {
        self.faces
            .iter()
            .map(|f| VertexSet::from_indices(self.n_vertices, &f.vertices))
            .collect()
    }
}

/// True iff relabelling `l1` by `correspondence` gives exactly the faces of `l2`.
pub fn lattice_isomorphic_under(l1: &FaceLattice, l2: &FaceLattice, correspondence: &[usize]) -> bool {
    if l1.n_vertices != l2.n_vertices || correspondence.len() != l1.n_vertices {
        return false;
    }
    let mut seen = vec![false; correspondence.len()];
    for &c in correspondence {
        if c >= seen.len() || std::mem::replace(&mut seen[c], true) {
            return false;
        }
    }
    l1.faces.len() == l2.faces.len() && l1.relabel(correspondence) == *l2
}
