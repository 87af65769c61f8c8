//! Finite simple undirected graphs stored as packed bit rows.
//!
//! Vertices are indexed from 0. A [`Graph`] is immutable once built; every
//! construction (complement, lexicographic product, relabeling) returns a new
//! value.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A finite simple graph: symmetric, loopless, at least one vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

/// Number of `u64` words needed to hold a row of `n` bits.
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

impl Graph {
    fn blank(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / WORD] |= 1 << (j % WORD);
        self.bits[j * self.words + i / WORD] |= 1 << (i % WORD);
    }

    /// Builds a graph from an edge list. Duplicate edges are ignored.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::blank(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        count: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    /// Builds a graph whose edges are the pairs `i < j` with `adjacent(i, j)`.
    /// The predicate is only consulted for `i < j`, so symmetry is automatic.
    pub fn from_fn(
        n: usize,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self, GraphError> {
        let mut g = Self::blank(n)?;
        for j in 1..n {
            for i in 0..j {
                if adjacent(i, j) {
                    g.set(i, j);
                }
            }
        }
        Ok(g)
    }

    /// The edgeless graph on `n` vertices (`X_n`).
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::blank(n)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::from_fn(n, |_, _| true)
    }

    /// The `n`-cycle with edges `{i, i+1 mod n}`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooSmall(n));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Adjacency test. Panics if either vertex is out of range.
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "vertex out of range");
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    /// The packed neighbor row of `i`.
    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Number of neighbors of `v` inside the vertex set given as a packed mask.
    #[inline]
    pub(crate) fn count_in(&self, v: usize, mask: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn check_vertex(&self, i: usize) -> Result<(), GraphError> {
        if i >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: i,
                count: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, i: usize) -> Result<usize, GraphError> {
        self.check_vertex(i)?;
        Ok(self.row(i).iter().map(|w| w.count_ones() as usize).sum())
    }

    fn degree_unchecked(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Open neighborhood of `i`, ascending.
    pub fn neighbors(&self, i: usize) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(i)?;
        Ok((0..self.n).filter(|&j| self.has_edge(i, j)).collect())
    }

    /// Vertices that are neither `i` nor adjacent to `i`, i.e. the neighbors of
    /// `i` in the complement.
    pub fn co_neighbors(&self, i: usize) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(i)?;
        Ok((0..self.n)
            .filter(|&j| j != i && !self.has_edge(i, j))
            .collect())
    }

    pub fn complement(&self) -> Graph {
        let mut bits = self.bits.clone();
        let tail = self.n % WORD;
        for i in 0..self.n {
            let row = &mut bits[i * self.words..(i + 1) * self.words];
            for w in row.iter_mut() {
                *w = !*w;
            }
            if tail != 0 {
                row[self.words - 1] &= (1u64 << tail) - 1;
            }
            row[i / WORD] &= !(1u64 << (i % WORD));
        }
        Graph {
            n: self.n,
            words: self.words,
            bits,
        }
    }

    /// Connectivity by breadth-first search from vertex 0.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected components, each ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in 0..self.n {
                    if !seen[w] && self.has_edge(v, w) {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The common degree when the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degree_unchecked(0);
        (1..self.n)
            .all(|i| self.degree_unchecked(i) == d)
            .then_some(d)
    }

    /// Common co-degree `n - 1 - valence` when the graph is regular.
    pub fn co_valence(&self) -> Option<usize> {
        self.regularity().map(|d| self.n - 1 - d)
    }

    /// Lexicographic product `self ∘ other`: a copy of `self` at every vertex of
    /// `other`. Vertex `(i, a)` lives at flat index `a * p + i` where `p` is the
    /// order of `self`, and `(i,a) ~ (j,b)` iff `a == b && i ~ j` or `a ~ b`.
    pub fn lex_product(&self, other: &Graph) -> Graph {
        let p = self.n;
        let n = other.n;
        let mut g = Graph::blank(p * n).expect("product of nonempty graphs is nonempty");
        for a in 0..n {
            for i in 0..p {
                for j in (i + 1)..p {
                    if self.has_edge(i, j) {
                        g.set(a * p + i, a * p + j);
                    }
                }
            }
            for b in (a + 1)..n {
                if other.has_edge(a, b) {
                    for i in 0..p {
                        for j in 0..p {
                            g.set(a * p + i, b * p + j);
                        }
                    }
                }
            }
        }
        g
    }

    /// `n` disjoint copies of `self`, i.e. `self ∘ X_n`.
    pub fn disjoint_copies(&self, n: usize) -> Result<Graph, GraphError> {
        Ok(self.lex_product(&Graph::empty(n)?))
    }

    /// Subgraph induced on `vertices`, relabeled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        Graph::from_fn(vertices.len(), |i, j| {
            self.has_edge(vertices[i], vertices[j])
        })
    }

    /// The image graph under the vertex map `i -> images[i]`: `{σ(i), σ(j)}` is
    /// an edge iff `{i, j}` is. `images` must be a bijection on `0..n`.
    pub fn relabel(&self, images: &[usize]) -> Graph {
        assert_eq!(images.len(), self.n, "relabeling has wrong length");
        let mut g = Graph::blank(self.n).expect("nonempty");
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    g.set(images[i], images[j]);
                }
            }
        }
        g
    }

    /// Edges `(i, j)` with `i < j`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n)
                .filter(move |&j| self.has_edge(i, j))
                .map(move |j| (i, j))
        })
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
