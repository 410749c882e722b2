//! Explicit graphs on dense bitset adjacency, and the exact checks that serve
//! as oracles for the closed-form parameter formulas.

mod cliques;
mod distance;
mod io;
mod spectral;
mod subspace;

pub use cliques::{max_cliques, DEFAULT_CLIQUE_GUARD};
pub use distance::{
    distance_table, empirical_intersection_array, local_graph, mu_graph, triple_counts, DistanceTable, TripleCounts,
};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};
pub use spectral::{
    clique_quotient_second_eigenvalue, quotient_matrix, spectrum_check, triangle_quadrangle_check,
    verify_spectrum_exact, LocalCounts, SpectrumCheck,
};
pub use subspace::{enumerate_subspaces, grassmann_graph, grassmann_graph_with_subspaces, Subspace, MAX_SUBSPACES};

use std::hash::Hasher;

use fnv::FnvHasher;

use crate::error::{Error, Result};

/// Largest vertex count a dense [`Graph`] will allocate.
pub const MAX_VERTICES: usize = 1 << 15;

/// Simple undirected graph; row `u` is the bitset of neighbours of `u`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, digest={:016x})", self.n, self.edge_count(), self.digest())
    }
}

/// Indices of set bits, ascending.
pub fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

#[inline]
pub fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph on {n} vertices exceeds {MAX_VERTICES}");
        let words = n.div_ceil(64);
        Self { n, words, rows: vec![0; n * words] }
    }

    pub fn try_new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{n} vertices (dense limit {MAX_VERTICES})")));
        }
        Ok(Self::new(n))
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|Γ(u) ∩ Γ(v)|`.
    pub fn common_count(&self, u: usize, v: usize) -> usize {
        popcount_and(self.row(u), self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    /// Common valency if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == k).then_some(k)
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Order-sensitive FNV-1a 64 over the vertex count and every row word,
    /// each as little-endian bytes.
    pub fn digest(&self) -> u64 {
        let mut h = FnvHasher::default();
        h.write(&(self.n as u64).to_le_bytes());
        for w in &self.rows {
            h.write(&w.to_le_bytes());
        }
        h.finish()
    }

    /// Bitset over `0..n` with the given members.
    pub fn bitset(&self, members: impl IntoIterator<Item = usize>) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for v in members {
            bits[v / 64] |= 1 << (v % 64);
        }
        bits
    }
}

/// The `(s × t)`-grid `K_s □ K_t`; vertex `(i, j)` is `i * t + j`.
pub fn grid_graph(s: usize, t: usize) -> Graph {
    let mut g = Graph::new(s * t);
    for i in 0..s {
        for j in 0..t {
            for j2 in j + 1..t {
                g.add_edge(i * t + j, i * t + j2);
            }
            for i2 in i + 1..s {
                g.add_edge(i * t + j, i2 * t + j);
            }
        }
    }
    g
}

/// The q-clique extension: vertex `(v, c)` is `v * q + c`; two copies are
/// adjacent iff their base vertices are equal or adjacent.
pub fn clique_extension(g: &Graph, q: usize) -> Graph {
    assert!(q >= 1, "clique extension needs q >= 1");
    let mut h = Graph::new(g.vertex_count() * q);
    for v in 0..g.vertex_count() {
        for c in 0..q {
            for d in c + 1..q {
                h.add_edge(v * q + c, v * q + d);
            }
        }
        for w in g.neighbors(v).filter(|&w| w > v) {
            for c in 0..q {
                for d in 0..q {
                    h.add_edge(v * q + c, w * q + d);
                }
            }
        }
    }
    h
}

/// Adjacency rows of the Shrikhande graph, the Cayley graph on `Z4 × Z4`
/// with connection set `{±(1,0), ±(0,1), ±(1,1)}`; vertex `(a, b)` is `4a + b`.
pub const SHRIKHANDE_ROWS: [u16; 16] = [
    0x903a, 0x3065, 0x60ca, 0xc095, 0x03a9, 0x0653, 0x0ca6, 0x095c, 0x3a90, 0x6530, 0xca60, 0x95c0, 0xa903, 0x5306,
    0xa60c, 0x5c09,
];

pub fn shrikhande() -> Graph {
    let mut g = Graph::new(16);
    for (u, mask) in SHRIKHANDE_ROWS.iter().enumerate() {
        for v in (u + 1)..16 {
            if mask >> v & 1 == 1 {
                g.add_edge(u, v);
            }
        }
    }
    g
}
