use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::grid::{certify_rect_grid, grid_shape};
use crate::graphs::{iter_bits, mu_graph, DistanceTable, Graph};

/// Sampling controls for [`check_ncc_hypotheses`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NccOptions {
    /// Check at most this many distance-2 pairs; `None` checks all.
    pub mu_sample: Option<usize>,
    /// Enumerate every vertex triple when there are at most this many.
    pub coclique_exhaustive_limit: u64,
    /// Number of 3-cocliques to sample above the limit.
    pub coclique_sample: usize,
    pub seed: u64,
}

impl Default for NccOptions {
    fn default() -> Self {
        Self { mu_sample: None, coclique_exhaustive_limit: 10_000_000, coclique_sample: 100_000, seed: 42 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NccReport {
    pub mu_pairs_checked: usize,
    /// Grid shape `(s, t)` of μ-graphs -> number of pairs.
    pub mu_shapes: BTreeMap<(usize, usize), usize>,
    pub cocliques_checked: usize,
    pub cocliques_sampled: bool,
    /// First violation found, if any.
    pub witness: Option<String>,
}

impl NccReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn mu_shape(g: &Graph, dt: &DistanceTable, x: usize, y: usize) -> Result<(usize, usize), String> {
    let mu = mu_graph(g, dt, x, y).map_err(|e| e.to_string())?;
    let k = mu.regular_degree().ok_or_else(|| format!("μ-graph of ({x},{y}) is not regular"))?;
    let (s, t) = grid_shape(mu.vertex_count(), k)
        .ok_or_else(|| format!("μ-graph of ({x},{y}) has {} vertices and valency {k}, no grid fits", mu.vertex_count()))?;
    certify_rect_grid(&mu, s, t).map_err(|e| format!("μ-graph of ({x},{y}): {e}"))?;
    Ok((s, t))
}

/// `Γ(x) ∩ Γ(y) ∩ Γ(z)` has no edges.
fn common_is_coclique(g: &Graph, x: usize, y: usize, z: usize) -> bool {
    let common: Vec<u64> = g.row(x).iter().zip(g.row(y)).zip(g.row(z)).map(|((a, b), c)| a & b & c).collect();
    let ok = iter_bits(&common).all(|w| crate::graphs::popcount_and(g.row(w), &common) == 0);
    ok
}

/// Checks that (i) every μ-graph is an `(s × t)`-grid with `s, t >= 2` and
/// (ii) the common neighbourhood of every 3-coclique is a coclique.
pub fn check_ncc_hypotheses(g: &Graph, dt: &DistanceTable, opts: NccOptions) -> NccReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pairs = dt.pairs_at(2);
    if let Some(m) = opts.mu_sample {
        if m < pairs.len() {
            let mut idx = sample(&mut rng, pairs.len(), m).into_vec();
            idx.sort_unstable();
            pairs = idx.into_iter().map(|i| pairs[i]).collect();
        }
    }
    let shapes: Vec<Result<(usize, usize), String>> =
        pairs.par_iter().map(|&(x, y)| mu_shape(g, dt, x, y)).collect();
    let mut report = NccReport {
        mu_pairs_checked: pairs.len(),
        mu_shapes: BTreeMap::new(),
        cocliques_checked: 0,
        cocliques_sampled: false,
        witness: None,
    };
    for s in shapes {
        match s {
            Ok(shape) => *report.mu_shapes.entry(shape).or_insert(0) += 1,
            Err(e) => {
                report.witness = Some(e);
                return report;
            }
        }
    }

    let n = g.vertex_count();
    let total = (n as u64) * (n as u64).saturating_sub(1) * (n as u64).saturating_sub(2) / 6;
    let triples: Vec<(usize, usize, usize)> = if total <= opts.coclique_exhaustive_limit {
        (0..n)
            .flat_map(|x| (x + 1..n).flat_map(move |y| (y + 1..n).map(move |z| (x, y, z))))
            .filter(|&(x, y, z)| !g.has_edge(x, y) && !g.has_edge(x, z) && !g.has_edge(y, z))
            .collect()
    } else {
        report.cocliques_sampled = true;
        let mut out = Vec::with_capacity(opts.coclique_sample);
        let mut attempts = 0usize;
        while out.len() < opts.coclique_sample && attempts < 100 * opts.coclique_sample.max(1) {
            attempts += 1;
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if x != y && x != z && y != z && !g.has_edge(x, y) && !g.has_edge(x, z) && !g.has_edge(y, z) {
                out.push((x, y, z));
            }
        }
        out
    };
    report.cocliques_checked = triples.len();
    let bad = triples.par_iter().position_first(|&(x, y, z)| !common_is_coclique(g, x, y, z));
    if let Some(i) = bad {
        let (x, y, z) = triples[i];
        report.witness = Some(format!("common neighbourhood of coclique {{{x},{y},{z}}} has an edge"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{distance_table, grassmann_graph, grid_graph};

    #[test]
    fn j242_satisfies_hypotheses() {
        let g = grassmann_graph(4, 2, 2).unwrap();
        let dt = distance_table(&g).unwrap();
        let rep = check_ncc_hypotheses(&g, &dt, NccOptions::default());
        assert!(rep.passed(), "{:?}", rep.witness);
        assert!(!rep.cocliques_sampled);
        assert_eq!(rep.mu_shapes, BTreeMap::from([((3, 3), 35 * 16 / 2)]));
    }

    #[test]
    fn octahedron_has_square_mu_graphs() {
        // K_{2,2,2}: complement of a perfect matching on 6 vertices.
        let g = Graph::from_edges(6, (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| v != u + 3));
        let dt = distance_table(&g).unwrap();
        let rep = check_ncc_hypotheses(&g, &dt, NccOptions::default());
        assert!(rep.passed());
        assert_eq!(rep.mu_shapes, BTreeMap::from([((2, 2), 3)]));
        assert_eq!(rep.cocliques_checked, 0);
    }

    #[test]
    fn grid_mu_graphs_are_not_grids() {
        // In the 3x3 grid the μ-graph of two non-collinear points is two
        // isolated vertices, which is not a grid.
        let g = grid_graph(3, 3);
        let dt = distance_table(&g).unwrap();
        let rep = check_ncc_hypotheses(&g, &dt, NccOptions::default());
        assert!(!rep.passed());
    }

    #[test]
    fn sampling_is_seeded() {
        let g = grassmann_graph(4, 2, 2).unwrap();
        let dt = distance_table(&g).unwrap();
        let opts = NccOptions { mu_sample: Some(50), coclique_exhaustive_limit: 0, coclique_sample: 500, seed: 7 };
        let a = check_ncc_hypotheses(&g, &dt, opts);
        let b = check_ncc_hypotheses(&g, &dt, opts);
        assert_eq!(a, b);
        assert!(a.passed() && a.cocliques_sampled);
        assert_eq!((a.mu_pairs_checked, a.cocliques_checked), (50, 500));
    }
}
