use super::{iter_bits, Graph};
use crate::error::{Error, Result};

/// Default cap on search-tree nodes for [`max_cliques`].
pub const DEFAULT_CLIQUE_GUARD: u64 = 50_000_000;

struct Search<'a> {
    g: &'a Graph,
    min_size: usize,
    guard: u64,
    nodes: u64,
    out: Vec<Vec<usize>>,
}

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

impl Search<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, p: Vec<u64>, x: Vec<u64>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.guard {
            return Err(Error::CliqueExplosion(self.guard));
        }
        let p_len = count(&p);
        if r.len() + p_len < self.min_size {
            return Ok(());
        }
        if p_len == 0 {
            if x.iter().all(|&w| w == 0) {
                self.out.push(r.clone());
            }
            return Ok(());
        }
        // Tomita pivot: the vertex of P ∪ X with most neighbours in P.
        let pivot = iter_bits(&p)
            .chain(iter_bits(&x))
            .max_by_key(|&u| (super::popcount_and(self.g.row(u), &p), std::cmp::Reverse(u)))
            .expect("P is nonempty");
        let candidates: Vec<usize> = iter_bits(&p).filter(|&v| !self.g.has_edge(pivot, v)).collect();
        let (mut p, mut x) = (p, x);
        for v in candidates {
            let row = self.g.row(v);
            let p2: Vec<u64> = p.iter().zip(row).map(|(a, b)| a & b).collect();
            let x2: Vec<u64> = x.iter().zip(row).map(|(a, b)| a & b).collect();
            r.push(v);
            self.expand(r, p2, x2)?;
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
        Ok(())
    }
}

/// All maximal cliques with at least `min_size` vertices, each sorted, in
/// lexicographic order. Fails once the search visits more than `guard` nodes.
pub fn max_cliques(g: &Graph, min_size: usize, guard: u64) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut s = Search { g, min_size, guard, nodes: 0, out: Vec::new() };
    let all = g.bitset(0..n);
    s.expand(&mut Vec::new(), all, vec![0; g.words()])?;
    let mut out = s.out;
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}
