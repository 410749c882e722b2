use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};
use crate::exact::gaussian_binomial;
use crate::gf::{make_field, rref_in_place, Field, FieldElem};

/// Enumeration refuses Grassmannians with more members than this.
pub const MAX_SUBSPACES: u64 = 1_000_000;

/// A subspace stored as its reduced row-echelon basis; equal subspaces have
/// identical matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<FieldElem>>,
}

impl Subspace {
    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("basis row is nonzero")).collect()
    }

    /// `dim(U ∩ W) = dim U + dim W - rank [U; W]`.
    pub fn meet_dim(&self, other: &Subspace, f: &Field) -> usize {
        let mut stacked: Vec<Vec<FieldElem>> = self.rows.iter().chain(&other.rows).cloned().collect();
        self.dim() + other.dim() - rref_in_place(f, &mut stacked)
    }
}

/// All `d`-dimensional subspaces of `GF(q)^n`, ordered lexicographically by
/// pivot columns and then by the free entries read row by row.
pub fn enumerate_subspaces(n: usize, d: usize, f: &Field) -> Result<Vec<Subspace>> {
    if d > n || n > 16 {
        return Err(Error::InvalidArgument(format!("need 0 <= D <= n <= 16, got n={n}, D={d}")));
    }
    let q = f.order() as u64;
    let count = gaussian_binomial(n as u32, d as u32, q)?;
    let count = count.to_u64().filter(|&c| c <= MAX_SUBSPACES).ok_or_else(|| {
        Error::TooLarge(format!("[{n} {d}]_{q} = {count} subspaces exceeds {MAX_SUBSPACES}"))
    })?;
    let mut out = Vec::with_capacity(count as usize);
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| {
                let pv = &pivots;
                (pv[i] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut base = vec![vec![0 as FieldElem; n]; d];
        for (i, &p) in pivots.iter().enumerate() {
            base[i][p] = 1;
        }
        let mut digits = vec![0 as FieldElem; free.len()];
        loop {
            let mut rows = base.clone();
            for (&(i, c), &x) in free.iter().zip(&digits) {
                rows[i][c] = x;
            }
            out.push(Subspace { rows });
            // Odometer, last position fastest.
            let Some(pos) = (0..digits.len()).rev().find(|&p| (digits[p] as usize) + 1 < f.order()) else { break };
            digits[pos] += 1;
            for x in &mut digits[pos + 1..] {
                *x = 0;
            }
        }
        // Next d-combination of 0..n.
        let Some(i) = (0..d).rev().find(|&i| pivots[i] < n - d + i) else { break };
        pivots[i] += 1;
        for j in i + 1..d {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    debug_assert_eq!(out.len() as u64, count);
    Ok(out)
}

/// `J_q(n, D)` with vertex `i` the `i`-th subspace of [`enumerate_subspaces`].
pub fn grassmann_graph(n: usize, d: usize, q: u64) -> Result<Graph> {
    Ok(grassmann_graph_with_subspaces(n, d, q)?.0)
}

pub fn grassmann_graph_with_subspaces(n: usize, d: usize, q: u64) -> Result<(Graph, Vec<Subspace>)> {
    let f = make_field(q)?;
    let subs = enumerate_subspaces(n, d, &f)?;
    let mut g = Graph::try_new(subs.len())?;
    if d == 0 {
        return Ok((g, subs));
    }
    let adj: Vec<Vec<usize>> = (0..subs.len())
        .into_par_iter()
        .map(|i| {
            let mut stacked = vec![vec![0 as FieldElem; n]; 2 * d];
            (i + 1..subs.len())
                .filter(|&j| {
                    for (dst, src) in stacked.iter_mut().zip(subs[i].rows.iter().chain(&subs[j].rows)) {
                        dst.copy_from_slice(src);
                    }
                    rref_in_place(&f, &mut stacked) == d + 1
                })
                .collect()
        })
        .collect();
    for (i, nbrs) in adj.into_iter().enumerate() {
        for j in nbrs {
            g.add_edge(i, j);
        }
    }
    Ok((g, subs))
}
