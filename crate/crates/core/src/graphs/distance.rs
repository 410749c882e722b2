use num_bigint::BigInt;
use rayon::prelude::*;

use super::{popcount_and, Graph};
use crate::error::{Error, Result};
use crate::params::IntersectionArray;

/// All-pairs path-length distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u8>,
    diameter: u32,
}

impl DistanceTable {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.dist[x * self.n + y] as u32
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[u8] {
        &self.dist[x * self.n..(x + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Bitsets of `Γ_i(x)` for `i = 0..=diameter`.
    pub fn layers(&self, x: usize) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut out = vec![vec![0u64; words]; self.diameter as usize + 1];
        for (y, &d) in self.row(x).iter().enumerate() {
            out[d as usize][y / 64] |= 1 << (y % 64);
        }
        out
    }

    /// Pairs `(x, y)` with `x < y` at distance `d`.
    pub fn pairs_at(&self, d: u32) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|x| (x + 1..self.n).filter(move |&y| self.get(x, y) == d).map(move |y| (x, y))).collect()
    }
}

fn bfs_row(g: &Graph, src: usize) -> std::result::Result<Vec<u8>, usize> {
    let n = g.vertex_count();
    let words = g.words();
    let mut dist = vec![u8::MAX; n];
    let mut seen = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    seen[src / 64] |= 1 << (src % 64);
    frontier[src / 64] |= 1 << (src % 64);
    dist[src] = 0;
    let mut level = 0u8;
    let mut next = vec![0u64; words];
    loop {
        next.iter_mut().for_each(|w| *w = 0);
        for u in super::iter_bits(&frontier) {
            for (a, b) in next.iter_mut().zip(g.row(u)) {
                *a |= b;
            }
        }
        let mut any = false;
        for (a, s) in next.iter_mut().zip(&seen) {
            *a &= !s;
            any |= *a != 0;
        }
        if !any {
            break;
        }
        level = level.checked_add(1).filter(|&l| l < u8::MAX).expect("diameter fits in u8");
        for v in super::iter_bits(&next) {
            dist[v] = level;
        }
        for (s, a) in seen.iter_mut().zip(&next) {
            *s |= a;
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    match dist.iter().position(|&d| d == u8::MAX) {
        Some(v) => Err(v),
        None => Ok(dist),
    }
}

pub fn distance_table(g: &Graph) -> Result<DistanceTable> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(DistanceTable { n, dist: Vec::new(), diameter: 0 });
    }
    bfs_row(g, 0).map_err(Error::Disconnected)?;
    let rows: Vec<Vec<u8>> = (0..n)
        .into_par_iter()
        .map(|x| bfs_row(g, x).expect("connected"))
        .collect();
    let diameter = rows.iter().flat_map(|r| r.iter()).copied().max().unwrap_or(0) as u32;
    Ok(DistanceTable { n, dist: rows.concat(), diameter })
}

/// `(b_0..b_{D-1}, c_1..c_D)` seen from one base vertex, or a witness.
fn array_from_vertex(g: &Graph, dt: &DistanceTable, x: usize) -> std::result::Result<(Vec<usize>, Vec<usize>), String> {
    let d = dt.diameter() as usize;
    let layers = dt.layers(x);
    let mut b: Vec<Option<usize>> = vec![None; d + 1];
    let mut c: Vec<Option<usize>> = vec![None; d + 1];
    for y in 0..g.vertex_count() {
        let i = dt.get(x, y) as usize;
        let ci = if i == 0 { 0 } else { popcount_and(g.row(y), &layers[i - 1]) };
        let bi = if i == d { 0 } else { popcount_and(g.row(y), &layers[i + 1]) };
        for (slot, val, name) in [(&mut b[i], bi, "b"), (&mut c[i], ci, "c")] {
            match slot {
                None => *slot = Some(val),
                Some(prev) if *prev != val => {
                    return Err(format!("{name}_{i} from x={x} is {prev} but {val} at y={y}"));
                }
                _ => {}
            }
        }
    }
    if let Some(i) = b.iter().position(Option::is_none) {
        return Err(format!("no vertex at distance {i} from x={x}, diameter is {d}"));
    }
    Ok((b[..d].iter().flatten().copied().collect(), c[1..].iter().flatten().copied().collect()))
}

/// The intersection array read off by counting, or the first pair that
/// breaks distance-regularity.
pub fn empirical_intersection_array(g: &Graph, dt: &DistanceTable) -> Result<IntersectionArray> {
    let per_vertex: Vec<_> = (0..g.vertex_count()).into_par_iter().map(|x| array_from_vertex(g, dt, x)).collect();
    let mut reference: Option<(Vec<usize>, Vec<usize>)> = None;
    for (x, res) in per_vertex.into_iter().enumerate() {
        let arr = res.map_err(Error::NotDistanceRegular)?;
        match &reference {
            None => reference = Some(arr),
            Some(r) if *r != arr => {
                return Err(Error::NotDistanceRegular(format!(
                    "array from x=0 is {:?} but from x={x} is {:?}",
                    r, arr
                )))
            }
            _ => {}
        }
    }
    let (b, c) = reference.ok_or_else(|| Error::NotDistanceRegular("empty graph".into()))?;
    let to_big = |v: Vec<usize>| v.into_iter().map(BigInt::from).collect();
    IntersectionArray::new(to_big(b), to_big(c)).map_err(|e| Error::NotDistanceRegular(e.to_string()))
}

/// Induced subgraph on `Γ(x)`, vertices in increasing order.
pub fn local_graph(g: &Graph, x: usize) -> Graph {
    g.induced(&g.neighbors(x).collect::<Vec<_>>())
}

/// Induced subgraph on `Γ(x) ∩ Γ(y)` for `x`, `y` at distance 2.
pub fn mu_graph(g: &Graph, dt: &DistanceTable, x: usize, y: usize) -> Result<Graph> {
    if dt.get(x, y) != 2 {
        return Err(Error::NotAtDistance2(x, y));
    }
    let common: Vec<usize> = g.neighbors(x).filter(|&w| g.has_edge(w, y)).collect();
    Ok(g.induced(&common))
}

/// `[l, m, n] = |Γ_l(x) ∩ Γ_m(y) ∩ Γ_n(z)|` for every `l, m, n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleCounts {
    side: usize,
    counts: Vec<u32>,
}

impl TripleCounts {
    pub fn get(&self, l: u32, m: u32, n: u32) -> u32 {
        let s = self.side as u32;
        if l >= s || m >= s || n >= s {
            return 0;
        }
        self.counts[((l * s + m) * s + n) as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

pub fn triple_counts(dt: &DistanceTable, x: usize, y: usize, z: usize) -> Result<TripleCounts> {
    if dt.get(x, y) != 1 || dt.get(x, z) != 1 {
        return Err(Error::InvalidArgument(format!("y={y} and z={z} must both be adjacent to x={x}")));
    }
    let side = dt.diameter() as usize + 1;
    let mut counts = vec![0u32; side * side * side];
    for ((&a, &b), &c) in dt.row(x).iter().zip(dt.row(y)).zip(dt.row(z)) {
        counts[(a as usize * side + b as usize) * side + c as usize] += 1;
    }
    Ok(TripleCounts { side, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{grassmann_graph, grid_graph, shrikhande};

    #[test]
    fn distances_on_small_graphs() {
        let k5 = Graph::complete(5);
        let dt = distance_table(&k5).unwrap();
        assert_eq!(dt.diameter(), 1);
        assert!((0..5).all(|x| (0..5).all(|y| dt.get(x, y) == (x != y) as u32)));
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert_eq!(distance_table(&g), Err(Error::Disconnected(2)));
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let dt = distance_table(&path).unwrap();
        assert_eq!((dt.get(0, 3), dt.get(3, 0), dt.diameter()), (3, 3, 3));
    }

    #[test]
    fn empirical_arrays() {
        let g = grassmann_graph(4, 2, 2).unwrap();
        let dt = distance_table(&g).unwrap();
        assert_eq!(dt.diameter(), 2);
        assert_eq!(empirical_intersection_array(&g, &dt).unwrap().to_string(), "{18,8;1,9}");
        let g = grid_graph(4, 4);
        assert_eq!(empirical_intersection_array(&g, &distance_table(&g).unwrap()).unwrap().to_string(), "{6,3;1,2}");
        let s = shrikhande();
        assert_eq!(empirical_intersection_array(&s, &distance_table(&s).unwrap()).unwrap().to_string(), "{6,3;1,2}");
    }

    #[test]
    fn non_distance_regular_has_witness() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let err = empirical_intersection_array(&path, &distance_table(&path).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotDistanceRegular(ref m) if m.contains("x=1")), "{err}");
    }

    #[test]
    fn mu_graphs_of_j242_are_3x3_grids() {
        let g = grassmann_graph(4, 2, 2).unwrap();
        let dt = distance_table(&g).unwrap();
        for (x, y) in dt.pairs_at(2) {
            let mu = mu_graph(&g, &dt, x, y).unwrap();
            assert_eq!(mu.vertex_count(), 9);
            assert_eq!(mu.regular_degree(), Some(4));
        }
        assert_eq!(mu_graph(&g, &dt, 0, 0), Err(Error::NotAtDistance2(0, 0)));
    }

    #[test]
    fn triple_counts_partition() {
        let g = grassmann_graph(4, 2, 2).unwrap();
        let dt = distance_table(&g).unwrap();
        let nb: Vec<_> = g.neighbors(0).collect();
        let t = triple_counts(&dt, 0, nb[0], nb[1]).unwrap();
        assert_eq!(t.total(), 35);
        assert_eq!(t.get(0, 1, 1), 1);
        // Summing over z recovers p^1_{l m}.
        let s: u32 = (0..3).map(|n| t.get(1, 1, n)).sum();
        assert_eq!(s as usize, g.common_count(0, nb[0]));
        assert!(triple_counts(&dt, 0, 0, nb[1]).is_err());
    }
}
