use std::collections::BTreeMap;

use crate::graphs::{max_cliques, Graph, DEFAULT_CLIQUE_GUARD};

/// Row and column of every vertex of a certified `(s × t)`-grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCertificate {
    pub rows: usize,
    pub cols: usize,
    /// `coords[v] = (row, col)`.
    pub coords: Vec<(usize, usize)>,
}

/// Structural `(s × t)`-grid certificate in the spirit of Krausz: the
/// maximal cliques of sizes `s` and `t` must cover every vertex exactly
/// twice, split into two families (rows and columns) with every row meeting
/// every column in exactly one vertex.
pub fn certify_rect_grid(g: &Graph, s: usize, t: usize) -> Result<GridCertificate, String> {
    let n = g.vertex_count();
    if s < 2 || t < 2 {
        return Err(format!("grid sides must be at least 2, got {s}x{t}"));
    }
    if n != s * t {
        return Err(format!("{n} vertices, expected {}", s * t));
    }
    if g.regular_degree() != Some(s + t - 2) {
        return Err(format!("not regular of valency {}", s + t - 2));
    }
    let cliques = max_cliques(g, 2, DEFAULT_CLIQUE_GUARD).map_err(|e| e.to_string())?;
    if let Some(c) = cliques.iter().find(|c| c.len() != s && c.len() != t) {
        return Err(format!("maximal clique {c:?} has size {}", c.len()));
    }
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            through[v].push(i);
        }
    }
    if let Some(v) = (0..n).find(|&v| through[v].len() != 2) {
        return Err(format!("vertex {v} lies on {} maximal cliques", through[v].len()));
    }
    // Two-colour the cliques so the two cliques through a vertex differ.
    let mut colour: Vec<Option<bool>> = vec![None; cliques.len()];
    for start in 0..cliques.len() {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            let col = colour[c].expect("coloured");
            for &v in &cliques[c] {
                let other = if through[v][0] == c { through[v][1] } else { through[v][0] };
                match colour[other] {
                    None => {
                        colour[other] = Some(!col);
                        stack.push(other);
                    }
                    Some(x) if x == col => return Err(format!("cliques through vertex {v} cannot be split into rows and columns")),
                    _ => {}
                }
            }
        }
    }
    let rows: Vec<usize> = (0..cliques.len()).filter(|&i| colour[i] == Some(false)).collect();
    let cols: Vec<usize> = (0..cliques.len()).filter(|&i| colour[i] == Some(true)).collect();
    let (rows, cols) = match (rows.len(), cols.len()) {
        (a, b) if a == s && b == t => (rows, cols),
        (a, b) if a == t && b == s => (cols, rows),
        (a, b) => return Err(format!("found {a} and {b} parallel cliques, expected {s} and {t}")),
    };
    let row_index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let col_index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut coords = vec![(0, 0); n];
    let mut seen = vec![false; s * t];
    for v in 0..n {
        let (a, b) = (through[v][0], through[v][1]);
        let (r, c) = match (row_index.get(&a), col_index.get(&b)) {
            (Some(&r), Some(&c)) => (r, c),
            _ => (row_index[&b], col_index[&a]),
        };
        if std::mem::replace(&mut seen[r * t + c], true) {
            return Err(format!("row {r} and column {c} meet in more than one vertex"));
        }
        coords[v] = (r, c);
    }
    // Valency s + t - 2 and a clique row and column through each vertex
    // account for every edge, so the coordinates are an isomorphism.
    Ok(GridCertificate { rows: s, cols: t, coords })
}

/// `(r × r)`-grid certificate.
pub fn certify_grid(g: &Graph, r: usize) -> Result<GridCertificate, String> {
    certify_rect_grid(g, r, r)
}

/// Side lengths `s <= t` of a grid with `n` vertices and valency `k`, if any.
pub fn grid_shape(n: usize, k: usize) -> Option<(usize, usize)> {
    (2..=n).take_while(|s| s * s <= n).find(|&s| n % s == 0 && s + n / s == k + 2).map(|s| (s, n / s))
}

/// Classes of `x ~ x'` iff `{x} ∪ Γ(x) = {x'} ∪ Γ(x')`, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbhdPartition {
    pub classes: Vec<Vec<usize>>,
    /// `class_of[v]` is the index of the class containing `v`.
    pub class_of: Vec<usize>,
}

/// Partition by closed neighbourhoods and the quotient on the classes
/// (adjacent iff some cross edge). Also reports whether the graph is exactly
/// the `|class|`-clique extension of the quotient: equal class sizes, and
/// every pair of classes fully joined or fully non-adjacent.
pub fn quotient_by_closed_nbhd(g: &Graph) -> (NbhdPartition, Graph, Result<usize, String>) {
    let n = g.vertex_count();
    let mut by_nbhd: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for v in 0..n {
        let mut closed = g.row(v).to_vec();
        closed[v / 64] |= 1 << (v % 64);
        let idx = *by_nbhd.entry(closed).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(v);
        class_of[v] = idx;
    }
    let mut quotient = Graph::new(classes.len());
    for (u, v) in g.edges() {
        let (a, b) = (class_of[u], class_of[v]);
        if a != b && !quotient.has_edge(a, b) {
            quotient.add_edge(a, b);
        }
    }
    let size = classes.first().map_or(0, Vec::len);
    let check = if let Some((i, c)) = classes.iter().enumerate().find(|(_, c)| c.len() != size) {
        Err(format!("unequal class sizes: class {i} has {} vertices, class 0 has {size}", c.len()))
    } else if let Some((u, v)) = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .find(|&(u, v)| class_of[u] != class_of[v] && g.has_edge(u, v) != quotient.has_edge(class_of[u], class_of[v]))
    {
        Err(format!("vertices {u} and {v} disagree with the adjacency of their classes"))
    } else {
        Ok(size)
    };
    (NbhdPartition { classes, class_of }, quotient, check)
}
