//! Recognising the q-clique extension of the `(r × r)`-grid.
//!
//! The pipeline mirrors the reconstruction argument: find the lines (large
//! maximal cliques), check that every vertex lies on exactly two of them and
//! that lines meet in `q` vertices, collapse closed-neighbourhood classes, and
//! certify the quotient as a grid. An accepted report carries an explicit
//! isomorphism onto `clique_extension(grid(r, r), q)`.

mod grid;
mod ncc;

pub use grid::{certify_grid, certify_rect_grid, grid_shape, quotient_by_closed_nbhd, GridCertificate, NbhdPartition};
pub use ncc::{check_ncc_hypotheses, NccOptions, NccReport};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int_rat, rat, solve_rational, to_integer, BigRat};
use crate::graphs::{clique_extension, grid_graph, max_cliques, verify_spectrum_exact, Graph, DEFAULT_CLIQUE_GUARD};
use crate::params::clique_ext_grid_spectrum;

/// Admissible range `2/3 + (5q-4)/(3qr) < κ <= 1 - 1/(qr)` and its midpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaWindow {
    pub lower: BigRat,
    pub upper: BigRat,
    pub chosen: BigRat,
}

pub fn kappa_window(q: u64, r: u64) -> Result<KappaWindow> {
    if q == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!("kappa window needs q, r >= 1, got q={q}, r={r}")));
    }
    let qr = BigInt::from(q * r);
    let lower = rat(2, 3) + BigRat::new(BigInt::from(5 * q) - 4, &qr * 3);
    let upper = int_rat(1) - BigRat::new(BigInt::from(1), qr);
    if lower >= upper {
        return Err(Error::EmptyWindow { lower: lower.to_string(), upper: upper.to_string() });
    }
    let chosen = (&lower + &upper) / int_rat(2);
    Ok(KappaWindow { lower, upper, chosen })
}

/// Minimum line size used by [`detect_lines`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineThreshold {
    pub min_size: usize,
    /// `Some(κ)` when the window is non-empty; otherwise the exact line size
    /// `qr` is used.
    pub kappa: Option<BigRat>,
}

pub fn line_threshold(q: usize, r: usize) -> LineThreshold {
    match kappa_window(q as u64, r as u64) {
        Ok(w) => {
            let bound = &w.chosen * int_rat(q * r) + int_rat(1);
            let min_size = bound.ceil().to_integer().to_usize().expect("small threshold");
            LineThreshold { min_size, kappa: Some(w.chosen) }
        }
        Err(_) => LineThreshold { min_size: q * r, kappa: None },
    }
}

/// Lines and, for every vertex, the indices of lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSet {
    pub lines: Vec<Vec<usize>>,
    pub incidence: Vec<Vec<usize>>,
}

impl LineSet {
    pub fn new(n: usize, lines: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, l) in lines.iter().enumerate() {
            for &v in l {
                incidence[v].push(i);
            }
        }
        Self { lines, incidence }
    }
}

fn check_shape(g: &Graph, q: usize, r: usize) -> std::result::Result<(), String> {
    let v = q * r * r;
    let k = q * (2 * r - 1) - 1;
    if g.vertex_count() != v {
        return Err(format!("{} vertices, expected q r^2 = {v}", g.vertex_count()));
    }
    match g.regular_degree() {
        Some(d) if d == k => Ok(()),
        Some(d) => Err(format!("regular of valency {d}, expected q(2r-1)-1 = {k}")),
        None => Err(format!("not regular, expected valency {k}")),
    }
}

/// All maximal cliques of at least the line threshold.
pub fn detect_lines(g: &Graph, q: usize, r: usize) -> Result<(LineSet, LineThreshold)> {
    if q == 0 || r < 2 {
        return Err(Error::InvalidArgument(format!("need q >= 1 and r >= 2, got q={q}, r={r}")));
    }
    check_shape(g, q, r).map_err(Error::InvalidArgument)?;
    let th = line_threshold(q, r);
    let lines = max_cliques(g, th.min_size, DEFAULT_CLIQUE_GUARD)?;
    Ok((LineSet::new(g.vertex_count(), lines), th))
}

/// `(ℓ_0, ℓ_1, ℓ_2) = (q-2, qr-2, 2(qr-2)-(q-2))`: local valencies of a
/// neighbour off both lines, on one line, and on both lines.
pub fn ell_values(q: u64, r: u64) -> [BigInt; 3] {
    let (q, r) = (BigInt::from(q), BigInt::from(r));
    let l0 = &q - 2u32;
    let l1 = &q * &r - 2u32;
    let l2 = &l1 * 2u32 - &l0;
    [l0, l1, l2]
}

/// `Σλ`, `Σλ²` and `Σ(λ - (qr-2))²` over the neighbours of a vertex of the
/// q-clique extension of the `(r × r)`-grid, `λ` being local valency.
pub fn local_valency_sums(q: u64, r: u64) -> [BigInt; 3] {
    let (qb, rb) = (BigInt::from(q), BigInt::from(r));
    let q2 = &qb * &qb;
    let q3 = &q2 * &qb;
    let r2 = &rb * &rb;
    let r3 = &r2 * &rb;
    let two_r_1 = &rb * 2u32 - 1u32;
    let sum = &q2 * (&r2 * 2u32 - 1u32) - &qb * &two_r_1 * 3u32 + 2u32;
    let sum_sq = &q3 * (&r3 * 2u32 + &r2 * 2u32 - &rb * 4u32 + 1u32) + &q2 * (-(&r2 * 12u32) + &rb * 4u32 + 3u32)
        + &qb * &two_r_1 * 8u32
        - 4u32;
    let rm1 = &rb - 1u32;
    let centered = &q2 * &rm1 * &rm1 * (&qb - 1u32);
    [sum, sum_sq, centered]
}

/// `λ_y = |Γ(x) ∩ Γ(y)|` for each neighbour `y` of `x`, in vertex order.
pub fn lambda_profile(g: &Graph, x: usize) -> Vec<usize> {
    g.neighbors(x).map(|y| g.common_count(x, y)).collect()
}

/// Second eigenvalue of the `{L, rest}` quotient for an `ℓ`-clique `L`:
/// `ℓ - 1 - (q(2r-1) - ℓ) ℓ / (q r^2 - ℓ)`. Interlacing bounds it by
/// `q(r-1) - 1`, which holds iff `ℓ <= qr`.
pub fn clique_quotient_bound(q: u64, r: u64, l: u64) -> BigRat {
    let (qb, rb, lb) = (BigInt::from(q), BigInt::from(r), BigInt::from(l));
    let k1 = &qb * (&rb * 2u32 - 1u32) - &lb;
    int_rat(&lb - 1u32) - BigRat::new(k1 * &lb, &qb * &rb * &rb - &lb)
}

/// Exact solve of the `δ` system; the solution must be `(0, 2q(r-1), q-1)`.
pub fn solve_delta_system(q: u64, r: u64) -> Result<[BigInt; 3]> {
    let ell = ell_values(q, r);
    let [sum, sum_sq, _] = local_valency_sums(q, r);
    let k = BigInt::from(q) * (2 * r - 1) - 1u32;
    let rows = vec![
        ell.iter().map(|_| int_rat(1)).collect(),
        ell.iter().map(|l| int_rat(l.clone())).collect(),
        ell.iter().map(|l| int_rat(l * l)).collect(),
    ];
    let sol = solve_rational(rows, vec![int_rat(k), int_rat(sum), int_rat(sum_sq)])?;
    let mut out: [BigInt; 3] = Default::default();
    for (slot, v) in out.iter_mut().zip(&sol) {
        *slot = to_integer(v).ok_or_else(|| Error::NonIntegral(format!("delta = {v}")))?;
    }
    let expected = [BigInt::zero(), BigInt::from(2 * q * (r - 1)), BigInt::from(q) - 1u32];
    if out != expected {
        return Err(Error::Infeasible(format!("delta system solved to {out:?}, expected {expected:?}")));
    }
    Ok(out)
}

/// Per-vertex summary of the line structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineStructure {
    /// Line size -> number of lines.
    pub line_sizes: BTreeMap<usize, usize>,
    /// Size of a non-empty intersection of two lines -> number of pairs.
    pub intersection_sizes: BTreeMap<usize, usize>,
    /// `(δ_0, δ_1, δ_2)`, the same at every vertex.
    pub delta: [usize; 3],
}

/// Checks, in order: two lines per vertex, lines of size `qr`, intersecting
/// lines sharing `q` vertices, constant `δ` equal to the solved system, and
/// local valencies `ℓ_0, ℓ_1, ℓ_2` on the three neighbour classes.
pub fn check_line_structure(g: &Graph, ls: &LineSet, q: usize, r: usize) -> std::result::Result<LineStructure, String> {
    let n = g.vertex_count();
    if let Some(v) = (0..n).find(|&v| ls.incidence[v].len() != 2) {
        return Err(format!("vertex {v} lies on {} lines", ls.incidence[v].len()));
    }
    let mut line_sizes = BTreeMap::new();
    for l in &ls.lines {
        *line_sizes.entry(l.len()).or_insert(0) += 1;
    }
    if let Some((i, l)) = ls.lines.iter().enumerate().find(|(_, l)| l.len() != q * r) {
        return Err(format!("line {i} has {} vertices, expected qr = {}", l.len(), q * r));
    }
    let bits: Vec<Vec<u64>> = ls.lines.iter().map(|l| g.bitset(l.iter().copied())).collect();
    let mut intersection_sizes = BTreeMap::new();
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            let m = crate::graphs::popcount_and(&bits[i], &bits[j]);
            if m > 0 {
                *intersection_sizes.entry(m).or_insert(0) += 1;
                if m != q {
                    return Err(format!("lines {i} and {j} share {m} vertices, expected q = {q}"));
                }
            }
        }
    }
    let solved = solve_delta_system(q as u64, r as u64).map_err(|e| e.to_string())?;
    let solved: Vec<usize> = solved.iter().map(|d| d.to_usize().expect("small")).collect();
    let ell: Vec<i64> = ell_values(q as u64, r as u64).iter().map(|l| l.to_i64().expect("small")).collect();
    let mut delta = None;
    for x in 0..n {
        let (a, b) = (&bits[ls.incidence[x][0]], &bits[ls.incidence[x][1]]);
        let mut d = [0usize; 3];
        for y in g.neighbors(x) {
            let (w, bit) = (y / 64, 1u64 << (y % 64));
            let class = (a[w] & bit != 0) as usize + (b[w] & bit != 0) as usize;
            d[class] += 1;
            let lambda = g.common_count(x, y) as i64;
            if lambda != ell[class] {
                return Err(format!("neighbour {y} of {x} on {class} common lines has local valency {lambda}, expected {}", ell[class]));
            }
        }
        if d.as_slice() != solved.as_slice() {
            return Err(format!("vertex {x} has (δ0,δ1,δ2) = {d:?}, expected {solved:?}"));
        }
        delta.get_or_insert(d);
    }
    Ok(LineStructure { line_sizes, intersection_sizes, delta: delta.unwrap_or_default() })
}

/// Pipeline stage at which a graph was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Hypotheses,
    Spectrum,
    Lines,
    LineStructure,
    Quotient,
    Grid,
    Isomorphism,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Hypotheses => "hypotheses",
            Stage::Spectrum => "spectrum",
            Stage::Lines => "lines",
            Stage::LineStructure => "line-structure",
            Stage::Quotient => "quotient",
            Stage::Grid => "grid",
            Stage::Isomorphism => "isomorphism",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected { stage: Stage, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecognizeOptions {
    /// Compare the spectrum with the clique-extended grid before the
    /// structural stages.
    pub spectral_precheck: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionReport {
    pub q: usize,
    pub r: usize,
    pub vertices: usize,
    pub digest: u64,
    pub verdict: Verdict,
    pub spectral_precheck: Option<bool>,
    pub threshold: Option<LineThreshold>,
    pub line_count: usize,
    pub line_sizes: BTreeMap<usize, usize>,
    /// Lines through a vertex -> number of vertices.
    pub lines_per_vertex: BTreeMap<usize, usize>,
    pub intersection_sizes: BTreeMap<usize, usize>,
    pub delta: Option<[usize; 3]>,
    pub class_count: Option<usize>,
    pub class_size: Option<usize>,
    pub quotient: Option<Graph>,
    /// `iso[v]` is the image of `v` in `clique_extension(grid(r, r), q)`.
    pub isomorphism: Option<Vec<usize>>,
}

fn histogram(h: &BTreeMap<usize, usize>) -> String {
    if h.is_empty() {
        return "none".into();
    }
    h.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(",")
}

impl RecognitionReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    /// Stable `key=value` rendering, one field per line, always in this order:
    /// `verdict`, `stage`, `reason`, `q`, `r`, `vertices`, `digest`,
    /// `spectral_precheck`, `kappa`, `min_line_size`, `line_count`,
    /// `line_sizes`, `lines_per_vertex`, `line_intersections`, `delta`,
    /// `classes`, `quotient_digest`. Histograms are `value:count` lists and
    /// missing values are `none`.
    pub fn to_kv(&self) -> String {
        let (verdict, stage, reason) = match &self.verdict {
            Verdict::Accepted => ("accepted", "none".to_string(), "none".to_string()),
            Verdict::Rejected { stage, reason } => ("rejected", stage.to_string(), reason.replace('\n', " ")),
        };
        let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
        let fields = [
            ("verdict", verdict.to_string()),
            ("stage", stage),
            ("reason", reason),
            ("q", self.q.to_string()),
            ("r", self.r.to_string()),
            ("vertices", self.vertices.to_string()),
            ("digest", format!("{:016x}", self.digest)),
            (
                "spectral_precheck",
                match self.spectral_precheck {
                    None => "skipped".into(),
                    Some(true) => "pass".into(),
                    Some(false) => "fail".into(),
                },
            ),
            ("kappa", opt(self.threshold.as_ref().and_then(|t| t.kappa.as_ref().map(|k| k.to_string())))),
            ("min_line_size", opt(self.threshold.as_ref().map(|t| t.min_size.to_string()))),
            ("line_count", self.line_count.to_string()),
            ("line_sizes", histogram(&self.line_sizes)),
            ("lines_per_vertex", histogram(&self.lines_per_vertex)),
            ("line_intersections", histogram(&self.intersection_sizes)),
            ("delta", opt(self.delta.map(|d| format!("{},{},{}", d[0], d[1], d[2])))),
            ("classes", opt(self.class_count.zip(self.class_size).map(|(c, s)| format!("{c}x{s}")))),
            ("quotient_digest", opt(self.quotient.as_ref().map(|g| format!("{:016x}", g.digest())))),
        ];
        fields.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

/// Full recognition pipeline; the report names the first failing stage.
pub fn recognize_clique_ext_grid(g: &Graph, q: usize, r: usize, opts: RecognizeOptions) -> RecognitionReport {
    let mut rep = RecognitionReport {
        q,
        r,
        vertices: g.vertex_count(),
        digest: g.digest(),
        verdict: Verdict::Accepted,
        spectral_precheck: None,
        threshold: None,
        line_count: 0,
        line_sizes: BTreeMap::new(),
        lines_per_vertex: BTreeMap::new(),
        intersection_sizes: BTreeMap::new(),
        delta: None,
        class_count: None,
        class_size: None,
        quotient: None,
        isomorphism: None,
    };
    if let Err((stage, reason)) = run_pipeline(g, q, r, opts, &mut rep) {
        rep.verdict = Verdict::Rejected { stage, reason };
    }
    rep
}

fn run_pipeline(
    g: &Graph,
    q: usize,
    r: usize,
    opts: RecognizeOptions,
    rep: &mut RecognitionReport,
) -> std::result::Result<(), (Stage, String)> {
    if q == 0 || r < 2 {
        return Err((Stage::Hypotheses, format!("need q >= 1 and r >= 2, got q={q}, r={r}")));
    }
    check_shape(g, q, r).map_err(|e| (Stage::Hypotheses, e))?;

    if opts.spectral_precheck {
        let ok = verify_spectrum_exact(g, &clique_ext_grid_spectrum(q as u64, r as u64));
        rep.spectral_precheck = Some(ok);
        if !ok {
            return Err((Stage::Spectrum, "spectrum differs from the clique-extended grid".into()));
        }
    }

    let (ls, th) = detect_lines(g, q, r).map_err(|e| (Stage::Lines, e.to_string()))?;
    rep.threshold = Some(th.clone());
    rep.line_count = ls.lines.len();
    for l in &ls.lines {
        *rep.line_sizes.entry(l.len()).or_insert(0) += 1;
    }
    for inc in &ls.incidence {
        *rep.lines_per_vertex.entry(inc.len()).or_insert(0) += 1;
    }
    if ls.lines.is_empty() {
        return Err((Stage::Lines, format!("no maximal clique with at least {} vertices", th.min_size)));
    }

    let st = check_line_structure(g, &ls, q, r).map_err(|e| (Stage::LineStructure, e))?;
    rep.intersection_sizes = st.intersection_sizes;
    rep.delta = Some(st.delta);

    let (part, quotient, ext) = quotient_by_closed_nbhd(g);
    rep.class_count = Some(part.classes.len());
    rep.quotient = Some(quotient.clone());
    let size = ext.map_err(|e| (Stage::Quotient, e))?;
    rep.class_size = Some(size);
    if size != q {
        return Err((Stage::Quotient, format!("closed-neighbourhood classes have size {size}, expected q = {q}")));
    }

    let cert = certify_grid(&quotient, r).map_err(|e| (Stage::Grid, e))?;

    let mut iso = vec![0; g.vertex_count()];
    for (c, members) in part.classes.iter().enumerate() {
        let (i, j) = cert.coords[c];
        for (p, &v) in members.iter().enumerate() {
            iso[v] = (i * r + j) * q + p;
        }
    }
    let target = clique_extension(&grid_graph(r, r), q);
    let mut image = Graph::new(g.vertex_count());
    for (u, v) in g.edges() {
        image.add_edge(iso[u], iso[v]);
    }
    if image != target {
        return Err((Stage::Isomorphism, "relabelled input differs from the clique-extended grid".into()));
    }
    rep.isomorphism = Some(iso);
    Ok(())
}
