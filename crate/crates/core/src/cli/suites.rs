//! Verification suites shared by `verify` and `triples`. Each returns
//! [`Check`]s whose witnesses are the first failure in vertex or sample
//! order, so results do not depend on the thread count.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::Check;
use crate::exact::{bracket, gaussian_binomial, int_rat, BigInt};
use crate::graphs::{
    empirical_intersection_array, local_graph, spectrum_check, triple_counts, DistanceTable, Graph,
};
use crate::params::{
    array_from_classical, clique_ext_grid_spectrum, clique_extension_spectrum, grassmann_array, grassmann_classical,
    rect_grid_spectrum, ClassicalParams, Spectrum,
};
use crate::qpoly::{
    congruence_obstruction, lemma_ddd, local_eigenvalue_window, terwilliger_poly, triple_122_from_111,
    triple_spear_count, Relation,
};
use crate::recognize::{
    certify_rect_grid, check_ncc_hypotheses, lambda_profile, local_valency_sums, quotient_by_closed_nbhd, recognize_clique_ext_grid,
    solve_delta_system, NccOptions, RecognizeOptions,
};
use crate::Result;

/// Parameters `(n, D, q)` of the Grassmann graph a file is claimed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannTarget {
    pub n: u32,
    pub d: u32,
    pub q: u64,
}

impl GrassmannTarget {
    pub fn classical(&self) -> Result<ClassicalParams> {
        grassmann_classical(self.n, self.d, self.q)
    }

    fn square(&self) -> bool {
        self.n == 2 * self.d
    }
}

fn histogram_value(h: &BTreeMap<String, usize>) -> Value {
    json!(h)
}

fn first_failure<T>(outcomes: &[std::result::Result<T, String>]) -> Option<&String> {
    outcomes.iter().find_map(|o| o.as_ref().err())
}

pub fn graph_summary(g: &Graph) -> Check {
    Check::new("graph", true)
        .field("vertices", g.vertex_count())
        .field("edges", g.edge_count())
        .field("digest", format!("{:016x}", g.digest()))
}

/// Vertex count and the counted intersection array against both closed forms.
pub fn array_check(g: &Graph, dt: &DistanceTable, t: GrassmannTarget) -> Result<Check> {
    let expected_v = gaussian_binomial(t.n, t.d, t.q)?;
    let formula = grassmann_array(t.n, t.d, t.q)?;
    let classical = array_from_classical(&t.classical()?)?;
    let mut check = Check::new("array", true)
        .field("vertices", g.vertex_count())
        .field("expected_vertices", expected_v.to_string())
        .field("expected_array", formula.to_string());
    if formula != classical {
        return Ok(check.fail(format!("closed forms disagree: {formula} vs {classical}")));
    }
    if BigInt::from(g.vertex_count()) != expected_v {
        return Ok(check.fail(format!("{} vertices, expected {expected_v}", g.vertex_count())));
    }
    match empirical_intersection_array(g, dt) {
        Ok(ia) => {
            check = check.field("array", ia.to_string());
            if ia != formula {
                check = check.fail(format!("counted array {ia} differs from {formula}"));
            }
        }
        Err(e) => check = check.fail(e.to_string()),
    }
    Ok(check)
}

pub fn spectrum_check_named(name: &str, g: &Graph, sp: &Spectrum) -> Check {
    let res = spectrum_check(g, sp);
    let check = Check::new(name, true)
        .field("expected", sp.to_string())
        .field("annihilates", res.annihilates)
        .field("moments_match", res.traces == res.expected)
        .field("big_integers", res.promoted);
    if res.passed() {
        check
    } else if !res.annihilates {
        check.fail("minimal polynomial of the expected spectrum does not annihilate A")
    } else {
        let l = res.traces.iter().zip(&res.expected).position(|(a, b)| a != b).unwrap_or(0);
        check.fail(format!("Tr(A^{l}) = {} but the spectrum gives {}", res.traces[l], res.expected[l]))
    }
}

struct LocalOutcome {
    spectrum: std::result::Result<(), String>,
    structure: std::result::Result<Option<[usize; 3]>, String>,
    sums: Option<std::result::Result<(), String>>,
    /// `|Δ(y, z)|` by pair relation, or the first bad pair.
    congruence: Option<std::result::Result<[BTreeMap<usize, usize>; 2], String>>,
}

/// Shape of every local graph: spectrum, structure (recognition for
/// `n = 2D`, closed-neighbourhood quotient otherwise), and for `n = 2D` the
/// local valency sums, the pair congruences and the local eigenvalue window.
pub fn local_checks(g: &Graph, t: GrassmannTarget, vertices: &[usize]) -> Result<Vec<Check>> {
    let q = t.q as usize;
    let cp = t.classical()?;
    let s = bracket(t.n - t.d, t.q).to_usize().expect("small");
    let r = bracket(t.d, t.q).to_usize().expect("small");
    let expected = if t.square() {
        clique_ext_grid_spectrum(t.q, r)
    } else {
        clique_extension_spectrum(&rect_grid_spectrum(s as u64, r as u64), t.q)
    };
    let sums = local_valency_sums(t.q, r as u64);
    let expected_delta = if t.square() { Some(solve_delta_system(t.q, r as u64)?) } else { None };
    let obstruction = if t.square() && t.d >= 3 { Some(congruence_obstruction(&cp)?) } else { None };

    let outcomes: Vec<LocalOutcome> = vertices
        .par_iter()
        .map(|&x| {
            let lg = local_graph(g, x);
            let spec = spectrum_check(&lg, &expected);
            let spectrum = if spec.passed() { Ok(()) } else { Err(format!("local graph of {x} fails the spectrum check")) };
            let structure = if t.square() {
                let rep = recognize_clique_ext_grid(&lg, q, r, RecognizeOptions::default());
                match rep.verdict {
                    crate::recognize::Verdict::Accepted => Ok(rep.delta),
                    crate::recognize::Verdict::Rejected { stage, reason } => {
                        Err(format!("local graph of {x} rejected at {stage}: {reason}"))
                    }
                }
            } else {
                let (_, quotient, size) = quotient_by_closed_nbhd(&lg);
                match size {
                    Ok(c) if c == q => certify_rect_grid(&quotient, s, r)
                        .map(|_| None)
                        .map_err(|e| format!("local graph of {x}: quotient is not a {s}x{r} grid: {e}")),
                    Ok(c) => Err(format!("local graph of {x} has closed-neighbourhood classes of size {c}, expected {q}")),
                    Err(e) => Err(format!("local graph of {x}: {e}")),
                }
            };
            let sums_outcome = t.square().then(|| {
                (0..lg.vertex_count())
                    .find_map(|y| {
                        let got = profile_sums(&lambda_profile(&lg, y), (q * r - 2) as i64);
                        (got != sums).then(|| format!("vertex {y} of local graph {x} has sums {got:?}, expected {sums:?}"))
                    })
                    .map_or(Ok(()), Err)
            });
            let congruence = obstruction.as_ref().map(|ob| {
                let mut hist: [BTreeMap<usize, usize>; 2] = Default::default();
                for y in 0..lg.vertex_count() {
                    for z in y + 1..lg.vertex_count() {
                        let c = lg.common_count(y, z);
                        let rel = if lg.has_edge(y, z) { Relation::Adjacent } else { Relation::Distance2 };
                        if !ob.admits(rel, &BigInt::from(c)) {
                            return Err(format!("local graph of {x}: pair ({y},{z}) at distance {} has {c} common neighbours", rel.distance()));
                        }
                        *hist[(rel == Relation::Distance2) as usize].entry(c).or_insert(0) += 1;
                    }
                }
                Ok(hist)
            });
            LocalOutcome { spectrum, structure, sums: sums_outcome, congruence }
        })
        .collect();

    let mut checks = Vec::new();
    let spectra: Vec<_> = outcomes.iter().map(|o| o.spectrum.clone()).collect();
    let mut c = Check::new("local.spectrum", true).field("graphs", vertices.len()).field("expected", expected.to_string());
    if let Some(w) = first_failure(&spectra) {
        c = c.fail(w.clone());
    }
    checks.push(c);

    let structures: Vec<_> = outcomes.iter().map(|o| o.structure.clone()).collect();
    let mut c = Check::new("local.structure", true).field("graphs", vertices.len()).field("shape", format!("{q}-clique extension of {s}x{r} grid"));
    if let Some(w) = first_failure(&structures) {
        c = c.fail(w.clone());
    } else if let Some(exp) = &expected_delta {
        let exp: Vec<usize> = exp.iter().map(|d| d.to_usize().expect("small")).collect();
        c = c.field("delta", json!(exp));
        if let Some((x, d)) = vertices.iter().zip(&structures).find_map(|(x, s)| match s {
            Ok(Some(d)) if d.as_slice() != exp.as_slice() => Some((x, d)),
            _ => None,
        }) {
            c = c.fail(format!("local graph of {x} has delta {d:?}"));
        }
    }
    checks.push(c);

    if t.square() {
        let sums_out: Vec<_> = outcomes.iter().map(|o| o.sums.clone().expect("square")).collect();
        let mut c = Check::new("local.valency-sums", true)
            .field("graphs", vertices.len())
            .field("expected", json!(sums.iter().map(ToString::to_string).collect::<Vec<_>>()));
        if let Some(w) = first_failure(&sums_out) {
            c = c.fail(w.clone());
        }
        checks.push(c);
    }

    if let Some(ob) = &obstruction {
        let outs: Vec<_> = outcomes.iter().map(|o| o.congruence.clone().expect("square")).collect();
        let mut c = Check::new("local.congruences", true)
            .field("modulus", ob.modulus.to_string())
            .field("residue_adjacent", ob.residue_adjacent.to_string())
            .field("residue_distance2", ob.residue_dist2.to_string());
        match first_failure(&outs) {
            Some(w) => c = c.fail(w.clone()),
            None => {
                let mut total: [BTreeMap<String, usize>; 2] = Default::default();
                for h in outs.iter().flatten() {
                    for (i, part) in h.iter().enumerate() {
                        for (k, v) in part {
                            *total[i].entry(k.to_string()).or_insert(0) += v;
                        }
                    }
                }
                c = c.field("adjacent_common", histogram_value(&total[0])).field("distance2_common", histogram_value(&total[1]));
            }
        }
        checks.push(c);

        // Every graph passing the spectrum check has exactly the expected
        // eigenvalues, so the window is checked once on that spectrum.
        let window = local_eigenvalue_window(&cp)?;
        let principal = expected.pairs()[0].0.clone();
        let mut c = Check::new("local.eigenvalue-window", true)
            .field("theta_hat_1", window.theta_hat_1.to_string())
            .field("theta_hat_d", window.theta_hat_d.to_string());
        let polys = (2..t.d).map(|i| terwilliger_poly(&cp, i)).collect::<Result<Vec<_>>>()?;
        for theta in expected.eigenvalues().filter(|th| **th != principal) {
            let eta = int_rat(theta.clone());
            if !window.admits(&eta) {
                c = c.fail(format!("eigenvalue {theta} lies outside the window"));
                break;
            }
            if let Some(p) = polys.iter().find(|p| !p.nonnegative_at(&eta)) {
                c = c.fail(format!("T_{}({theta}) < 0", p.i));
                break;
            }
        }
        if let Some(w) = first_failure(&spectra) {
            c = c.fail(format!("eigenvalues not certified: {w}"));
        }
        checks.push(c);
    }
    Ok(checks)
}

/// Local spectrum and recognition for a graph claimed to be the q-clique
/// extension of the `(r x r)`-grid.
pub fn clique_ext_checks(g: &Graph, q: usize, r: usize, spectrum: bool, structure: bool) -> Vec<Check> {
    let mut out = Vec::new();
    if spectrum {
        out.push(spectrum_check_named("spectrum", g, &clique_ext_grid_spectrum(q as u64, r)));
    }
    if structure {
        let rep = recognize_clique_ext_grid(g, q, r, RecognizeOptions { spectral_precheck: false });
        out.push(recognition_check(&rep));
    }
    out
}

/// One check carrying every `key=value` of a recognition report.
pub fn recognition_check(rep: &crate::recognize::RecognitionReport) -> Check {
    let mut c = Check::new("recognition", rep.accepted());
    for line in rep.to_kv().lines() {
        if let Some((k, v)) = line.split_once('=') {
            c = c.field(k, v);
        }
    }
    if let crate::recognize::Verdict::Rejected { stage, reason } = &rep.verdict {
        c.witness = Some(format!("rejected at {stage}: {reason}"));
    }
    c
}

/// μ-graphs are `(q+1) x (q+1)`-grids and 3-cocliques have coclique common
/// neighbourhoods.
pub fn mu_check(g: &Graph, dt: &DistanceTable, q: u64, sample: usize, seed: u64) -> Check {
    let opts = NccOptions { mu_sample: Some(sample), coclique_sample: sample, seed, ..NccOptions::default() };
    let rep = check_ncc_hypotheses(g, dt, opts);
    let side = q as usize + 1;
    let shapes: BTreeMap<String, usize> = rep.mu_shapes.iter().map(|((s, t), c)| (format!("{s}x{t}"), *c)).collect();
    let c = Check::new("mu", true)
        .field("pairs", rep.mu_pairs_checked)
        .field("shapes", histogram_value(&shapes))
        .field("cocliques", rep.cocliques_checked)
        .field("cocliques_sampled", rep.cocliques_sampled);
    if let Some(w) = rep.witness {
        c.fail(w)
    } else if let Some(((s, t), _)) = rep.mu_shapes.iter().find(|(k, _)| **k != (side, side)) {
        c.fail(format!("found a {s}x{t} μ-graph, expected {side}x{side}"))
    } else {
        c
    }
}

/// Which `(x, y, z)` triples to examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleMode {
    /// Every `x` and every pair `y < z` of its neighbours.
    Full,
    /// `count` triples drawn with a seeded generator.
    Sample { count: usize, seed: u64 },
}

pub fn triple_list(g: &Graph, mode: TripleMode) -> Vec<(usize, usize, usize)> {
    let n = g.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|x| g.neighbors(x).collect()).collect();
    match mode {
        TripleMode::Full => (0..n)
            .flat_map(|x| {
                let nb = &nbrs[x];
                (0..nb.len()).flat_map(move |i| (i + 1..nb.len()).map(move |j| (x, nb[i], nb[j])))
            })
            .collect(),
        TripleMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            if nbrs.iter().all(|nb| nb.len() < 2) {
                return out;
            }
            while out.len() < count {
                let x = rng.gen_range(0..n);
                let nb = &nbrs[x];
                if nb.len() < 2 {
                    continue;
                }
                let idx = sample_indices(&mut rng, nb.len(), 2);
                out.push((x, nb[idx.index(0)], nb[idx.index(1)]));
            }
            out
        }
    }
}

#[derive(Clone)]
struct TripleOutcome {
    distance: u32,
    t111: u32,
    /// First failure per identity: local relation, level identity, top level, congruence, μ valency.
    failures: [Option<String>; 5],
}

/// Triple intersection identities on `(x, y, z)`, `y, z` distinct
/// neighbours of `x`: `[1,2,2]` from `[1,1,1]`, `[i,i+1,i+1]` from `[1,2,2]`
/// for `i = 1..D-1`, the closed form of `[D-1,D,D]`, the `[1,1,1]`
/// congruences for `n = 2D`, and `[1,1,1] = 2q` when `y, z` are at distance 2.
pub fn triple_checks(dt: &DistanceTable, t: GrassmannTarget, triples: &[(usize, usize, usize)]) -> Result<Vec<Check>> {
    let cp = t.classical()?;
    let d = t.d;
    let obstruction = if t.square() && d >= 3 { Some(congruence_obstruction(&cp)?) } else { None };
    let top = d >= 3;
    let two_q = 2 * t.q as u32;

    let outcomes: Vec<std::result::Result<TripleOutcome, String>> = triples
        .par_iter()
        .map(|&(x, y, z)| {
            let tc = triple_counts(dt, x, y, z).map_err(|e| e.to_string())?;
            let j = dt.get(y, z);
            let rel = Relation::from_distance(j).ok_or_else(|| format!("({y},{z}) at distance {j}"))?;
            let t111 = tc.get(1, 1, 1);
            let t111b = BigInt::from(t111);
            let t122 = BigInt::from(tc.get(1, 2, 2));
            let who = format!("(x,y,z)=({x},{y},{z})");
            let mut failures: [Option<String>; 5] = Default::default();
            match triple_122_from_111(&cp, rel, &t111b) {
                Ok(v) if v == t122 => {}
                Ok(v) => failures[0] = Some(format!("{who}: [1,2,2]={t122}, predicted {v} from [1,1,1]={t111}")),
                Err(e) => failures[0] = Some(format!("{who}: {e}")),
            }
            for i in 1..d {
                let brute = BigInt::from(tc.get(i, i + 1, i + 1));
                match triple_spear_count(&cp, i, j, &t122) {
                    Ok(v) if v == brute => {}
                    Ok(v) => {
                        failures[1] = Some(format!("{who}: [{i},{},{}]={brute}, predicted {v}", i + 1, i + 1));
                        break;
                    }
                    Err(e) => {
                        failures[1] = Some(format!("{who}: level {i}: {e}"));
                        break;
                    }
                }
            }
            if top {
                let brute = int_rat(tc.get(d - 1, d, d));
                match lemma_ddd(&cp, rel, &t111b) {
                    Ok(v) if v == brute => {}
                    Ok(v) => failures[2] = Some(format!("{who}: [{},{d},{d}]={brute}, closed form gives {v}", d - 1)),
                    Err(e) => failures[2] = Some(format!("{who}: {e}")),
                }
            }
            if let Some(ob) = &obstruction {
                if !ob.admits(rel, &t111b) {
                    failures[3] = Some(format!("{who}: [1,1,1]={t111} violates the congruence at distance {j}"));
                }
            }
            if rel == Relation::Distance2 && t111 != two_q {
                failures[4] = Some(format!("{who}: [1,1,1]={t111} at distance 2, expected 2q={two_q}"));
            }
            Ok(TripleOutcome { distance: j, t111, failures })
        })
        .collect();

    let mut base = Check::new("triples.counts", true).field("triples", triples.len());
    if let Some(w) = first_failure(&outcomes) {
        return Ok(vec![base.fail(w.clone())]);
    }
    let outs: Vec<TripleOutcome> = outcomes.into_iter().map(|o| o.expect("checked")).collect();
    let mut hist: [BTreeMap<String, usize>; 2] = Default::default();
    for o in &outs {
        *hist[(o.distance == 2) as usize].entry(o.t111.to_string()).or_insert(0) += 1;
    }
    base = base.field("adjacent_111", histogram_value(&hist[0])).field("distance2_111", histogram_value(&hist[1]));
    let mut checks = vec![base];
    let first = |k: usize| outs.iter().find_map(|o| o.failures[k].clone());
    let mut push = |k: usize, c: Check| {
        checks.push(match first(k) {
            Some(w) => c.fail(w),
            None => c,
        })
    };
    push(0, Check::new("triples.local-relation", true));
    push(1, Check::new("triples.levels", true).field("levels", format!("1..={}", d - 1)));
    if top {
        push(2, Check::new("triples.top-level", true));
    }
    if let Some(ob) = &obstruction {
        let mut residues = BTreeMap::new();
        for o in outs.iter().filter(|o| o.distance == 1) {
            let res = (BigInt::from(o.t111) % &ob.modulus).to_string();
            *residues.entry(res).or_insert(0usize) += 1;
        }
        push(
            3,
            Check::new("triples.congruences", true)
                .field("modulus", ob.modulus.to_string())
                .field("adjacent_residues", histogram_value(&residues)),
        );
    }
    push(4, Check::new("triples.mu-valency", true));
    Ok(checks)
}

/// Sums `Σλ`, `Σλ²` and `Σ(λ - c)²` of a valency profile.
fn profile_sums(profile: &[usize], center: i64) -> [BigInt; 3] {
    let s: i64 = profile.iter().map(|&l| l as i64).sum();
    let s2: i64 = profile.iter().map(|&l| (l * l) as i64).sum();
    let c: i64 = profile.iter().map(|&l| (l as i64 - center).pow(2)).sum();
    [s.into(), s2.into(), c.into()]
}

