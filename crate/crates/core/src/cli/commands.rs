use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use super::report::{Check, Report};
use super::suites::{
    array_check, clique_ext_checks, graph_summary, local_checks, mu_check, recognition_check, spectrum_check_named,
    triple_checks, triple_list, GrassmannTarget, TripleMode,
};
use crate::error::{Error, Result};
use crate::exact::{chi, gaussian_binomial};
use crate::gf::prime_power;
use crate::graphs::{
    clique_extension, distance_table, grassmann_graph, grid_graph, read_edge_list, shrikhande, write_edge_list, Graph,
    MAX_VERTICES,
};
use crate::params::{
    array_from_classical, check_moments, classical_spectrum, clique_extension_spectrum, grassmann_array, grid_spectrum,
    p_table, rect_grid_spectrum, Spectrum,
};
use crate::recognize::{recognize_clique_ext_grid, RecognizeOptions};

/// Verification depth for `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Array,
    Spectrum,
    Local,
    Mu,
    Triples,
    All,
}

/// What a graph file is claimed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Grassmann(GrassmannTarget),
    /// The q-clique extension of the `(r x r)`-grid.
    CliqueExtGrid { q: usize, r: usize },
}

/// Graph families `construct` can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Grassmann(GrassmannTarget),
    Grid { s: usize, t: usize },
    Shrikhande,
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let f = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_edge_list(BufReader::new(f))
}

fn grassmann_target(n: u32, d: u32, q: u64) -> Result<GrassmannTarget> {
    let t = GrassmannTarget { n, d, q };
    t.classical()?;
    Ok(t)
}

pub fn cmd_params(n: u32, d: u32, q: u64) -> Result<Report> {
    let t = grassmann_target(n, d, q)?;
    let cp = t.classical()?;
    let mut rep = Report::new("params", json!({"n": n, "D": d, "q": q}));
    let pp = prime_power(q).is_some();
    rep.run(|| Check::new("classical-parameters", true).field("params", cp.to_string()).field("prime_power", pp));

    let ia = array_from_classical(&cp)?;
    let direct = grassmann_array(n, d, q)?;
    let v = ia.vertex_count();
    let ia_s = ia.to_string();
    rep.run(|| {
        let c = Check::new("intersection-array", true).field("array", ia_s.clone()).field("vertices", v.to_string());
        if ia == direct {
            c
        } else {
            c.fail(format!("classical form {ia} differs from the direct form {direct}"))
        }
    });

    let sp = classical_spectrum(n, d, q)?;
    let k = ia.k();
    rep.run(|| {
        let c = Check::new("spectrum", true).field("spectrum", sp.to_string());
        if check_moments(&sp, &v, &k) {
            c
        } else {
            c.fail("multiplicities fail the trace identities")
        }
    });

    let pt = p_table(&ia)?;
    rep.run(|| {
        let dd = pt.diameter();
        let a: Vec<String> = (0..=dd).map(|i| pt.get(1, 1, i).to_string()).collect();
        let ki: Vec<String> = (0..=dd).map(|i| pt.get(0, i, i).to_string()).collect();
        let mut nonzero = 0usize;
        let mut bad = None;
        for h in 0..=dd {
            for i in 0..=dd {
                let row: num_bigint::BigInt = (0..=dd).map(|j| pt.get(h, i, j)).sum();
                if row != pt.get(0, i, i) && bad.is_none() {
                    bad = Some(format!("sum_j p^{h}_{{{i}j}} = {row}, k_{i} = {}", pt.get(0, i, i)));
                }
                for j in 0..=dd {
                    let p = pt.get(h, i, j);
                    if p.is_negative() && bad.is_none() {
                        bad = Some(format!("p^{h}_{{{i}{j}}} = {p}"));
                    }
                    if p != pt.get(h, j, i) && bad.is_none() {
                        bad = Some(format!("p^{h}_{{{i}{j}}} is not symmetric"));
                    }
                    nonzero += (!p.is_zero()) as usize;
                }
            }
        }
        let c = Check::new("p-table", true).field("p1_1j", json!(a)).field("k_i", json!(ki)).field("nonzero", nonzero);
        match bad {
            Some(w) => c.fail(w),
            None => c,
        }
    });

    let chi_q = chi(q)?;
    rep.run(|| {
        Check::new("scope", true)
            .field("chi", chi_q)
            .field("square", n == 2 * d)
            .field("scope", pp && n == 2 * d && d >= chi_q)
    });
    Ok(rep)
}

/// Builds a graph, checks it against its closed-form description and
/// optionally writes the edge list.
pub fn cmd_construct(family: Family, ext: usize, out: Option<&Path>) -> Result<Report> {
    if ext == 0 {
        return Err(Error::InvalidArgument("clique extension factor must be at least 1".into()));
    }
    let start = std::time::Instant::now();
    let (mut rep, base, base_spectrum, target) = match family {
        Family::Grassmann(t) => {
            let t = grassmann_target(t.n, t.d, t.q)?;
            let v = gaussian_binomial(t.n, t.d, t.q)?;
            if v.to_usize().is_none_or(|v| v * ext > MAX_VERTICES) {
                return Err(Error::TooLarge(format!("J_{}({},{}) has {v} vertices, limit is {MAX_VERTICES}", t.q, t.n, t.d)));
            }
            let rep = Report::new("construct", json!({"family": "grassmann", "n": t.n, "D": t.d, "q": t.q, "ext": ext}));
            let g = grassmann_graph(t.n as usize, t.d as usize, t.q)?;
            (rep, g, classical_spectrum(t.n, t.d, t.q)?, Some(t))
        }
        Family::Grid { s, t } => {
            if s < 2 || t < 2 || s.saturating_mul(t).saturating_mul(ext) > MAX_VERTICES {
                return Err(Error::InvalidArgument(format!("grid sides must be >= 2 and fit {MAX_VERTICES} vertices, got {s}x{t}")));
            }
            let rep = Report::new("construct", json!({"family": "grid", "s": s, "t": t, "ext": ext}));
            (rep, grid_graph(s, t), rect_grid_spectrum(s as u64, t as u64), None)
        }
        Family::Shrikhande => {
            if 16 * ext > MAX_VERTICES {
                return Err(Error::TooLarge(format!("{ext}-clique extension of the Shrikhande graph")));
            }
            let rep = Report::new("construct", json!({"family": "shrikhande", "ext": ext}));
            (rep, shrikhande(), grid_spectrum(4), None)
        }
    };
    let g = if ext == 1 { base } else { clique_extension(&base, ext) };
    rep.time("build", start.elapsed());
    let expected: Spectrum = clique_extension_spectrum(&base_spectrum, ext as u64);
    rep.run(|| graph_summary(&g));
    if let (Some(t), 1) = (target, ext) {
        rep.run_group("array", || Ok::<_, Error>(vec![array_check(&g, &distance_table(&g)?, t)?]))?;
    } else {
        rep.run(|| spectrum_check_named("spectrum", &g, &expected));
    }
    if let Some(path) = out {
        let f = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(f);
        write_edge_list(&g, &mut w)?;
        w.flush()?;
        rep.run(|| Check::new("written", true).field("path", path.display().to_string()));
    }
    Ok(rep)
}

fn wants(level: Level, l: Level) -> bool {
    level == Level::All || level == l
}

pub fn cmd_verify(path: &Path, target: Target, level: Level, sample: usize, seed: u64) -> Result<Report> {
    let g = load_graph(path)?;
    let inputs = match target {
        Target::Grassmann(t) => json!({"graph": path.display().to_string(), "n": t.n, "D": t.d, "q": t.q, "level": format!("{level:?}").to_lowercase(), "sample": sample, "seed": seed}),
        Target::CliqueExtGrid { q, r } => json!({"graph": path.display().to_string(), "q": q, "r": r, "level": format!("{level:?}").to_lowercase()}),
    };
    let mut rep = Report::new("verify", inputs);
    rep.run(|| graph_summary(&g));
    match target {
        Target::CliqueExtGrid { q, r } => {
            if matches!(level, Level::Array | Level::Mu | Level::Triples) {
                return Err(Error::InvalidArgument(format!(
                    "level {} needs Grassmann parameters --n --D --q, not --r",
                    format!("{level:?}").to_lowercase()
                )));
            }
            for c in clique_ext_checks(&g, q, r, wants(level, Level::Spectrum), false) {
                rep.run(|| c);
            }
            if wants(level, Level::Local) {
                for c in clique_ext_checks(&g, q, r, false, true) {
                    rep.run(|| c);
                }
            }
        }
        Target::Grassmann(t) => {
            let t = grassmann_target(t.n, t.d, t.q)?;
            let dt = match distance_table(&g) {
                Ok(dt) => dt,
                Err(e) => {
                    rep.run(|| Check::new("distances", false).fail(e.to_string()));
                    return Ok(rep);
                }
            };
            let arr = array_check(&g, &dt, t)?;
            let arr_ok = arr.passed;
            if wants(level, Level::Array) || !arr_ok {
                rep.run(|| arr);
            }
            if !arr_ok {
                return Ok(rep);
            }
            if wants(level, Level::Spectrum) {
                let sp = classical_spectrum(t.n, t.d, t.q)?;
                rep.run(|| spectrum_check_named("spectrum", &g, &sp));
            }
            if wants(level, Level::Local) {
                let vertices: Vec<usize> = (0..g.vertex_count()).collect();
                rep.run_group("local", || local_checks(&g, t, &vertices))?;
            }
            if wants(level, Level::Mu) {
                rep.run(|| mu_check(&g, &dt, t.q, sample, seed));
            }
            if wants(level, Level::Triples) {
                let mode = TripleMode::Sample { count: sample, seed };
                rep.run_group("triples", || triple_checks(&dt, t, &triple_list(&g, mode)))?;
            }
        }
    }
    Ok(rep)
}

pub fn cmd_recognize(path: &Path, q: usize, r: usize, precheck: bool) -> Result<Report> {
    let g = load_graph(path)?;
    let mut rep = Report::new("recognize", json!({"graph": path.display().to_string(), "q": q, "r": r, "precheck": precheck}));
    rep.run(|| graph_summary(&g));
    rep.run(|| recognition_check(&recognize_clique_ext_grid(&g, q, r, RecognizeOptions { spectral_precheck: precheck })));
    Ok(rep)
}

pub fn cmd_triples(path: &Path, t: GrassmannTarget, mode: TripleMode) -> Result<Report> {
    let g = load_graph(path)?;
    let t = grassmann_target(t.n, t.d, t.q)?;
    let mode_json = match mode {
        TripleMode::Full => json!({"mode": "full"}),
        TripleMode::Sample { count, seed } => json!({"mode": "sample", "sample": count, "seed": seed}),
    };
    let mut inputs = json!({"graph": path.display().to_string(), "n": t.n, "D": t.d, "q": t.q});
    inputs.as_object_mut().expect("object").extend(mode_json.as_object().expect("object").clone());
    let mut rep = Report::new("triples", inputs);
    rep.run(|| graph_summary(&g));
    let dt = distance_table(&g)?;
    let arr = array_check(&g, &dt, t)?;
    let ok = arr.passed;
    rep.run(|| arr);
    if !ok {
        return Ok(rep);
    }
    rep.run_group("triples", || triple_checks(&dt, t, &triple_list(&g, mode)))?;
    Ok(rep)
}
