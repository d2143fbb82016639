//! Handlers for the graph, census, and sample subcommands.

use std::path::Path;

use serde_json::json;
use spantree::census::{self, SpanningTreeCensus};
use spantree::format::{parse_graph, render_graph};
use spantree::graph::Graph;
use spantree::rng::GENERATOR_ID;
use spantree::sampler::{self, ClassDistribution};
use spantree::spectral::{self, SpectralProfile, DEFAULT_MATRIX_CAP};

use crate::errors::AppError;
use crate::tree_cmds::frequency;
use crate::{BigRational, GraphCmd, GraphGenKind};

pub fn graph(kind: &GraphCmd) -> Result<String, AppError> {
    match kind {
        GraphCmd::Gen { kind } => gen(kind),
        GraphCmd::Lambda {
            file,
            tol,
            cap,
            json,
        } => lambda(file, *tol, cap.unwrap_or(DEFAULT_MATRIX_CAP), *json),
        GraphCmd::Check {
            file,
            c,
            d0,
            tol,
            json,
        } => check(file, *c, *d0, *tol, *json),
    }
}

fn gen(kind: &GraphGenKind) -> Result<String, AppError> {
    match kind {
        GraphGenKind::Complete { n } => {
            let g = Graph::complete(*n)?;
            Ok(render_graph(*n, g.edges()))
        }
        GraphGenKind::Cycle { n } => {
            let g = Graph::cycle(*n)?;
            Ok(render_graph(*n, g.edges()))
        }
        GraphGenKind::Regular { n, d, seed, budget } => {
            let g = Graph::random_regular(*n, *d, *seed, *budget)?;
            Ok(format!(
                "# generator={GENERATOR_ID} seed={seed}\n{}",
                render_graph(*n, g.edges())
            ))
        }
        GraphGenKind::Union { a, b } => {
            let (ga, _) = load_graph(a)?;
            let (gb, _) = load_graph(b)?;
            let g = ga.disjoint_union(&gb);
            Ok(render_graph(g.vertex_count(), g.edges()))
        }
    }
}

fn lambda(file: &Path, tol: f64, cap: usize, as_json: bool) -> Result<String, AppError> {
    let (g, seed) = load_graph(file)?;
    let p = spectral::spectrum_capped(&g, tol, cap)?;
    if as_json {
        let eigenvalues: Vec<String> = p.eigenvalues.iter().map(|v| fmt_eig(*v)).collect();
        let mut obj = json!({
            "n": p.n,
            "d": p.d,
            "lambda": p.lambda.map(fmt_eig),
            "ratio": p.ratio.map(fmt_eig),
            "eigenvalues": eigenvalues,
            "tol": p.tol,
        });
        if let Some(s) = seed {
            obj["seed"] = json!(s.to_string());
        }
        Ok(format!("{obj}\n"))
    } else {
        let mut out = profile_lines(&p);
        out.push_str("eigenvalues");
        for v in &p.eigenvalues {
            out.push(' ');
            out.push_str(&fmt_eig(*v));
        }
        out.push('\n');
        if let Some(s) = seed {
            out.push_str(&format!("seed {s}\n"));
        }
        Ok(out)
    }
}

fn check(file: &Path, c: f64, d0: usize, tol: f64, as_json: bool) -> Result<String, AppError> {
    let (g, _) = load_graph(file)?;
    let v = spectral::is_ndlambda(&g, c, d0, tol)?;
    if as_json {
        Ok(format!(
            "{}\n",
            json!({
                "verdict": v.verdict,
                "C": v.c,
                "d0": v.d0,
                "n": v.profile.n,
                "d": v.profile.d,
                "lambda": v.profile.lambda.map(fmt_eig),
                "ratio": v.profile.ratio.map(fmt_eig),
                "tol": v.profile.tol,
            })
        ))
    } else {
        Ok(format!(
            "verdict {}\nC {}\nd0 {}\n{}",
            v.verdict,
            v.c,
            v.d0,
            profile_lines(&v.profile)
        ))
    }
}

pub fn census(
    file: &Path,
    cap: u64,
    epsilon: Option<&BigRational>,
    as_json: bool,
    as_csv: bool,
) -> Result<String, AppError> {
    let (g, _) = load_graph(file)?;
    let c = census::unlabelled_census(&g, cap, epsilon)?;
    if as_json {
        return Ok(census_json(g.vertex_count(), &c));
    }
    if as_csv {
        let mut out = String::from("canon,count\n");
        for (canon, count) in &c.classes {
            out.push_str(&format!("{canon},{count}\n"));
        }
        return Ok(out);
    }
    let mut out = format!(
        "n {}\nlabelled_count {}\ndistinct_unlabelled {}\n",
        g.vertex_count(),
        c.labelled_count,
        c.distinct
    );
    let b = &c.bounds;
    out.push_str(&format!(
        "degree_floor threshold {} applies {} pass {}\n",
        b.degree_floor, b.degree_floor_applies, b.degree_floor_met
    ));
    if let Some(e) = &b.exponential {
        out.push_str(&format!(
            "exponential epsilon {} threshold_digits {} pass {}\n",
            e.epsilon, e.threshold_digits, e.met
        ));
    }
    for (canon, count) in &c.classes {
        out.push_str(&format!("class {canon} {count}\n"));
    }
    Ok(out)
}

fn census_json(n: usize, c: &SpanningTreeCensus) -> String {
    let classes: Vec<serde_json::Value> = c
        .classes
        .iter()
        .map(|(canon, count)| {
            json!({ "canon": canon.to_string(), "count": count.to_string() })
        })
        .collect();
    let b = &c.bounds;
    let exponential = b.exponential.as_ref().map(|e| {
        json!({
            "epsilon": e.epsilon.to_string(),
            "threshold_digits": e.threshold_digits,
            "pass": e.met,
        })
    });
    format!(
        "{}\n",
        json!({
            "n": n,
            "labelled_count": c.labelled_count.to_string(),
            "distinct_unlabelled": c.distinct,
            "classes": classes,
            "bounds": {
                "degree_floor": {
                    "threshold": b.degree_floor.to_string(),
                    "applies": b.degree_floor_applies,
                    "pass": b.degree_floor_met,
                },
                "exponential": exponential,
            },
        })
    )
}

#[allow(clippy::too_many_arguments)]
pub fn sample(
    file: &Path,
    samples: u64,
    seed: u64,
    epsilon: f64,
    exact: bool,
    cap: u64,
    as_json: bool,
    threads: usize,
) -> Result<String, AppError> {
    let (g, _) = load_graph(file)?;
    let dist = if exact {
        sampler::exact_class_distribution(&g, cap, epsilon)?
    } else {
        if samples == 0 {
            return Err(AppError::new("bad_parameters", "samples must be at least 1"));
        }
        sampler::class_distribution_threaded(&g, samples, seed, epsilon, threads)?
    };
    Ok(if as_json {
        distribution_json(&dist)
    } else {
        distribution_text(&dist)
    })
}

fn distribution_text(d: &ClassDistribution) -> String {
    let mut out = format!(
        "n {}\ntotal {}\ndistinct {}\nepsilon {}\nthreshold {}\n\
         max_class_frequency {}\nunder_threshold {}\ngenerator {}\n",
        d.n,
        d.total,
        d.counts.len(),
        d.epsilon,
        d.threshold,
        max_frequency(d),
        d.under_threshold(),
        d.generator
    );
    if let Some(s) = d.seed {
        out.push_str(&format!("seed {s}\n"));
    }
    for (canon, count) in &d.counts {
        out.push_str(&format!(
            "class {canon} {count} {}\n",
            frequency(*count, d.total)
        ));
    }
    out
}

fn distribution_json(d: &ClassDistribution) -> String {
    let classes: Vec<serde_json::Value> = d
        .counts
        .iter()
        .map(|(canon, count)| {
            json!({
                "canon": canon.to_string(),
                "count": count.to_string(),
                "frequency": frequency(*count, d.total),
            })
        })
        .collect();
    let mut obj = json!({
        "n": d.n,
        "total": d.total.to_string(),
        "distinct": d.counts.len(),
        "epsilon": d.epsilon,
        "threshold": d.threshold.to_string(),
        "max_class_frequency": max_frequency(d),
        "under_threshold": d.under_threshold(),
        "generator": d.generator,
        "classes": classes,
    });
    if let Some(s) = d.seed {
        obj["seed"] = json!(s.to_string());
    }
    format!("{obj}\n")
}

/// Exact decimal frequency of the most common class (0 on an empty sample).
fn max_frequency(d: &ClassDistribution) -> String {
    let max = d.counts.values().copied().max().unwrap_or(0);
    if d.total == 0 {
        return "0.000000".into();
    }
    frequency(max, d.total)
}

/// Read and validate a graph file; also recover a recorded seed, if any
/// comment line carries a `seed=N` token.
fn load_graph(path: &Path) -> Result<(Graph, Option<u64>), AppError> {
    let text = std::fs::read_to_string(path)?;
    let (n, edges) = parse_graph(&text)?;
    let g = Graph::from_edges(n, edges)?;
    let seed = text
        .lines()
        .filter(|l| l.trim_start().starts_with('#'))
        .flat_map(|l| l.split_whitespace())
        .find_map(|tok| tok.strip_prefix("seed=").and_then(|v| v.parse().ok()));
    Ok((g, seed))
}

/// Fixed 12-digit rendering keeps spectral JSON byte-stable.
fn fmt_eig(v: f64) -> String {
    format!("{v:.12}")
}

fn profile_lines(p: &SpectralProfile) -> String {
    let fmt_opt = |v: Option<f64>| v.map_or_else(|| "none".into(), fmt_eig);
    format!(
        "n {}\nd {}\nlambda {}\nratio {}\ntol {}\n",
        p.n,
        p.d,
        fmt_opt(p.lambda),
        fmt_opt(p.ratio),
        p.tol
    )
}
