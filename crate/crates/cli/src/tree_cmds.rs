//! Handlers for the counting, generation, and spine-codec subcommands.

use num_bigint::BigUint;
use serde_json::json;
use spantree::counting::{self, AlphaMethod, CountTable};
use spantree::format::{parse_graph, render_graph, render_graph_line};
use spantree::numeric::ratio_decimal;
use spantree::spine::{self, TreeTuple};
use spantree::tree::{RootedTree, Tree};
use spantree::treegen;

use crate::errors::AppError;
use crate::{BigRational, CountKind, Fmt, GenKind, MethodArg, SpineCmd, TreeFmt};

pub fn count(kind: &CountKind) -> Result<String, AppError> {
    let (max, format, header, values) = match kind {
        CountKind::Rooted { max, format } => {
            require_positive(*max, "max")?;
            let table = counting::rooted_counts(*max)?;
            let values: Vec<String> = (1..=*max)
                .map(|k| table.rooted(k).expect("table covers 1..=max").to_string())
                .collect();
            (*max, *format, "k,rooted", values)
        }
        CountKind::Free { max, format } => {
            require_positive(*max, "max")?;
            let table = counting::free_counts(*max)?;
            let values: Vec<String> = (1..=*max)
                .map(|n| table.free(n).expect("table covers 1..=max").to_string())
                .collect();
            (*max, *format, "n,free", values)
        }
    };
    debug_assert_eq!(values.len(), max);
    Ok(render_series(header, &values, format))
}

pub fn alpha(k: usize, method: MethodArg, digits: u32, format: Fmt) -> Result<String, AppError> {
    let method = match method {
        MethodArg::Root => AlphaMethod::Root,
        MethodArg::Ratio => AlphaMethod::Ratio,
    };
    let estimate = counting::alpha_estimate(k, method, digits)?.to_string();
    Ok(match format {
        Fmt::Text => format!("{k} {estimate}\n"),
        Fmt::Csv => format!("k,alpha\n{k},{estimate}\n"),
        Fmt::Json => format!("{}\n", json!([estimate])),
    })
}

pub fn choose_k(epsilon: &BigRational, cap: usize, format: Fmt) -> Result<String, AppError> {
    let mut table = CountTable::new();
    let k = counting::choose_k(epsilon, &mut table, cap)?;
    Ok(match format {
        Fmt::Text => format!("{k}\n"),
        Fmt::Csv => format!("k\n{k}\n"),
        Fmt::Json => format!("{}\n", json!([k.to_string()])),
    })
}

pub fn gen(kind: &GenKind) -> Result<String, AppError> {
    let mut out = String::new();
    match kind {
        GenKind::Rooted {
            k,
            limit,
            format,
            cap,
        } => {
            require_positive(*k, "k")?;
            let cap = cap.unwrap_or(treegen::DEFAULT_ROOTED_CAP);
            let trees = treegen::all_rooted_capped(*k, cap)?;
            for rt in trees.take(limit.unwrap_or(usize::MAX)) {
                match format {
                    TreeFmt::Edges => {
                        out.push_str(&render_graph_line(*k, rt.tree().edges()));
                    }
                    TreeFmt::Canon => out.push_str(&rt.canon().to_string()),
                }
                out.push('\n');
            }
        }
        GenKind::Free {
            k,
            limit,
            format,
            cap,
        } => {
            require_positive(*k, "k")?;
            let cap = cap.unwrap_or(treegen::DEFAULT_FREE_CAP);
            let trees = treegen::all_free_capped(*k, cap)?;
            for t in trees.take(limit.unwrap_or(usize::MAX)) {
                match format {
                    TreeFmt::Edges => out.push_str(&render_graph_line(*k, t.edges())),
                    TreeFmt::Canon => out.push_str(&t.canon_free().to_string()),
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

pub fn spine(kind: &SpineCmd) -> Result<String, AppError> {
    match kind {
        SpineCmd::Params { n, k, json } => {
            let p = spine::compute_params(*n, *k)?;
            Ok(if *json {
                format!(
                    "{}\n",
                    json!({
                        "n": p.n, "k": p.k, "l": p.l, "r": p.r, "a": p.a, "b": p.b
                    })
                )
            } else {
                format!(
                    "n {}\nk {}\nl {}\nr {}\na {}\nb {}\n",
                    p.n, p.k, p.l, p.r, p.a, p.b
                )
            })
        }
        SpineCmd::Encode { n, k, blocks } => {
            let text = std::fs::read_to_string(blocks)?;
            let mut tuple = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (bn, edges) = parse_graph(line)?;
                let tree = Tree::from_edges(bn, edges)?;
                tuple.push(RootedTree::new(tree, 0)?);
            }
            let params = spine::compute_params(*n, *k)?;
            let encoded = spine::encode(&params, &TreeTuple::new(tuple))?;
            Ok(render_graph(*n, encoded.edges()))
        }
        SpineCmd::Decode { k, file } => {
            let text = std::fs::read_to_string(file)?;
            let (n, edges) = parse_graph(&text)?;
            let tree = Tree::from_edges(n, edges)?;
            let tuple = spine::decode(&tree, *k)?;
            let mut out = String::new();
            for block in tuple.blocks() {
                out.push_str(&render_graph_line(*k, block.tree().edges()));
                out.push('\n');
            }
            Ok(out)
        }
        SpineCmd::Certify { epsilon, n, json } => certify(epsilon, *n, *json),
    }
}

fn certify(epsilon: &BigRational, n: usize, as_json: bool) -> Result<String, AppError> {
    let cert = spine::certify(epsilon, n)?;
    let a_k = rooted_count(cert.k)?;
    Ok(if as_json {
        format!(
            "{}\n",
            json!({
                "epsilon": cert.epsilon.to_string(),
                "n": cert.n,
                "k": cert.k,
                "l": cert.l,
                "delta": cert.delta,
                "rho": cert.rho.to_string(),
                "a_k": a_k.to_string(),
                "realized_digits": cert.realized_digits,
                "target_digits": cert.target_digits,
                "verdict": cert.verdict
            })
        )
    } else {
        format!(
            "epsilon {}\nn {}\nk {}\nl {}\ndelta {}\nrho {}\na_k {}\n\
             realized_digits {}\ntarget_digits {}\nverdict {}\n",
            cert.epsilon,
            cert.n,
            cert.k,
            cert.l,
            cert.delta,
            cert.rho,
            a_k,
            cert.realized_digits,
            cert.target_digits,
            cert.verdict
        )
    })
}

fn rooted_count(k: usize) -> Result<BigUint, AppError> {
    let table = counting::rooted_counts(k)?;
    Ok(table.rooted(k).expect("table covers k").clone())
}

/// Exact frequency `num/den` with six fractional digits.
pub fn frequency(num: u64, den: u64) -> String {
    ratio_decimal(&BigUint::from(num), &BigUint::from(den), 6).to_string()
}

fn render_series(header: &str, values: &[String], format: Fmt) -> String {
    let mut out = String::new();
    match format {
        Fmt::Text => {
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{} {}\n", i + 1, v));
            }
        }
        Fmt::Csv => {
            out.push_str(header);
            out.push('\n');
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, v));
            }
        }
        Fmt::Json => {
            out.push_str(&json!(values).to_string());
            out.push('\n');
        }
    }
    out
}

fn require_positive(v: usize, name: &'static str) -> Result<(), AppError> {
    if v == 0 {
        return Err(AppError::new(
            "bad_parameters",
            format!("{name} must be at least 1"),
        ));
    }
    Ok(())
}
