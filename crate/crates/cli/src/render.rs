//! Stable JSON encodings of library values; rationals are strings `p` or `p/q`.

use realrank::binform::{BinForm, Role};
use realrank::decide::{CellInventory, DecideOutcome, DecideVerdict};
use realrank::dual::{EliminationReport, Verdict};
use realrank::partition::Partition;
use realrank::rank::{Basis, Decomposition, RankKind, RankResult};
use realrank::Q;
use serde_json::{json, Value};

pub fn q(x: &Q) -> Value {
    Value::String(x.to_string())
}

pub fn role(r: Role) -> &'static str {
    match r {
        Role::Form => "form",
        Role::Operator => "operator",
    }
}

pub fn form(f: &BinForm) -> Value {
    json!({
        "expr": f.to_string(),
        "role": role(f.role()),
        "degree": f.degree(),
        "coeffs": f.coeffs().iter().map(q).collect::<Vec<_>>(),
    })
}

pub fn opt_form(f: Option<&BinForm>) -> Value {
    f.map_or(Value::Null, form)
}

pub fn partition(p: &Partition) -> Value {
    json!(p.parts())
}

pub fn decide_verdict(v: DecideVerdict) -> &'static str {
    match v {
        DecideVerdict::Nonempty => "nonempty",
        DecideVerdict::Empty => "empty",
        DecideVerdict::Undecided => "undecided",
    }
}

pub fn dual_verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::ProbableTrue => "probable_true",
    }
}

pub fn basis(b: Basis) -> &'static str {
    match b {
        Basis::Witness => "witness",
        Basis::PurePower => "pure_power",
        Basis::RealRootedTop => "real_rooted_top",
        Basis::ExcludedTop => "excluded_top",
        Basis::DegreeBound => "degree_bound",
    }
}

pub fn rank_kind(k: &RankKind) -> Value {
    match k {
        RankKind::Exact { rank } => json!({"kind": "exact", "rank": rank, "display": k.to_string()}),
        RankKind::Range { lo, hi } => json!({"kind": "range", "lo": lo, "hi": hi, "display": k.to_string()}),
    }
}

pub fn cells(c: &[CellInventory]) -> Value {
    c.iter()
        .map(|i| {
            json!({
                "chart": i.chart,
                "label": i.label,
                "projection": i.projection,
                "samples": i.samples.iter().map(|s| s.iter().map(q).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "counts": i.counts,
            })
        })
        .collect()
}

pub fn rank_result(r: &RankResult) -> Value {
    json!({
        "rank": rank_kind(&r.kind),
        "basis": basis(r.basis),
        "lower_bound": r.lower_bound,
        "witness": opt_form(r.witness.as_ref()),
        "levels": r.levels.iter().map(|l| json!({
            "level": l.level,
            "params": l.params,
            "verdict": decide_verdict(l.verdict),
            "reason": l.reason,
            "elapsed_ms": l.elapsed_ms,
            "samples": l.cells.iter().map(|c| c.samples.len()).sum::<usize>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn decomposition(d: &Decomposition) -> Value {
    json!({
        "exact": d.exact,
        "precision": d.precision,
        "residual": d.residual_f64(),
        "terms": d.display_terms().into_iter().map(|(c, a, b)| json!({"coeff": c, "a": a, "b": b})).collect::<Vec<_>>(),
    })
}

pub fn decide_outcome(o: &DecideOutcome) -> Value {
    json!({
        "verdict": decide_verdict(o.verdict),
        "witness": opt_form(o.witness.as_ref()),
        "reason": o.reason,
        "elapsed_ms": o.elapsed_ms,
        "cells": cells(&o.cells),
    })
}

pub fn elimination(r: &EliminationReport) -> Value {
    json!({
        "verdict": dual_verdict(r.verdict),
        "lambda": partition(&r.lambda),
        "reduced_pattern": r.reduced_pattern.as_ref().map(partition),
        "witness": opt_form(r.witness.as_ref()),
        "numeric_witness": r.numeric_witness.as_ref().map(|w| json!({
            "coeffs": w.coeffs.iter().map(|(re, im)| json!([re, im])).collect::<Vec<_>>(),
            "residual": w.residual,
        })),
        "eliminants": r.eliminants.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "final_gcd": r.final_gcd.to_string(),
        "charts": r.charts.iter().map(|c| json!({
            "chart": c.chart,
            "eliminant": c.eliminant.as_ref().map(|p| p.to_string()),
            "outcome": c.outcome,
        })).collect::<Vec<_>>(),
    })
}

/// Multi-line plain-text rendering of a rank result.
pub fn rank_text(r: &RankResult) -> String {
    let mut s = format!("{}\nbasis: {}\nlower bound: {}\n", r.kind, basis(r.basis), r.lower_bound);
    if let Some(w) = &r.witness {
        s += &format!("witness: {w}\n");
    }
    for l in &r.levels {
        s += &format!(
            "level {}: {} ({} parameters, {} ms): {}\n",
            l.level,
            decide_verdict(l.verdict),
            l.params,
            l.elapsed_ms,
            l.reason
        );
    }
    s
}
