//! One function per subcommand. Each returns a JSON payload, its plain-text
//! rendering and an exit code, or a library error.

use crate::render;
use realrank::apolarity::{apolar_ideal, recover, LinearSystem};
use realrank::binform::{BinForm, Role};
use realrank::crl::{boundary_components, ch_is_hypersurface, crl_descriptor, crl_member, dual_descriptor};
use realrank::decide::{contains_realrooted, Budget, DecideVerdict};
use realrank::dual::{dual_member, Verdict};
use realrank::expr::{parse_expanded, parse_form, Expanded};
use realrank::num::{parse_q, q_to_f64};
use realrank::partition::Partition;
use realrank::rank::{decompose, real_rank, rank_scan, RankKind};
use realrank::upoly::{isolate_real_roots, squarefree_decomposition, sturm_count, UniPoly};
use realrank::zpoly::Ext;
use realrank::{Error, Result, Q};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;

pub const OK: i32 = 0;
pub const DOMAIN: i32 = 1;
pub const USAGE: i32 = 2;
pub const UNDECIDED: i32 = 3;

/// Outcome of a successful command.
pub struct Output {
    pub payload: Value,
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(payload: Value, text: String) -> Self {
        Output { payload, text, code: OK }
    }
}

/// Exit code of a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidPartition(_) => USAGE,
        _ => DOMAIN,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ZeroInput => "zero_input",
        Error::DegreeMismatch(_) => "degree_mismatch",
        Error::WrongRole { .. } => "wrong_role",
        Error::OutOfRange(_) => "out_of_range",
        Error::RankOne { .. } => "rank_one",
        Error::NotCoprime => "not_coprime",
        Error::SolutionDimension(_) => "solution_dimension",
        Error::DependentBasis => "dependent_basis",
        Error::PartitionMismatch { .. } => "partition_mismatch",
        Error::InvalidPartition(_) => "invalid_partition",
        Error::NotCovered(_) => "not_covered",
        Error::NoWitness => "no_witness",
        Error::Parse(_) => "parse",
        Error::Unsupported(_) => "unsupported",
    }
}

fn form_arg(s: &str) -> Result<BinForm> {
    let f = parse_form(s)?;
    if f.role() != Role::Form {
        return Err(Error::WrongRole { expected: Role::Form.name(), got: f.role().name() });
    }
    Ok(f)
}

fn operator_arg(s: &str) -> Result<BinForm> {
    // an operator given in x, y is read in u, v
    Ok(parse_form(s)?.with_role(Role::Operator))
}

pub fn partition_arg(s: &str) -> Result<Partition> {
    s.parse()
}

pub fn rational_list(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .map(|t| parse_q(t).ok_or_else(|| Error::Parse(format!("bad rational '{}'", t.trim()))))
        .collect()
}

pub fn rank(expr: &str, budget: &Budget, exact: bool, digits: Option<usize>) -> Result<Output> {
    let f = form_arg(expr)?;
    let r = real_rank(&f, budget)?;
    let mut payload = json!({"form": render::form(&f), "result": render::rank_result(&r)});
    let mut text = render::rank_text(&r);
    if let (Some(p), Some(w)) = (digits, &r.witness) {
        let d = decompose(&f, w, p)?;
        payload["decomposition"] = render::decomposition(&d);
        for (c, a, b) in d.display_terms() {
            let _ = writeln!(text, "  {c} * ({a}*x + {b}*y)^{}", f.degree());
        }
        let _ = writeln!(text, "residual: {:e}", d.residual_f64());
    }
    let range = matches!(r.kind, RankKind::Range { .. });
    let squarefree = f.degree() >= 2 && f.discriminant()? != Q::from_integer(0.into());
    // exact mode refuses to degrade to a range where one is always decidable in principle
    let code = if exact && range && f.degree() <= 8 && squarefree { UNDECIDED } else { OK };
    Ok(Output { payload, text, code })
}

pub fn member(lambda: &str, expr: &str, dual: bool) -> Result<Output> {
    let lambda = partition_arg(lambda)?;
    if dual {
        let f = form_arg(expr)?;
        let rep = dual_member(&f, &lambda)?;
        let mut text = format!("{}\n", render::dual_verdict(rep.verdict).replace('_', "-"));
        if let Some(w) = &rep.witness {
            let _ = writeln!(text, "witness: {w}");
        }
        if let Some(nw) = &rep.numeric_witness {
            let _ = writeln!(text, "numeric witness residual: {:e}", nw.residual);
        }
        for c in &rep.charts {
            let _ = writeln!(text, "chart [{}]: {}", c.chart.join(", "), c.outcome);
        }
        let payload = json!({
            "mode": "dual",
            "lambda": render::partition(&lambda),
            "form": render::form(&f),
            "member": rep.verdict != Verdict::False,
            "report": render::elimination(&rep),
        });
        Ok(Output::ok(payload, text))
    } else {
        let h = parse_form(expr)?;
        let m = crl_member(&h, &lambda)?;
        let payload = json!({
            "mode": "locus",
            "lambda": render::partition(&lambda),
            "form": render::form(&h),
            "member": m,
            "multiplicities": render::partition(&h.multiplicity_partition()?),
        });
        Ok(Output::ok(payload, format!("{m}\n")))
    }
}

pub fn apolar(expr: &str) -> Result<Output> {
    let f = form_arg(expr)?;
    let id = apolar_ideal(&f)?;
    let (a, b) = id.degrees();
    let text = format!("degrees: ({a}, {b})\ng: {}\ng': {}\n", id.g, id.gprime);
    let payload = json!({
        "form": render::form(&f),
        "degrees": [a, b],
        "g": render::form(&id.g),
        "gprime": render::form(&id.gprime),
    });
    Ok(Output::ok(payload, text))
}

pub fn recover_cmd(g: &str, gprime: &str) -> Result<Output> {
    let (g, gp) = (operator_arg(g)?, operator_arg(gprime)?);
    let f = recover(&g, &gp)?;
    let payload = json!({"g": render::form(&g), "gprime": render::form(&gp), "form": render::form(&f)});
    Ok(Output::ok(payload, format!("{f}\n")))
}

pub fn boundary(d: u32, r: u32) -> Result<Output> {
    let comps = boundary_components(d, r)?;
    let mut text = String::new();
    let mut list = Vec::new();
    for lambda in &comps {
        let dd = dual_descriptor(lambda);
        let joins: Vec<String> = dd.join_components.iter().map(|p| p.to_string()).collect();
        let deg = dd.degree.as_ref().map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(text, "{lambda}: degree {deg}, codim {}, join {}", dd.codim, joins.join(" * "));
        list.push(json!({
            "lambda": render::partition(lambda),
            "codim": dd.codim,
            "degree": dd.degree.map(|x| x.to_string()),
            "join_components": dd.join_components.iter().map(render::partition).collect::<Vec<_>>(),
        }));
    }
    Ok(Output::ok(json!({"d": d, "r": r, "components": list}), text))
}

pub fn crl(lambda: &str) -> Result<Output> {
    let lambda = partition_arg(lambda)?;
    let c = crl_descriptor(&lambda);
    let dd = dual_descriptor(&lambda);
    let ch: Vec<bool> = (1..=lambda.len()).map(|i| ch_is_hypersurface(&lambda, i)).collect::<Result<_>>()?;
    let joins: Vec<String> = dd.join_components.iter().map(|p| p.to_string()).collect();
    let mut text = format!("locus {lambda} in degree {}: dimension {}, degree {}\n", c.ambient_degree, c.dim, c.degree);
    let _ = writeln!(
        text,
        "dual: codim {}, degree {}, join {}",
        dd.codim,
        dd.degree.as_ref().map_or("-".to_string(), |x| x.to_string()),
        if joins.is_empty() { "-".to_string() } else { joins.join(" * ") }
    );
    for (i, h) in ch.iter().enumerate() {
        let _ = writeln!(text, "CH_{}: {}", i + 1, if *h { "hypersurface" } else { "not a hypersurface" });
    }
    let payload = json!({
        "lambda": render::partition(&lambda),
        "d": c.ambient_degree,
        "dim": c.dim,
        "degree": c.degree.to_string(),
        "dual": {
            "codim": dd.codim,
            "degree": dd.degree.map(|x| x.to_string()),
            "join_components": dd.join_components.iter().map(render::partition).collect::<Vec<_>>(),
        },
        "ch_hypersurface": ch,
    });
    Ok(Output::ok(payload, text))
}

/// `basis:level`, naming how a rank was certified.
fn certificate_level(r: &realrank::rank::RankResult) -> String {
    let level = match (&r.witness, r.levels.last()) {
        (Some(w), _) => w.degree(),
        (None, Some(l)) => l.level,
        (None, None) => r.lower_bound,
    };
    format!("{}:{level}", render::basis(r.basis))
}

pub fn scan(family: &str, values: &str, csv_path: Option<&Path>, budget: &Budget) -> Result<Output> {
    let fam: Expanded = parse_expanded(family)?;
    if fam.role != Role::Form {
        return Err(Error::Parse("a family must be written in x, y".into()));
    }
    let values = rational_list(values)?;
    let rows = rank_scan(&fam, &values, budget)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::OutOfRange(format!("csv: {e}"));
    w.write_record(["epsilon", "coefficients", "rank", "certificate-level"]).map_err(io)?;
    let mut list = Vec::new();
    let mut code = OK;
    for row in &rows {
        let coeffs: Vec<String> = row.form.coeffs().iter().map(|c| c.to_string()).collect();
        let cert = certificate_level(&row.rank);
        w.write_record([row.epsilon.to_string(), coeffs.join(" "), row.rank.kind.to_string(), cert.clone()])
            .map_err(io)?;
        if row.rank.kind.exact().is_none() {
            code = UNDECIDED;
        }
        list.push(json!({
            "epsilon": render::q(&row.epsilon),
            "form": render::form(&row.form),
            "rank": render::rank_kind(&row.rank.kind),
            "certificate_level": cert,
            "result": render::rank_result(&row.rank),
        }));
    }
    let table = String::from_utf8(w.into_inner().map_err(|e| Error::OutOfRange(format!("csv: {e}")))?)
        .expect("csv output is utf-8");
    let text = match csv_path {
        Some(p) => {
            std::fs::write(p, &table).map_err(|e| Error::OutOfRange(format!("{}: {e}", p.display())))?;
            format!("wrote {} rows to {}\n", rows.len(), p.display())
        }
        None => table,
    };
    Ok(Output { payload: json!({"family": fam.to_string(), "rows": list}), text, code })
}

pub fn decide(basis: &[String], budget: &Budget, chart_order: Option<&str>) -> Result<Output> {
    let mut forms: Vec<BinForm> = basis.iter().map(|s| operator_arg(s)).collect::<Result<_>>()?;
    if forms.is_empty() {
        return Err(Error::Parse("decide needs at least one basis element".into()));
    }
    let order: Vec<usize> = match chart_order {
        None => (0..forms.len()).collect(),
        Some(s) => s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad chart index '{t}'"))))
            .collect::<Result<_>>()?,
    };
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..forms.len()).collect::<Vec<_>>() {
        return Err(Error::Parse(format!("chart order must be a permutation of 0..{}", forms.len() - 1)));
    }
    // the first basis element spans the base chart
    forms = order.iter().map(|&i| forms[i].clone()).collect();
    let system = LinearSystem::new(forms[0].degree(), forms)?;
    let out = contains_realrooted(&system, budget)?;
    let mut text = format!("{}\nreason: {}\n", render::decide_verdict(out.verdict), out.reason);
    if let Some(w) = &out.witness {
        let _ = writeln!(text, "witness: {w}");
    }
    for c in &out.cells {
        let _ = writeln!(text, "cells [{}]: {} samples", c.label, c.samples.len());
    }
    let code = if out.verdict == DecideVerdict::Undecided { UNDECIDED } else { OK };
    let payload = json!({
        "basis": system.basis().iter().map(render::form).collect::<Vec<_>>(),
        "chart_order": order,
        "outcome": render::decide_outcome(&out),
    });
    Ok(Output { payload, text, code })
}

fn univariate(expr: &str) -> Result<UniPoly> {
    let e = parse_expanded(expr)?;
    if e.role != Role::Form || e.terms.keys().any(|k| k.1 > 0 || k.2 > 0) {
        return Err(Error::Parse("sturm takes a univariate polynomial in x".into()));
    }
    let deg = e.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let mut c = vec![Q::from_integer(0.into()); deg + 1];
    for (k, v) in &e.terms {
        c[k.0 as usize] = v.clone();
    }
    Ok(UniPoly::new(c))
}

fn ext(s: Option<&str>, default: Ext) -> Result<Ext> {
    match s.map(str::trim) {
        None => Ok(default),
        Some("-inf") => Ok(Ext::NegInf),
        Some("inf" | "+inf") => Ok(Ext::PosInf),
        Some(t) => parse_q(t).map(Ext::Fin).ok_or_else(|| Error::Parse(format!("bad bound '{t}'"))),
    }
}

pub fn sturm(expr: &str, from: Option<&str>, to: Option<&str>) -> Result<Output> {
    let p = univariate(expr)?;
    let (a, b) = (ext(from, Ext::NegInf)?, ext(to, Ext::PosInf)?);
    let count = sturm_count(&p, &a, &b)?;
    let sqf = squarefree_decomposition(&p)?.into_iter().fold(UniPoly::one(), |acc, (f, _)| acc.mul(&f));
    let roots = if sqf.degree().unwrap_or(0) == 0 { Vec::new() } else { isolate_real_roots(&sqf)? };
    let show = |e: &Ext| match e {
        Ext::NegInf => "-inf".to_string(),
        Ext::PosInf => "inf".to_string(),
        Ext::Fin(x) => x.to_string(),
    };
    let mut text = format!("distinct real roots in ({}, {}]: {count}\nisolating intervals of all real roots:\n", show(&a), show(&b));
    for iv in &roots {
        let _ = writeln!(text, "  [{}, {}] ~ {}", iv.lo, iv.hi, (q_to_f64(&iv.lo) + q_to_f64(&iv.hi)) / 2.0);
    }
    let payload = json!({
        "poly": p.to_string().replace('t', "x"),
        "from": show(&a),
        "to": show(&b),
        "count": count,
        "intervals": roots.iter().map(|iv| json!([render::q(&iv.lo), render::q(&iv.hi)])).collect::<Vec<_>>(),
    });
    Ok(Output::ok(payload, text))
}
