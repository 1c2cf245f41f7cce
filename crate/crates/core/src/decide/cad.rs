//! Sample points of the full-dimensional cells of the complement of a
//! real hypersurface in one or two parameters (open cylindrical
//! decomposition: no lifting over lower-dimensional cells).

use crate::error::{Error, Result};
use crate::num::{above, below, simple_between};
use crate::poly::{BiPoly, ZPoly};
use crate::ring::Ring;
use crate::zpoly::{isolate_real_roots_z, refine, RootInterval};
use crate::Q;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// A polynomial in one parameter `t1`, or in two parameters `(t1, t2)`
/// stored with `t2` as the main variable over `Z[t1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamPoly {
    One(ZPoly),
    Two(BiPoly),
}

impl ParamPoly {
    pub fn is_zero(&self) -> bool {
        match self {
            ParamPoly::One(p) => p.is_zero(),
            ParamPoly::Two(p) => p.is_zero(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            ParamPoly::One(_) => 1,
            ParamPoly::Two(_) => 2,
        }
    }

    /// Exact value at a rational point with one entry per parameter.
    pub fn eval(&self, t: &[Q]) -> Q {
        match self {
            ParamPoly::One(p) => p.eval_q(&t[0]),
            ParamPoly::Two(p) => eval_bi(p, &t[0], &t[1]),
        }
    }
}

/// Projection polynomials and samples of one decomposition, for audit.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    /// Squarefree, content-free polynomials per level in canonical text.
    pub levels: Vec<Vec<String>>,
    pub samples: Vec<Vec<Q>>,
}

pub(crate) fn eval_bi(p: &BiPoly, t1: &Q, t2: &Q) -> Q {
    p.coeffs().iter().rev().fold(Q::from_integer(0.into()), |acc, c| acc * t2 + c.eval_q(t1))
}

/// Integer polynomial in `t2` proportional to `p(t1, t2)` at fixed `t1`.
pub(crate) fn specialize(p: &BiPoly, t1: &Q) -> ZPoly {
    let c: Vec<Q> = p.coeffs().iter().map(|c| c.eval_q(t1)).collect();
    ZPoly::from_rationals(&c)
}

/// Text of an integer polynomial in the named variable, highest degree first.
pub(crate) fn zpoly_text(p: &ZPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.sign() == num_bigint::Sign::Minus;
        let a = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let one = a == num_bigint::BigInt::from(1);
        match i {
            0 => out.push_str(&a.to_string()),
            _ => {
                if !one {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    out
}

pub(crate) fn bipoly_text(p: &BiPoly, inner: &str, outer: &str) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("({})", zpoly_text(c, inner)),
            1 => format!("({})*{outer}", zpoly_text(c, inner)),
            _ => format!("({})*{outer}^{i}", zpoly_text(c, inner)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Sorted isolating intervals of the real roots of the product of
/// `factors`, pairwise separated by gaps of positive length. Each factor is
/// isolated on its own; the factors must be pairwise coprime.
fn separated_roots(factors: &[ZPoly]) -> Vec<RootInterval> {
    let sq: Vec<ZPoly> = factors.iter().filter(|f| f.deg() > 0).map(|f| f.squarefree_part()).collect();
    let mut ivs: Vec<(RootInterval, usize)> =
        sq.iter().enumerate().flat_map(|(k, f)| isolate_real_roots_z(f).into_iter().map(move |iv| (iv, k))).collect();
    loop {
        ivs.sort_by(|a, b| a.0.lo.cmp(&b.0.lo).then(a.0.hi.cmp(&b.0.hi)));
        let touching = (1..ivs.len()).find(|&i| ivs[i - 1].0.hi >= ivs[i].0.lo);
        let Some(i) = touching else { break };
        for k in [i - 1, i] {
            let (iv, f) = &ivs[k];
            let w = (&iv.hi - &iv.lo) / Q::from_integer(4.into());
            ivs[k].0 = refine(&sq[*f], iv, &w);
        }
    }
    ivs.into_iter().map(|(iv, _)| iv).collect()
}

/// One rational point in each open interval of `R` minus the real roots
/// of the coprime `factors`.
pub(crate) fn line_samples_of(factors: &[ZPoly]) -> Vec<Q> {
    let ivs = separated_roots(factors);
    if ivs.is_empty() {
        return vec![Q::from_integer(0.into())];
    }
    let mut out = vec![below(&ivs[0].lo)];
    for w in ivs.windows(2) {
        out.push(simple_between(&w[0].hi, &w[1].lo));
    }
    out.push(above(&ivs[ivs.len() - 1].hi));
    out
}

/// One rational point in each open interval of `R` minus the real roots of
/// `p` (`p` nonzero).
pub fn line_samples(p: &ZPoly) -> Vec<Q> {
    line_samples_of(std::slice::from_ref(p))
}

/// Resultant in the main variable of two bivariate polynomials, as a
/// polynomial in `t1`: formal resultants at `t1 = 0..=D` for a degree bound
/// `D`, interpolated through forward differences in exact integers.
pub(crate) fn bi_resultant(a: &BiPoly, b: &BiPoly) -> ZPoly {
    if a.is_zero() || b.is_zero() {
        return ZPoly::zero();
    }
    let (m, n) = (a.deg() as usize, b.deg() as usize);
    let inner = |p: &BiPoly| p.coeffs().iter().map(|c| c.deg().max(0) as usize).max().unwrap_or(0);
    let bound = n * inner(a) + m * inner(b);
    let mut diffs: Vec<BigInt> = (0..=bound)
        .map(|k| {
            let x = BigInt::from(k);
            let at = |p: &BiPoly| ZPoly::new(p.coeffs().iter().map(|c| c.eval(&x)).collect());
            at(a).resultant_formal(m, &at(b), n)
        })
        .collect();
    // forward differences: diffs[k] becomes the k-th difference at 0
    for k in 1..=bound {
        for i in (k..=bound).rev() {
            let d = &diffs[i] - &diffs[i - 1];
            diffs[i] = d;
        }
    }
    // p(x) = sum_k diffs[k] / k! * x (x - 1) ... (x - k + 1), by Horner
    let mut fact = BigInt::from(1);
    let coef: Vec<BigInt> = diffs
        .iter()
        .enumerate()
        .map(|(k, d)| {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            d / &fact
        })
        .collect();
    let mut acc = ZPoly::constant(coef[bound].clone());
    for k in (0..bound).rev() {
        // acc <- coef[k] + (x - k) acc
        acc = acc.mul(&ZPoly::new(vec![BigInt::from(-(k as i64)), BigInt::from(1)])).add(&ZPoly::constant(coef[k].clone()));
    }
    acc
}

/// Univariate polynomial whose real roots include every critical `t1` of
/// the cylindrical decomposition of `polys` in `t2` over `t1`: contents,
/// leading coefficients, discriminants and pairwise resultants.
pub(crate) fn projection(polys: &[BiPoly], extra: &[ZPoly]) -> (Vec<ZPoly>, Vec<ZPoly>, Vec<BiPoly>) {
    let mut factors: Vec<ZPoly> = extra.iter().filter(|p| p.deg() > 0).map(|p| p.squarefree_part()).collect();
    let mut fibres: Vec<BiPoly> = Vec::new();
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let c = p.content();
        if c.deg() > 0 {
            factors.push(c.squarefree_part());
        }
        let pp = p.primitive();
        if pp.deg() <= 0 {
            continue;
        }
        let sq = pp.squarefree_part();
        // keep the fibre polynomials pairwise coprime
        let mut rest = sq;
        for f in &fibres {
            let g = rest.gcd(f);
            if g.deg() > 0 {
                rest = rest.div_exact(&g).expect("gcd divides");
            }
        }
        if rest.deg() > 0 {
            let lc = rest.lc();
            if lc.deg() > 0 {
                factors.push(lc.squarefree_part());
            }
            if rest.deg() >= 2 {
                let disc = bi_resultant(&rest, &rest.derivative());
                if disc.deg() > 0 {
                    factors.push(disc.squarefree_part());
                }
            }
            fibres.push(rest);
        }
    }
    for i in 0..fibres.len() {
        for j in i + 1..fibres.len() {
            let r = bi_resultant(&fibres[i], &fibres[j]);
            if r.deg() > 0 {
                factors.push(r.squarefree_part());
            }
        }
    }
    // split into pairwise coprime squarefree parts
    factors.sort_by_key(|f| f.deg());
    factors.dedup();
    let mut parts: Vec<ZPoly> = Vec::new();
    for f in &factors {
        let mut rest = f.clone();
        for p in &parts {
            let g = rest.gcd(p);
            if g.deg() > 0 {
                rest = rest.div_exact(&g).expect("gcd divides");
            }
        }
        if rest.deg() > 0 {
            parts.push(rest);
        }
    }
    (parts, factors, fibres)
}

/// Sample points meeting every connected component of the complement of
/// the union of the zero sets of `polys` in the `(t1, t2)` plane, together
/// with the zero sets of the univariate `extra` polynomials in `t1`.
pub(crate) fn plane_samples(polys: &[BiPoly], extra: &[ZPoly], proj: &mut Projection) -> Vec<(Q, Q)> {
    let (base, factors, fibres) = projection(polys, extra);
    proj.levels.push(factors.iter().map(|f| zpoly_text(f, "t1")).collect());
    proj.levels.push(fibres.iter().map(|f| bipoly_text(f, "t1", "t2")).collect());
    let mut out = Vec::new();
    for t1 in line_samples_of(&base) {
        let fibre: Vec<ZPoly> = fibres.iter().map(|f| specialize(f, &t1)).collect();
        for t2 in line_samples_of(&fibre) {
            proj.samples.push(vec![t1.clone(), t2.clone()]);
            out.push((t1.clone(), t2));
        }
    }
    out
}

/// Rational points, one in every connected component of `{D != 0}`.
pub fn open_cad_samples(d: &ParamPoly) -> Result<Vec<Vec<Q>>> {
    Ok(open_cad_with_projection(d)?.samples)
}

/// [`open_cad_samples`] with the projection polynomials retained.
pub fn open_cad_with_projection(d: &ParamPoly) -> Result<Projection> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut proj = Projection::default();
    match d {
        ParamPoly::One(p) => {
            let sq = p.squarefree_part();
            proj.levels.push(vec![zpoly_text(&sq, "t1")]);
            proj.samples = line_samples(p).into_iter().map(|t| vec![t]).collect();
        }
        ParamPoly::Two(p) => {
            plane_samples(std::slice::from_ref(p), &[], &mut proj);
        }
    }
    Ok(proj)
}
