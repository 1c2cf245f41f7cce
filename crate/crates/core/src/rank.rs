//! Real rank of binary forms with certificates, rank bounds, numeric
//! decompositions and scans over one-parameter families.

use crate::apolarity::{apolar_space, contract};
use crate::binform::{BinForm, Role};
use crate::decide::{contains_realrooted, Budget, CellInventory, DecideVerdict};
use crate::error::{Error, Result};
use crate::expr::Expanded;
use crate::matrix::MatQ;
use crate::num::{q_to_f64, to_decimal};
use crate::zpoly::{isolate_real_roots_z, rational_roots, refine};
use crate::Q;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Exact rank, or bounds when a level stayed undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankKind {
    Exact { rank: usize },
    Range { lo: usize, hi: usize },
}

impl RankKind {
    pub fn exact(self) -> Option<usize> {
        match self {
            RankKind::Exact { rank } => Some(rank),
            RankKind::Range { .. } => None,
        }
    }
}

impl std::fmt::Display for RankKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankKind::Exact { rank } => write!(f, "Exact({rank})"),
            RankKind::Range { lo, hi } => write!(f, "Range({lo}, {hi})"),
        }
    }
}

/// How the positive side of a rank result is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// A squarefree real-rooted annihilator of the rank's degree.
    Witness,
    /// The form is a power of a real linear form.
    PurePower,
    /// Squarefree with all roots real: the rank equals the degree.
    RealRootedTop,
    /// Squarefree with a non-real root, so the degree is excluded and the
    /// remaining level is forced.
    ExcludedTop,
    /// The rank of a form never exceeds its degree.
    DegreeBound,
}

/// Outcome of the decision at one level `r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: usize,
    /// Projective dimension of the apolar space at this level.
    pub params: usize,
    pub verdict: DecideVerdict,
    pub reason: String,
    pub elapsed_ms: u64,
    pub cells: Vec<CellInventory>,
}

/// Real rank with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankResult {
    pub kind: RankKind,
    pub basis: Basis,
    /// Annihilator of degree `hi` with distinct real roots, when one is known.
    pub witness: Option<BinForm>,
    pub lower_bound: usize,
    pub levels: Vec<LevelRecord>,
}

impl RankResult {
    /// Re-check the witness: real-rooted, of the claimed degree, annihilating `f`.
    pub fn verify(&self, f: &BinForm) -> Result<bool> {
        let hi = match self.kind {
            RankKind::Exact { rank } => rank,
            RankKind::Range { hi, .. } => hi,
        };
        match &self.witness {
            None => Ok(self.basis != Basis::Witness),
            Some(w) => Ok(w.degree() == hi && w.is_real_rooted()? && contract(w, f)?.is_zero()),
        }
    }
}

/// One row of a family scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub epsilon: Q,
    pub form: BinForm,
    pub rank: RankResult,
}

/// A term `c ℓ^d` of a decomposition; `ℓ = a x + b y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Q,
    pub a: Q,
    pub b: Q,
}

/// `f ≈ Σ c_i ℓ_i^d`, exact when every root of the witness is rational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub terms: Vec<Term>,
    pub exact: bool,
    /// Max-norm of the coefficient residual.
    pub residual: Q,
    pub precision: usize,
}

impl Decomposition {
    /// Terms rendered with `precision` decimals.
    pub fn display_terms(&self) -> Vec<(String, String, String)> {
        self.terms
            .iter()
            .map(|t| (to_decimal(&t.coeff, self.precision), to_decimal(&t.a, self.precision), to_decimal(&t.b, self.precision)))
            .collect()
    }

    pub fn residual_f64(&self) -> f64 {
        q_to_f64(&self.residual)
    }
}

fn expect_form(f: &BinForm) -> Result<()> {
    if f.role() != Role::Form {
        return Err(Error::WrongRole { expected: Role::Form.name(), got: f.role().name() });
    }
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(())
}

/// Smallest `r` with a nonzero annihilator of degree `r`.
fn first_apolar_level(f: &BinForm) -> Result<usize> {
    let d = f.degree();
    for r in 0..=d {
        if !apolar_space(f, r)?.is_empty() {
            return Ok(r);
        }
    }
    Ok(d + 1)
}

/// `max(distinct real roots, degree of the first nonzero annihilator)`.
pub fn rank_lower_bound(f: &BinForm) -> Result<usize> {
    expect_form(f)?;
    if f.degree() == 0 {
        return Ok(1);
    }
    Ok(f.real_root_count()?.max(first_apolar_level(f)?))
}

/// Whether `r` lies in the typical range `⌈(d+1)/2⌉ ≤ r ≤ d`.
pub fn is_typical(d: usize, r: usize) -> bool {
    (d + 2) / 2 <= r && r <= d
}

/// Real rank of `f`, deciding the levels upward from the lower bound.
pub fn real_rank(f: &BinForm, budget: &Budget) -> Result<RankResult> {
    expect_form(f)?;
    let t0 = Instant::now();
    let d = f.degree();
    let lower = rank_lower_bound(f)?;
    let mut levels = Vec::new();
    if d == 0 {
        return Ok(RankResult {
            kind: RankKind::Exact { rank: 1 },
            basis: Basis::PurePower,
            witness: None,
            lower_bound: 1,
            levels,
        });
    }
    if first_apolar_level(f)? == 1 {
        let w = apolar_space(f, 1)?.basis()[0].clone();
        return Ok(RankResult { kind: RankKind::Exact { rank: 1 }, basis: Basis::PurePower, witness: Some(w), lower_bound: lower, levels });
    }
    let squarefree = d >= 2 && !f.discriminant()?.is_zero();
    let all_real = f.is_real_rooted()?;
    let remaining = |b: &Budget| -> Budget {
        let mut b = b.clone();
        if let Some(t) = b.time {
            b.time = Some(t.saturating_sub(t0.elapsed()));
        }
        b
    };
    if squarefree && all_real {
        // a witness of degree d is cheap to find; the rank is d regardless
        let out = contains_realrooted(&apolar_space(f, d)?, &remaining(budget).with_time(Duration::from_secs(5)))?;
        return Ok(RankResult { kind: RankKind::Exact { rank: d }, basis: Basis::RealRootedTop, witness: out.witness, lower_bound: lower, levels });
    }
    let top = if squarefree { d - 1 } else { d };
    let mut undecided_from: Option<usize> = None;
    for r in lower..=top {
        let space = apolar_space(f, r)?;
        if space.is_empty() {
            continue;
        }
        let out = contains_realrooted(&space, &remaining(budget))?;
        levels.push(LevelRecord {
            level: r,
            params: space.dim() - 1,
            verdict: out.verdict,
            reason: out.reason.clone(),
            elapsed_ms: out.elapsed_ms,
            cells: out.cells,
        });
        match out.verdict {
            DecideVerdict::Empty => {}
            DecideVerdict::Nonempty => {
                let kind = match undecided_from {
                    None => RankKind::Exact { rank: r },
                    Some(lo) => RankKind::Range { lo, hi: r },
                };
                return Ok(RankResult { kind, basis: Basis::Witness, witness: out.witness, lower_bound: lower, levels });
            }
            DecideVerdict::Undecided => {
                if r == top {
                    // the last admissible level needs no decision
                    break;
                }
                undecided_from.get_or_insert(r);
            }
        }
    }
    let basis = if squarefree { Basis::ExcludedTop } else { Basis::DegreeBound };
    let kind = match undecided_from {
        None => RankKind::Exact { rank: top },
        Some(lo) => RankKind::Range { lo, hi: top },
    };
    Ok(RankResult { kind, basis, witness: None, lower_bound: lower, levels })
}

/// Rank of the family at each value of the parameter, in input order.
pub fn rank_scan(family: &Expanded, values: &[Q], budget: &Budget) -> Result<Vec<ScanRow>> {
    values
        .iter()
        .map(|e| {
            let form = family.at(e).to_binform()?;
            let rank = real_rank(&form, budget)?;
            Ok(ScanRow { epsilon: e.clone(), form, rank })
        })
        .collect()
}

/// Decompose `f` along the roots of a real-rooted annihilator `witness` of
/// degree `r`. Roots are refined until the reassembled form is within
/// `10^-precision` of `f`.
pub fn decompose(f: &BinForm, witness: &BinForm, precision: usize) -> Result<Decomposition> {
    expect_form(f)?;
    if witness.role() != Role::Operator || !witness.is_real_rooted()? || !contract(witness, f)?.is_zero() {
        return Err(Error::NoWitness);
    }
    let tol = Q::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), precision));
    let inf = witness.infinity_multiplicity() > 0;
    let p = witness.dehom_z();
    let rat = rational_roots(&p);
    let exact = rat.len() as isize == p.deg();
    let ivs = isolate_real_roots_z(&p.squarefree_part());
    let mut width = tol.clone() * tol.clone();
    for _ in 0..8 {
        let mut lines: Vec<(Q, Q)> = if exact {
            rat.iter().map(|a| (a.clone(), Q::one())).collect()
        } else {
            ivs.iter()
                .map(|iv| {
                    let iv = refine(&p.squarefree_part(), iv, &width);
                    ((&iv.lo + &iv.hi) / Q::from_integer(2.into()), Q::one())
                })
                .collect()
        };
        if inf {
            lines.push((Q::one(), Q::zero()));
        }
        let (coeffs, residual) = solve_terms(f, &lines);
        if exact || residual <= tol {
            let terms = lines.into_iter().zip(coeffs).map(|((a, b), c)| Term { coeff: c, a, b }).collect();
            return Ok(Decomposition { terms, exact: exact && residual.is_zero(), residual, precision });
        }
        width = &width * &tol;
    }
    Err(Error::Unsupported("decomposition did not reach the requested precision".into()))
}

/// Least-squares coefficients of `f` in the powers `(a x + b y)^d`,
/// solved exactly through the normal equations, and the max residual.
fn solve_terms(f: &BinForm, lines: &[(Q, Q)]) -> (Vec<Q>, Q) {
    let d = f.degree();
    let cols: Vec<Vec<Q>> = lines
        .iter()
        .map(|(a, b)| BinForm::linear(Role::Form, a.clone(), b.clone()).pow(d).coeffs().to_vec())
        .collect();
    let k = cols.len();
    let dot = |u: &[Q], v: &[Q]| u.iter().zip(v).fold(Q::zero(), |s, (x, y)| s + x * y);
    let mut rows: Vec<Vec<Q>> = (0..k).map(|i| (0..k).map(|j| dot(&cols[i], &cols[j])).collect()).collect();
    for (i, row) in rows.iter_mut().enumerate() {
        row.push(-dot(&cols[i], f.coeffs()));
    }
    let ker = MatQ::from_rows(rows).kernel_basis_q();
    let sol: Vec<Q> = ker
        .iter()
        .find(|v| !v[k].is_zero())
        .map(|v| v[..k].iter().map(|x| x / &v[k]).collect())
        .unwrap_or_else(|| vec![Q::zero(); k]);
    let mut res = Q::zero();
    for (i, c) in f.coeffs().iter().enumerate() {
        let s = (0..k).fold(Q::zero(), |s, j| s + &sol[j] * &cols[j][i]);
        res = res.max((s - c).abs());
    }
    (sol, res)
}
