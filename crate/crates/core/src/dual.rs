//! Membership in dual varieties of coincident root loci: `f ∈ (Δ_λ)^∨`
//! iff some `h = Π ℓ_i^(λ_i - 1)` of degree `d - n` annihilates `f`.
//!
//! Parts equal to 2 form one free factor `B` of degree `m_2`, parts equal
//! to 1 drop out, and each part `λ_i ≥ 3` contributes an unknown root.
//! With `P` the product of the powered unknown factors, `h = P·B` lies in
//! `(f^⊥)_{d-n}` iff the matrix `N = Cat · Mult(P)` has a kernel, which is
//! eliminated through its maximal minors and then through resultants in
//! the root unknowns, chart by chart.

use crate::apolarity::{catalecticant, contract};
use crate::binform::{BinForm, Role};
use crate::crl::is_fusion;
use crate::error::{Error, Result};
use crate::matrix::MatQ;
use crate::numeric::{norm, null_vector, poly_roots, zpoly_to_c64, C64};
use crate::partition::Partition;
use crate::poly::{BiPoly, ZPoly};
use crate::ring::{det, Ring};
use crate::upoly::UniPoly;
use crate::zpoly::rational_roots;
use crate::Q;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Outcome of a dual membership decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Certified by an exact witness.
    True,
    /// Certified by constant eliminants in every chart.
    False,
    /// A witness exists at an irrational point; a numeric one is attached.
    ProbableTrue,
}

/// A floating-point operator witness with its relative residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericWitness {
    /// `(re, im)` pairs of the coefficients `c_0..c_e` in `u^(e-i) v^i`.
    pub coeffs: Vec<(f64, f64)>,
    /// `|Cat · h| / (|Cat| |h|)`.
    pub residual: f64,
}

/// Elimination outcome for one chart of the root unknowns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartRecord {
    /// One entry per root unknown: `"a"` for `u - a v`, `"inf"` for `v`.
    pub chart: Vec<String>,
    /// Final univariate eliminant in this chart, when one was formed.
    pub eliminant: Option<UniPoly>,
    pub outcome: String,
}

/// Audit record of a dual membership decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationReport {
    pub lambda: Partition,
    /// `(λ_i - 1 : λ_i ≥ 2)`, absent when every part is 1.
    pub reduced_pattern: Option<Partition>,
    pub eliminants: Vec<UniPoly>,
    pub final_gcd: UniPoly,
    pub verdict: Verdict,
    pub witness: Option<BinForm>,
    pub numeric_witness: Option<NumericWitness>,
    pub charts: Vec<ChartRecord>,
}

struct Ctx {
    /// Integer catalecticant at degree `e = d - n`, `(n+1) × (e+1)`.
    cat: Vec<Vec<BigInt>>,
    m2: usize,
    rng: ChaCha8Rng,
    charts: Vec<ChartRecord>,
    eliminants: Vec<UniPoly>,
    numeric: Option<NumericWitness>,
    inconclusive: bool,
}

/// Product of operator coefficient vectors over a ring.
fn conv<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let mut c = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = c[i + j].add(&x.mul(y));
        }
    }
    c
}

fn power<R: Ring>(l: &[R], e: u32) -> Vec<R> {
    (0..e).fold(vec![R::one()], |acc, _| conv(&acc, l))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Ctx {
    /// `N[row][col] = Σ_j Cat[row][j + col] P[j]`.
    fn n_matrix<R: Ring>(&self, p: &[R], lift: impl Fn(&BigInt) -> R) -> Vec<Vec<R>> {
        self.cat
            .iter()
            .map(|row| {
                (0..=self.m2)
                    .map(|col| {
                        p.iter().enumerate().fold(R::zero(), |acc, (j, pj)| {
                            if pj.is_zero() || row[j + col] == BigInt::from(0) {
                                acc
                            } else {
                                acc.add(&lift(&row[j + col]).mul(pj))
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    }

    fn minors<R: Ring>(&self, n: &[Vec<R>]) -> Vec<R> {
        subsets(n.len(), self.m2 + 1)
            .into_iter()
            .map(|rows| {
                let sub: Vec<Vec<R>> = rows.iter().map(|&i| n[i].clone()).collect();
                det(&sub)
            })
            .collect()
    }

    /// Exact witness `P · B` for a rational operator `P`, if `N` drops rank.
    fn exact_witness(&self, p: &[Q]) -> Option<BinForm> {
        let rows: Vec<Vec<Q>> = self
            .cat
            .iter()
            .map(|row| {
                (0..=self.m2)
                    .map(|col| p.iter().enumerate().map(|(j, pj)| Q::from_integer(row[j + col].clone()) * pj).sum())
                    .collect()
            })
            .collect();
        let k = MatQ::from_rows(rows).kernel_basis_q();
        let b = k.first()?;
        let h = BinForm::new(Role::Operator, p.to_vec()).mul(&BinForm::new(Role::Operator, b.clone()));
        Some(h.normalized())
    }

    /// Numeric witness for complex coefficients of `P`.
    fn numeric_witness(&self, p: &[C64]) -> Option<NumericWitness> {
        let cat: Vec<Vec<C64>> = self
            .cat
            .iter()
            .map(|r| r.iter().map(|x| C64::new(crate::num::q_to_f64(&Q::from_integer(x.clone())), 0.0)).collect())
            .collect();
        let n: Vec<Vec<C64>> = cat
            .iter()
            .map(|row| (0..=self.m2).map(|col| p.iter().enumerate().map(|(j, pj)| row[j + col] * pj).sum()).collect())
            .collect();
        let b = null_vector(&n)?;
        let h = conv_c(p, &b);
        let hn = norm(&h);
        let r: Vec<C64> = cat.iter().map(|row| row.iter().zip(&h).map(|(a, b)| a * b).sum()).collect();
        let cn = cat.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
        let residual = norm(&r) / (cn * hn).max(1e-300);
        (residual < 1e-8).then(|| NumericWitness { coeffs: h.iter().map(|z| (z.re, z.im)).collect(), residual })
    }

    fn record(&mut self, chart: Vec<String>, eliminant: Option<UniPoly>, outcome: &str) {
        if let Some(e) = &eliminant {
            self.eliminants.push(e.clone());
        }
        self.charts.push(ChartRecord { chart, eliminant, outcome: outcome.to_string() });
    }

    /// Search the charts of the root unknowns `exps`, with a fixed integer
    /// factor `fixed` already multiplied in; `label` names fixed charts.
    fn search(&mut self, fixed: &[BigInt], exps: &[u32], label: &[String]) -> Option<BinForm> {
        match exps.len() {
            0 => {
                let p: Vec<Q> = fixed.iter().map(|c| Q::from_integer(c.clone())).collect();
                let w = self.exact_witness(&p);
                self.record(label.to_vec(), None, if w.is_some() { "witness" } else { "empty" });
                w
            }
            1 => {
                let mut lab = label.to_vec();
                lab.push("a".into());
                if let Some(w) = self.chart1(fixed, exps[0], &lab) {
                    return Some(w);
                }
                let mut lab = label.to_vec();
                lab.push("inf".into());
                let fx = conv(fixed, &power(&[BigInt::from(0), BigInt::from(1)], exps[0]));
                self.search(&fx, &[], &lab)
            }
            _ => {
                let mut lab = label.to_vec();
                lab.extend(["a".to_string(), "a".to_string()]);
                if let Some(w) = self.chart2(fixed, exps[0], exps[1], &lab) {
                    return Some(w);
                }
                let v = [BigInt::from(0), BigInt::from(1)];
                let mut lab = label.to_vec();
                lab.push("inf".into());
                let fx = conv(fixed, &power(&v, exps[0]));
                if let Some(w) = self.search(&fx, &exps[1..], &lab) {
                    return Some(w);
                }
                // first root at u - a v, second at v
                let fx = conv(fixed, &power(&v, exps[1]));
                let mut lab = label.to_vec();
                lab.push("a".into());
                let found = self.chart1(&fx, exps[0], &lab);
                lab.push("inf".into());
                found
            }
        }
    }

    /// One unknown root `u - a v`: the gcd of the minors in `a`.
    fn chart1(&mut self, fixed: &[BigInt], e1: u32, label: &[String]) -> Option<BinForm> {
        let l: Vec<ZPoly> = vec![ZPoly::from_i64s(&[1]), ZPoly::from_i64s(&[0, -1])];
        let fz: Vec<ZPoly> = fixed.iter().map(|c| ZPoly::constant(c.clone())).collect();
        let p = conv(&fz, &power(&l, e1));
        let n = self.n_matrix(&p, |c| ZPoly::constant(c.clone()));
        let minors = self.minors(&n);
        let g = minors.iter().fold(ZPoly::zero(), |acc, m| acc.gcd(m));
        if g.is_zero() {
            // every a works
            let w = self.exact_at(&p, &Q::from_integer(0.into()));
            self.record(label.to_vec(), Some(UniPoly::zero()), "identically singular");
            return w;
        }
        let gu = UniPoly::from_zpoly(&g);
        if g.deg() <= 0 {
            self.record(label.to_vec(), Some(gu), "empty");
            return None;
        }
        for a in rational_roots(&g) {
            if let Some(w) = self.exact_at(&p, &a) {
                self.record(label.to_vec(), Some(gu), "witness");
                return Some(w);
            }
        }
        // irrational roots: the rank drop is certain, the witness numeric
        if self.numeric.is_none() {
            let pc: Vec<Vec<C64>> = p.iter().map(zpoly_to_c64_exact).collect();
            for alpha in poly_roots(&zpoly_to_c64(&g.squarefree_part())) {
                let pa: Vec<C64> = pc.iter().map(|c| crate::numeric::horner(c, alpha)).collect();
                if let Some(nw) = self.numeric_witness(&pa) {
                    self.numeric = Some(nw);
                    break;
                }
            }
        }
        if self.numeric.is_none() {
            self.inconclusive = true;
        }
        self.record(label.to_vec(), Some(gu), "irrational roots");
        None
    }

    fn exact_at(&self, p: &[ZPoly], a: &Q) -> Option<BinForm> {
        let pq: Vec<Q> = p.iter().map(|c| c.eval_q(a)).collect();
        self.exact_witness(&pq)
    }

    /// Two unknown roots `u - a1 v`, `u - a2 v`; polynomials in `a2` over
    /// `Z[a1]`.
    fn chart2(&mut self, fixed: &[BigInt], e1: u32, e2: u32, label: &[String]) -> Option<BinForm> {
        let one = BiPoly::one();
        let a1 = BiPoly::constant(ZPoly::from_i64s(&[0, 1]));
        let a2 = BiPoly::new(vec![ZPoly::zero(), ZPoly::from_i64s(&[1])]);
        let l1 = vec![one.clone(), a1.neg()];
        let l2 = vec![one, a2.neg()];
        let fb: Vec<BiPoly> = fixed.iter().map(|c| BiPoly::constant(ZPoly::constant(c.clone()))).collect();
        let p = conv(&conv(&fb, &power(&l1, e1)), &power(&l2, e2));
        let n = self.n_matrix(&p, |c| BiPoly::constant(ZPoly::constant(c.clone())));
        let minors: Vec<BiPoly> = self.minors(&n).into_iter().filter(|m| !m.is_zero()).collect();
        let zero = Q::from_integer(0.into());
        if minors.is_empty() {
            self.record(label.to_vec(), None, "identically singular");
            return self.exact_at2(&p, &zero, &zero);
        }
        let g = minors.iter().fold(BiPoly::zero(), |acc, m| acc.gcd(m));
        let content = g.content();
        if content.deg() > 0 {
            // a1 at a root of the content, any a2
            if let Some(w) = rational_roots(&content).into_iter().find_map(|a| self.exact_at2(&p, &a, &zero)) {
                self.record(label.to_vec(), Some(UniPoly::from_zpoly(&content)), "witness");
                return Some(w);
            }
        }
        let gp = g.primitive();
        if gp.deg() > 0 {
            // a curve of common zeros: look for a rational point on it
            for a in (0..12i64).map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }) {
                let aq = Q::from_integer(a.into());
                let ga: Vec<Q> = gp.coeffs().iter().map(|c| c.eval_q(&aq)).collect();
                let gz = ZPoly::from_rationals(&ga);
                for b in rational_roots(&gz) {
                    if let Some(w) = self.exact_at2(&p, &aq, &b) {
                        self.record(label.to_vec(), None, "witness on a curve of solutions");
                        return Some(w);
                    }
                }
            }
            self.curve_numeric(&p, &gp);
            self.record(label.to_vec(), None, "curve of solutions without rational point found");
            return None;
        }
        if content.deg() > 0 {
            self.numeric_line(&p, &content);
            self.record(label.to_vec(), Some(UniPoly::from_zpoly(&content)), "irrational vertical line");
            return None;
        }
        // finitely many common zeros: eliminate a2 by resultants of random
        // combinations of the minors
        let mut e = ZPoly::zero();
        for _ in 0..4 {
            let mut comb = || {
                let mut acc = BiPoly::zero();
                for m in &minors {
                    let k: i64 = self.rng.gen_range(-50..=50);
                    acc = acc.add(&m.scale(&ZPoly::from_i64s(&[k])));
                }
                acc
            };
            let (p1, p2, p3) = (comb(), comb(), comb());
            let r12 = p1.resultant(&p2);
            let r13 = p1.resultant(&p3);
            if p1.deg() <= 0 || r12.is_zero() || r13.is_zero() {
                continue;
            }
            e = e.gcd(&r12.gcd(&r13));
            if e.deg() == 0 {
                break;
            }
        }
        if e.is_zero() {
            self.inconclusive = true;
            self.record(label.to_vec(), None, "elimination degenerate");
            return None;
        }
        let eu = UniPoly::from_zpoly(&e);
        if e.deg() == 0 {
            self.record(label.to_vec(), Some(eu), "empty");
            return None;
        }
        for a in rational_roots(&e) {
            let at: Vec<ZPoly> = minors
                .iter()
                .map(|m| ZPoly::from_rationals(&m.coeffs().iter().map(|c| c.eval_q(&a)).collect::<Vec<_>>()))
                .collect();
            let h = at.iter().fold(ZPoly::zero(), |acc, m| acc.gcd(m));
            let bs = if h.is_zero() { vec![zero.clone()] } else { rational_roots(&h) };
            for b in bs {
                if let Some(w) = self.exact_at2(&p, &a, &b) {
                    self.record(label.to_vec(), Some(eu), "witness");
                    return Some(w);
                }
            }
        }
        if self.numeric.is_none() {
            self.points_numeric(&p, &minors, &e);
        }
        if self.numeric.is_none() {
            self.inconclusive = true;
        }
        self.record(label.to_vec(), Some(eu), "irrational candidates");
        None
    }

    fn exact_at2(&self, p: &[BiPoly], a1: &Q, a2: &Q) -> Option<BinForm> {
        let pq: Vec<Q> = p
            .iter()
            .map(|c| {
                let inner: Vec<Q> = c.coeffs().iter().map(|z| z.eval_q(a1)).collect();
                inner.iter().rev().fold(Q::from_integer(0.into()), |acc, x| acc * a2 + x)
            })
            .collect();
        self.exact_witness(&pq)
    }

    fn eval2(p: &[BiPoly], a1: C64, a2: C64) -> Vec<C64> {
        p.iter()
            .map(|c| {
                let inner: Vec<C64> =
                    c.coeffs().iter().map(|z| crate::numeric::horner(&zpoly_to_c64_exact(z), a1)).collect();
                crate::numeric::horner(&inner, a2)
            })
            .collect()
    }

    fn points_numeric(&mut self, p: &[BiPoly], minors: &[BiPoly], e: &ZPoly) {
        for alpha in poly_roots(&zpoly_to_c64(&e.squarefree_part())) {
            let polys: Vec<Vec<C64>> = minors
                .iter()
                .map(|m| m.coeffs().iter().map(|z| crate::numeric::horner(&zpoly_to_c64_exact(z), alpha)).collect())
                .collect();
            let Some(best) = polys.iter().max_by(|a, b| norm(a).partial_cmp(&norm(b)).unwrap()) else {
                continue;
            };
            for beta in poly_roots(best) {
                if let Some(nw) = self.numeric_witness(&Self::eval2(p, alpha, beta)) {
                    self.numeric = Some(nw);
                    return;
                }
            }
        }
    }

    fn curve_numeric(&mut self, p: &[BiPoly], gp: &BiPoly) {
        if self.numeric.is_some() {
            return;
        }
        let a = C64::new(0.37, 0.0);
        let coeffs: Vec<C64> =
            gp.coeffs().iter().map(|z| crate::numeric::horner(&zpoly_to_c64_exact(z), a)).collect();
        for beta in poly_roots(&coeffs) {
            if let Some(nw) = self.numeric_witness(&Self::eval2(p, a, beta)) {
                self.numeric = Some(nw);
                return;
            }
        }
        self.inconclusive = true;
    }

    fn numeric_line(&mut self, p: &[BiPoly], content: &ZPoly) {
        if self.numeric.is_some() {
            return;
        }
        for alpha in poly_roots(&zpoly_to_c64(&content.squarefree_part())) {
            if let Some(nw) = self.numeric_witness(&Self::eval2(p, alpha, C64::new(0.0, 0.0))) {
                self.numeric = Some(nw);
                return;
            }
        }
        self.inconclusive = true;
    }
}

fn conv_c(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut c = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Unscaled complex coefficients of an integer polynomial.
fn zpoly_to_c64_exact(p: &ZPoly) -> Vec<C64> {
    p.coeffs().iter().map(|c| C64::new(crate::num::q_to_f64(&Q::from_integer(c.clone())), 0.0)).collect()
}

fn check_input(f: &BinForm, lambda: &Partition) -> Result<()> {
    if f.role() != Role::Form {
        return Err(Error::WrongRole { expected: Role::Form.name(), got: f.role().name() });
    }
    f.nonzero()?;
    if lambda.total() != f.degree() as u32 {
        return Err(Error::PartitionMismatch { total: lambda.total(), degree: f.degree() as u32 });
    }
    Ok(())
}

/// Decide `f ∈ (Δ_λ)^∨`.
pub fn dual_member(f: &BinForm, lambda: &Partition) -> Result<EliminationReport> {
    check_input(f, lambda)?;
    let d = f.degree();
    let n = lambda.len();
    let e = d - n;
    let exps: Vec<u32> = lambda.parts().iter().filter(|&&p| p >= 3).map(|&p| p - 1).collect();
    if exps.len() > 2 {
        return Err(Error::Unsupported(format!(
            "{lambda} has {} parts >= 3; at most two root unknowns are eliminated",
            exps.len()
        )));
    }
    let fi = f.normalized();
    let cat = catalecticant(&fi, e)?;
    let cat: Vec<Vec<BigInt>> =
        (0..cat.rows()).map(|i| cat.row(i).iter().map(|x| x.to_integer()).collect()).collect();
    let mut ctx = Ctx {
        cat,
        m2: lambda.mult(2),
        rng: ChaCha8Rng::seed_from_u64(0x5eed_d0a1),
        charts: Vec::new(),
        eliminants: Vec::new(),
        numeric: None,
        inconclusive: false,
    };
    let witness = ctx.search(&[BigInt::from(1)], &exps, &[]);
    let (verdict, numeric_witness) = match (&witness, ctx.numeric.take()) {
        (Some(_), _) => (Verdict::True, None),
        (None, Some(nw)) => (Verdict::ProbableTrue, Some(nw)),
        (None, None) if ctx.inconclusive => return Err(Error::NoWitness),
        (None, None) => (Verdict::False, None),
    };
    let final_gcd = match verdict {
        Verdict::False => UniPoly::one(),
        _ => ctx
            .charts
            .iter()
            .rev()
            .find(|c| c.outcome != "empty")
            .and_then(|c| c.eliminant.clone())
            .unwrap_or_else(UniPoly::zero),
    };
    if let Some(w) = &witness {
        debug_assert!(verify_dual_witness(f, lambda, w).unwrap_or(false));
    }
    Ok(EliminationReport {
        lambda: lambda.clone(),
        reduced_pattern: lambda.reduced(),
        eliminants: ctx.eliminants,
        final_gcd,
        verdict,
        witness,
        numeric_witness,
        charts: ctx.charts,
    })
}

/// `f ∈ (Δ_(d))^∨`, the discriminant hypersurface.
pub fn dual_member_discriminant_case(f: &BinForm, d: usize) -> Result<bool> {
    if f.degree() != d {
        return Err(Error::DegreeMismatch(format!("form of degree {} given for d = {d}", f.degree())));
    }
    Ok(f.discriminant()? == Q::from_integer(0.into()))
}

/// `h` annihilates `f` and its root pattern is a fusion of `λ'`.
pub fn verify_dual_witness(f: &BinForm, lambda: &Partition, h: &BinForm) -> Result<bool> {
    check_input(f, lambda)?;
    let e = f.degree() - lambda.len();
    if h.degree() != e {
        return Err(Error::DegreeMismatch(format!("witness of degree {} expected {e}", h.degree())));
    }
    if h.role() != Role::Operator || h.is_zero() {
        return Ok(false);
    }
    if !contract(h, f)?.is_zero() {
        return Ok(false);
    }
    match lambda.reduced() {
        None => Ok(false),
        Some(red) => is_fusion(&h.multiplicity_partition()?, &red),
    }
}
