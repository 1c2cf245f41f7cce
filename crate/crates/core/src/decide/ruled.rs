//! Emptiness decision for systems with two or three parameters by
//! sampling the real walls of the discriminant.
//!
//! For a system `L` without common factor, `P(L)` meets the discriminant
//! transversally at every form with exactly one (double, real) multiple
//! root, since the tangent space there is `ℓ·D_{r-1}` and no `ℓ` divides
//! all of `L`. A component of real-rooted members that is not all of
//! `P(L)` is bounded by such walls, and the walls are swept by
//! `ρ_a = P(L ∩ (u - a v)^2 D_{r-2})`. Sampling every open cell of the
//! wall parameters `(a, s)` and stepping off each sample on both sides
//! along a transverse direction therefore meets every such component.
//! Values of `a` where `ρ_a` jumps in dimension are sampled separately.

use super::cad::{line_samples, plane_samples, zpoly_text, Projection};
use super::{CellInventory, Check, Deadline, Tester};
use crate::binform::{BinForm, Role};
use crate::matrix::MatQ;
use crate::num::primitive_int_vec;
use crate::poly::{disc_ring, BiPoly, ZPoly};
use crate::ring::{det, Ring};
use crate::zpoly::{isolate_real_roots_z, rational_roots};
use crate::Q;
use num_bigint::BigInt;

pub(crate) enum FaceOutcome {
    Witness(BinForm),
    Empty,
    Undecided(String),
}

/// Root of the doubled linear factor: `u - a v`, or `v` at infinity.
#[derive(Clone, Debug)]
enum Root {
    Finite(Q),
    Infinity,
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

/// `ℓ^2 q` for operator coefficients.
fn times_square(root: &Root, q: &[Q]) -> BinForm {
    let l = match root {
        Root::Finite(a) => BinForm::new(Role::Operator, vec![qi(1), -a.clone()]),
        Root::Infinity => BinForm::new(Role::Operator, vec![qi(0), qi(1)]),
    };
    l.pow(2).mul(&BinForm::new(Role::Operator, q.to_vec()))
}

/// Value of an operator at the root of `ℓ` (up to a positive factor).
fn value_at(c: &[BigInt], root: &Root) -> Q {
    match root {
        Root::Finite(a) => {
            let r = c.len() - 1;
            c.iter().enumerate().fold(qi(0), |acc, (i, x)| {
                acc + Q::from_integer(x.clone()) * num_traits::pow(a.clone(), r - i)
            })
        }
        Root::Infinity => Q::from_integer(c[0].clone()),
    }
}

struct Walls<'a> {
    basis: Vec<Vec<BigInt>>,
    r: usize,
    m: usize,
    /// Rows spanning the annihilator of `L` under the coefficient pairing.
    psi: Vec<Vec<BigInt>>,
    tester: &'a Tester,
    deadline: &'a Deadline,
    cells: Vec<CellInventory>,
}

impl<'a> Walls<'a> {
    /// `M(a) = Ψ · Mult((u - a v)^2)`, `(r-m) × (r-1)` over `Z[a]`.
    fn m_poly(&self) -> Vec<Vec<ZPoly>> {
        self.psi
            .iter()
            .map(|row| {
                (0..self.r - 1)
                    .map(|j| {
                        ZPoly::new(vec![row[j].clone(), BigInt::from(-2) * &row[j + 1], row[j + 2].clone()])
                    })
                    .collect()
            })
            .collect()
    }

    fn m_at(&self, root: &Root) -> MatQ {
        let rows: Vec<Vec<Q>> = self
            .psi
            .iter()
            .map(|row| {
                (0..self.r - 1)
                    .map(|j| match root {
                        Root::Finite(a) => {
                            Q::from_integer(row[j].clone()) - qi(2) * a * Q::from_integer(row[j + 1].clone())
                                + a * a * Q::from_integer(row[j + 2].clone())
                        }
                        Root::Infinity => Q::from_integer(row[j + 2].clone()),
                    })
                    .collect()
            })
            .collect();
        MatQ::from_rows(rows)
    }

    /// Step off the wall point `h` on both sides along a basis direction
    /// not vanishing at the double root, staying inside the adjacent cells.
    fn step(&mut self, h: &BinForm, root: &Root, label: &[Q], inv: &mut CellInventory) -> Result<Option<BinForm>, String> {
        let hi = primitive_int_vec(h.coeffs());
        for w in &self.basis {
            if value_at(w, root) == qi(0) {
                continue;
            }
            let line: Vec<ZPoly> = hi.iter().zip(w).map(|(a, b)| ZPoly::new(vec![a.clone(), b.clone()])).collect();
            let e = disc_ring(&line);
            if e.is_zero() || !e.coeff(0).is_zero() || e.coeff(1).is_zero() {
                continue;
            }
            let e1 = ZPoly::new(e.coeffs()[1..].to_vec());
            let eps = nearest_root_gap(&e1);
            let hq = BinForm::new(Role::Operator, to_q(&hi));
            let wq = BinForm::new(Role::Operator, to_q(w));
            for sign in [1i64, -1] {
                // any point of the half-segment lies in the same cell
                for k in 1..=6i64 {
                    let t = &eps * qi(sign) / qi(k);
                    let p = hq.add(&wq.scale(&t));
                    let mut s = label.to_vec();
                    s.push(t.clone());
                    inv.samples.push(s);
                    inv.counts.push(p.real_root_count().unwrap_or(0));
                    match self.tester.check(&p) {
                        Check::Witness(f) => return Ok(Some(f)),
                        Check::SharesRoot => continue,
                        Check::No => break,
                    }
                }
            }
            return Ok(None);
        }
        Err("no transverse direction at a wall sample".into())
    }

    fn run(&mut self) -> FaceOutcome {
        let (r, m) = (self.r, self.m);
        let k = r - m;
        let n = r - 1;
        let mp = self.m_poly();
        // generic rank of M(a)
        let probes: Vec<Q> = [3i64, -7, 11, 2, -5, 17].iter().map(|&x| qi(x)).collect();
        let probe = probes.iter().find(|a| self.m_at(&Root::Finite((*a).clone())).rank() == k);
        let Some(a_gen) = probe.cloned() else {
            // every a carries a wall of full dimension: P(L) lies in the discriminant
            let sample = BinForm::new(Role::Operator, to_q(&self.basis[0]));
            return if sample.discriminant().map(|d| d == qi(0)).unwrap_or(false) {
                FaceOutcome::Empty
            } else {
                FaceOutcome::Undecided("inconsistent wall dimension".into())
            };
        };
        let (_, pivots) = self.m_at(&Root::Finite(a_gen)).rref();
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let sub = |cols: &[usize]| -> Vec<Vec<ZPoly>> {
            mp.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect()
        };
        let delta = det(&sub(&pivots));
        let mut kernel: Vec<Vec<ZPoly>> = Vec::new();
        for &f in &free {
            let mut w = vec![ZPoly::zero(); n];
            w[f] = delta.clone();
            for (t, &p) in pivots.iter().enumerate() {
                let mut cols = pivots.clone();
                cols[t] = f;
                w[p] = det(&sub(&cols)).neg();
            }
            let g = w.iter().fold(ZPoly::zero(), |acc, x| acc.gcd(x));
            if g.deg() > 0 {
                w = w.iter().map(|x| x.div_exact(&g).expect("gcd divides")).collect();
            }
            kernel.push(w);
        }
        // rank drops of M(a): walls with a fixed double root
        let mut g = delta.clone();
        for cols in subsets(n, k) {
            if g.deg() <= 0 {
                break;
            }
            g = g.gcd(&det(&sub(&cols)));
        }
        let mut jumps: Vec<Root> = Vec::new();
        if g.deg() > 0 {
            let rat = rational_roots(&g);
            if isolate_real_roots_z(&g.squarefree_part()).len() != rat.len() {
                return FaceOutcome::Undecided("wall of fixed double root at an irrational point".into());
            }
            jumps.extend(rat.into_iter().map(Root::Finite));
        }
        if self.m_at(&Root::Infinity).rank() < k {
            jumps.push(Root::Infinity);
        }

        match self.generic_walls(&kernel, &delta) {
            Ok(Some(w)) => return FaceOutcome::Witness(w),
            Ok(None) => {}
            Err(e) => return FaceOutcome::Undecided(e),
        }
        for root in jumps {
            match self.fixed_root_wall(&root) {
                Ok(Some(w)) => return FaceOutcome::Witness(w),
                Ok(None) => {}
                Err(e) => return FaceOutcome::Undecided(e),
            }
        }
        FaceOutcome::Empty
    }

    fn generic_walls(&mut self, kernel: &[Vec<ZPoly>], delta: &ZPoly) -> Result<Option<BinForm>, String> {
        let qdeg = self.r - 2;
        let mut inv = CellInventory::new(self.cells.len(), "walls with a moving double root");
        let mut proj = Projection::default();
        let a_var = ZPoly::from_i64s(&[0, 1]);
        let samples: Vec<(Q, Q)> = if self.m == 2 {
            let q = &kernel[0];
            let disc = if qdeg >= 2 { disc_ring(q) } else { ZPoly::one() };
            let at_root = eval_at_root(q, &a_var);
            if disc.is_zero() || at_root.is_zero() {
                return Err("walls consist of deeper strata".into());
            }
            let crit = disc.mul(&at_root).mul(delta);
            proj.levels.push(vec![zpoly_text(&crit.squarefree_part(), "a")]);
            line_samples(&crit).into_iter().map(|a| (a, qi(0))).collect()
        } else {
            let q: Vec<BiPoly> =
                (0..=qdeg).map(|i| BiPoly::new(vec![kernel[0][i].clone(), kernel[1][i].clone()])).collect();
            let disc = if qdeg >= 2 { disc_ring(&q) } else { BiPoly::one() };
            let at_root = q.iter().enumerate().fold(BiPoly::zero(), |acc, (i, c)| {
                acc.add(&c.scale(&a_var.pow((qdeg - i) as u64)))
            });
            if disc.is_zero() || at_root.is_zero() {
                return Err("walls consist of deeper strata".into());
            }
            plane_samples(&[disc, at_root], std::slice::from_ref(delta), &mut proj)
        };
            inv.projection = proj.levels;
        for (a, s) in samples {
            self.deadline.check()?;
            let qv: Vec<Q> = (0..=qdeg)
                .map(|i| {
                    let base = kernel[0][i].eval_q(&a);
                    if self.m == 3 {
                        base + &s * kernel[1][i].eval_q(&a)
                    } else {
                        base
                    }
                })
                .collect();
            let root = Root::Finite(a.clone());
            let h = times_square(&root, &qv);
            let label = if self.m == 3 { vec![a, s] } else { vec![a] };
            if let Some(w) = self.step(&h, &root, &label, &mut inv)? {
                self.cells.push(inv);
                return Ok(Some(w));
            }
        }
        self.cells.push(inv);
        Ok(None)
    }

    /// Walls `P(L ∩ ℓ^2 D_{r-2})` of full dimension for a fixed `ℓ`.
    fn fixed_root_wall(&mut self, root: &Root) -> Result<Option<BinForm>, String> {
        let qdeg = self.r - 2;
        let space = self.m_at(root).kernel_basis();
        if space.len() != self.m {
            return Err("unexpected wall dimension at a fixed double root".into());
        }
        let label = match root {
            Root::Finite(a) => format!("wall with double root at u - ({a}) v"),
            Root::Infinity => "wall with double root at v".to_string(),
        };
        let mut inv = CellInventory::new(self.cells.len(), &label);
        // value at the root, cleared of denominators
        let at_root = |c: &[ZPoly]| -> ZPoly {
            match root {
                Root::Finite(a) => c.iter().enumerate().fold(ZPoly::zero(), |acc, (i, x)| {
                    let k = num_traits::pow(a.numer().clone(), qdeg - i) * num_traits::pow(a.denom().clone(), i);
                    acc.add(&x.scale(&k))
                }),
                Root::Infinity => c[0].clone(),
            }
        };
        let mut proj = Projection::default();
        let samples: Vec<Vec<Q>> = if self.m == 2 {
            // q = e0 + t e1
            let q: Vec<ZPoly> =
                (0..=qdeg).map(|i| ZPoly::new(vec![space[0][i].clone(), space[1][i].clone()])).collect();
            let disc = if qdeg >= 2 { disc_ring(&q) } else { ZPoly::one() };
            let val = at_root(&q);
            if disc.is_zero() || val.is_zero() {
                return Err("fixed-root wall consists of deeper strata".into());
            }
            let crit = disc.mul(&val);
            proj.levels.push(vec![zpoly_text(&crit.squarefree_part(), "t")]);
            line_samples(&crit).into_iter().map(|t| vec![t]).collect()
        } else {
            // q = e0 + t1 e1 + t2 e2 with t2 the main variable
            let q: Vec<BiPoly> = (0..=qdeg)
                .map(|i| {
                    BiPoly::new(vec![
                        ZPoly::new(vec![space[0][i].clone(), space[1][i].clone()]),
                        ZPoly::constant(space[2][i].clone()),
                    ])
                })
                .collect();
            let disc = if qdeg >= 2 { disc_ring(&q) } else { BiPoly::one() };
            let val = match root {
                Root::Finite(a) => q.iter().enumerate().fold(BiPoly::zero(), |acc, (i, x)| {
                    let k = num_traits::pow(a.numer().clone(), qdeg - i) * num_traits::pow(a.denom().clone(), i);
                    acc.add(&x.scale(&ZPoly::constant(k)))
                }),
                Root::Infinity => q[0].clone(),
            };
            if disc.is_zero() || val.is_zero() {
                return Err("fixed-root wall consists of deeper strata".into());
            }
            plane_samples(&[disc, val], &[], &mut proj).into_iter().map(|(a, b)| vec![a, b]).collect()
        };
        inv.projection = proj.levels;
        for t in samples {
            self.deadline.check()?;
            let mut qv = to_q(&space[0]);
            for (k, tk) in t.iter().enumerate() {
                for (x, e) in qv.iter_mut().zip(&space[k + 1]) {
                    *x += tk * Q::from_integer(e.clone());
                }
            }
            let h = times_square(root, &qv);
            if let Some(w) = self.step(&h, root, &t, &mut inv)? {
                self.cells.push(inv);
                return Ok(Some(w));
            }
        }
        self.cells.push(inv);
        Ok(None)
    }
}

/// `Σ q_i a^(n-i)`: the operator `q(a)` evaluated at its own parameter.
fn eval_at_root(q: &[ZPoly], a: &ZPoly) -> ZPoly {
    let n = q.len() - 1;
    q.iter().enumerate().fold(ZPoly::zero(), |acc, (i, c)| acc.add(&c.mul(&a.pow((n - i) as u64))))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A power of two below the modulus of every root of `p`, where
/// `p(0) != 0`: every root satisfies `|z| >= 1 / (2 max |p_i / p_0|^(1/i))`.
fn nearest_root_gap(p: &ZPoly) -> Q {
    let b0 = p.coeff(0).bits() as i64;
    let mut k = 0i64;
    for (i, c) in p.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        // |c / p_0| < 2^(bits(c) - bits(p_0) + 1)
        let e = c.bits() as i64 - b0 + 1;
        k = k.max(e.div_euclid(i as i64) + i64::from(e.rem_euclid(i as i64) != 0));
    }
    // strict: one more halving
    Q::new(BigInt::from(1), BigInt::from(1) << (k + 2).max(0) as usize)
}

/// Decide a system of two or three parameters without common factor.
pub(crate) fn decide_walls(
    basis: &[BinForm],
    tester: &Tester,
    deadline: &Deadline,
    cells: &mut Vec<CellInventory>,
) -> FaceOutcome {
    let r = basis[0].degree();
    let m = basis.len() - 1;
    let ints: Vec<Vec<BigInt>> = basis.iter().map(|b| primitive_int_vec(b.coeffs())).collect();
    let psi = MatQ::from_rows(ints.iter().map(|v| to_q(v)).collect()).kernel_basis();
    let mut walls = Walls { basis: ints, r, m, psi, tester, deadline, cells: Vec::new() };
    let out = if r == m {
        // the whole space: a product of distinct rational linear forms
        let mut found = None;
        for shift in 0..=(2 * r as i64 + 4) {
            let f = (0..r as i64).fold(BinForm::from_ints(Role::Operator, &[1]), |acc, k| {
                acc.mul(&BinForm::from_ints(Role::Operator, &[1, -(k + shift)]))
            });
            if let Check::Witness(w) = tester.check(&f) {
                found = Some(w);
                break;
            }
        }
        match found {
            Some(w) => FaceOutcome::Witness(w),
            None => FaceOutcome::Undecided("no witness found in the full space".into()),
        }
    } else {
        walls.run()
    };
    cells.append(&mut walls.cells);
    out
}
