//! Contraction, catalecticant matrices, apolar spaces and apolar ideals.

use crate::binform::{BinForm, Role};
use crate::error::{Error, Result};
use crate::matrix::MatQ;
use crate::num::{falling, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

fn expect_role(f: &BinForm, role: Role) -> Result<()> {
    if f.role() != role {
        return Err(Error::WrongRole { expected: role.name(), got: f.role().name() });
    }
    Ok(())
}

/// `h(∂x, ∂y) f` for an operator `h` of degree `k ≤ deg f`.
pub fn contract(h: &BinForm, f: &BinForm) -> Result<BinForm> {
    expect_role(h, Role::Operator)?;
    expect_role(f, Role::Form)?;
    let (k, d) = (h.degree(), f.degree());
    if k > d {
        return Err(Error::DegreeMismatch(format!("operator degree {k} exceeds form degree {d}")));
    }
    let mut out = vec![Q::zero(); d - k + 1];
    for (j, hj) in h.coeffs().iter().enumerate() {
        if hj.is_zero() {
            continue;
        }
        // u^(k-j) v^j applied to x^(d-i) y^i, landing on index i - j
        for (l, o) in out.iter_mut().enumerate() {
            let i = l + j;
            let fi = f.coeff(i);
            if fi.is_zero() {
                continue;
            }
            let w = falling((d - i) as u64, (k - j) as u64) * falling(i as u64, j as u64);
            *o += hj * fi * Q::from_integer(w);
        }
    }
    Ok(BinForm::new(Role::Form, out))
}

/// Matrix of `g ↦ contract(g, f)` from degree-`r` operators to degree
/// `d - r` forms in monomial bases; shape `(d-r+1) × (r+1)`.
pub fn catalecticant(f: &BinForm, r: usize) -> Result<MatQ> {
    expect_role(f, Role::Form)?;
    let d = f.degree();
    if r > d {
        return Err(Error::OutOfRange(format!("r = {r} exceeds degree {d}")));
    }
    let mut m = MatQ::zeros(d - r + 1, r + 1);
    for j in 0..=r {
        for l in 0..=d - r {
            let i = l + j;
            let fi = f.coeff(i);
            if fi.is_zero() {
                continue;
            }
            let w = falling((d - i) as u64, (r - j) as u64) * falling(i as u64, j as u64);
            m.set(l, j, fi * Q::from_integer(w));
        }
    }
    Ok(m)
}

/// A space of operators of one degree given by an independent basis; the
/// empty system is a legal value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinearSystem {
    degree: usize,
    basis: Vec<BinForm>,
}

impl LinearSystem {
    /// Checks roles, degrees and linear independence.
    pub fn new(degree: usize, basis: Vec<BinForm>) -> Result<Self> {
        for b in &basis {
            expect_role(b, Role::Operator)?;
            if b.degree() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "basis element of degree {} in a system of degree {degree}",
                    b.degree()
                )));
            }
        }
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        if !basis.is_empty() && MatQ::from_cols(&cols).rank() < basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(LinearSystem { degree, basis })
    }

    pub fn empty(degree: usize) -> Self {
        LinearSystem { degree, basis: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[BinForm] {
        &self.basis
    }

    /// Vector-space dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Projective dimension `dim - 1`; `None` for the empty system.
    pub fn projective_dim(&self) -> Option<usize> {
        self.dim().checked_sub(1)
    }

    pub fn ambient_dim(&self) -> usize {
        self.degree + 1
    }

    /// Element with the given coordinates in the basis.
    pub fn element(&self, w: &[Q]) -> BinForm {
        BinForm::combination(&self.basis, w)
    }

    /// Whether an operator lies in the span.
    pub fn contains(&self, h: &BinForm) -> bool {
        if h.role() != Role::Operator || h.degree() != self.degree {
            return false;
        }
        if h.is_zero() {
            return true;
        }
        let mut cols: Vec<Vec<Q>> = self.basis.iter().map(|b| b.coeffs().to_vec()).collect();
        cols.push(h.coeffs().to_vec());
        MatQ::from_cols(&cols).rank() == self.basis.len()
    }
}

/// `(f^⊥)_r`, the kernel of the catalecticant.
pub fn apolar_space(f: &BinForm, r: usize) -> Result<LinearSystem> {
    expect_role(f, Role::Form)?;
    f.nonzero()?;
    let k = catalecticant(f, r)?.kernel_basis_q();
    let basis = k.into_iter().map(|v| BinForm::new(Role::Operator, v)).collect();
    Ok(LinearSystem { degree: r, basis })
}

/// The two generators of the apolar ideal of a form of rank at least 2.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ApolarIdeal {
    pub g: BinForm,
    pub gprime: BinForm,
}

impl ApolarIdeal {
    pub fn degrees(&self) -> (usize, usize) {
        (self.g.degree(), self.gprime.degree())
    }
}

/// The operator `-b u + a v` annihilating `(a x + b y)^d`.
pub fn apolar_operator(l: &BinForm) -> Result<BinForm> {
    expect_role(l, Role::Form)?;
    if l.degree() != 1 {
        return Err(Error::DegreeMismatch("expected a linear form".into()));
    }
    Ok(BinForm::linear(Role::Operator, -l.coeff(1).clone(), l.coeff(0).clone()))
}

/// Generators `(g, g')`: `g` spans the first nonzero apolar space and `g'`
/// is the first echelon kernel vector at degree `d + 2 - deg g` that is
/// independent of the multiples of `g`.
pub fn apolar_ideal(f: &BinForm) -> Result<ApolarIdeal> {
    expect_role(f, Role::Form)?;
    f.nonzero()?;
    let d = f.degree();
    if d == 0 {
        return Ok(ApolarIdeal {
            g: BinForm::monomial(Role::Operator, 1, 0),
            gprime: BinForm::monomial(Role::Operator, 1, 1),
        });
    }
    let k1 = apolar_space(f, 1)?;
    if !k1.is_empty() {
        let g = k1.basis()[0].normalized();
        // a complementary power coprime to g
        let i = if g.coeff(1).is_zero() { d + 1 } else { 0 };
        let gp = BinForm::monomial(Role::Operator, d + 1, i);
        return Err(Error::RankOne { g: g.to_string(), gprime: gp.to_string() });
    }
    let r0 = (2..=d)
        .find(|&r| catalecticant(f, r).map(|c| c.rank() < r + 1).unwrap_or(false))
        .unwrap_or(d + 1);
    let s = d + 2 - r0;
    let g = if r0 <= d {
        apolar_space(f, r0)?.basis()[0].normalized()
    } else {
        // unreachable for d ≥ 1: the kernel at r = d is d-dimensional
        return Err(Error::OutOfRange("no apolar operator found".into()));
    };
    let kernel = if s <= d {
        apolar_space(f, s)?.basis().to_vec()
    } else {
        // every operator of degree > d annihilates f
        (0..=s).map(|i| BinForm::monomial(Role::Operator, s, i)).collect()
    };
    // row space of the multiples of g in degree s
    let mults: Vec<Vec<Q>> = (0..=s - r0)
        .map(|k| g.mul(&BinForm::monomial(Role::Operator, s - r0, k)).coeffs().to_vec())
        .collect();
    let (ech, piv) = MatQ::from_rows(mults).rref();
    for cand in &kernel {
        let mut v = cand.coeffs().to_vec();
        for (i, &p) in piv.iter().enumerate() {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, vj) in v.iter_mut().enumerate() {
                *vj -= &c * ech.get(i, j);
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            let gprime = BinForm::new(Role::Operator, v).normalized();
            return Ok(ApolarIdeal { g, gprime });
        }
    }
    Err(Error::OutOfRange("no complementary generator found".into()))
}

fn coprime(g: &BinForm, h: &BinForm) -> bool {
    if g.infinity_multiplicity() > 0 && h.infinity_multiplicity() > 0 {
        return false;
    }
    let c = g.dehom_z().gcd(&h.dehom_z());
    c.degree().unwrap_or(0) == 0
}

/// The degree `deg g + deg g' - 2` form annihilated by both operators,
/// normalized to coprime integers with positive first nonzero coefficient.
pub fn recover(g: &BinForm, gprime: &BinForm) -> Result<BinForm> {
    expect_role(g, Role::Operator)?;
    expect_role(gprime, Role::Operator)?;
    g.nonzero()?;
    gprime.nonzero()?;
    let total = g.degree() + gprime.degree();
    if total < 2 {
        return Err(Error::DegreeMismatch("generator degrees must sum to at least 2".into()));
    }
    if !coprime(g, gprime) {
        return Err(Error::NotCoprime);
    }
    let d = total - 2;
    // rows: coefficients of contract(h, f) as linear functions of f
    let mut rows = Vec::new();
    for h in [g, gprime] {
        if h.degree() > d {
            continue;
        }
        let cols: Vec<Vec<Q>> = (0..=d)
            .map(|i| contract(h, &BinForm::monomial(Role::Form, d, i)).map(|c| c.coeffs().to_vec()))
            .collect::<Result<_>>()?;
        let m = MatQ::from_cols(&cols);
        for i in 0..m.rows() {
            rows.push(m.row(i).to_vec());
        }
    }
    let ker = if rows.is_empty() {
        MatQ::zeros(1, d + 1).kernel_basis_q()
    } else {
        MatQ::from_rows(rows).kernel_basis_q()
    };
    if ker.len() != 1 {
        return Err(Error::SolutionDimension(ker.len()));
    }
    let mut f = BinForm::new(Role::Form, ker[0].clone()).normalized();
    if f.coeffs().iter().find(|c| !c.is_zero()).is_some_and(|c| c < &Q::zero()) {
        f = f.neg();
    }
    Ok(f)
}

/// Whether the apolar ideal is generated in degrees
/// `(⌈(d+1)/2⌉, ⌊(d+3)/2⌋)`.
pub fn is_generic_degrees(f: &BinForm) -> Result<bool> {
    let id = apolar_ideal(f)?;
    let d = f.degree();
    Ok(id.g.degree() == (d + 2) / 2)
}
