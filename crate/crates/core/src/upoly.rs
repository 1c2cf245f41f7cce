//! Univariate polynomials with rational coefficients and the public
//! gcd / squarefree / resultant / Sturm / isolation operations.

use crate::error::{Error, Result};
use crate::num::Q;
use crate::poly::ZPoly;
use crate::zpoly::{isolate_real_roots_z, Ext, RootInterval};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Rational polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` is the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Integer polynomial with the same roots (positive multiple).
    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::from_rationals(&self.coeffs)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.c(i) + o.c(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.c(i) - o.c(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    fn c(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - db];
        let lb = b.lc();
        for k in (0..q.len()).rev() {
            let t = &r[k + db] / &lb;
            if !t.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[k + j] -= &t * bj;
                }
            }
            q[k] = t;
        }
        (Self::new(q), Self::new(r))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            crate::binform::write_term(f, c, &[("t", i as u32)], first)?;
            first = false;
        }
        Ok(())
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let g = a.to_zpoly().gcd(&b.to_zpoly());
    Ok(UniPoly::from_zpoly(&g).monic())
}

/// Yun's squarefree decomposition: `p = lc * prod q_i^e_i`, `q_i` monic,
/// squarefree, pairwise coprime, `e_i` strictly increasing.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let f = p.monic();
    let fp = f.derivative();
    let a0 = poly_gcd(&f, &fp)?;
    let mut b = f.div_rem(&a0).0;
    let c = fp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = if d.is_zero() { b.monic() } else { poly_gcd(&b, &d)? };
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        d = nc.sub(&nb.derivative());
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Resultant with the Sylvester-determinant sign convention.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Q> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (za, zb) = (a.to_zpoly(), b.to_zpoly());
    // za = sa * a, zb = sb * b with rational scale factors
    let sa = Q::from_integer(za.lc()) / a.lc();
    let sb = Q::from_integer(zb.lc()) / b.lc();
    let r = Q::from_integer(za.resultant(&zb));
    let (m, n) = (a.degree().unwrap() as i32, b.degree().unwrap() as i32);
    Ok(r / (pow_q(&sa, n) * pow_q(&sb, m)))
}

fn pow_q(x: &Q, e: i32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

/// Distinct real roots in `(a, b]`.
pub fn sturm_count(p: &UniPoly, a: &Ext, b: &Ext) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(p.to_zpoly().sturm_count(a, b))
}

/// Isolating intervals for the real roots of a squarefree polynomial.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(isolate_real_roots_z(&p.to_zpoly()))
}
