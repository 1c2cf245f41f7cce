//! Binary forms with exact rational coefficients.

use crate::error::{Error, Result};
use crate::num::{binom, Q};
use crate::partition::Partition;
use crate::poly::ZPoly;
use crate::upoly::{squarefree_decomposition, UniPoly};
use crate::zpoly::Ext;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which variable pair a form lives in: `(x, y)` for forms, `(u, v)` for
/// differential operators `u = ∂x`, `v = ∂y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Form,
    Operator,
}

impl Role {
    pub fn vars(self) -> (&'static str, &'static str) {
        match self {
            Role::Form => ("x", "y"),
            Role::Operator => ("u", "v"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Role::Form => "form (x,y)",
            Role::Operator => "operator (u,v)",
        }
    }

    pub fn dual(self) -> Role {
        match self {
            Role::Form => Role::Operator,
            Role::Operator => Role::Form,
        }
    }
}

/// `Σ c_i X^(d-i) Y^i` in the variable pair selected by `role`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BinForm {
    role: Role,
    coeffs: Vec<Q>,
}

impl BinForm {
    /// Build from plain coefficients `c_0..c_d`; `coeffs` must be nonempty.
    pub fn new(role: Role, coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree+1 coefficients");
        BinForm { role, coeffs }
    }

    pub fn from_ints(role: Role, c: &[i64]) -> Self {
        Self::new(role, c.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn zero(role: Role, d: usize) -> Self {
        Self::new(role, vec![Q::zero(); d + 1])
    }

    /// `a X + b Y`.
    pub fn linear(role: Role, a: Q, b: Q) -> Self {
        Self::new(role, vec![a, b])
    }

    /// `X^(d-i) Y^i`.
    pub fn monomial(role: Role, d: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); d + 1];
        c[i] = Q::one();
        Self::new(role, c)
    }

    /// From binomial coordinates `a_i`, where `c_i = binom(d, i) a_i`.
    pub fn from_binomial(role: Role, a: &[Q]) -> Self {
        let d = a.len() as u64 - 1;
        Self::new(
            role,
            a.iter()
                .enumerate()
                .map(|(i, ai)| ai * Q::from_integer(binom(d, i as u64)))
                .collect(),
        )
    }

    pub fn to_binomial(&self) -> Vec<Q> {
        let d = self.degree() as u64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / Q::from_integer(binom(d, i as u64)))
            .collect()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(&self, role: Role) -> Self {
        Self::new(role, self.coeffs.clone())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Q {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub(crate) fn nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroInput)
        } else {
            Ok(())
        }
    }

    fn same_shape(&self, o: &Self) {
        assert_eq!(self.role, o.role, "role mismatch");
        assert_eq!(self.degree(), o.degree(), "degree mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_shape(o);
        Self::new(self.role, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_shape(o);
        Self::new(self.role, self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.role, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.role, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.role, o.role, "role mismatch");
        let mut c = vec![Q::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(self.role, c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::new(self.role, vec![Q::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Linear combination `Σ w_i f_i` of forms of one degree and role.
    pub fn combination(forms: &[BinForm], w: &[Q]) -> Self {
        let mut acc = BinForm::zero(forms[0].role, forms[0].degree());
        for (f, c) in forms.iter().zip(w) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    /// Value at a point `(X, Y) = (a, b)`.
    pub fn eval(&self, a: &Q, b: &Q) -> Q {
        let d = self.degree();
        let mut acc = Q::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * pow(a, d - i) * pow(b, i);
        }
        acc
    }

    /// Substitution `f(a X + b Y, c X + d Y)` for a 2×2 matrix `[[a, b], [c, d]]`.
    pub fn substitute(&self, m: &[[Q; 2]; 2]) -> Self {
        let d = self.degree();
        let l1 = BinForm::linear(self.role, m[0][0].clone(), m[0][1].clone());
        let l2 = BinForm::linear(self.role, m[1][0].clone(), m[1][1].clone());
        let p1: Vec<BinForm> = (0..=d).scan(BinForm::new(self.role, vec![Q::one()]), |acc, k| {
            let cur = acc.clone();
            if k < d {
                *acc = acc.mul(&l1);
            }
            Some(cur)
        }).collect();
        let p2: Vec<BinForm> = (0..=d).scan(BinForm::new(self.role, vec![Q::one()]), |acc, k| {
            let cur = acc.clone();
            if k < d {
                *acc = acc.mul(&l2);
            }
            Some(cur)
        }).collect();
        let mut out = BinForm::zero(self.role, d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&p1[d - i].mul(&p2[i]).scale(c));
        }
        out
    }

    /// Proportional form with coprime integer coefficients and positive
    /// first nonzero coefficient.
    pub fn normalized(&self) -> Self {
        let ints = crate::num::primitive_int_vec(&self.coeffs);
        Self::new(self.role, ints.into_iter().map(Q::from_integer).collect())
    }

    /// True when `self = k * o` for a nonzero rational `k`.
    pub fn is_proportional(&self, o: &Self) -> bool {
        self.role == o.role
            && self.degree() == o.degree()
            && !self.is_zero()
            && !o.is_zero()
            && self.normalized() == o.normalized()
    }

    /// Leading zeros: multiplicity of the root `(1:0)`.
    pub fn infinity_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Dehomogenization `f(t, 1)` as a rational polynomial in `t`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Integer multiple of `f(t, 1)`.
    pub fn dehom_z(&self) -> ZPoly {
        let rev: Vec<Q> = self.coeffs.iter().rev().cloned().collect();
        ZPoly::from_rationals(&rev)
    }

    /// Inverse of [`BinForm::dehomogenize`] at a prescribed degree.
    pub fn homogenize(role: Role, p: &UniPoly, d: usize) -> Self {
        let mut c = vec![Q::zero(); d + 1];
        for (j, x) in p.coeffs().iter().enumerate() {
            c[d - j] = x.clone();
        }
        Self::new(role, c)
    }

    /// Multiplicities of the complex projective roots.
    pub fn multiplicity_partition(&self) -> Result<Partition> {
        self.nonzero()?;
        let mut parts = Vec::new();
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            parts.push(inf as u32);
        }
        let p = self.dehomogenize();
        for (q, e) in squarefree_decomposition(&p)? {
            for _ in 0..q.degree().unwrap() {
                parts.push(e);
            }
        }
        Partition::new(parts)
    }

    /// A fixed nonzero multiple of the discriminant: the resultant of the
    /// two partial derivatives as forms of degree `d-1`.
    pub fn discriminant(&self) -> Result<Q> {
        let d = self.degree();
        if d < 2 {
            return Err(Error::OutOfRange("discriminant needs degree >= 2".into()));
        }
        self.nonzero()?;
        let l = crate::num::denom_lcm(self.coeffs.iter());
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let r = disc_int(&ints);
        let scale = num_traits::pow(Q::from_integer(l), 2 * (d - 1));
        Ok(Q::from_integer(r) / scale)
    }

    /// Number of distinct real projective roots.
    pub fn real_root_count(&self) -> Result<usize> {
        self.nonzero()?;
        let inf = usize::from(self.infinity_multiplicity() > 0);
        let p = self.dehom_z();
        Ok(p.count_real_roots() + inf)
    }

    /// `deg` distinct real projective roots.
    pub fn is_real_rooted(&self) -> Result<bool> {
        self.nonzero()?;
        Ok(real_rooted_int(&crate::num::primitive_int_vec(&self.coeffs)))
    }
}

/// Real-rootedness of a form given by integer coefficients `c_0..c_d`.
pub(crate) fn real_rooted_int(c: &[BigInt]) -> bool {
    let d = c.len() - 1;
    let inf = c.iter().take_while(|x| x.is_zero()).count();
    if inf > 1 || inf > d {
        return false;
    }
    let p = ZPoly::new(c.iter().rev().cloned().collect());
    if p.deg() <= 0 {
        return d == inf;
    }
    let sq = p.gcd(&p.derivative());
    if sq.deg() > 0 {
        return false;
    }
    // a squarefree real-rooted polynomial has no sign pattern obstruction:
    // cheap necessary test by Descartes on p(x) and p(-x)
    let n = p.deg() as usize;
    if p.sign_variations() + p.reflect().sign_variations() + usize::from(p.coeff(0).is_zero()) < n {
        return false;
    }
    p.sturm_count(&Ext::NegInf, &Ext::PosInf) + inf == d
}

/// Formal `Res(f_X, f_Y)` for integer coefficients.
pub(crate) fn disc_int(c: &[BigInt]) -> BigInt {
    crate::poly::disc_ring(c)
}

fn pow(x: &Q, e: usize) -> Q {
    num_traits::pow(x.clone(), e)
}

/// Write one term with sign handling in the paper's `*`/`^` syntax.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Q,
    vars: &[(&str, u32)],
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if neg {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    let mono: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if mono.is_empty() {
        return write!(f, "{a}");
    }
    if !a.is_one() {
        write!(f, "{a}*")?;
    }
    write!(f, "{}", mono.join("*"))
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.role.vars();
        let d = self.degree() as u32;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, &[(x, d - i as u32), (y, i as u32)], first)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
