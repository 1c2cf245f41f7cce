//! Dense univariate polynomials over a [`Ring`], lowest degree first.
//!
//! `Poly<BigInt>` is the workhorse for exact univariate work and
//! `Poly<Poly<BigInt>>` carries bivariate eliminations.

use crate::ring::Ring;
use num_bigint::BigInt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    c: Vec<R>,
}

/// Univariate integer polynomial.
pub type ZPoly = Poly<BigInt>;
/// Polynomial in an inner variable with `ZPoly` coefficients in an outer one.
pub type BiPoly = Poly<ZPoly>;

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: R) -> Self {
        Self::new(vec![v])
    }

    /// `v * x^k`.
    pub fn monomial(v: R, k: usize) -> Self {
        let mut c = vec![R::zero(); k + 1];
        c[k] = v;
        Self::new(c)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| R::from_i64(x)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` for zero.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::new(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn div_scalar_exact(&self, k: &R) -> Option<Self> {
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x.div_exact(k)?);
        }
        Some(Self::new(out))
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Reverse coefficient order with respect to formal degree `n`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut c = vec![R::zero(); n + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[n - i] = x.clone();
        }
        Self::new(c)
    }

    /// `prem(self, b) = lc(b)^(deg self - deg b + 1) * self mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.c.clone();
        let mut e = da - db + 1;
        let mut top = da;
        loop {
            if top < db || r.len() <= top {
                break;
            }
            let t = r[top].clone();
            for x in r.iter_mut().take(top) {
                *x = x.mul(&lb);
            }
            r[top] = R::zero();
            if !t.is_zero() {
                for (j, bj) in b.c.iter().enumerate().take(db) {
                    let k = top - db + j;
                    r[k] = r[k].sub(&t.mul(bj));
                }
            }
            e -= 1;
            if top == 0 {
                break;
            }
            top -= 1;
        }
        let scale = lb.pow(e as u64);
        let rem = Self::new(r);
        if e > 0 {
            rem.scale(&scale)
        } else {
            rem
        }
    }

    /// Exact division, `None` when `b` does not divide `self` in `R[x]`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < db {
            return None;
        }
        let lb = b.lc();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let t = r[k + db].clone();
            if t.is_zero() {
                continue;
            }
            let qk = t.div_exact(&lb)?;
            for (j, bj) in b.c.iter().enumerate() {
                r[k + j] = r[k + j].sub(&qk.mul(bj));
            }
            q[k] = qk;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Gcd of the coefficients, sign-normalized; zero for the zero polynomial.
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading term.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().lead_sign() < 0 {
            g = g.neg();
        }
        self.div_scalar_exact(&g).expect("content divides")
    }

    /// Associate with positive leading term.
    pub fn normalize_sign(&self) -> Self {
        if self.lc().lead_sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Resultant by the subresultant algorithm (Sylvester-determinant sign convention).
    pub fn resultant(&self, other: &Self) -> R {
        if self.is_zero() || other.is_zero() {
            return R::zero();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut s = 1i32;
        if a.deg() < b.deg() {
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                s = -s;
            }
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg() == 0 {
            let r = b.lc().pow(a.deg() as u64);
            return if s < 0 { r.neg() } else { r };
        }
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let delta = (a.deg() - b.deg()) as u64;
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                s = -s;
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return R::zero();
            }
            a = b;
            let den = g.mul(&h.pow(delta));
            b = r.div_scalar_exact(&den).expect("subresultant division");
            g = a.lc();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h"),
            };
            if b.deg() == 0 {
                break;
            }
        }
        let da = a.deg() as u64;
        let res = b.lc().pow(da).div_exact(&h.pow(da - 1)).expect("subresultant final");
        if s < 0 {
            res.neg()
        } else {
            res
        }
    }

    /// Resultant of `self` (formal degree `m`) and `other` (formal degree `n`)
    /// as binary forms; leading zeros are allowed.
    pub fn resultant_formal(&self, m: usize, other: &Self, n: usize) -> R {
        let (da, db) = (self.deg(), other.deg());
        if self.is_zero() || other.is_zero() {
            return R::zero();
        }
        if da < m as isize && db < n as isize {
            return R::zero();
        }
        if da == m as isize {
            let r = self.resultant(other);
            let k = (n as isize - db) as u64;
            r.mul(&self.lc().pow(k))
        } else {
            let r = other.resultant_formal(n, self, m);
            if (m * n) % 2 == 1 {
                r.neg()
            } else {
                r
            }
        }
    }

    /// Primitive-PRS gcd up to a unit; leading term positive.
    pub fn prs_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let c = self.content().gcd(&other.content());
        let (mut p, mut q) = (self.primitive(), other.primitive());
        if p.deg() < q.deg() {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            if q.deg() == 0 {
                return Self::constant(c);
            }
            let r = p.pseudo_rem(&q);
            if r.is_zero() {
                return q.scale(&c);
            }
            p = q;
            q = r.primitive();
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        R::poly_gcd(self, other)
    }

    /// Squarefree part (primitive), i.e. `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() <= 0 {
            return self.primitive();
        }
        self.primitive()
            .div_exact(&g.primitive())
            .expect("gcd divides")
            .primitive()
    }

    /// Substitute `x -> x + k` for a ring element `k`.
    pub fn taylor_shift(&self, k: &R) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].mul(k);
                c[j] = c[j].add(&t);
            }
        }
        Self::new(c)
    }
}

impl<R: Ring> std::ops::Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }
}

impl<R: Ring> std::ops::Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }
}

impl<R: Ring> std::ops::Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(c)
    }
}

impl<R: Ring> std::ops::Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.c.iter().map(|x| x.neg()).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Poly::div_exact(self, o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Poly::gcd(self, o)
    }
    fn lead_sign(&self) -> i32 {
        self.lc().lead_sign()
    }
}

/// Formal `Res(f_X, f_Y)` for coefficients `c_0..c_d` in any ring, e.g.
/// polynomials in parameters.
pub fn disc_ring<R: Ring>(c: &[R]) -> R {
    let d = c.len() - 1;
    let n = d - 1;
    // f_X = Σ (d-i) c_i X^(d-1-i) Y^i, f_Y = Σ i c_i X^(d-i) Y^(i-1)
    let fx: Vec<R> = (0..d).map(|i| c[i].mul(&R::from_i64((d - i) as i64))).collect();
    let fy: Vec<R> = (1..=d).map(|i| c[i].mul(&R::from_i64(i as i64))).collect();
    let px = Poly::new(fx.into_iter().rev().collect());
    let py = Poly::new(fy.into_iter().rev().collect());
    px.resultant_formal(n, &py, n)
}
