//! Integer-polynomial specifics: modular gcd, exact sign evaluation at
//! rationals, Sturm sequences and Descartes root isolation.

use crate::num::Q;
use crate::poly::ZPoly;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Gcd of integer polynomials: primitive PRS for small inputs, a modular
/// algorithm with exact trial-division verification otherwise.
pub fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.normalize_sign();
    }
    if b.is_zero() {
        return a.normalize_sign();
    }
    if a.deg().min(b.deg()) < 12 {
        return a.prs_gcd(b);
    }
    let c = a.content().gcd(&b.content());
    let (pa, pb) = (a.primitive(), b.primitive());
    modular_gcd_primitive(&pa, &pb).scale(&c)
}

fn modular_gcd_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let gamma = Integer::gcd(&a.lc(), &b.lc());
    let mut state: Option<(usize, Vec<BigInt>, BigInt)> = None;
    let mut last: Option<ZPoly> = None;
    for p in Primes::new() {
        let pb_ = BigInt::from(p);
        if (a.lc() % &pb_).is_zero() || (b.lc() % &pb_).is_zero() {
            continue;
        }
        let am = reduce(a, p);
        let bm = reduce(b, p);
        let mut g = gcd_mod(am, bm, p);
        if g.len() == 1 {
            return ZPoly::constant(BigInt::one());
        }
        let gm = to_u64(&gamma, p);
        for x in g.iter_mut() {
            *x = mulm(*x, gm, p);
        }
        let dg = g.len() - 1;
        match &mut state {
            Some((d, _, _)) if dg > *d => continue,
            Some((d, coeffs, m)) if dg == *d => {
                let mut out = Vec::with_capacity(coeffs.len());
                for (c, &r) in coeffs.iter().zip(g.iter()) {
                    out.push(crt(c, m, r, p));
                }
                *coeffs = out;
                *m *= &pb_;
            }
            _ => {
                state = Some((dg, g.iter().map(|&x| BigInt::from(x)).collect(), pb_.clone()));
                last = None;
                continue;
            }
        }
        let (_, coeffs, m) = state.as_ref().unwrap();
        let half = m >> 1;
        let cand = ZPoly::new(
            coeffs
                .iter()
                .map(|c| if c > &half { c - m } else { c.clone() })
                .collect(),
        )
        .primitive();
        if last.as_ref() == Some(&cand) && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return cand;
        }
        last = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

fn crt(c: &BigInt, m: &BigInt, r: u64, p: u64) -> BigInt {
    // x = c mod m, x = r mod p
    let cm = to_u64(c, p);
    let mm = to_u64(m, p);
    let diff = (r + p - cm) % p;
    let t = mulm(diff, powm(mm, p - 2, p), p);
    c + m * BigInt::from(t)
}

fn to_u64(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn reduce(a: &ZPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.coeffs().iter().map(|c| to_u64(c, p)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = powm(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let t = mulm(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - mulm(t, bj, p)) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = powm(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&x| mulm(x, inv, p)).collect()
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Descending 62-bit primes.
pub(crate) struct Primes {
    next: u64,
}

impl Primes {
    pub(crate) fn new() -> Self {
        Primes { next: (1u64 << 62) - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let n = self.next;
            self.next -= 2;
            if is_prime_u64(n) {
                return Some(n);
            }
        }
        None
    }
}

impl ZPoly {
    /// Integer polynomial proportional to a rational one (positive factor).
    pub fn from_rationals(c: &[Q]) -> ZPoly {
        let mut l = BigInt::one();
        for x in c {
            l = l.lcm(x.denom());
        }
        ZPoly::new(c.iter().map(|x| x.numer() * (&l / x.denom())).collect())
    }

    /// Sign of `p(x)` at a rational point.
    pub fn sign_at(&self, x: &Q) -> i32 {
        sign_of(&self.eval_hom(x.numer(), x.denom()))
    }

    /// `den^deg * p(num/den)`, which has the sign of `p(num/den)` for `den > 0`.
    pub fn eval_hom(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let Some(n) = self.degree() else {
            return BigInt::zero();
        };
        let c = self.coeffs();
        let mut acc = c[n].clone();
        let mut dp = BigInt::one();
        for i in (0..n).rev() {
            dp *= den;
            acc *= num;
            if !c[i].is_zero() {
                acc += &c[i] * &dp;
            }
        }
        acc
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs().iter().rev() {
            acc = acc * x + Q::from_integer(c.clone());
        }
        acc
    }

    /// Sturm sequence `p, p', -rem, ...` with positive rescaling.
    pub fn sturm_sequence(&self) -> Vec<ZPoly> {
        let mut seq = vec![self.clone()];
        if self.deg() <= 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.deg() <= 0 {
                break;
            }
            let e = a.deg() - b.deg() + 1;
            let mut r = a.pseudo_rem(b);
            if b.lc().is_negative() && e % 2 == 1 {
                r = -&r;
            }
            if r.is_zero() {
                break;
            }
            let c = r.content();
            let r = -&r.div_scalar_exact(&c).unwrap();
            seq.push(r);
        }
        seq
    }

    /// Number of sign variations of the Sturm sequence at a point.
    fn variations_at(seq: &[ZPoly], x: &Ext) -> usize {
        let mut last = 0i32;
        let mut v = 0;
        for p in seq {
            let s = match x {
                Ext::NegInf => {
                    let s = sign_of(&p.lc());
                    if p.deg() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
                Ext::PosInf => sign_of(&p.lc()),
                Ext::Fin(q) => p.sign_at(q),
            };
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Distinct real roots in `(a, b]`.
    pub fn sturm_count(&self, a: &Ext, b: &Ext) -> usize {
        let seq = self.sturm_sequence();
        let va = Self::variations_at(&seq, a);
        let vb = Self::variations_at(&seq, b);
        va.saturating_sub(vb)
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.deg() <= 0 {
            return 0;
        }
        if self.deg() > 24 {
            return isolate_real_roots_z(&self.squarefree_part()).len();
        }
        self.sturm_count(&Ext::NegInf, &Ext::PosInf)
    }

    /// Sign variations in the coefficient list.
    pub fn sign_variations(&self) -> usize {
        let mut last = 0;
        let mut v = 0;
        for c in self.coeffs() {
            let s = sign_of(c);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `2^(n*k) p(x / 2^k)` with `n = deg p`, i.e. coefficient `i` times `2^(k(n-i))`.
    fn scale_down_pow2(&self, k: u64) -> ZPoly {
        let n = self.deg() as u64;
        ZPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c << (k * (n - i as u64)))
                .collect(),
        )
    }

    /// `p(2^k x)`.
    fn scale_up_pow2(&self, k: u64) -> ZPoly {
        ZPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c << (k * i as u64))
                .collect(),
        )
    }
}

/// Extended rational: a finite value or ±∞.
#[derive(Clone, Debug, PartialEq)]
pub enum Ext {
    NegInf,
    Fin(Q),
    PosInf,
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// An isolating interval: either an exact root (`lo == hi`) or an open
/// interval `(lo, hi)` containing exactly one root with a strict sign change.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

fn pow2_bound(p: &ZPoly) -> u64 {
    // 1 + max |c_i / lc| <= 2^k
    let lb = p.lc().abs().bits();
    let mut k: i64 = 1;
    for c in p.coeffs() {
        if !c.is_zero() {
            k = k.max(c.abs().bits() as i64 - lb as i64 + 2);
        }
    }
    k.max(1) as u64
}

fn two_pow(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Positive roots of a squarefree `p` with `p(0) != 0`, as intervals in
/// `(0, 2^kb)`. `zero_root` marks 0 as a root of the caller's polynomial so
/// that no reported interval ends there.
fn positive_roots(p: &ZPoly, kb: u64, zero_root: bool, out: &mut Vec<RootInterval>) {
    let n = p.deg() as usize;
    let q0 = p.scale_up_pow2(kb);
    // each task: q(t) proportional to p(2^kb (c + t) / 2^k), t in (0,1)
    let mut stack: Vec<(ZPoly, BigInt, u64)> = vec![(q0, BigInt::zero(), 0)];
    let scale = |c: &BigInt, k: u64| -> Q {
        let num = c << kb;
        Q::new(num, two_pow(k))
    };
    while let Some((q, c, k)) = stack.pop() {
        let t = q.reverse(n).taylor_shift(&BigInt::one());
        let v = t.sign_variations();
        if v == 0 {
            continue;
        }
        if v == 1 {
            let lo_zero = q.coeff(0).is_zero() || (zero_root && c.is_zero());
            let hi_zero = q.coeffs().iter().fold(BigInt::zero(), |a, x| a + x).is_zero();
            if !lo_zero && !hi_zero {
                out.push(RootInterval { lo: scale(&c, k), hi: scale(&(&c + 1), k) });
                continue;
            }
        }
        let left = q.scale_down_pow2(1);
        let right = left.taylor_shift(&BigInt::one());
        let c2 = &c << 1;
        if right.coeff(0).is_zero() {
            let m = scale(&(&c2 + 1), k + 1);
            out.push(RootInterval { lo: m.clone(), hi: m });
        }
        stack.push((right.primitive(), &c2 + 1, k + 1));
        stack.push((left.primitive(), c2, k + 1));
    }
}

/// Real roots of a squarefree integer polynomial, sorted.
pub fn isolate_real_roots_z(p: &ZPoly) -> Vec<RootInterval> {
    let mut out = Vec::new();
    if p.deg() <= 0 {
        return out;
    }
    let mut p = p.clone();
    let mut has_zero = false;
    while p.coeff(0).is_zero() {
        p = ZPoly::new(p.coeffs()[1..].to_vec());
        has_zero = true;
    }
    if p.deg() > 0 {
        let kb = pow2_bound(&p);
        positive_roots(&p, kb, has_zero, &mut out);
        let mut neg = Vec::new();
        positive_roots(&p.reflect(), kb, has_zero, &mut neg);
        for iv in neg {
            out.push(RootInterval { lo: -iv.hi, hi: -iv.lo });
        }
    }
    if has_zero {
        out.push(RootInterval { lo: Q::zero(), hi: Q::zero() });
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    out
}

/// Shrink an open isolating interval of a squarefree `p` below `width`.
pub fn refine(p: &ZPoly, iv: &RootInterval, width: &Q) -> RootInterval {
    let mut iv = iv.clone();
    if iv.is_exact() {
        return iv;
    }
    let two = Q::from_integer(2.into());
    let mut sl = p.sign_at(&iv.lo);
    while &(&iv.hi - &iv.lo) > width {
        let m = (&iv.lo + &iv.hi) / &two;
        let sm = p.sign_at(&m);
        if sm == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sm == sl {
            iv.lo = m;
            sl = sm;
        } else {
            iv.hi = m;
        }
    }
    iv
}

/// Midpoint approximation of a root interval as `f64`.
pub fn approx(iv: &RootInterval) -> f64 {
    let m = (&iv.lo + &iv.hi) / Q::from_integer(2.into());
    crate::num::q_to_f64(&m)
}

/// Rational roots of a nonzero integer polynomial, sorted, without
/// multiplicity.
pub fn rational_roots(p: &ZPoly) -> Vec<Q> {
    if p.deg() <= 0 {
        return Vec::new();
    }
    let sq = p.squarefree_part();
    let lc = Q::from_integer(sq.lc().abs());
    // distinct fractions with denominators dividing lc are 1/lc^2 apart
    let width = Q::one() / (&lc * &lc * Q::from_integer(4.into()));
    let mut out = Vec::new();
    for iv in isolate_real_roots_z(&sq) {
        if iv.is_exact() {
            out.push(iv.lo);
            continue;
        }
        let r = refine(&sq, &iv, &width);
        if r.is_exact() {
            out.push(r.lo);
            continue;
        }
        let s = crate::num::simplest_in(&r.lo, &r.hi);
        if sq.sign_at(&s) == 0 {
            out.push(s);
        }
    }
    out
}
