//! Rational scalars and small combinatorial helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always reduced with positive denominator.
pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn q_to_f64(x: &Q) -> f64 {
    let sn = x.numer().bits().saturating_sub(64);
    let sd = x.denom().bits().saturating_sub(64);
    let n = (x.numer() >> sn as usize).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> sd as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi(sn as i32 - sd as i32)
}

/// Exact rational value of a finite float.
pub fn f64_to_q(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

/// A short rational strictly between `a < b`: an integer when one fits,
/// otherwise the dyadic with the fewest bits.
pub fn simple_between(a: &Q, b: &Q) -> Q {
    debug_assert!(a < b);
    let fa = a.floor() + Q::one();
    if &fa < b {
        // smallest-magnitude integer in (a, b)
        let ce = b.ceil() - Q::one();
        if fa <= Q::zero() && ce >= Q::zero() {
            return Q::zero();
        }
        return if fa > Q::zero() { fa } else { ce };
    }
    let mut den = BigInt::from(2);
    loop {
        let k = (a * Q::from_integer(den.clone())).floor() + Q::one();
        let cand = k / Q::from_integer(den.clone());
        if &cand < b {
            return cand;
        }
        den <<= 1;
    }
}

/// Rational just below/above a value: used for unbounded sample cells.
pub fn below(a: &Q) -> Q {
    (a - Q::one()).floor()
}

pub fn above(a: &Q) -> Q {
    (a + Q::one()).ceil()
}

/// Lcm of denominators.
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// Scale a rational vector to coprime integers with positive first nonzero entry.
pub fn primitive_int_vec(v: &[Q]) -> Vec<BigInt> {
    let l = denom_lcm(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    ints.into_iter()
        .map(|x| {
            let y = x / &g;
            if sign {
                -y
            } else {
                y
            }
        })
        .collect()
}

/// Parse `a`, `-a/b` or a decimal like `-0.125`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(n, d);
        return Some(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (Stern–Brocot descent via continued fractions).
pub fn simplest_in(lo: &Q, hi: &Q) -> Q {
    debug_assert!(lo <= hi);
    if lo <= &Q::zero() && hi >= &Q::zero() {
        return Q::zero();
    }
    if hi < &Q::zero() {
        return -simplest_in(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if &(fl.clone() + Q::one()) <= hi {
        return fl + Q::one();
    }
    // lo, hi share the integer part; recurse on the reciprocals of the
    // fractional parts
    let a = &fl;
    let inner = simplest_in(&(Q::one() / (hi - a)), &(Q::one() / (lo - a)));
    a + Q::one() / inner
}

/// Decimal rendering rounded to `digits` places after the point.
pub fn to_decimal(x: &Q, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (x * Q::from_integer(scale.clone())).round().to_integer();
    let neg = scaled < BigInt::zero();
    let a = if neg { -scaled } else { scaled };
    let (int, frac) = a.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}
