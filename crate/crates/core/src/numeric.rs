//! Floating-point helpers used only to produce numeric witnesses; every
//! exact decision is made elsewhere.

use crate::num::q_to_f64;
use crate::poly::ZPoly;
use crate::Q;
use num_complex::Complex64;

pub type C64 = Complex64;

/// Complex coefficients of an integer polynomial, scaled by a power of two
/// so that the largest one has modest magnitude.
pub fn zpoly_to_c64(p: &ZPoly) -> Vec<C64> {
    let bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    let shift = (bits - 60).max(0) as i32;
    p.coeffs()
        .iter()
        .map(|c| {
            let q = Q::from_integer(c.clone()) / Q::from_integer(num_bigint::BigInt::from(1) << shift as usize);
            C64::new(q_to_f64(&q), 0.0)
        })
        .collect()
}

pub fn horner(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn derivative(c: &[C64]) -> Vec<C64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect()
}

/// All complex roots of a polynomial (lowest degree first, nonzero leading
/// coefficient) by Aberth iteration.
pub fn poly_roots(c: &[C64]) -> Vec<C64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = c[n];
    let radius = 1.0 + c[..n].iter().map(|a| (a / lc).norm()).fold(0.0, f64::max);
    let r0 = radius.min(1e6).max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(r0 * 0.5, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let dc = derivative(&c);
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let p = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&dc, z[i]);
            let s: C64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// A unit null vector of a (numerically) rank-deficient matrix, by
/// Gaussian elimination with complete pivoting.
pub fn null_vector(m: &[Vec<C64>]) -> Option<Vec<C64>> {
    let rows = m.len();
    let cols = m.first()?.len();
    let mut a: Vec<Vec<C64>> = m.to_vec();
    let scale = a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max).max(1e-300);
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best = (0.0, k, k);
        for i in k..rows {
            for j in k..cols {
                let v = a[i][j].norm();
                if v > best.0 {
                    best = (v, i, j);
                }
            }
        }
        if best.0 <= 1e-9 * scale {
            break;
        }
        a.swap(k, best.1);
        for row in a.iter_mut() {
            row.swap(k, best.2);
        }
        perm.swap(k, best.2);
        for i in k + 1..rows {
            let f = a[i][k] / a[k][k];
            for j in k..cols {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
        rank += 1;
    }
    if rank == cols {
        return None;
    }
    // free variable at position `rank`, back-substitute the pivots
    let mut x = vec![C64::new(0.0, 0.0); cols];
    x[rank] = C64::new(1.0, 0.0);
    for k in (0..rank).rev() {
        let s: C64 = (k + 1..cols).map(|j| a[k][j] * x[j]).sum();
        x[k] = -s / a[k][k];
    }
    let mut out = vec![C64::new(0.0, 0.0); cols];
    for (pos, &orig) in perm.iter().enumerate() {
        out[orig] = x[pos];
    }
    let norm = out.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    Some(out.into_iter().map(|v| v / norm).collect())
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}
