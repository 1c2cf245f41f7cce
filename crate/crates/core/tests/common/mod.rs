//! Helpers shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use realrank::binform::{BinForm, Role};
use realrank::expr::parse_form;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn form(s: &str) -> BinForm {
    parse_form(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn op(s: &str) -> BinForm {
    let f = form(s);
    assert_eq!(f.role(), Role::Operator, "{s} is not an operator");
    f
}

pub fn ints(role: Role, c: &[i64]) -> BinForm {
    BinForm::from_ints(role, c)
}

/// Integer coefficient vectors of a fixed degree, not all zero.
pub fn coeffs(d: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, d + 1).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

/// Rank of an integer matrix by fraction-free elimination in i128; an
/// oracle independent of the library's rational row reduction.
pub fn bareiss_rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let (nr, nc) = (m.len(), m.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&i| m[i][c] != 0) else { continue };
        m.swap(p, rank);
        for i in rank + 1..nr {
            for j in c + 1..nc {
                m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Direct differentiation oracle: apply `∂x^a ∂y^b` monomial by monomial.
pub fn apply_operator_naive(h: &[i64], f: &[i64]) -> Vec<i64> {
    let k = h.len() - 1;
    let d = f.len() - 1;
    let mut out = vec![0i64; d - k + 1];
    for (j, &hj) in h.iter().enumerate() {
        for (i, &fi) in f.iter().enumerate() {
            // x^(d-i) y^i differentiated (k-j) times in x and j times in y
            let (mut px, mut py, mut c) = ((d - i) as i64, i as i64, hj * fi);
            for _ in 0..k - j {
                c *= px;
                px -= 1;
            }
            for _ in 0..j {
                c *= py;
                py -= 1;
            }
            if c != 0 {
                out[py as usize] += c;
            }
        }
    }
    out
}

/// Random form with integer coefficients uniform in `[-bound, bound]` and
/// nonzero leading and trailing coefficients.
pub fn random_form(rng: &mut rand_chacha::ChaCha8Rng, role: Role, d: usize, bound: i64) -> BinForm {
    use rand::Rng;
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    for i in [0, d] {
        while c[i] == 0 {
            c[i] = rng.gen_range(-bound..=bound);
        }
    }
    BinForm::from_ints(role, &c)
}

/// Product of `d` distinct linear forms `a x - b y` with small integer roots `b/a`.
pub fn random_real_rooted(rng: &mut rand_chacha::ChaCha8Rng, role: Role, d: usize) -> BinForm {
    use rand::Rng;
    let mut roots: Vec<(i64, i64)> = Vec::new();
    while roots.len() < d {
        let (a, b) = (rng.gen_range(0..=4i64), rng.gen_range(-9..=9i64));
        if a == 0 && b == 0 {
            continue;
        }
        // distinct projective points
        if roots.iter().any(|&(c, e)| a * e == b * c) {
            continue;
        }
        roots.push((a, b));
    }
    roots.iter().fold(BinForm::from_ints(role, &[1]), |acc, &(a, b)| acc.mul(&BinForm::from_ints(role, &[a, -b])))
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Squarefree form with `d - 2` distinct real linear factors and one
/// irreducible quadratic factor.
pub fn random_with_complex_pair(rng: &mut rand_chacha::ChaCha8Rng, role: Role, d: usize) -> BinForm {
    use rand::Rng;
    let q = loop {
        let (a, b, c) = (rng.gen_range(1..=4i64), rng.gen_range(-6..=6i64), rng.gen_range(1..=12i64));
        if b * b < 4 * a * c {
            break BinForm::from_ints(role, &[a, b, c]);
        }
    };
    random_real_rooted(rng, role, d - 2).mul(&q)
}

/// Random invertible 2x2 matrix with small integer entries.
pub fn random_gl2(rng: &mut rand_chacha::ChaCha8Rng) -> [[Q; 2]; 2] {
    use rand::Rng;
    loop {
        let m: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        if m[0] * m[3] != m[1] * m[2] {
            return [[q(m[0]), q(m[1])], [q(m[2]), q(m[3])]];
        }
    }
}
