//! Coincident root loci: dimension, degree, fusion order, membership, dual
//! varieties and the real rank boundary tables for degrees 3 to 8.

use crate::binform::BinForm;
use crate::error::{Error, Result};
use crate::num::factorial;
use crate::partition::Partition;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Version of the exported boundary table format.
pub const TABLE_VERSION: u32 = 1;

/// Dimension and degree of `Δ_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrlDescriptor {
    pub lambda: Partition,
    pub ambient_degree: u32,
    pub dim: usize,
    pub degree: BigInt,
}

/// Codimension, join decomposition and (for hypersurfaces) degree of
/// the dual variety `(Δ_λ)^∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDescriptor {
    pub lambda: Partition,
    pub codim: usize,
    pub join_components: Vec<Partition>,
    pub degree: Option<BigInt>,
}

fn mult_factorials(lambda: &Partition, skip_ones: bool) -> BigInt {
    lambda
        .mults()
        .iter()
        .filter(|(&j, _)| !(skip_ones && j == 1))
        .fold(BigInt::one(), |acc, (_, &m)| acc * factorial(m as u64))
}

/// `n`, the number of parts.
pub fn crl_dimension(lambda: &Partition) -> usize {
    lambda.len()
}

/// `n! / (m_1! ... m_k!) · λ_1 ... λ_n`.
pub fn crl_degree(lambda: &Partition) -> BigInt {
    let n = lambda.len() as u64;
    let prod: BigInt = lambda.parts().iter().map(|&p| BigInt::from(p)).product();
    factorial(n) / mult_factorials(lambda, false) * prod
}

pub fn crl_descriptor(lambda: &Partition) -> CrlDescriptor {
    CrlDescriptor {
        lambda: lambda.clone(),
        ambient_degree: lambda.total(),
        dim: crl_dimension(lambda),
        degree: crl_degree(lambda),
    }
}

/// Whether the parts of `lambda` can be grouped into blocks whose sums,
/// sorted, are the parts of `mu`; that is, `Δ_mu ⊆ Δ_lambda`.
pub fn is_fusion(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.total() != lambda.total() {
        return Err(Error::PartitionMismatch { total: mu.total(), degree: lambda.total() });
    }
    // assign each part of lambda (largest first) to a block of mu
    fn place(parts: &[u32], room: &mut [u32]) -> bool {
        let Some((&p, rest)) = parts.split_first() else {
            return room.iter().all(|&r| r == 0);
        };
        for i in 0..room.len() {
            // skip blocks identical in remaining room to an earlier one
            if room[i] < p || room[..i].contains(&room[i]) {
                continue;
            }
            room[i] -= p;
            let ok = place(rest, room);
            room[i] += p;
            if ok {
                return true;
            }
        }
        false
    }
    let mut room = mu.parts().to_vec();
    Ok(place(lambda.parts(), &mut room))
}

/// `h ∈ Δ_λ`: the multiplicity pattern of `h` is a fusion of `λ`.
pub fn crl_member(h: &BinForm, lambda: &Partition) -> Result<bool> {
    if h.degree() as u32 != lambda.total() {
        return Err(Error::PartitionMismatch { total: lambda.total(), degree: h.degree() as u32 });
    }
    let mu = h.multiplicity_partition()?;
    is_fusion(&mu, lambda)
}

/// Descriptor of `(Δ_λ)^∨`.
pub fn dual_descriptor(lambda: &Partition) -> DualDescriptor {
    let d = lambda.total();
    let m1 = lambda.mult(1);
    let join_components = lambda
        .parts()
        .iter()
        .filter(|&&l| l >= 2)
        .map(|&l| {
            let mut parts = vec![d - l + 2];
            parts.extend(std::iter::repeat_n(1, l as usize - 2));
            Partition::from_slice(&parts)
        })
        .collect();
    let degree = (m1 == 0).then(|| {
        let n = lambda.len() as u64;
        let prod: BigInt = lambda.parts().iter().map(|&p| BigInt::from(p - 1)).product();
        factorial(n + 1) / mult_factorials(lambda, true) * prod
    });
    DualDescriptor { lambda: lambda.clone(), codim: m1 + 1, join_components, degree }
}

/// Whether the Chow-type variety `CH_i(Δ_λ)` is a hypersurface:
/// `i ≤ #{j : λ_j ≥ 2}`.
pub fn ch_is_hypersurface(lambda: &Partition, i: usize) -> Result<bool> {
    if i > lambda.len() {
        return Err(Error::OutOfRange(format!("i = {i} exceeds the dimension {}", lambda.len())));
    }
    Ok(i <= lambda.parts().iter().filter(|&&p| p >= 2).count())
}

/// Smallest typical real rank `⌈(d+1)/2⌉`.
pub fn min_typical(d: u32) -> u32 {
    (d + 2) / 2
}

/// `λ`'s with `∂_alg(R_{d,r}) = ∪ (Δ_λ)^∨`, for `3 ≤ d ≤ 8` and typical `r`.
pub fn boundary_components(d: u32, r: u32) -> Result<Vec<Partition>> {
    if !(3..=8).contains(&d) {
        return Err(Error::NotCovered(format!(
            "real rank boundaries are only established for 3 <= d <= 8; d = {d} is not covered"
        )));
    }
    if r < min_typical(d) || r > d {
        return Err(Error::OutOfRange(format!(
            "r = {r} is not a typical rank for d = {d} (range {}..={d})",
            min_typical(d)
        )));
    }
    let t: &[&[u32]] = match (d, r) {
        (3, _) => &[&[3]],
        (4, _) => &[&[4]],
        (5, 3) => &[&[3, 2]],
        (5, 4) => &[&[3, 2], &[5]],
        (5, 5) => &[&[5]],
        (6, 4) => &[&[3, 3], &[4, 2]],
        (6, 5) => &[&[3, 3], &[4, 2], &[6]],
        (6, 6) => &[&[6]],
        (7, 4) => &[&[3, 2, 2]],
        (7, 5) => &[&[3, 2, 2], &[4, 3], &[5, 2]],
        (7, 6) => &[&[4, 3], &[5, 2], &[7]],
        (7, 7) => &[&[7]],
        (8, 5) => &[&[3, 3, 2], &[4, 2, 2]],
        (8, 6) => &[&[3, 3, 2], &[4, 2, 2], &[4, 4], &[5, 3], &[6, 2]],
        (8, 7) => &[&[4, 4], &[5, 3], &[6, 2], &[8]],
        (8, 8) => &[&[8]],
        _ => unreachable!("range checked above"),
    };
    Ok(t.iter().map(|p| Partition::from_slice(p)).collect())
}

/// One record of the exported boundary table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub d: u32,
    pub r: u32,
    pub lambda: Partition,
    pub codim: usize,
    pub join_components: Vec<Partition>,
    pub degree: Option<BigInt>,
}

/// The full boundary table with its format version.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryTable {
    pub version: u32,
    pub records: Vec<BoundaryRecord>,
}

/// Every `(d, r, λ)` for `3 ≤ d ≤ 8`.
pub fn boundary_table() -> BoundaryTable {
    let mut records = Vec::new();
    for d in 3..=8 {
        for r in min_typical(d)..=d {
            for lambda in boundary_components(d, r).expect("in range") {
                let dd = dual_descriptor(&lambda);
                records.push(BoundaryRecord {
                    d,
                    r,
                    lambda,
                    codim: dd.codim,
                    join_components: dd.join_components,
                    degree: dd.degree,
                });
            }
        }
    }
    BoundaryTable { version: TABLE_VERSION, records }
}

/// Iterated singular loci listed for partitions of 5 and 6.
pub fn singular_locus_fixture(lambda: &Partition) -> Result<Vec<Partition>> {
    let t: &[&[u32]] = match lambda.parts() {
        [2, 1, 1, 1] => &[&[3, 1, 1], &[2, 2, 1]],
        [3, 1, 1] => &[&[4, 1]],
        [2, 2, 1] => &[&[3, 2]],
        [4, 1] | [3, 2] => &[&[5]],
        [2, 1, 1, 1, 1] => &[&[3, 1, 1, 1], &[2, 2, 1, 1]],
        [3, 1, 1, 1] => &[&[4, 1, 1], &[3, 3]],
        [2, 2, 1, 1] => &[&[3, 2, 1], &[2, 2, 2]],
        [4, 1, 1] => &[&[5, 1]],
        [3, 2, 1] => &[&[3, 3], &[4, 2], &[5, 1]],
        [4, 2] | [5, 1] => &[&[6]],
        _ => {
            return Err(Error::NotCovered(format!(
                "no singular locus fixture for {lambda}; the general rule is not implemented"
            )))
        }
    };
    Ok(t.iter().map(|p| Partition::from_slice(p)).collect())
}
