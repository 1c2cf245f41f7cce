mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use realrank::binform::{BinForm, Role};
use realrank::crl::*;
use realrank::error::Error;
use realrank::partition::Partition;

fn p(parts: &[u32]) -> Partition {
    Partition::from_slice(parts)
}

fn ones(k: usize) -> Vec<u32> {
    vec![1; k]
}

#[test]
fn dimension_examples() {
    assert_eq!(crl_dimension(&p(&[3, 2, 2])), 3);
    assert_eq!(crl_dimension(&p(&[8])), 1);
    assert_eq!(crl_dimension(&p(&ones(6))), 6);
}

#[test]
fn degree_examples() {
    assert_eq!(crl_degree(&p(&[2, 1, 1, 1, 1, 1])), BigInt::from(12));
    assert_eq!(crl_degree(&p(&[2, 1, 1, 1, 1, 1, 1])), BigInt::from(14));
    for d in 1..=8 {
        assert_eq!(crl_degree(&p(&[d])), BigInt::from(d));
    }
    for d in 3..=8usize {
        let mut parts = vec![2];
        parts.extend(ones(d - 2));
        assert_eq!(crl_degree(&p(&parts)), BigInt::from(2 * (d - 1)));
    }
}

#[test]
fn fusion_examples() {
    assert!(is_fusion(&p(&[4]), &p(&[2, 1, 1])).unwrap());
    assert!(!is_fusion(&p(&[2, 2]), &p(&[3, 1])).unwrap());
    for d in 1..=8 {
        for l in Partition::all(d) {
            assert!(is_fusion(&p(&[d]), &l).unwrap());
        }
    }
    assert!(matches!(is_fusion(&p(&[2]), &p(&[2, 1])), Err(Error::PartitionMismatch { .. })));
}

#[test]
fn member_examples() {
    assert!(crl_member(&form("u^3*v^3"), &p(&[3, 3])).unwrap());
    assert!(crl_member(&form("x^7"), &p(&[2, 1, 1, 1, 1, 1])).unwrap());
    assert!(!crl_member(&form("u*v*(u-v)"), &p(&[2, 1])).unwrap());
    assert!(matches!(crl_member(&form("u*v"), &p(&[2, 1])), Err(Error::PartitionMismatch { .. })));
    assert!(matches!(crl_member(&BinForm::zero(Role::Form, 3), &p(&[2, 1])), Err(Error::ZeroInput)));
}

#[test]
fn dual_examples() {
    let dd = dual_descriptor(&p(&[4, 4]));
    assert_eq!(dd.codim, 1);
    assert_eq!(dd.join_components, vec![p(&[6, 1, 1]), p(&[6, 1, 1])]);
    assert_eq!(dd.degree, Some(BigInt::from(27)));
    let dd = dual_descriptor(&p(&[3, 2, 2]));
    assert_eq!(dd.join_components, vec![p(&[6, 1]), p(&[7]), p(&[7])]);
    assert_eq!(dd.degree, Some(BigInt::from(24)));
    for d in 3..=8usize {
        let mut parts = vec![2];
        parts.extend(ones(d - 2));
        let dd = dual_descriptor(&p(&parts));
        assert_eq!(dd.codim, d - 1);
        assert_eq!(dd.join_components, vec![p(&[d as u32])]);
        assert_eq!(dd.degree, None);
    }
}

#[test]
fn dual_degree_tables() {
    let check = |parts: &[u32], deg: u32| {
        assert_eq!(dual_descriptor(&p(parts)).degree, Some(BigInt::from(deg)), "{parts:?}");
    };
    for (l, g) in [(&[3, 2][..], 12), (&[3, 3], 12), (&[4, 2], 18)] {
        check(l, g);
    }
    for (d, g) in [(3, 4), (4, 6), (5, 8), (6, 10)] {
        check(&[d], g);
    }
    for (l, g) in [(&[3, 2, 2][..], 24), (&[4, 3], 36), (&[5, 2], 24), (&[7], 12)] {
        check(l, g);
    }
    for (l, g) in [(&[3, 3, 2][..], 48), (&[4, 2, 2], 36), (&[4, 4], 27), (&[5, 3], 48), (&[6, 2], 30), (&[8], 14)] {
        check(l, g);
    }
}

#[test]
fn join_components_match_remarks() {
    let j = |l: &[u32]| dual_descriptor(&p(l)).join_components;
    assert_eq!(j(&[3, 2]), vec![p(&[4, 1]), p(&[5])]);
    assert_eq!(j(&[3, 3, 2]), vec![p(&[7, 1]), p(&[7, 1]), p(&[8])]);
    assert_eq!(j(&[5, 3]), vec![p(&[5, 1, 1, 1]), p(&[7, 1])]);
    assert_eq!(j(&[6, 2]), vec![p(&[4, 1, 1, 1, 1]), p(&[8])]);
}

#[test]
fn ch_examples() {
    assert!(ch_is_hypersurface(&p(&[3, 2, 2]), 3).unwrap());
    assert!(matches!(ch_is_hypersurface(&p(&[3, 2, 2]), 4), Err(Error::OutOfRange(_))));
    assert!(!ch_is_hypersurface(&p(&[2, 1, 1, 1]), 2).unwrap());
}

#[test]
fn boundary_examples() {
    assert_eq!(boundary_components(7, 5).unwrap(), vec![p(&[3, 2, 2]), p(&[4, 3]), p(&[5, 2])]);
    assert_eq!(boundary_components(8, 8).unwrap(), vec![p(&[8])]);
    assert_eq!(boundary_components(6, 4).unwrap(), vec![p(&[3, 3]), p(&[4, 2])]);
    for d in 3..=8 {
        assert_eq!(boundary_components(d, d).unwrap(), vec![p(&[d])]);
    }
    assert!(matches!(boundary_components(9, 5), Err(Error::NotCovered(_))));
    assert!(matches!(boundary_components(7, 3), Err(Error::OutOfRange(_))));
    let t = boundary_table();
    assert_eq!(t.version, TABLE_VERSION);
    assert_eq!(t.records.len(), 2 + 2 + 4 + 6 + 8 + 12);
    assert!(t.records.iter().all(|r| r.codim == 1 && r.degree.is_some()));
}

#[test]
fn singular_fixture_examples() {
    assert_eq!(singular_locus_fixture(&p(&[2, 1, 1, 1])).unwrap(), vec![p(&[3, 1, 1]), p(&[2, 2, 1])]);
    assert_eq!(singular_locus_fixture(&p(&[3, 2, 1])).unwrap(), vec![p(&[3, 3]), p(&[4, 2]), p(&[5, 1])]);
    assert_eq!(singular_locus_fixture(&p(&[4, 2])).unwrap(), vec![p(&[6])]);
    assert_eq!(singular_locus_fixture(&p(&[3, 1, 1, 1])).unwrap(), vec![p(&[4, 1, 1]), p(&[3, 3])]);
    assert!(matches!(singular_locus_fixture(&p(&[7])), Err(Error::NotCovered(_))));
}

/// Brute force oracle: enumerate every map from parts of `lambda` to blocks.
fn fusion_brute(mu: &Partition, lambda: &Partition) -> bool {
    let (lp, mp) = (lambda.parts(), mu.parts());
    let k = mp.len();
    let n = lp.len();
    let total = k.pow(n as u32);
    (0..total).any(|mut code| {
        let mut sums = vec![0u32; k];
        for &x in lp {
            sums[code % k] += x;
            code /= k;
        }
        sums == mp
    })
}

#[test]
fn fusion_is_partial_order() {
    for d in 1..=8 {
        let all = Partition::all(d);
        for a in &all {
            assert!(is_fusion(a, a).unwrap());
            for b in &all {
                let ab = is_fusion(a, b).unwrap();
                assert_eq!(ab, fusion_brute(a, b), "{a} {b}");
                if a != b && ab {
                    assert!(!is_fusion(b, a).unwrap());
                }
                if ab {
                    for c in &all {
                        if is_fusion(b, c).unwrap() {
                            assert!(is_fusion(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn join_count_is_parts_minus_ones() {
    for d in 1..=8 {
        for l in Partition::all(d) {
            assert_eq!(dual_descriptor(&l).join_components.len(), l.len() - l.mult(1));
        }
    }
}

fn all_partitions() -> impl Strategy<Value = Partition> {
    prop::sample::select((1..=8).flat_map(Partition::all).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn membership_of_products(lam in all_partitions(), ls in prop::collection::vec((-6i64..=6, 1i64..=6), 8), mu_idx in any::<prop::sample::Index>()) {
        let n = lam.len();
        let mut h = BinForm::new(Role::Operator, vec![q(1)]);
        for (l, &e) in ls[..n].iter().zip(lam.parts()) {
            h = h.mul(&BinForm::linear(Role::Operator, qr(l.0, l.1), q(1)).pow(e as usize));
        }
        prop_assert!(crl_member(&h, &lam).unwrap());
        let all = Partition::all(lam.total());
        let mu = &all[mu_idx.index(all.len())];
        let pattern = h.multiplicity_partition().unwrap();
        prop_assert_eq!(crl_member(&h, mu).unwrap(), is_fusion(&pattern, mu).unwrap());
    }
}
