mod common;

use common::*;
use num_traits::{One, Zero};
use realrank::apolarity::contract;
use realrank::binform::{BinForm, Role};
use realrank::decide::{Budget, DecideVerdict};
use realrank::expr::parse_expanded;
use realrank::rank::{decompose, is_typical, rank_lower_bound, rank_scan, real_rank, Basis, RankKind};

const F44: &str = "8*x^8 + 112*x^6*y^2 + 56*x^2*y^6 - y^8";
const FAM1: &str = "e^2*x^7 + 7*(e^2+e+1)*x^6*y - 21*e*(e^2+e+1)*x^5*y^2 - 35*e*x^4*y^3 + 35*e^2*x^3*y^4 + 21*(e^2+e+1)*x^2*y^5 - 7*e*(e^2+e+1)*x*y^6 - e*y^7";
const FAM2: &str = "e*(e^3+e^2-e-3)*x^7 + 14*(e^2-e-1)*x^6*y - 42*e*(e^2-e-1)*x^5*y^2 - 70*(e^3-2)*x^4*y^3 + 70*e*(e^3-2)*x^3*y^4 - 42*e*(e^2-2*e+2)*x^2*y^5 + 14*e^2*(e^2-2*e+2)*x*y^6 - 2*(3*e^3-2*e^2+2*e-4)*y^7";

fn exact(f: &BinForm) -> usize {
    let r = real_rank(f, &Budget::default()).unwrap();
    assert!(r.verify(f).unwrap(), "certificate of {f:?}");
    r.kind.exact().unwrap_or_else(|| panic!("{f:?}: {}", r.kind))
}

#[test]
fn lower_bounds() {
    for d in 1..=8 {
        assert_eq!(rank_lower_bound(&ints(Role::Form, &monomial(d))).unwrap(), 1);
    }
    let seven = form("x*y*(x-y)*(x+y)*(x-2*y)*(x+2*y)*(2*x-y)");
    assert_eq!(rank_lower_bound(&seven).unwrap(), 7);
    // a generic octic: first annihilators in degree 5, fewer real roots
    let f = form("x^8 + 3*x^7*y - x^6*y^2 + 2*x^5*y^3 + 5*x^4*y^4 - x^3*y^5 + 4*x^2*y^6 + x*y^7 + 6*y^8");
    assert!(f.real_root_count().unwrap() <= 5);
    assert_eq!(rank_lower_bound(&f).unwrap(), 5);
    assert!(rank_lower_bound(&BinForm::zero(Role::Form, 3)).is_err());
}

fn monomial(d: usize) -> Vec<i64> {
    let mut c = vec![0; d + 1];
    c[0] = 1;
    c
}

#[test]
fn typical_range() {
    assert!(is_typical(7, 4));
    assert!(!is_typical(7, 3));
    assert!(is_typical(8, 5));
    assert!(!is_typical(8, 4));
    for d in 1..=8 {
        assert!(is_typical(d, d));
        assert!(!is_typical(d, d + 1));
    }
}

#[test]
fn session_octic_has_rank_seven() {
    let f = form(F44);
    let r = real_rank(&f, &Budget::default()).unwrap();
    assert_eq!(r.kind, RankKind::Exact { rank: 7 });
    assert!(r.verify(&f).unwrap());
    // levels 5 and 6 are certified empty
    let empty: Vec<usize> = r.levels.iter().filter(|l| l.verdict == DecideVerdict::Empty).map(|l| l.level).collect();
    assert_eq!(empty, vec![5, 6]);
}

#[test]
fn pure_powers_have_rank_one() {
    for d in 1..=8 {
        let f = ints(Role::Form, &monomial(d));
        let r = real_rank(&f, &Budget::default()).unwrap();
        assert_eq!(r.kind, RankKind::Exact { rank: 1 });
        assert_eq!(r.basis, Basis::PurePower);
    }
    assert_eq!(exact(&form("(2*x - 3*y)^6")), 1);
}

#[test]
fn families_cross_between_five_and_six() {
    let values = [qr(-1, 10), q(0), qr(1, 10)];
    for fam in [FAM1, FAM2] {
        let rows = rank_scan(&parse_expanded(fam).unwrap(), &values, &Budget::default()).unwrap();
        let ranks: Vec<_> = rows.iter().map(|r| r.rank.kind).collect();
        assert_eq!(ranks, vec![RankKind::Exact { rank: 5 }, RankKind::Exact { rank: 6 }, RankKind::Exact { rank: 6 }]);
        for row in &rows {
            assert_eq!(row.form, parse_expanded(fam).unwrap().at(&row.epsilon).to_binform().unwrap());
            assert!(row.rank.verify(&row.form).unwrap());
        }
    }
    // the boundary forms, up to scale
    let f0 = rank_scan(&parse_expanded(FAM1).unwrap(), &[q(0)], &Budget::default()).unwrap();
    assert!(f0[0].form.is_proportional(&form("x^6*y + 3*x^2*y^5")));
    let g0 = rank_scan(&parse_expanded(FAM2).unwrap(), &[q(0)], &Budget::default()).unwrap();
    assert!(g0[0].form.is_proportional(&form("7*x^6*y - 70*x^4*y^3 - 4*y^7")));
}

#[test]
fn constant_family_scans_to_rank_one() {
    let rows = rank_scan(&parse_expanded("x^8").unwrap(), &[q(-3), q(0), qr(5, 2)], &Budget::default()).unwrap();
    assert!(rows.iter().all(|r| r.rank.kind == RankKind::Exact { rank: 1 }));
}

#[test]
fn scan_rejects_vanishing_rows() {
    assert!(rank_scan(&parse_expanded("e*x^3").unwrap(), &[q(0)], &Budget::default()).is_err());
}

#[test]
fn real_rooted_forms_have_maximal_rank() {
    let mut r = rng(11);
    for d in 2..=8 {
        for _ in 0..5 {
            let f = random_real_rooted(&mut r, Role::Form, d);
            assert_eq!(exact(&f), d, "{f:?}");
        }
    }
}

#[test]
fn a_complex_pair_lowers_the_rank() {
    let mut r = rng(12);
    for d in 3..=8 {
        for _ in 0..3 {
            let f = random_with_complex_pair(&mut r, Role::Form, d);
            let k = exact(&f);
            assert!(k < d && is_typical(d, k), "{f:?}: {k}");
        }
    }
}

#[test]
fn random_forms_land_in_the_typical_range() {
    let mut r = rng(13);
    for d in 3..=8 {
        for _ in 0..10 {
            let f = random_form(&mut r, Role::Form, d, 9);
            if f.discriminant().unwrap().is_zero() {
                continue;
            }
            let k = exact(&f);
            assert!(is_typical(d, k), "{f:?}: {k}");
        }
    }
}

#[test]
fn rank_is_invariant_under_substitution() {
    let mut r = rng(14);
    for d in 4..=7 {
        for _ in 0..4 {
            let f = random_form(&mut r, Role::Form, d, 9);
            if f.discriminant().unwrap().is_zero() {
                continue;
            }
            let g = f.substitute(&random_gl2(&mut r));
            assert_eq!(exact(&f), exact(&g), "{f:?}");
        }
    }
}

#[test]
fn monotone_levels() {
    // the first nonempty level follows the last empty one
    let mut r = rng(15);
    for d in 5..=8 {
        for _ in 0..4 {
            let f = random_form(&mut r, Role::Form, d, 9);
            let res = real_rank(&f, &Budget::default()).unwrap();
            if let (Some(k), Some(last)) = (res.kind.exact(), res.levels.last()) {
                if last.verdict == DecideVerdict::Nonempty {
                    assert_eq!(last.level, k);
                    assert!(res.levels[..res.levels.len() - 1].iter().all(|l| l.verdict == DecideVerdict::Empty));
                }
            }
        }
    }
}

#[test]
fn non_squarefree_forms() {
    // all roots real, so the rank is the degree despite the repeated roots
    assert_eq!(exact(&form("x^6*y")), 7);
    assert_eq!(exact(&form("x^2*y")), 3);
    assert_eq!(exact(&form("x^3*y^3")), 6);
    // a double real root times a complex pair
    let k = exact(&form("x^2*(x^2 + y^2)"));
    assert!(is_typical(4, k));
}

#[test]
fn decomposition_of_a_sum_of_cubes_is_exact() {
    let f = form("x^3 + y^3");
    let d = decompose(&f, &op("u*v"), 10).unwrap();
    assert!(d.exact);
    assert!(d.residual.is_zero());
    let mut terms: Vec<(String, String, String)> = d.display_terms();
    terms.sort();
    assert_eq!(terms.len(), 2);
    for t in &d.terms {
        assert!(t.coeff.is_one());
        assert!((t.a.is_zero() && t.b.is_one()) || (t.a.is_one() && t.b.is_zero()));
    }
}

#[test]
fn decomposition_of_a_power() {
    let f = form("x^5");
    let d = decompose(&f, &op("v"), 10).unwrap();
    assert_eq!(d.terms.len(), 1);
    assert!(d.exact && d.terms[0].coeff.is_one());
}

#[test]
fn numeric_decomposition_of_the_session_octic() {
    let f = form(F44);
    let r = real_rank(&f, &Budget::default()).unwrap();
    let w = r.witness.unwrap();
    let d = decompose(&f, &w, 40).unwrap();
    assert_eq!(d.terms.len(), 7);
    assert!(!d.exact);
    assert!(d.residual < qr(1, 1) / Q::from_integer(num_traits::pow(num_bigint::BigInt::from(10), 30)));
    // reassemble
    let sum = d.terms.iter().fold(BinForm::zero(Role::Form, 8), |acc, t| {
        acc.add(&BinForm::linear(Role::Form, t.a.clone(), t.b.clone()).pow(8).scale(&t.coeff))
    });
    let diff = sum.sub(&f);
    assert!(diff.coeffs().iter().all(|c| c.clone() * Q::from_integer(num_traits::pow(num_bigint::BigInt::from(10), 30)) < q(1)));
}

#[test]
fn decompose_rejects_non_witnesses() {
    let f = form("x^3 + y^3");
    assert!(decompose(&f, &op("u^2 + v^2"), 10).is_err());
    assert!(decompose(&f, &op("u*(u - v)"), 10).is_err());
    assert!(contract(&op("u*v"), &f).unwrap().is_zero());
}
