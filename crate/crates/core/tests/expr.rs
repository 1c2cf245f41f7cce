mod common;

use common::*;
use proptest::prelude::*;
use realrank::binform::{BinForm, Role};
use realrank::error::Error;
use realrank::expr::{parse, parse_expanded, parse_form, Expanded};
use std::collections::BTreeMap;

#[test]
fn session_input_parses() {
    let f = parse_form("8*x^8+112*x^6*y^2+56*x^2*y^6-y^8").unwrap();
    assert_eq!(f, ints(Role::Form, &[8, 0, 112, 0, 0, 0, 56, 0, -1]));
    // the unicode minus is accepted
    assert_eq!(parse_form("8*x^8+112*x^6*y^2+56*x^2*y^6\u{2212}y^8").unwrap(), f);
}

#[test]
fn products_and_powers_expand() {
    assert_eq!(parse_form("(x+y)^3").unwrap(), ints(Role::Form, &[1, 3, 3, 1]));
    assert_eq!(parse_form("x*y*(x-y)").unwrap(), ints(Role::Form, &[0, 1, -1, 0]));
    assert_eq!(parse_form("u^3*v^3").unwrap(), ints(Role::Operator, &[0, 0, 0, 1, 0, 0, 0]));
    assert_eq!(parse_form("x^2/2 - 0.25*y^2").unwrap().coeffs(), &[qr(1, 2), q(0), qr(-1, 4)]);
    assert_eq!(parse_form("-(x - 2*y)").unwrap(), ints(Role::Form, &[-1, 2]));
}

#[test]
fn families_carry_the_parameter() {
    let fam = parse_expanded("e^2*x^2 + (e+1)*x*y - y^2").unwrap();
    assert!(fam.has_parameter());
    assert_eq!(fam.at(&q(2)).to_binform().unwrap(), ints(Role::Form, &[4, 3, -1]));
    assert_eq!(fam.at(&q(0)).to_binform().unwrap(), ints(Role::Form, &[0, 1, -1]));
    assert!(fam.to_binform().is_err());
    assert_eq!(parse_expanded("eps*x").unwrap(), parse_expanded("e*x").unwrap());
}

#[test]
fn rejects_bad_input() {
    for s in ["x +", "(x + y", "x + y)", "x ^ y", "x^", "2 $ x", "x*u", "z^2", "x/y", "x/(1-1)", "1..2*x", ""] {
        assert!(matches!(parse(s).and_then(|(e, r)| e.expand(r)), Err(Error::Parse(_))), "{s}");
    }
    assert!(matches!(parse_form("x^2 + y"), Err(Error::Parse(_))));
    assert!(matches!(parse_form("x - x"), Err(Error::ZeroInput)));
}

#[test]
fn printing_is_readable() {
    assert_eq!(ints(Role::Form, &[8, 0, 112, 0, 0, 0, 56, 0, -1]).to_string(), "8*x^8+112*x^6*y^2+56*x^2*y^6-y^8");
    assert_eq!(ints(Role::Operator, &[1, -1]).to_string(), "u-v");
}

fn arb_q() -> impl Strategy<Value = realrank::Q> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| qr(n, d))
}

fn arb_binform() -> impl Strategy<Value = BinForm> {
    (any::<bool>(), 1usize..=10)
        .prop_flat_map(|(op, d)| (Just(op), prop::collection::vec(arb_q(), d + 1)))
        .prop_filter_map("zero", |(op, c)| {
            let f = BinForm::new(if op { Role::Operator } else { Role::Form }, c);
            (!f.is_zero()).then_some(f)
        })
}

fn arb_family() -> impl Strategy<Value = Expanded> {
    (1u32..=7, prop::collection::vec(((0u32..=7), (0u32..=3), arb_q()), 1..12)).prop_map(|(d, ts)| {
        let mut terms = BTreeMap::new();
        for (i, k, c) in ts {
            let i = i.min(d);
            if c != q(0) {
                terms.insert((d - i, i, k), c);
            }
        }
        Expanded { role: Role::Form, terms }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn form_print_parse_round_trip(f in arb_binform()) {
        prop_assert_eq!(parse_form(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn family_print_parse_round_trip(fam in arb_family()) {
        prop_assert_eq!(parse_expanded(&fam.to_string()).unwrap(), fam);
    }
}
