mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;
use realrank::apolarity::{apolar_ideal, apolar_space, contract, LinearSystem};
use realrank::binform::{BinForm, Role};
use realrank::decide::{contains_realrooted, open_cad_samples, pencil_decide, Budget, DecideVerdict, ParamPoly};
use realrank::expr::parse_expanded;
use realrank::poly::{BiPoly, ZPoly};

const F44: &str = "8*x^8 + 112*x^6*y^2 + 56*x^2*y^6 - y^8";
const FAM1: &str = "e^2*x^7 + 7*(e^2+e+1)*x^6*y - 21*e*(e^2+e+1)*x^5*y^2 - 35*e*x^4*y^3 + 35*e^2*x^3*y^4 + 21*(e^2+e+1)*x^2*y^5 - 7*e*(e^2+e+1)*x*y^6 - e*y^7";
const FAM2: &str = "e*(e^3+e^2-e-3)*x^7 + 14*(e^2-e-1)*x^6*y - 42*e*(e^2-e-1)*x^5*y^2 - 70*(e^3-2)*x^4*y^3 + 70*e*(e^3-2)*x^3*y^4 - 42*e*(e^2-2*e+2)*x^2*y^5 + 14*e^2*(e^2-2*e+2)*x*y^6 - 2*(3*e^3-2*e^2+2*e-4)*y^7";

fn family(s: &str, n: i64, d: i64) -> BinForm {
    parse_expanded(s).unwrap().at(&qr(n, d)).to_binform().unwrap()
}

fn system(basis: &[BinForm]) -> LinearSystem {
    LinearSystem::new(basis[0].degree(), basis.to_vec()).unwrap()
}

fn decide(l: &LinearSystem) -> realrank::decide::DecideOutcome {
    let out = contains_realrooted(l, &Budget::default()).unwrap();
    if let Some(w) = &out.witness {
        assert!(w.is_real_rooted().unwrap());
        assert!(l.contains(w), "witness outside the system");
    }
    out
}

/// Members of a system with random integer weights: a search oracle.
fn search_hits(l: &LinearSystem, n: usize, seed: u64) -> Option<BinForm> {
    let mut r = rng(seed);
    let k = l.basis().len();
    (0..n).find_map(|i| {
        let b = 3 + (i as i64 % 200);
        let w: Vec<Q> = (0..k).map(|_| q(r.gen_range(-b..=b))).collect();
        let h = l.element(&w);
        (!h.is_zero() && h.is_real_rooted().unwrap()).then_some(h)
    })
}

#[test]
fn single_real_rooted_generator_is_its_own_witness() {
    let h = op("u*v*(u-v)*(u+v)*(u-2*v)");
    let out = decide(&system(std::slice::from_ref(&h)));
    assert_eq!(out.verdict, DecideVerdict::Nonempty);
    assert!(out.witness.unwrap().is_proportional(&h));
}

#[test]
fn pure_powers_span_no_real_rooted_member() {
    let l = system(&[op("u^5"), op("v^5")]);
    assert_eq!(decide(&l).verdict, DecideVerdict::Empty);
    let p = pencil_decide(&op("u^5"), &op("v^5")).unwrap();
    assert_eq!(p.verdict, DecideVerdict::Empty);
    assert!(search_hits(&l, 20_000, 1).is_none());
}

#[test]
fn pencil_with_real_rooted_member() {
    let g = op("u*v*(u-v)*(u+v)*(u-2*v)");
    let mut r = rng(7);
    let other = random_form(&mut r, Role::Operator, 5, 9);
    let out = pencil_decide(&g, &other).unwrap();
    assert_eq!(out.verdict, DecideVerdict::Nonempty);
    assert!(out.witness.unwrap().is_real_rooted().unwrap());
}

#[test]
fn pencil_errors() {
    assert!(pencil_decide(&op("u^5"), &op("2*u^5")).is_err());
    assert!(pencil_decide(&op("u^5"), &op("v^4")).is_err());
    assert!(pencil_decide(&op("u^2"), &form("y^2")).is_err());
}

#[test]
fn quintic_generators_of_the_rank_seven_octic() {
    let id = apolar_ideal(&form(F44)).unwrap();
    assert_eq!(id.degrees(), (5, 5));
    let out = pencil_decide(&id.g, &id.gprime).unwrap();
    assert_eq!(out.verdict, DecideVerdict::Empty);
    // one interval per real root of D(t), plus the point g'
    let cad = &out.cells[0];
    assert_eq!(cad.samples.len(), cad.counts.len());
    assert_eq!(out.cells[1].samples.len(), 1);
}

#[test]
fn rank_seven_octic_has_no_sextic_witness() {
    let l = apolar_space(&form(F44), 6).unwrap();
    assert_eq!(l.dim(), 4);
    let out = decide(&l);
    assert_eq!(out.verdict, DecideVerdict::Empty, "{}", out.reason);
    assert!(!out.cells.is_empty());
    let w = decide(&apolar_space(&form(F44), 7).unwrap());
    assert_eq!(w.verdict, DecideVerdict::Nonempty);
}

#[test]
fn degree_seven_families_cross_at_level_five() {
    for fam in [FAM1, FAM2] {
        let neg = decide(&apolar_space(&family(fam, -1, 10), 5).unwrap());
        assert_eq!(neg.verdict, DecideVerdict::Nonempty);
        let w = neg.witness.unwrap();
        assert!(contract(&w, &family(fam, -1, 10)).unwrap().is_zero());
        let pos = decide(&apolar_space(&family(fam, 1, 10), 5).unwrap());
        assert_eq!(pos.verdict, DecideVerdict::Empty, "{}", pos.reason);
        let six = decide(&apolar_space(&family(fam, 1, 10), 6).unwrap());
        assert_eq!(six.verdict, DecideVerdict::Nonempty);
    }
}

#[test]
fn boundary_forms_of_the_families_need_six() {
    // f_0 lies on the wall: level five has no open real-rooted cell
    for fam in [FAM1, FAM2] {
        let f0 = family(fam, 0, 1);
        assert_eq!(decide(&apolar_space(&f0, 5).unwrap()).verdict, DecideVerdict::Empty);
    }
}

#[test]
fn open_cad_on_the_line() {
    let s = open_cad_samples(&ParamPoly::One(ZPoly::from_i64s(&[-1, 0, 1]))).unwrap();
    assert_eq!(s.len(), 3);
    let t: Vec<f64> = s.iter().map(|p| p[0].to_f64().unwrap()).collect();
    assert!(t[0] < -1.0 && -1.0 < t[1] && t[1] < 1.0 && t[2] > 1.0, "{t:?}");

    let s = open_cad_samples(&ParamPoly::One(ZPoly::from_i64s(&[0, 1]))).unwrap();
    assert_eq!(s.len(), 2);
    assert!(s[0][0].is_negative() && s[1][0].is_positive());

    assert!(open_cad_samples(&ParamPoly::One(ZPoly::zero())).is_err());
}

#[test]
fn open_cad_on_the_disk() {
    // t1^2 + t2^2 - 1 with t2 the main variable
    let d = BiPoly::new(vec![ZPoly::from_i64s(&[-1, 0, 1]), ZPoly::zero(), ZPoly::from_i64s(&[1])]);
    let p = ParamPoly::Two(d);
    let s = open_cad_samples(&p).unwrap();
    let signs: Vec<i32> = s.iter().map(|t| sign(&p.eval(t))).collect();
    assert!(signs.iter().all(|&x| x != 0));
    assert!(signs.contains(&-1) && signs.contains(&1));
}

fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Dense coefficients `c[i][j]` of `t1^i t2^j`.
fn random_bivariate(r: &mut rand_chacha::ChaCha8Rng) -> Vec<Vec<i64>> {
    let factors = r.gen_range(1..=3);
    let mut acc = vec![vec![1i64]];
    for _ in 0..factors {
        let deg = r.gen_range(1..=2usize);
        let mut f = vec![vec![0i64; deg + 1]; deg + 1];
        for (i, row) in f.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                if i + j <= deg {
                    *c = r.gen_range(-4..=4);
                }
            }
        }
        acc = mul2(&acc, &f);
    }
    acc
}

fn mul2(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len() + b.len() - 1;
    let mut out = vec![vec![0i64; n]; n];
    for (i, ra) in a.iter().enumerate() {
        for (j, &x) in ra.iter().enumerate() {
            for (k, rb) in b.iter().enumerate() {
                for (l, &y) in rb.iter().enumerate() {
                    out[i + k][j + l] += x * y;
                }
            }
        }
    }
    out
}

fn eval2(c: &[Vec<i64>], x: f64, y: f64) -> f64 {
    let mut s = 0.0;
    for (i, row) in c.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            s += v as f64 * x.powi(i as i32) * y.powi(j as i32);
        }
    }
    s
}

fn to_bipoly(c: &[Vec<i64>]) -> BiPoly {
    let n = c.len();
    BiPoly::new((0..n).map(|j| ZPoly::new((0..n).map(|i| BigInt::from(c[i][j])).collect())).collect())
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let r = find(p, p[x]);
        p[x] = r;
    }
    p[x]
}

/// Unreached same-sign components of a 200 x 200 grid on `[-4, 4]^2`.
fn unreached_components(c: &[Vec<i64>], samples: &[(f64, f64)]) -> usize {
    const N: usize = 200;
    let coord = |i: usize| -4.0 + 8.0 * i as f64 / (N - 1) as f64;
    let sg: Vec<i32> = (0..N * N)
        .map(|k| {
            let v = eval2(c, coord(k / N), coord(k % N));
            if v > 0.0 {
                1
            } else if v < 0.0 {
                -1
            } else {
                0
            }
        })
        .collect();
    let mut parent: Vec<usize> = (0..N * N).collect();
    for i in 0..N {
        for j in 0..N {
            let k = i * N + j;
            if sg[k] == 0 {
                continue;
            }
            let diag = |a: usize, b: usize| clear_n(c, (coord(a / N), coord(a % N)), (coord(b / N), coord(b % N)), 16);
            let nbs = [
                (i + 1 < N).then(|| (k + N, false)),
                (j + 1 < N).then(|| (k + 1, false)),
                (i + 1 < N && j + 1 < N).then(|| (k + N + 1, true)),
                (i + 1 < N && j > 0).then(|| (k + N - 1, true)),
            ];
            for (nb, is_diag) in nbs.into_iter().flatten() {
                // thin bands continue along diagonals
                if sg[nb] != sg[k] {
                    continue;
                }
                let (a, b) = (find(&mut parent, k), find(&mut parent, nb));
                if a != b && (!is_diag || diag(k, nb)) {
                    parent[a] = b;
                }
            }
        }
    }
    let mut reached = vec![false; N * N];
    for &(x, y) in samples {
        let sx = eval2(c, x, y).signum();
        let gi = (((x + 4.0) / 8.0 * (N - 1) as f64).round().clamp(0.0, (N - 1) as f64)) as usize;
        let gj = (((y + 4.0) / 8.0 * (N - 1) as f64).round().clamp(0.0, (N - 1) as f64)) as usize;
        for (di, dj) in [(0i64, 0i64), (1, 0), (-1, 0), (0, 1), (0, -1)] {
            let (i, j) = (gi as i64 + di, gj as i64 + dj);
            if i < 0 || j < 0 || i >= N as i64 || j >= N as i64 {
                continue;
            }
            let (px, py) = (coord(i as usize), coord(j as usize));
            if sx != 0.0 && clear(c, (x, y), (px, py)) {
                let root = find(&mut parent, i as usize * N + j as usize);
                reached[root] = true;
            }
        }
    }
    // fall back to straight segments from every sample
    let mut missed = 0;
    for k in 0..N * N {
        if sg[k] == 0 || find(&mut parent, k) != k || reached[k] {
            continue;
        }
        let members: Vec<usize> = (0..N * N).filter(|&x| find(&mut parent, x) == k).collect();
        let hit = samples.iter().any(|&s| members.iter().any(|&x| clear(c, s, (coord(x / N), coord(x % N)))));
        if !hit {
            missed += 1;
        }
    }
    missed
}

/// `D` keeps one nonzero sign along the segment, checked at 257 points.
fn clear(c: &[Vec<i64>], a: (f64, f64), b: (f64, f64)) -> bool {
    clear_n(c, a, b, 256)
}

fn clear_n(c: &[Vec<i64>], a: (f64, f64), b: (f64, f64), n: usize) -> bool {
    let s0 = eval2(c, a.0, a.1).signum();
    s0 != 0.0
        && (0..=n).all(|s| {
            let t = s as f64 / n as f64;
            let v = eval2(c, a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
            v != 0.0 && v.signum() == s0
        })
}

#[test]
fn open_cad_meets_every_grid_component() {
    let mut r = rng(0x0cad);
    for case in 0..50 {
        let c = random_bivariate(&mut r);
        let p = ParamPoly::Two(to_bipoly(&c));
        if p.is_zero() {
            continue;
        }
        let s = open_cad_samples(&p).unwrap();
        for t in &s {
            assert!(!p.eval(t).is_zero(), "case {case}: sample on the zero set");
        }
        let pts: Vec<(f64, f64)> = s.iter().map(|t| (t[0].to_f64().unwrap(), t[1].to_f64().unwrap())).collect();
        assert_eq!(unreached_components(&c, &pts), 0, "case {case}: {c:?}");
    }
}

#[test]
fn pencil_decision_agrees_with_the_general_procedure() {
    let mut r = rng(0x9e4c);
    for i in 0..100 {
        let d = 5 + i % 2;
        let (g, h) = (random_form(&mut r, Role::Operator, d, 6), random_form(&mut r, Role::Operator, d, 6));
        let Ok(l) = LinearSystem::new(d, vec![g.clone(), h.clone()]) else { continue };
        if l.dim() < 2 {
            continue;
        }
        let a = pencil_decide(&g, &h).unwrap().verdict;
        let b = decide(&l).verdict;
        assert_eq!(a, b, "pencil {g:?} {h:?}");
        if a == DecideVerdict::Empty {
            assert!(search_hits(&l, 2_000, i as u64).is_none());
        }
    }
}

#[test]
fn empty_verdicts_survive_random_search() {
    let mut r = rng(0xe3);
    let mut empties = 0;
    for i in 0..60 {
        let d = 5 + i % 3;
        let f = random_form(&mut r, Role::Form, d, 9);
        let rr = (d + 2) / 2 + (i % 2);
        let l = apolar_space(&f, rr).unwrap();
        if l.is_empty() || l.dim() > 4 {
            continue;
        }
        let out = decide(&l);
        if out.verdict == DecideVerdict::Empty {
            empties += 1;
            assert!(search_hits(&l, 10_000, i as u64).is_none(), "{f:?} at {rr}");
        }
    }
    assert!(empties > 0);
}

#[test]
fn monotone_in_the_level() {
    let mut r = rng(0x303);
    for i in 0..40 {
        let d = 5 + i % 4;
        let f = random_form(&mut r, Role::Form, d, 9);
        let mut level = None;
        for rr in (d + 2) / 2..d {
            let l = apolar_space(&f, rr).unwrap();
            if l.is_empty() || l.dim() > 4 {
                break;
            }
            if let Some(w) = decide(&l).witness {
                level = Some((rr, w));
                break;
            }
        }
        let Some((rr, w)) = level else { continue };
        // a fresh real linear factor keeps the witness real-rooted
        let up = (0..).map(|k| w.mul(&BinForm::from_ints(Role::Operator, &[1, -k]))).find(|h| h.is_real_rooted().unwrap()).unwrap();
        let next = apolar_space(&f, rr + 1).unwrap();
        assert!(next.contains(&up));
        assert!(contract(&up, &f).unwrap().is_zero());
        if next.dim() <= 4 {
            assert_eq!(decide(&next).verdict, DecideVerdict::Nonempty);
        }
    }
}

#[test]
fn common_factor_with_non_real_part_is_empty() {
    let g = op("u^2 + v^2");
    let basis = vec![g.mul(&op("u^3")), g.mul(&op("u^2*v")), g.mul(&op("v^3"))];
    assert_eq!(decide(&system(&basis)).verdict, DecideVerdict::Empty);
}

#[test]
fn common_real_factor_is_restored_in_the_witness() {
    let g = op("u - 3*v");
    let basis = vec![g.mul(&op("u^2 + v^2")), g.mul(&op("u^2 + 2*v^2")), g.mul(&op("u*v + 5*v^2"))];
    let out = decide(&system(&basis));
    assert_eq!(out.verdict, DecideVerdict::Nonempty);
    assert_eq!(out.witness.unwrap().degree(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn root_count_is_constant_off_the_discriminant(
        a in coeffs(5, 9), b in coeffs(5, 9)
    ) {
        let (fa, fb) = (ints(Role::Form, &a), ints(Role::Form, &b));
        // D(t) along the segment fa + t (fb - fa), t in [0, 1]
        let dir = fb.sub(&fa);
        let dense_clear = (0..=200).all(|k| {
            let h = fa.add(&dir.scale(&qr(k, 200)));
            h.degree() == 5 && !h.coeff(0).is_zero() && !h.discriminant().unwrap().is_zero()
        });
        prop_assume!(dense_clear);
        let line: Vec<ZPoly> = a.iter().zip(&b).map(|(&x, &y)| ZPoly::from_i64s(&[x, y - x])).collect();
        let disc = realrank::poly::disc_ring(&line);
        let seg_roots = disc.sturm_count(
            &realrank::zpoly::Ext::Fin(q(0)),
            &realrank::zpoly::Ext::Fin(q(1)),
        );
        prop_assume!(seg_roots == 0);
        prop_assert_eq!(fa.real_root_count().unwrap(), fb.real_root_count().unwrap());
    }
}

#[test]
fn budget_exhaustion_is_undecided() {
    let l = apolar_space(&form(F44), 6).unwrap();
    let out = contains_realrooted(&l, &Budget::default().with_time(std::time::Duration::ZERO)).unwrap();
    assert_eq!(out.verdict, DecideVerdict::Undecided);
    assert!(out.reason.contains("budget"));
}
