//! Does a linear system of binary forms contain a member with distinct
//! real roots? Exact for pencils and for systems of two or three
//! parameters; larger systems are searched and otherwise left undecided.

mod cad;
mod ruled;

pub use cad::{line_samples, open_cad_samples, open_cad_with_projection, ParamPoly, Projection};

use crate::apolarity::LinearSystem;
use crate::binform::BinForm;
use crate::error::{Error, Result};
use crate::matrix::MatQ;
use crate::num::primitive_int_vec;
use crate::poly::{disc_ring, ZPoly};
use crate::upoly::UniPoly;
use crate::Q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ruled::{decide_walls, FaceOutcome};
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecideVerdict {
    Nonempty,
    Empty,
    Undecided,
}

/// Samples of one chart or wall family with the real root counts found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellInventory {
    pub chart: usize,
    pub label: String,
    /// Squarefree, content-free projection polynomials per level.
    pub projection: Vec<Vec<String>>,
    pub samples: Vec<Vec<Q>>,
    /// Real projective root count of the member at each sample.
    pub counts: Vec<usize>,
}

impl CellInventory {
    pub(crate) fn new(chart: usize, label: &str) -> Self {
        CellInventory { chart, label: label.to_string(), projection: Vec::new(), samples: Vec::new(), counts: Vec::new() }
    }
}

/// Result of a real-rootedness decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecideOutcome {
    pub verdict: DecideVerdict,
    /// A member with distinct real roots, for `Nonempty`.
    pub witness: Option<BinForm>,
    /// Sample inventories certifying `Empty`.
    pub cells: Vec<CellInventory>,
    /// How the verdict was reached, or why it is undecided.
    pub reason: String,
    pub elapsed_ms: u64,
}

/// Resource limits of a decision.
#[derive(Clone, Debug)]
pub struct Budget {
    pub time: Option<Duration>,
    /// Random members tried before the exact procedure.
    pub search_samples: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { time: None, search_samples: 64, seed: 0x00c0_ffee }
    }
}

impl Budget {
    pub fn with_time(mut self, t: Duration) -> Self {
        self.time = Some(t);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_search(mut self, n: usize) -> Self {
        self.search_samples = n;
        self
    }
}

pub(crate) struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    fn new(b: &Budget) -> Self {
        Deadline { at: b.time.map(|t| Instant::now() + t) }
    }

    pub(crate) fn check(&self) -> std::result::Result<(), String> {
        match self.at {
            Some(t) if Instant::now() > t => Err("time budget exhausted".into()),
            _ => Ok(()),
        }
    }
}

pub(crate) enum Check {
    Witness(BinForm),
    /// Real-rooted, but shares a root with the common factor.
    SharesRoot,
    No,
}

/// Accepts members of a reduced system `L / g`, restoring the factor `g`.
pub(crate) struct Tester {
    factor: Option<BinForm>,
}

impl Tester {
    pub(crate) fn check(&self, p: &BinForm) -> Check {
        if p.is_zero() || !p.is_real_rooted().unwrap_or(false) {
            return Check::No;
        }
        match &self.factor {
            None => Check::Witness(p.clone()),
            Some(g) => {
                let full = g.mul(p);
                if full.is_real_rooted().unwrap_or(false) {
                    Check::Witness(full)
                } else {
                    Check::SharesRoot
                }
            }
        }
    }
}

fn outcome(verdict: DecideVerdict, witness: Option<BinForm>, cells: Vec<CellInventory>, reason: &str, t0: Instant) -> DecideOutcome {
    DecideOutcome {
        verdict,
        witness,
        cells,
        reason: reason.to_string(),
        elapsed_ms: t0.elapsed().as_millis() as u64,
    }
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Greatest common divisor of a list of forms of one degree.
pub fn common_factor(forms: &[BinForm]) -> BinForm {
    let role = forms[0].role();
    let inf = forms.iter().map(|f| f.infinity_multiplicity()).min().unwrap_or(0);
    let g = forms.iter().fold(ZPoly::zero(), |acc, f| acc.gcd(&f.dehom_z()));
    let deg = inf + g.deg().max(0) as usize;
    BinForm::homogenize(role, &UniPoly::from_zpoly(&g), deg)
}

/// Exact quotient of forms, `g` dividing `h`.
fn divide(h: &BinForm, g: &BinForm) -> BinForm {
    let (q, _) = h.dehomogenize().div_rem(&g.dehomogenize());
    BinForm::homogenize(h.role(), &q, h.degree() - g.degree())
}

/// Exact decision for the pencil `{α g + β g'}`.
pub fn pencil_decide(g: &BinForm, gprime: &BinForm) -> Result<DecideOutcome> {
    pencil_with(g, gprime, &Deadline { at: None })
}

fn pencil_with(g: &BinForm, gprime: &BinForm, deadline: &Deadline) -> Result<DecideOutcome> {
    let t0 = Instant::now();
    if g.degree() != gprime.degree() {
        return Err(Error::DegreeMismatch(format!("pencil of degrees {} and {}", g.degree(), gprime.degree())));
    }
    if g.role() != gprime.role() {
        return Err(Error::WrongRole { expected: g.role().name(), got: gprime.role().name() });
    }
    if MatQ::from_rows(vec![g.coeffs().to_vec(), gprime.coeffs().to_vec()]).rank() < 2 {
        return Err(Error::DependentBasis);
    }
    let r = g.degree();
    if r <= 1 {
        return Ok(outcome(DecideVerdict::Nonempty, Some(g.clone()), vec![], "every nonzero member has distinct real roots", t0));
    }
    let gi = primitive_int_vec(g.coeffs());
    let pi = primitive_int_vec(gprime.coeffs());
    let line: Vec<ZPoly> = gi.iter().zip(&pi).map(|(a, b)| ZPoly::new(vec![a.clone(), b.clone()])).collect();
    let disc = disc_ring(&line);
    let mut inv = CellInventory::new(0, "chart g + t g'");
    if disc.is_zero() {
        return Ok(outcome(DecideVerdict::Empty, None, vec![inv], "every member has a multiple root", t0));
    }
    inv.projection = vec![vec![cad::zpoly_text(&disc.squarefree_part(), "t")]];
    let gq = BinForm::new(g.role(), gi.iter().map(|x| Q::from_integer(x.clone())).collect());
    let pq = BinForm::new(g.role(), pi.iter().map(|x| Q::from_integer(x.clone())).collect());
    for t in line_samples(&disc) {
        if let Err(e) = deadline.check() {
            return Ok(outcome(DecideVerdict::Undecided, None, vec![inv], &e, t0));
        }
        let h = gq.add(&pq.scale(&t));
        inv.samples.push(vec![t]);
        inv.counts.push(h.real_root_count()?);
        if h.is_real_rooted()? {
            return Ok(outcome(DecideVerdict::Nonempty, Some(h), vec![inv], "open interval sample", t0));
        }
    }
    let mut at_inf = CellInventory::new(1, "point g'");
    at_inf.samples.push(vec![]);
    at_inf.counts.push(pq.real_root_count()?);
    if pq.is_real_rooted()? {
        return Ok(outcome(DecideVerdict::Nonempty, Some(pq), vec![inv, at_inf], "generator g'", t0));
    }
    Ok(outcome(DecideVerdict::Empty, None, vec![inv, at_inf], "no open interval of the pencil is real-rooted", t0))
}

/// The member vanishing at `m` prescribed points, if unique.
fn interpolate(basis: &[BinForm], roots: &[Q]) -> Option<BinForm> {
    let one = qi(1);
    let rows: Vec<Vec<Q>> = roots.iter().map(|a| basis.iter().map(|b| b.eval(a, &one)).collect()).collect();
    let ker = MatQ::from_rows(rows).kernel_basis_q();
    (ker.len() == 1).then(|| BinForm::combination(basis, &ker[0]))
}

/// Random members, basis members first: members with `m` prescribed
/// random real roots alternate with random integer weights.
fn search(basis: &[BinForm], n: usize, seed: u64, deadline: &Deadline) -> Option<BinForm> {
    for b in basis {
        if b.is_real_rooted().unwrap_or(false) {
            return Some(b.clone());
        }
    }
    let m = basis.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n {
        if i % 16 == 0 && deadline.check().is_err() {
            return None;
        }
        let bound = 2 + (i as i64) / 8;
        let h = if i % 2 == 0 {
            let mut roots: Vec<Q> = Vec::new();
            while roots.len() < m {
                let a = Q::new(rng.gen_range(-4 * bound..=4 * bound).into(), rng.gen_range(1..=4i64).into());
                if !roots.contains(&a) {
                    roots.push(a);
                }
            }
            match interpolate(basis, &roots) {
                Some(h) => h,
                None => continue,
            }
        } else {
            let w: Vec<Q> = basis.iter().map(|_| qi(rng.gen_range(-bound..=bound))).collect();
            BinForm::combination(basis, &w)
        };
        if !h.is_zero() && h.is_real_rooted().unwrap_or(false) {
            return Some(h);
        }
    }
    None
}

/// Decide whether `system` has a member with `r` distinct real roots.
pub fn contains_realrooted(system: &LinearSystem, budget: &Budget) -> Result<DecideOutcome> {
    let t0 = Instant::now();
    if system.is_empty() {
        return Err(Error::OutOfRange("the linear system is empty".into()));
    }
    let deadline = Deadline::new(budget);
    let basis = system.basis();
    let m = basis.len() - 1;
    if m == 0 {
        let h = &basis[0];
        let mut inv = CellInventory::new(0, "single member");
        inv.samples.push(vec![]);
        inv.counts.push(h.real_root_count()?);
        return Ok(if h.is_real_rooted()? {
            outcome(DecideVerdict::Nonempty, Some(h.clone()), vec![inv], "the only member", t0)
        } else {
            outcome(DecideVerdict::Empty, None, vec![inv], "the only member is not real-rooted", t0)
        });
    }
    if let Some(w) = search(basis, budget.search_samples, budget.seed, &deadline) {
        return Ok(outcome(DecideVerdict::Nonempty, Some(w), vec![], "random member", t0));
    }
    if m == 1 {
        let mut out = pencil_with(&basis[0], &basis[1], &deadline)?;
        out.elapsed_ms = t0.elapsed().as_millis() as u64;
        return Ok(out);
    }
    let g = common_factor(basis);
    let (reduced, tester) = if g.degree() > 0 {
        if !g.is_real_rooted()? {
            return Ok(outcome(
                DecideVerdict::Empty,
                None,
                vec![],
                "every member shares a multiple or non-real root",
                t0,
            ));
        }
        (basis.iter().map(|b| divide(b, &g)).collect::<Vec<_>>(), Tester { factor: Some(g) })
    } else {
        (basis.to_vec(), Tester { factor: None })
    };
    if m > 3 {
        return Ok(outcome(
            DecideVerdict::Undecided,
            None,
            vec![],
            &format!("{m} parameters: no exact procedure, random search found no witness"),
            t0,
        ));
    }
    let mut cells = Vec::new();
    // a component without walls covers almost all of P(L); a generic member lies in it
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x9e37_79b9);
    for _ in 0..8 {
        let w: Vec<Q> = reduced.iter().map(|_| qi(rng.gen_range(-1000..=1000))).collect();
        let h = BinForm::combination(&reduced, &w);
        if h.is_zero() || h.degree() >= 2 && h.discriminant()? == qi(0) {
            continue;
        }
        let mut inv = CellInventory::new(0, "generic member");
        inv.samples.push(w);
        inv.counts.push(h.real_root_count()?);
        cells.push(inv);
        if let Check::Witness(f) = tester.check(&h) {
            return Ok(outcome(DecideVerdict::Nonempty, Some(f), cells, "generic member", t0));
        }
        break;
    }
    Ok(match decide_walls(&reduced, &tester, &deadline, &mut cells) {
        FaceOutcome::Witness(w) => outcome(DecideVerdict::Nonempty, Some(w), cells, "wall-adjacent sample", t0),
        FaceOutcome::Empty => outcome(DecideVerdict::Empty, None, cells, "no wall-adjacent sample is real-rooted", t0),
        FaceOutcome::Undecided(e) => outcome(DecideVerdict::Undecided, None, cells, &e, t0),
    })
}
