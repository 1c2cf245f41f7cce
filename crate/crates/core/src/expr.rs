//! Parser and printer for polynomial expressions in `x, y` (or `u, v`)
//! and an optional parameter `e`, using explicit `*` and `^`.

use crate::binform::{write_term, BinForm, Role};
use crate::error::{Error, Result};
use crate::num::{parse_q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Syntax tree of a parsed expression.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyExpr {
    Num(Q),
    Var(Var),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

/// `X`, `Y` are the first/second variable of the pair; `E` is the parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    E,
}

/// Expanded polynomial: exponents `(X, Y, e)` to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expanded {
    pub role: Role,
    pub terms: BTreeMap<(u32, u32, u32), Q>,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    role: Option<Role>,
}

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' {
                PolyExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                PolyExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == b'*' {
                PolyExpr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                PolyExpr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(PolyExpr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return perr(format!("expected an exponent at position {start}"));
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok(PolyExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn set_role(&mut self, r: Role) -> Result<()> {
        match self.role {
            Some(old) if old != r => perr("mixes (x,y) and (u,v) variables"),
            _ => {
                self.role = Some(r);
                Ok(())
            }
        }
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        let Some(c) = self.peek() else {
            return perr("unexpected end of input");
        };
        match c {
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return perr(format!("expected ')' at position {}", self.pos));
                }
                self.pos += 1;
                Ok(e)
            }
            b'0'..=b'9' | b'.' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match parse_q(t) {
                    Some(q) => Ok(PolyExpr::Num(q)),
                    None => perr(format!("bad number '{t}'")),
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let v = match name {
                    "x" => {
                        self.set_role(Role::Form)?;
                        Var::X
                    }
                    "y" => {
                        self.set_role(Role::Form)?;
                        Var::Y
                    }
                    "u" => {
                        self.set_role(Role::Operator)?;
                        Var::X
                    }
                    "v" => {
                        self.set_role(Role::Operator)?;
                        Var::Y
                    }
                    "e" | "eps" => Var::E,
                    _ => return perr(format!("unknown variable '{name}'")),
                };
                Ok(PolyExpr::Var(v))
            }
            _ => perr(format!("unexpected character '{}' at position {}", c as char, self.pos)),
        }
    }
}

/// Parse an expression; the role is inferred from the variables used
/// (`(x, y)` when no variable appears).
pub fn parse(s: &str) -> Result<(PolyExpr, Role)> {
    let s = s.replace('\u{2212}', "-");
    let mut p = Parser { s: s.as_bytes(), pos: 0, role: None };
    let e = p.expr()?;
    if p.peek().is_some() {
        return perr(format!("trailing input at position {}", p.pos));
    }
    Ok((e, p.role.unwrap_or(Role::Form)))
}

impl Expanded {
    fn constant(role: Role, q: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert((0, 0, 0), q);
        }
        Expanded { role, terms }
    }

    fn add(&self, o: &Self, sign: i32) -> Self {
        let mut t = self.terms.clone();
        for (k, v) in &o.terms {
            let e = t.entry(*k).or_insert_with(Q::zero);
            if sign > 0 {
                *e += v;
            } else {
                *e -= v;
            }
        }
        t.retain(|_, v| !v.is_zero());
        Expanded { role: self.role, terms: t }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut t: BTreeMap<(u32, u32, u32), Q> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                *t.entry((a.0 + b.0, a.1 + b.1, a.2 + b.2)).or_insert_with(Q::zero) += x * y;
            }
        }
        t.retain(|_, v| !v.is_zero());
        Expanded { role: self.role, terms: t }
    }

    fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&(0, 0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the parameter `e` occurs.
    pub fn has_parameter(&self) -> bool {
        self.terms.keys().any(|k| k.2 > 0)
    }

    /// Common total degree in the pair, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.0 + k.1);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Substitute a value for `e`.
    pub fn at(&self, e: &Q) -> Expanded {
        let mut t: BTreeMap<(u32, u32, u32), Q> = BTreeMap::new();
        for (k, v) in &self.terms {
            let mut c = v.clone();
            for _ in 0..k.2 {
                c *= e;
            }
            *t.entry((k.0, k.1, 0)).or_insert_with(Q::zero) += c;
        }
        t.retain(|_, v| !v.is_zero());
        Expanded { role: self.role, terms: t }
    }

    /// The binary form, when homogeneous, nonzero and free of `e`.
    pub fn to_binform(&self) -> Result<BinForm> {
        if self.has_parameter() {
            return perr("expression still contains the parameter e");
        }
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = self.homogeneous_degree().ok_or_else(|| Error::Parse("expression is not homogeneous".into()))?;
        let mut c = vec![Q::zero(); d as usize + 1];
        for (k, v) in &self.terms {
            c[k.1 as usize] = v.clone();
        }
        Ok(BinForm::new(self.role, c))
    }

    pub fn from_binform(f: &BinForm) -> Expanded {
        let d = f.degree() as u32;
        let terms = f
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((d - i as u32, i as u32, 0), c.clone()))
            .collect();
        Expanded { role: f.role(), terms }
    }
}

impl PolyExpr {
    /// Expand into a normalized polynomial.
    pub fn expand(&self, role: Role) -> Result<Expanded> {
        Ok(match self {
            PolyExpr::Num(q) => Expanded::constant(role, q.clone()),
            PolyExpr::Var(v) => {
                let k = match v {
                    Var::X => (1, 0, 0),
                    Var::Y => (0, 1, 0),
                    Var::E => (0, 0, 1),
                };
                Expanded { role, terms: BTreeMap::from([(k, Q::one())]) }
            }
            PolyExpr::Neg(a) => Expanded::constant(role, Q::zero()).add(&a.expand(role)?, -1),
            PolyExpr::Add(a, b) => a.expand(role)?.add(&b.expand(role)?, 1),
            PolyExpr::Sub(a, b) => a.expand(role)?.add(&b.expand(role)?, -1),
            PolyExpr::Mul(a, b) => a.expand(role)?.mul(&b.expand(role)?),
            PolyExpr::Div(a, b) => {
                let q = b
                    .expand(role)?
                    .as_constant()
                    .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                if q.is_zero() {
                    return perr("division by zero");
                }
                a.expand(role)?.mul(&Expanded::constant(role, Q::one() / q))
            }
            PolyExpr::Pow(a, e) => {
                let base = a.expand(role)?;
                let mut acc = Expanded::constant(role, Q::one());
                for _ in 0..*e {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }
}

/// Parse and expand in one step.
pub fn parse_expanded(s: &str) -> Result<Expanded> {
    let (e, role) = parse(s)?;
    e.expand(role)
}

/// Parse a homogeneous binary form without parameter.
pub fn parse_form(s: &str) -> Result<BinForm> {
    parse_expanded(s)?.to_binform()
}

impl fmt::Display for Expanded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let (a, b) = self.role.vars();
        let mut first = true;
        // descending in the first variable, then in e
        for (k, c) in self.terms.iter().rev() {
            write_term(f, c, &[("e", k.2), (a, k.0), (b, k.1)], first)?;
            first = false;
        }
        Ok(())
    }
}
