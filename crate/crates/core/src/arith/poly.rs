//! Multivariate polynomials over ℚ in a fixed, interned variable universe.
//!
//! The universe is the three index variables `m`, `n`, `k` and the two
//! algebra parameters `a`, `b`. Terms are kept in a `BTreeMap` keyed by
//! exponent vectors under total-degree-then-lex order, with zero
//! coefficients never stored, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    M,
    N,
    K,
    A,
    B,
}

pub const NUM_VARS: usize = 5;

impl Var {
    pub const ALL: [Var; NUM_VARS] = [Var::M, Var::N, Var::K, Var::A, Var::B];

    pub fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::N => "n",
            Var::K => "k",
            Var::A => "a",
            Var::B => "b",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }

    pub fn is_parameter(self) -> bool {
        matches!(self, Var::A | Var::B)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; NUM_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NUM_VARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NUM_VARS];
        e[v.slot()] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.slot()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x += *y;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Values for (some of) the variables.
pub type Assignment = BTreeMap<Var, Rational>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Rational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Variables that actually occur, in universe order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exponent(*v) > 0))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a point; every occurring variable must be assigned.
    pub fn eval(&self, point: &Assignment) -> Result<Rational> {
        for v in self.variables() {
            if !point.contains_key(&v) {
                return Err(Error::MissingVariable(v.name().to_string()));
            }
        }
        let mut total = Rational::zero();
        for (mono, coef) in &self.terms {
            let mut t = coef.clone();
            for v in Var::ALL {
                let e = mono.exponent(v);
                if e > 0 {
                    let x = &point[&v];
                    for _ in 0..e {
                        t *= x;
                    }
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes values for the assigned variables, leaving the others symbolic.
    pub fn partial_eval(&self, point: &Assignment) -> Poly {
        let subs: BTreeMap<Var, Poly> = point
            .iter()
            .map(|(v, x)| (*v, Poly::constant(x.clone())))
            .collect();
        self.substitute(&subs)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, subs: &BTreeMap<Var, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (mono, coef) in &self.terms {
            let mut term = Poly::constant(coef.clone());
            let mut kept = Monomial::one();
            for v in Var::ALL {
                let e = mono.exponent(v);
                if e == 0 {
                    continue;
                }
                match subs.get(&v) {
                    Some(p) => term = &term * &p.pow(e),
                    None => kept.0[v.slot()] = e,
                }
            }
            let kept = Poly {
                terms: BTreeMap::from([(kept, Rational::one())]),
            };
            out = &out + &(&term * &kept);
        }
        out
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, x: Var, y: Var) -> Poly {
        let subs = BTreeMap::from([(x, Poly::var(y)), (y, Poly::var(x))]);
        self.substitute(&subs)
    }

    /// Splits into the constant term and the remainder.
    pub fn split_constant(&self) -> (Rational, Poly) {
        let mut rest = self.clone();
        let c = rest
            .terms
            .remove(&Monomial::one())
            .unwrap_or_else(Rational::zero);
        (c, rest)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m.exponent(v) {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

/// Canonical text: highest terms first, `p/q*m^2 - n + 1` style.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coef)) in self.terms.iter().rev().enumerate() {
            let neg = coef.is_negative();
            let mag = coef.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if mono.degree() == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_monomial(mono))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), fmt_monomial(mono))?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    fn m() -> Poly {
        Poly::var(Var::M)
    }
    fn n() -> Poly {
        Poly::var(Var::N)
    }

    #[test]
    fn eval_m_minus_n() {
        let p = &m() - &n();
        let pt = Assignment::from([(Var::M, int(2)), (Var::N, int(3))]);
        assert_eq!(p.eval(&pt).unwrap(), int(-1));
    }

    #[test]
    fn eval_missing_variable() {
        let p = &m() - &n();
        let pt = Assignment::from([(Var::M, int(2))]);
        assert_eq!(p.eval(&pt), Err(Error::MissingVariable("n".into())));
    }

    #[test]
    fn eval_y_coefficient_at_exceptional_point() {
        // -(n + (1 - m + a + b m)/2) at m=1, n=0, a=1, b=-1
        let a = Poly::var(Var::A);
        let b = Poly::var(Var::B);
        let inner = &(&(&Poly::one() - &m()) + &a) + &(&b * &m());
        let p = -(&n() + &inner.scale(&ratio(1, 2)));
        let pt = Assignment::from([
            (Var::M, int(1)),
            (Var::N, int(0)),
            (Var::A, int(1)),
            (Var::B, int(-1)),
        ]);
        assert_eq!(p.eval(&pt).unwrap(), int(0));
        let zero = Assignment::from([
            (Var::M, int(0)),
            (Var::N, int(0)),
            (Var::A, int(0)),
            (Var::B, int(0)),
        ]);
        let q = -(&(&n() + &a) + &(&b * &m()));
        assert_eq!(q.eval(&zero).unwrap(), int(0));
    }

    #[test]
    fn ring_identities() {
        let d = &m() - &n();
        assert!((&d + &(&n() - &m())).is_zero());
        assert_eq!(&d * &Poly::one(), d);
        let sq = &(&m() + &n()) * &d;
        let expect = &m().pow(2) - &n().pow(2);
        assert_eq!(sq, expect);
        assert_eq!(sq.to_string(), "m^2 - n^2");
    }

    #[test]
    fn display_is_canonical() {
        let a = Poly::var(Var::A);
        let b = Poly::var(Var::B);
        let p = -(&(&n() + &a) + &(&b * &m()));
        assert_eq!(p.to_string(), "-m*b - n - a");
        assert_eq!(Poly::constant(ratio(-1, 2)).to_string(), "-1/2");
        assert_eq!((&m().scale(&ratio(3, 2)) + &Poly::one()).to_string(), "3/2*m + 1");
    }

    #[test]
    fn substitution_and_swap() {
        let d = &m() - &n();
        assert_eq!(d.swap_vars(Var::M, Var::N), -&d);
        let subs = BTreeMap::from([(Var::M, &n() + &Poly::var(Var::K))]);
        assert_eq!(d.substitute(&subs), Poly::var(Var::K));
    }
}
