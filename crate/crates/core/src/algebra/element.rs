use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{HalfInt, Rational};
use crate::error::{Error, Result};

/// A basis symbol: family (by declaration order) and true index.
///
/// The derived order is family first, then index, which is the canonical
/// basis order everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisIndex {
    pub family: usize,
    pub index: HalfInt,
}

impl BasisIndex {
    pub fn degree(self) -> HalfInt {
        self.index
    }
}

/// A finite linear combination of basis symbols with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisIndex, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(b: BasisIndex) -> Self {
        Element::term(b, Rational::from_integer(1.into()))
    }

    pub fn term(b: BasisIndex, c: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(b, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &BasisIndex) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, b: BasisIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(*b, x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect(),
        }
    }

    /// The common degree of all terms; `None` for the zero element, which is
    /// homogeneous of every degree.
    pub fn degree(&self) -> Result<Option<HalfInt>> {
        let mut it = self.terms.keys().map(|b| b.degree());
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&BasisIndex) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(BasisIndex, Rational)> for Element {
    fn from_iter<T: IntoIterator<Item = (BasisIndex, Rational)>>(iter: T) -> Self {
        let mut e = Element::zero();
        for (b, c) in iter {
            e.add_term(b, c);
        }
        e
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from_integer(1.into()));
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from_integer((-1).into()));
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Rational::from_integer((-1).into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn b(f: usize, d: i64) -> BasisIndex {
        BasisIndex {
            family: f,
            index: HalfInt::from_doubled(d),
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut e = Element::term(b(0, 2), int(3));
        e.add_term(b(0, 2), int(-3));
        assert!(e.is_zero());
        assert_eq!(e, Element::zero());
        assert!(Element::term(b(1, 0), int(0)).is_zero());
    }

    #[test]
    fn homogeneity() {
        let e = &Element::basis(b(0, 2)) + &Element::basis(b(1, 2));
        assert_eq!(e.degree(), Ok(Some(HalfInt::from_int(1))));
        let f = &e + &Element::basis(b(2, 3));
        assert_eq!(f.degree(), Err(Error::NotHomogeneous));
        assert_eq!(Element::zero().degree(), Ok(None));
    }
}
