use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use super::{AlgebraInstance, BasisIndex, Element};
use crate::arith::{HalfInt, QMatrix, Rational};
use crate::error::{Error, Result};

/// The degrees `[min, max]`; its basis is every basis symbol in that range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    min: HalfInt,
    max: HalfInt,
}

impl Window {
    pub fn new(min: HalfInt, max: HalfInt) -> Result<Self> {
        if min > max {
            return Err(Error::Window(format!("empty window {min}:{max}")));
        }
        Ok(Window { min, max })
    }

    /// Integer bounds, the common case.
    pub fn ints(min: i64, max: i64) -> Result<Self> {
        Window::new(HalfInt::from_int(min), HalfInt::from_int(max))
    }

    /// `[-n, n]`.
    pub fn symmetric(n: i64) -> Self {
        Window::ints(-n.abs(), n.abs()).expect("nonempty")
    }

    pub fn min(&self) -> HalfInt {
        self.min
    }

    pub fn max(&self) -> HalfInt {
        self.max
    }

    pub fn contains(&self, degree: HalfInt) -> bool {
        self.min <= degree && degree <= self.max
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.min <= other.min && other.max <= self.max
    }

    /// Drops `margin` units of degree at both ends.
    pub fn shrink(&self, margin: u32) -> Result<Window> {
        let m = HalfInt::from_int(margin as i64);
        Window::new(self.min + m, self.max - m)
            .map_err(|_| Error::Window(format!("interior of {self} with margin {margin} is empty")))
    }

    pub fn shifted(&self, by: HalfInt) -> Window {
        Window {
            min: self.min + by,
            max: self.max + by,
        }
    }

    pub fn reflected(&self) -> Window {
        Window {
            min: -self.max,
            max: -self.min,
        }
    }

    pub fn hull(&self, other: &Window) -> Window {
        Window {
            min: self.min.min(other.min),
            max: self.max.max(other.max),
        }
    }

    /// Basis symbols of the window in canonical order.
    pub fn basis(&self, inst: &AlgebraInstance) -> Vec<BasisIndex> {
        let mut out = Vec::new();
        for family in 0..inst.num_families() {
            let class = inst.family_offset(family);
            for d in self.min.doubled()..=self.max.doubled() {
                let index = HalfInt::from_doubled(d);
                if index.frac() == class {
                    out.push(BasisIndex { family, index });
                }
            }
        }
        out
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.min, self.max)
    }
}

impl FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Window(format!("expected MIN:MAX, got `{s}`"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        Window::new(lo.trim().parse()?, hi.trim().parse()?)
    }
}

/// An ordered list of basis symbols with position lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    elems: Vec<BasisIndex>,
    pos: BTreeMap<BasisIndex, usize>,
}

impl Basis {
    pub fn new(elems: Vec<BasisIndex>) -> Self {
        let pos = elems.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        Basis { elems, pos }
    }

    pub fn of_window(inst: &AlgebraInstance, win: &Window) -> Self {
        Basis::new(win.basis(inst))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[BasisIndex] {
        &self.elems
    }

    pub fn position(&self, b: &BasisIndex) -> Option<usize> {
        self.pos.get(b).copied()
    }
}

/// What to do with image terms outside the codomain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    Strict,
    /// Drop them and flag the column as inexact.
    Truncate,
}

/// A linear map between windows, as an exact matrix in canonical bases.
///
/// Columns listed in `truncated` lost image terms outside the codomain and
/// are not exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMap {
    domain: Window,
    codomain: Window,
    domain_basis: Basis,
    codomain_basis: Basis,
    matrix: QMatrix,
    truncated: BTreeSet<usize>,
}

/// Outcome of comparing two maps column by column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MapComparison {
    pub compared: usize,
    /// Columns that were truncated in either map.
    pub skipped: usize,
    pub mismatches: Vec<BasisIndex>,
}

impl MapComparison {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty() && self.compared > 0
    }
}

impl WindowMap {
    pub fn from_images(
        inst: &AlgebraInstance,
        domain: Window,
        codomain: Window,
        mode: Truncation,
        mut image: impl FnMut(BasisIndex) -> Result<Element>,
    ) -> Result<Self> {
        let domain_basis = Basis::of_window(inst, &domain);
        let codomain_basis = Basis::of_window(inst, &codomain);
        let mut matrix = QMatrix::zeros(codomain_basis.len(), domain_basis.len());
        let mut truncated = BTreeSet::new();
        for (j, b) in domain_basis.elems().iter().enumerate() {
            let img = image(*b)?;
            for (t, c) in img.terms() {
                match codomain_basis.position(t) {
                    Some(i) => matrix.set(i, j, c.clone()),
                    None if mode == Truncation::Truncate => {
                        truncated.insert(j);
                    }
                    None => {
                        return Err(Error::OutOfWindow(format!(
                            "{}({})",
                            inst.family_name(b.family),
                            b.index
                        )))
                    }
                }
            }
        }
        Ok(WindowMap {
            domain,
            codomain,
            domain_basis,
            codomain_basis,
            matrix,
            truncated,
        })
    }

    pub fn identity(inst: &AlgebraInstance, win: Window) -> Self {
        WindowMap::from_images(inst, win, win, Truncation::Strict, |b| Ok(Element::basis(b)))
            .expect("identity stays in window")
    }

    /// Replaces the matrix; intended for assembling maps by hand in tests.
    pub fn with_entry(mut self, row: &BasisIndex, col: &BasisIndex, value: Rational) -> Result<Self> {
        let (Some(i), Some(j)) = (self.codomain_basis.position(row), self.domain_basis.position(col))
        else {
            return Err(Error::Window("entry outside the map's bases".into()));
        };
        self.matrix.set(i, j, value);
        Ok(self)
    }

    pub fn domain(&self) -> Window {
        self.domain
    }

    pub fn codomain(&self) -> Window {
        self.codomain
    }

    pub fn domain_basis(&self) -> &Basis {
        &self.domain_basis
    }

    pub fn codomain_basis(&self) -> &Basis {
        &self.codomain_basis
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn truncated(&self) -> &BTreeSet<usize> {
        &self.truncated
    }

    pub fn is_exact_at(&self, b: &BasisIndex) -> bool {
        self.domain_basis
            .position(b)
            .is_some_and(|j| !self.truncated.contains(&j))
    }

    fn column(&self, j: usize) -> Element {
        (0..self.matrix.rows())
            .filter(|&i| !self.matrix.get(i, j).is_zero())
            .map(|i| (self.codomain_basis.elems()[i], self.matrix.get(i, j).clone()))
            .collect()
    }

    /// Image of a domain basis symbol (possibly inexact, see `is_exact_at`).
    pub fn image(&self, b: &BasisIndex) -> Option<Element> {
        self.domain_basis.position(b).map(|j| self.column(j))
    }

    /// Image of an element supported on exact domain columns.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (b, c) in x.terms() {
            let j = self
                .domain_basis
                .position(b)
                .ok_or_else(|| Error::OutOfWindow(format!("degree {}", b.index)))?;
            if self.truncated.contains(&j) {
                return Err(Error::Window(format!(
                    "image at degree {} was truncated",
                    b.index
                )));
            }
            out.add_scaled(&self.column(j), c);
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &WindowMap) -> Result<WindowMap> {
        if inner.codomain_basis != self.domain_basis {
            return Err(Error::Dimension(format!(
                "cannot compose: codomain {} does not match domain {}",
                inner.codomain, self.domain
            )));
        }
        let matrix = self.matrix.mul(&inner.matrix)?;
        let mut truncated = inner.truncated.clone();
        for j in 0..inner.matrix.cols() {
            let hits = (0..inner.matrix.rows())
                .any(|i| !inner.matrix.get(i, j).is_zero() && self.truncated.contains(&i));
            if hits {
                truncated.insert(j);
            }
        }
        Ok(WindowMap {
            domain: inner.domain,
            codomain: self.codomain,
            domain_basis: inner.domain_basis.clone(),
            codomain_basis: self.codomain_basis.clone(),
            matrix,
            truncated,
        })
    }

    /// Column-by-column comparison over the basis symbols of `win`, skipping
    /// columns that are inexact in either map. Images are compared as
    /// elements, so the codomains may differ.
    pub fn compare_on(&self, other: &WindowMap, inst: &AlgebraInstance, win: &Window) -> MapComparison {
        let mut cmp = MapComparison::default();
        for b in win.basis(inst) {
            let (Some(j), Some(k)) = (self.domain_basis.position(&b), other.domain_basis.position(&b))
            else {
                cmp.skipped += 1;
                continue;
            };
            if self.truncated.contains(&j) || other.truncated.contains(&k) {
                cmp.skipped += 1;
                continue;
            }
            cmp.compared += 1;
            if self.column(j) != other.column(k) {
                cmp.mismatches.push(b);
            }
        }
        cmp
    }

    /// Whether the map is the identity on the exact columns inside `win`.
    pub fn is_identity_on(&self, inst: &AlgebraInstance, win: &Window) -> bool {
        let id = WindowMap::identity(inst, *win);
        let cmp = self.compare_on(&id, inst, win);
        cmp.equal() && cmp.skipped == 0
    }
}

/// Matrix of `x ↦ [z, x]` from `win` to `win` shifted by the degree of `z`.
pub fn ad_matrix(inst: &AlgebraInstance, z: &Element, win: Window) -> Result<WindowMap> {
    let d = z.degree()?.unwrap_or(HalfInt::ZERO);
    ad_matrix_into(inst, z, win, win.shifted(d), Truncation::Strict)
}

/// Matrix of `ad z` into an explicit codomain window.
pub fn ad_matrix_into(
    inst: &AlgebraInstance,
    z: &Element,
    domain: Window,
    codomain: Window,
    mode: Truncation,
) -> Result<WindowMap> {
    z.degree()?;
    WindowMap::from_images(inst, domain, codomain, mode, |b| {
        Ok(inst.bracket(z, &Element::basis(b)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn h(d: i64) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    #[test]
    fn window_basis_order_and_size() {
        let g = AlgebraInstance::preset("wgab", int(0), int(0)).unwrap();
        let w = Window::ints(-1, 1).unwrap();
        let names: Vec<String> = w
            .basis(&g)
            .iter()
            .map(|b| format!("{}({})", g.family_name(b.family), b.index))
            .collect();
        assert_eq!(
            names,
            ["L(-1)", "L(0)", "L(1)", "I(-1)", "I(0)", "I(1)", "Y(-1/2)", "Y(1/2)"]
        );
        assert_eq!("-1:1".parse::<Window>().unwrap(), w);
        assert!("2:1".parse::<Window>().is_err());
        assert!(w.shrink(2).is_err());
        assert_eq!(Window::symmetric(10).shrink(3).unwrap(), Window::symmetric(7));
    }

    #[test]
    fn ad_i0_on_l_at_half_zero() {
        let g = AlgebraInstance::preset("wgab", ratio(1, 2), int(0)).unwrap();
        let w = Window::symmetric(4);
        let i0 = Element::basis(g.sym("I", h(0)).unwrap());
        let ad = ad_matrix(&g, &i0, w).unwrap();
        for m in -4..=4 {
            let l = g.sym("L", HalfInt::from_int(m)).unwrap();
            let i = g.sym("I", HalfInt::from_int(m)).unwrap();
            assert_eq!(ad.image(&l).unwrap(), Element::term(i, ratio(1, 2)));
        }
    }

    #[test]
    fn ad_l0_is_diagonal_on_y() {
        let g = AlgebraInstance::preset("wgab", int(0), int(0)).unwrap();
        let w = Window::symmetric(4);
        let l0 = Element::basis(g.sym("L", h(0)).unwrap());
        let ad = ad_matrix(&g, &l0, w).unwrap();
        for d in [-7, -3, -1, 1, 5, 7] {
            let y = g.sym("Y", h(d)).unwrap();
            // [L_0, Y_k] = -k Y_k at a = b = 0
            assert_eq!(ad.image(&y).unwrap(), Element::term(y, -ratio(d, 2)));
        }
        let zero = ad_matrix(&g, &Element::zero(), w).unwrap();
        assert!(zero.matrix().is_zero());
    }

    #[test]
    fn non_homogeneous_ad_rejected() {
        let g = AlgebraInstance::preset("wgab", int(0), int(0)).unwrap();
        let z = &Element::basis(g.sym("L", h(0)).unwrap()) + &Element::basis(g.sym("I", h(2)).unwrap());
        assert_eq!(ad_matrix(&g, &z, Window::symmetric(3)), Err(Error::NotHomogeneous));
    }

    #[test]
    fn strict_and_truncated_codomains() {
        let g = AlgebraInstance::preset("wgab", int(0), int(0)).unwrap();
        let w = Window::symmetric(3);
        let l1 = Element::basis(g.sym("L", h(2)).unwrap());
        assert!(matches!(
            ad_matrix_into(&g, &l1, w, w, Truncation::Strict),
            Err(Error::OutOfWindow(_))
        ));
        let t = ad_matrix_into(&g, &l1, w, w, Truncation::Truncate).unwrap();
        assert!(!t.truncated().is_empty());
        assert!(!t.is_exact_at(&g.sym("L", h(6)).unwrap()));
        assert!(t.is_exact_at(&g.sym("L", h(0)).unwrap()));
    }

    #[test]
    fn compose_with_identity() {
        let g = AlgebraInstance::preset("wgab", ratio(1, 3), int(2)).unwrap();
        let w = Window::symmetric(3);
        let y = Element::basis(g.sym("Y", h(1)).unwrap());
        let ad = ad_matrix_into(&g, &y, w, w, Truncation::Truncate).unwrap();
        let id = WindowMap::identity(&g, w);
        assert_eq!(ad.compose(&id).unwrap(), ad);
        assert_eq!(id.compose(&ad).unwrap(), ad);
        let other = WindowMap::identity(&g, Window::symmetric(2));
        assert!(matches!(other.compose(&id), Err(Error::Dimension(_))));
    }
}
