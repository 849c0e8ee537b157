//! Automorphism families of the deformed Schrödinger-Virasoro algebras as
//! window maps, inner exponentials, and their verification.
//!
//! Square roots are never taken: each constructor receives rational
//! witnesses `s` (and `t`) and checks their defining quadratics exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{
    format_basis, AlgebraInstance, BasisIndex, Element, MapComparison, Truncation, Window, WindowMap,
};
use crate::arith::{fmt_rational, int, parse_rational, pow_int, HalfInt, Rational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AutKind {
    /// `a` not an integer.
    GenericScale,
    /// `a = 0`: index flip `ε`, scaling and an `L -> I` shear.
    FlipScale0b,
    /// `a = 1`: as above with the `I`, `Y` indices shifted by one.
    Shift1b,
}

impl AutKind {
    pub fn name(self) -> &'static str {
        match self {
            AutKind::GenericScale => "generic",
            AutKind::FlipScale0b => "flip",
            AutKind::Shift1b => "shift",
        }
    }

    /// The family that applies at the instance's value of `a`.
    pub fn for_instance(inst: &AlgebraInstance) -> Result<AutKind> {
        let a = inst.param(Var::A);
        if !a.is_integer() {
            Ok(AutKind::GenericScale)
        } else if a.is_zero() {
            Ok(AutKind::FlipScale0b)
        } else if a.is_one() {
            Ok(AutKind::Shift1b)
        } else {
            Err(Error::Automorphism(format!(
                "no automorphism family for integral a = {}; shift a to 0 or 1 first",
                fmt_rational(&a)
            )))
        }
    }
}

impl std::str::FromStr for AutKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [AutKind::GenericScale, AutKind::FlipScale0b, AutKind::Shift1b]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// One member of an automorphism family. Parameters a family does not use
/// must be left at their defaults (`eps = 1`, others zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismSpec {
    pub kind: AutKind,
    pub eps: i64,
    pub alpha: Rational,
    pub mu: Rational,
    /// Witness for `sqrt(eps * alpha * mu)`.
    pub s: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    /// Witness for the `a = 1`, `b ∉ {0, 1}` radical.
    pub t: Rational,
}

impl AutomorphismSpec {
    pub fn identity(kind: AutKind) -> Self {
        AutomorphismSpec {
            kind,
            eps: 1,
            alpha: Rational::one(),
            mu: Rational::one(),
            s: Rational::one(),
            c: Rational::zero(),
            d: Rational::zero(),
            e: Rational::zero(),
            t: Rational::zero(),
        }
    }

    pub fn generic(alpha: Rational, mu: Rational, s: Rational) -> Self {
        AutomorphismSpec {
            alpha,
            mu,
            s,
            ..AutomorphismSpec::identity(AutKind::GenericScale)
        }
    }

    pub fn flip(eps: i64, alpha: Rational, mu: Rational, s: Rational, c: Rational, d: Rational) -> Self {
        AutomorphismSpec {
            eps,
            alpha,
            mu,
            s,
            c,
            d,
            ..AutomorphismSpec::identity(AutKind::FlipScale0b)
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn shift(
        eps: i64,
        alpha: Rational,
        mu: Rational,
        s: Rational,
        c: Rational,
        d: Rational,
        e: Rational,
        t: Rational,
    ) -> Self {
        AutomorphismSpec {
            kind: AutKind::Shift1b,
            eps,
            alpha,
            mu,
            s,
            c,
            d,
            e,
            t,
        }
    }

    /// Parses `key=value` pairs separated by commas, e.g.
    /// `alpha=4,mu=1,s=2`. Without `kind=` the family is chosen from `a`.
    pub fn parse(text: &str, inst: &AlgebraInstance) -> Result<Self> {
        let mut fields = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            if fields.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("`{}` given twice", k.trim())));
            }
        }
        let kind = match fields.remove("kind") {
            Some(k) => k.parse()?,
            None => AutKind::for_instance(inst)?,
        };
        let mut spec = AutomorphismSpec::identity(kind);
        for (k, v) in fields {
            let q = parse_rational(&v)?;
            match k.as_str() {
                "eps" => {
                    spec.eps = if q == int(1) {
                        1
                    } else if q == int(-1) {
                        -1
                    } else {
                        return Err(Error::Parameter("eps must be 1 or -1".into()));
                    }
                }
                "alpha" => spec.alpha = q,
                "mu" => spec.mu = q,
                "s" => spec.s = q,
                "c" => spec.c = q,
                "d" => spec.d = q,
                "e" => spec.e = q,
                "t" => spec.t = q,
                _ => return Err(Error::UnknownName(k)),
            }
        }
        Ok(spec)
    }

    /// Checks the family against the instance and every witness equation.
    pub fn validate(&self, inst: &AlgebraInstance) -> Result<()> {
        let fail = |m: String| Err(Error::Automorphism(m));
        let expected = AutKind::for_instance(inst)?;
        if expected != self.kind {
            return fail(format!(
                "{} automorphisms do not apply at a = {}",
                self.kind.name(),
                fmt_rational(&inst.param(Var::A))
            ));
        }
        if self.eps != 1 && self.eps != -1 {
            return fail("eps must be 1 or -1".into());
        }
        if self.alpha.is_zero() || self.mu.is_zero() {
            return fail("alpha and mu must be nonzero".into());
        }
        let eps = int(self.eps);
        let radicand = &eps * &self.alpha * &self.mu;
        if &self.s * &self.s != radicand {
            return fail(format!(
                "witness s = {} does not square to eps*alpha*mu = {}",
                fmt_rational(&self.s),
                fmt_rational(&radicand)
            ));
        }
        let unused = |name: &str, v: &Rational| -> Result<()> {
            if v.is_zero() {
                Ok(())
            } else {
                Err(Error::Automorphism(format!(
                    "parameter {name} is not used by this family and must be 0"
                )))
            }
        };
        let b = inst.param(Var::B);
        match self.kind {
            AutKind::GenericScale => {
                if self.eps != 1 {
                    return fail("generic scalings have eps = 1".into());
                }
                unused("c", &self.c)?;
                unused("d", &self.d)?;
                unused("e", &self.e)?;
                unused("t", &self.t)
            }
            AutKind::FlipScale0b => {
                unused("e", &self.e)?;
                unused("t", &self.t)
            }
            AutKind::Shift1b => {
                if b.is_zero() {
                    unused("e", &self.e)?;
                    unused("t", &self.t)
                } else if b.is_one() {
                    unused("t", &self.t)
                } else {
                    unused("e", &self.e)?;
                    let want = if b == int(3) {
                        int(2) * &eps * &self.c
                    } else {
                        &eps * (int(1) - &b) * &self.c
                    };
                    if &self.t * &self.t != want {
                        return fail(format!(
                            "witness t = {} does not square to {}",
                            fmt_rational(&self.t),
                            fmt_rational(&want)
                        ));
                    }
                    Ok(())
                }
            }
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "kind={},eps={},alpha={},mu={},s={},c={},d={},e={},t={}",
            self.kind.name(),
            self.eps,
            fmt_rational(&self.alpha),
            fmt_rational(&self.mu),
            fmt_rational(&self.s),
            fmt_rational(&self.c),
            fmt_rational(&self.d),
            fmt_rational(&self.e),
            fmt_rational(&self.t)
        )
    }
}

impl fmt::Display for AutomorphismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Families {
    l: usize,
    i: usize,
    y: usize,
}

fn families(inst: &AlgebraInstance) -> Result<Families> {
    Ok(Families {
        l: inst.family("L")?,
        i: inst.family("I")?,
        y: inst.family("Y")?,
    })
}

fn sym(family: usize, index: HalfInt) -> BasisIndex {
    BasisIndex { family, index }
}

fn hi(n: i64) -> HalfInt {
    HalfInt::from_int(n)
}

/// Image of one basis symbol under the displayed formulas.
pub fn automorphism_image(inst: &AlgebraInstance, spec: &AutomorphismSpec, x: BasisIndex) -> Result<Element> {
    let f = families(inst)?;
    let eps = spec.eps;
    let e = int(eps);
    let b = inst.param(Var::B);
    let n = x.index.floor();
    let nq = int(n);
    let an = pow_int(&spec.alpha, n);
    let mut out = Element::zero();
    match spec.kind {
        AutKind::GenericScale => {
            let c = if x.family == f.l {
                an
            } else if x.family == f.i {
                &an * &spec.mu
            } else {
                &an * &spec.s
            };
            out.add_term(x, c);
        }
        AutKind::FlipScale0b => {
            if x.family == f.l {
                out.add_term(sym(f.l, hi(eps * n)), &e * &an);
                let g = if b.is_zero() {
                    &spec.c * &nq + &spec.d
                } else {
                    &nq * (&spec.c * &nq + &spec.d)
                };
                out.add_term(sym(f.i, hi(eps * n)), &an * g);
            } else if x.family == f.i {
                out.add_term(sym(f.i, hi(eps * n)), &an * &spec.mu);
            } else {
                let k = if eps == 1 { x.index } else { -x.index };
                out.add_term(sym(f.y, k), &an * &spec.s);
            }
        }
        AutKind::Shift1b => {
            // I_n -> I_{eps(n+1)-1}; Y_{n+1/2} -> Y_{eps(n+1)-1/2}
            let shifted = eps * (n + 1) - 1;
            if x.family == f.l {
                out.add_term(sym(f.l, hi(eps * n)), &e * &an);
                let (h, q) = if b.is_zero() {
                    (&spec.c * &nq + &spec.d, Rational::zero())
                } else if b.is_one() {
                    (&nq * (&spec.c * &nq + &spec.d), Rational::zero())
                } else if b == int(3) {
                    (&nq * (&spec.c * &nq * &nq * &nq + &spec.d), &nq * &nq)
                } else {
                    (&nq * (&spec.c * (&nq - int(1)) + &spec.d), nq.clone())
                };
                out.add_term(sym(f.i, hi(eps * n - 1)), &an * h);
                out.add_term(sym(f.y, hi(eps * n - 1) + HalfInt::HALF), &an * q * &spec.t);
            } else if x.family == f.i {
                out.add_term(sym(f.i, hi(shifted)), &an * &spec.mu);
            } else {
                out.add_term(sym(f.y, hi(shifted) + HalfInt::HALF), &an * &spec.s);
                let n1 = int(n + 1);
                let r = if b.is_zero() {
                    Rational::zero()
                } else if b.is_one() {
                    &n1 * &spec.e
                } else if b == int(3) {
                    -(&e * &n1 * &spec.t * &spec.s)
                } else {
                    -(int(2) * &e * &n1 * &spec.t * &spec.s) / (&b - int(1))
                };
                out.add_term(sym(f.i, hi(shifted)), &an * r);
            }
        }
    }
    Ok(out)
}

fn degree_hull(images: &[Element], fallback: Window) -> Window {
    let degs: Vec<HalfInt> = images.iter().flat_map(|e| e.terms().map(|(b, _)| b.index)).collect();
    match (degs.iter().min(), degs.iter().max()) {
        (Some(lo), Some(hi)) => Window::new(*lo, *hi).expect("min <= max"),
        _ => fallback,
    }
}

/// Builds the map on `domain` with the smallest codomain holding every image.
pub fn build_automorphism(inst: &AlgebraInstance, spec: &AutomorphismSpec, domain: Window) -> Result<WindowMap> {
    spec.validate(inst)?;
    build_automorphism_unchecked(inst, spec, domain)
}

/// Builds the map into a given codomain; images leaving it are an error.
pub fn build_automorphism_into(
    inst: &AlgebraInstance,
    spec: &AutomorphismSpec,
    domain: Window,
    codomain: Window,
) -> Result<WindowMap> {
    spec.validate(inst)?;
    WindowMap::from_images(inst, domain, codomain, Truncation::Strict, |b| {
        automorphism_image(inst, spec, b)
    })
}

/// Skips validation of the family and witnesses, for negative tests.
pub fn build_automorphism_unchecked(
    inst: &AlgebraInstance,
    spec: &AutomorphismSpec,
    domain: Window,
) -> Result<WindowMap> {
    let images = domain
        .basis(inst)
        .into_iter()
        .map(|b| automorphism_image(inst, spec, b))
        .collect::<Result<Vec<_>>>()?;
    let codomain = degree_hull(&images, domain);
    let mut it = images.into_iter();
    WindowMap::from_images(inst, domain, codomain, Truncation::Strict, |_| {
        Ok(it.next().expect("one image per basis symbol"))
    })
}

/// A product `exp(c1 ad g1) exp(c2 ad g2) ...`, rightmost factor applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerWord {
    pub factors: Vec<(BasisIndex, Rational)>,
}

impl InnerWord {
    pub fn new(factors: Vec<(BasisIndex, Rational)>) -> Self {
        InnerWord { factors }
    }

    pub fn inverse(&self) -> InnerWord {
        InnerWord {
            factors: self.factors.iter().rev().map(|(g, c)| (*g, -c.clone())).collect(),
        }
    }
}

const NILPOTENCY_BOUND: usize = 16;

/// `exp(c ad g) x`, summed exactly until the powers vanish.
pub fn exp_ad(inst: &AlgebraInstance, g: &Element, c: &Rational, x: &Element) -> Result<Element> {
    let mut out = x.clone();
    let mut term = x.clone();
    for k in 1..=NILPOTENCY_BOUND {
        term = inst.bracket(g, &term).scale(&(c / int(k as i64)));
        if term.is_zero() {
            return Ok(out);
        }
        out = &out + &term;
    }
    Err(Error::Automorphism(
        "ad of the generator is not nilpotent on this element".into(),
    ))
}

/// The word applied exactly to each window symbol, then truncated to the
/// window; columns that lost terms are flagged.
pub fn exp_inner(inst: &AlgebraInstance, word: &InnerWord, win: Window) -> Result<WindowMap> {
    let l = inst.family("L").ok();
    for (g, _) in &word.factors {
        if Some(g.family) == l {
            return Err(Error::Automorphism(format!(
                "{} does not generate an inner exponential",
                format_basis(inst, g)
            )));
        }
    }
    WindowMap::from_images(inst, win, win, Truncation::Truncate, |b| {
        let mut x = Element::basis(b);
        for (g, c) in word.factors.iter().rev() {
            x = exp_ad(inst, &Element::basis(*g), c, &x)?;
        }
        Ok(x)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub pairs_checked: usize,
    pub violations: Vec<(BasisIndex, BasisIndex)>,
    /// Exact columns over the checked window are linearly independent.
    pub injective: bool,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.injective && self.pairs_checked > 0
    }
}

/// `σ[x, y] = [σx, σy]` for window pairs where every image is exact.
pub fn check_homomorphism(inst: &AlgebraInstance, map: &WindowMap, win: &Window) -> HomomorphismReport {
    check_homomorphism_between(inst, inst, map, win)
}

/// As `check_homomorphism`, with the bracket of the target taken in `dst`.
pub fn check_homomorphism_between(
    src: &AlgebraInstance,
    dst: &AlgebraInstance,
    map: &WindowMap,
    win: &Window,
) -> HomomorphismReport {
    let basis: Vec<BasisIndex> = win.basis(src).into_iter().filter(|b| map.is_exact_at(b)).collect();
    let images: Vec<Element> = basis.iter().map(|b| map.image(b).expect("in domain")).collect();
    let mut violations = Vec::new();
    let mut pairs = 0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (x, y) = (basis[i], basis[j]);
            if !win.contains(x.index + y.index) {
                continue;
            }
            let lhs = match src.bracket_basis(x, y) {
                None => Element::zero(),
                Some((z, c)) => {
                    if !map.is_exact_at(&z) {
                        continue;
                    }
                    map.image(&z).expect("exact").scale(&c)
                }
            };
            pairs += 1;
            if lhs != dst.bracket(&images[i], &images[j]) {
                violations.push((x, y));
            }
        }
    }
    let mut red = crate::arith::RowReducer::new(map.codomain_basis().len());
    let mut injective = true;
    for img in &images {
        let v = img
            .terms()
            .map(|(b, c)| (map.codomain_basis().position(b).expect("in codomain"), c.clone()))
            .collect();
        injective &= red.push(&v);
    }
    HomomorphismReport {
        pairs_checked: pairs,
        violations,
        injective,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub passed: bool,
    pub columns_checked: usize,
    /// Ideal columns with support outside the ideal.
    pub offending: Vec<BasisIndex>,
}

/// Every `I` and `Y` column is supported on `I` and `Y` rows only.
pub fn ideal_preservation_check(inst: &AlgebraInstance, map: &WindowMap, win: &Window) -> Result<IdealReport> {
    let l = inst.family("L")?;
    let mut offending = Vec::new();
    let mut checked = 0;
    for b in win.basis(inst) {
        if b.family == l {
            continue;
        }
        let Some(img) = map.image(&b) else { continue };
        checked += 1;
        if img.terms().any(|(t, _)| t.family == l) {
            offending.push(b);
        }
    }
    Ok(IdealReport {
        passed: offending.is_empty() && checked > 0,
        columns_checked: checked,
        offending,
    })
}

/// Closed-form parameters of `σ(p1) ∘ σ(p2)`.
pub fn composed_parameters(
    inst: &AlgebraInstance,
    p1: &AutomorphismSpec,
    p2: &AutomorphismSpec,
) -> Result<AutomorphismSpec> {
    if p1.kind != p2.kind {
        return Err(Error::Automorphism("cannot compose different families".into()));
    }
    let b = inst.param(Var::B);
    let e2 = int(p2.eps);
    let a1_e2 = pow_int(&p1.alpha, p2.eps);
    let no_law = || {
        Err(Error::Automorphism(format!(
            "no closed-form composition law for {} at b = {}",
            p1.kind.name(),
            fmt_rational(&b)
        )))
    };
    Ok(match p1.kind {
        AutKind::GenericScale => AutomorphismSpec::generic(
            &p1.alpha * &p2.alpha,
            &p1.mu * &p2.mu,
            &p1.s * &p2.s,
        ),
        AutKind::FlipScale0b => {
            // Y picks up alpha1^((eps2 - 1)/2) from the flipped index.
            let s = &p1.s * &p2.s * pow_int(&p1.alpha, (p2.eps - 1) / 2);
            let (c, d) = if b.is_zero() {
                (&p1.c + &p1.mu * &p2.c, &e2 * &p1.d + &p1.mu * &p2.d)
            } else if b.is_one() {
                (&e2 * &p1.c + &p1.mu * &p2.c, &p1.d + &p1.mu * &p2.d)
            } else {
                return no_law();
            };
            AutomorphismSpec::flip(p1.eps * p2.eps, &a1_e2 * &p2.alpha, &p1.mu * &p2.mu, s, c, d)
        }
        AutKind::Shift1b => {
            let a1_shift = pow_int(&p1.alpha, p2.eps - 1);
            let mu = &a1_shift * &p1.mu * &p2.mu;
            let s = &p1.s * &p2.s * &a1_shift;
            let w = p1.alpha.recip() * &p1.mu;
            if b.is_zero() {
                AutomorphismSpec::shift(
                    p1.eps * p2.eps,
                    &a1_e2 * &p2.alpha,
                    mu,
                    s,
                    &p1.c + &w * &p2.c,
                    &e2 * &p1.d + &w * &p2.d,
                    Rational::zero(),
                    Rational::zero(),
                )
            } else if b.is_one() {
                let e = &a1_shift * (&p1.mu * &p2.e + &e2 * &p1.e * &p2.s);
                AutomorphismSpec::shift(
                    p1.eps * p2.eps,
                    &a1_e2 * &p2.alpha,
                    mu,
                    s,
                    &e2 * &p1.c + &w * &p2.c,
                    &p1.d + &w * &p2.d,
                    e,
                    Rational::zero(),
                )
            } else {
                return no_law();
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionReport {
    pub composed: AutomorphismSpec,
    pub comparison: MapComparison,
    pub passed: bool,
}

/// Compares the matrix product `σ(p1) σ(p2)` with the closed-form composed
/// map on `interior`.
pub fn composition_law_check(
    inst: &AlgebraInstance,
    p1: &AutomorphismSpec,
    p2: &AutomorphismSpec,
    win: Window,
    interior: Window,
) -> Result<CompositionReport> {
    let composed = composed_parameters(inst, p1, p2)?;
    composed.validate(inst)?;
    let m2 = build_automorphism(inst, p2, win)?;
    let m1 = build_automorphism(inst, p1, m2.codomain())?;
    let product = m1.compose(&m2)?;
    let direct = build_automorphism(inst, &composed, win)?;
    let comparison = product.compare_on(&direct, inst, &interior);
    Ok(CompositionReport {
        passed: comparison.equal() && comparison.skipped == 0,
        composed,
        comparison,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorReport {
    pub gamma: Rational,
    pub comparison: MapComparison,
    pub passed: bool,
}

/// `exp(α ad Y_{j+1/2}) exp(β ad Y_{i+1/2}) exp(-α ad Y_{j+1/2}) exp(-β ad Y_{i+1/2})`
/// against `exp(γ ad I_{i+j+1})` with `γ = αβ(j - i)`, on `interior`.
pub fn commutator_relation_check(
    inst: &AlgebraInstance,
    alpha: &Rational,
    beta: &Rational,
    i: i64,
    j: i64,
    win: Window,
    interior: Window,
) -> Result<CommutatorReport> {
    let f = families(inst)?;
    let yj = sym(f.y, hi(j) + HalfInt::HALF);
    let yi = sym(f.y, hi(i) + HalfInt::HALF);
    let lhs = exp_inner(
        inst,
        &InnerWord::new(vec![
            (yj, alpha.clone()),
            (yi, beta.clone()),
            (yj, -alpha.clone()),
            (yi, -beta.clone()),
        ]),
        win,
    )?;
    let gamma = alpha * beta * int(j - i);
    let rhs = exp_inner(inst, &InnerWord::new(vec![(sym(f.i, hi(i + j + 1)), gamma.clone())]), win)?;
    let comparison = lhs.compare_on(&rhs, inst, &interior);
    Ok(CommutatorReport {
        passed: comparison.equal() && comparison.skipped == 0,
        gamma,
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn wgab(a: Rational, b: Rational) -> AlgebraInstance {
        AlgebraInstance::preset("wgab", a, b).unwrap()
    }

    fn y(g: &AlgebraInstance, d: i64) -> BasisIndex {
        g.sym("Y", HalfInt::from_doubled(d)).unwrap()
    }

    #[test]
    fn generic_scale_images() {
        let g = wgab(ratio(1, 2), int(0));
        let spec = AutomorphismSpec::generic(int(4), int(1), int(2));
        let m = build_automorphism(&g, &spec, Window::symmetric(4)).unwrap();
        assert_eq!(m.codomain(), Window::symmetric(4));
        let l2 = g.sym("L", hi(2)).unwrap();
        assert_eq!(m.image(&l2).unwrap(), Element::term(l2, int(16)));
        assert_eq!(m.image(&y(&g, 3)).unwrap(), Element::term(y(&g, 3), int(8)));
        assert_eq!(m.image(&y(&g, -1)).unwrap(), Element::term(y(&g, -1), ratio(1, 2)));
        assert!(check_homomorphism(&g, &m, &Window::symmetric(4)).passed());
    }

    #[test]
    fn witness_checked() {
        let g = wgab(ratio(1, 2), int(0));
        let bad = AutomorphismSpec::generic(int(4), int(1), int(3));
        assert!(matches!(build_automorphism(&g, &bad, Window::symmetric(2)), Err(Error::Automorphism(_))));
        let wrong_family = AutomorphismSpec::flip(1, int(1), int(1), int(1), int(0), int(0));
        assert!(build_automorphism(&g, &wrong_family, Window::symmetric(2)).is_err());
        let g2 = wgab(int(2), int(0));
        assert!(AutKind::for_instance(&g2).is_err());
    }

    #[test]
    fn flip_at_origin() {
        let g = wgab(int(0), int(0));
        let spec = AutomorphismSpec::flip(-1, int(1), int(-1), int(1), int(0), int(0));
        let w = Window::symmetric(5);
        let m = build_automorphism(&g, &spec, w).unwrap();
        let l3 = g.sym("L", hi(3)).unwrap();
        let lm3 = g.sym("L", hi(-3)).unwrap();
        assert_eq!(m.image(&l3).unwrap(), Element::term(lm3, int(-1)));
        assert_eq!(m.image(&y(&g, 3)).unwrap(), Element::basis(y(&g, -3)));
        assert!(check_homomorphism(&g, &m, &w).passed());
        assert!(ideal_preservation_check(&g, &m, &w).unwrap().passed);
    }

    #[test]
    fn shift_at_one_zero() {
        let g = wgab(int(1), int(0));
        let spec = AutomorphismSpec::shift(1, int(1), int(1), int(1), int(1), int(0), int(0), int(0));
        let w = Window::symmetric(5);
        let m = build_automorphism(&g, &spec, w).unwrap();
        let l3 = g.sym("L", hi(3)).unwrap();
        let i2 = g.sym("I", hi(2)).unwrap();
        assert_eq!(m.image(&l3).unwrap(), &Element::basis(l3) + &Element::term(i2, int(3)));
        assert!(check_homomorphism(&g, &m, &w).passed());
    }

    #[test]
    fn broken_witness_detected() {
        let g = wgab(ratio(1, 2), int(0));
        let mut spec = AutomorphismSpec::generic(int(4), int(1), int(2));
        spec.s = -&spec.s - int(1);
        let w = Window::symmetric(4);
        let m = build_automorphism_unchecked(&g, &spec, w).unwrap();
        let r = check_homomorphism(&g, &m, &w);
        assert!(!r.passed());
        let yfam = g.family("Y").unwrap();
        assert!(r.violations.iter().all(|(x, y)| x.family == yfam && y.family == yfam));
    }

    #[test]
    fn exp_of_i0() {
        let g = wgab(ratio(1, 2), int(0));
        let w = Window::symmetric(4);
        let i0 = g.sym("I", hi(0)).unwrap();
        let m = exp_inner(&g, &InnerWord::new(vec![(i0, int(3))]), w).unwrap();
        for n in -4..=4 {
            let l = g.sym("L", hi(n)).unwrap();
            let i = g.sym("I", hi(n)).unwrap();
            assert_eq!(m.image(&l).unwrap(), &Element::basis(l) + &Element::term(i, ratio(3, 2)));
        }
        assert!(m.truncated().is_empty());
        let zero = exp_inner(&g, &InnerWord::new(vec![(y(&g, 1), int(0))]), w).unwrap();
        assert!(zero.is_identity_on(&g, &w));
    }

    #[test]
    fn exp_inverse_is_identity() {
        let g = wgab(ratio(1, 3), int(2));
        let w = Window::symmetric(8);
        let word = InnerWord::new(vec![(y(&g, 1), int(2)), (g.sym("I", hi(-1)).unwrap(), ratio(-1, 2)), (y(&g, -3), int(1))]);
        let f = exp_inner(&g, &word, w).unwrap();
        let inv = exp_inner(&g, &word.inverse(), w).unwrap();
        let id = inv.compose(&f).unwrap();
        assert!(id.is_identity_on(&g, &Window::symmetric(4)));
        assert!(check_homomorphism(&g, &f, &Window::symmetric(4)).passed());
        assert!(ideal_preservation_check(&g, &f, &w).unwrap().passed);
    }

    #[test]
    fn commutator_examples() {
        let g = wgab(ratio(1, 2), int(0));
        let w = Window::symmetric(10);
        let r = commutator_relation_check(&g, &int(1), &int(1), 0, 2, w, Window::symmetric(6)).unwrap();
        assert_eq!(r.gamma, int(2));
        assert!(r.passed, "{:?}", r.comparison);
        let r = commutator_relation_check(&g, &int(3), &int(-2), -1, 1, w, Window::symmetric(6)).unwrap();
        assert_eq!(r.gamma, int(-12));
        assert!(r.passed);
    }

    #[test]
    fn parse_spec_text() {
        let g = wgab(ratio(1, 2), int(0));
        let s = AutomorphismSpec::parse("alpha=4, mu=1, s=2", &g).unwrap();
        assert_eq!(s, AutomorphismSpec::generic(int(4), int(1), int(2)));
        assert!(AutomorphismSpec::parse("alpha=4,zeta=1", &g).is_err());
        assert!(AutomorphismSpec::parse("eps=2", &g).is_err());
        let back = AutomorphismSpec::parse(&s.to_text(), &g).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn composition_examples() {
        let g = wgab(ratio(1, 2), int(0));
        let w = Window::symmetric(6);
        let r = composition_law_check(
            &g,
            &AutomorphismSpec::generic(int(2), int(2), int(2)),
            &AutomorphismSpec::generic(int(8), int(2), int(4)),
            w,
            w,
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!(r.composed, AutomorphismSpec::generic(int(16), int(4), int(8)));
        let g = wgab(int(0), int(0));
        let r = composition_law_check(
            &g,
            &AutomorphismSpec::flip(1, int(1), int(1), int(1), int(1), int(0)),
            &AutomorphismSpec::flip(1, int(1), int(1), int(1), int(0), int(1)),
            w,
            w,
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!(r.composed, AutomorphismSpec::flip(1, int(1), int(1), int(1), int(1), int(1)));
    }
}
