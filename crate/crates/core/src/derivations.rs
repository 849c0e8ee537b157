//! Homogeneous derivations on truncation windows and the outer quotient.
//!
//! A degree-`d` derivation is unknown on each window symbol `x` as a
//! combination of the symbols of degree `deg x + d`. Leibniz constraints come
//! from every pair `x < y` with `deg[x, y]` and `deg[x, y] + d` in the window.
//! Constraints near the window edge are missing, so solutions are compared
//! only after restricting to an interior window.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::{AlgebraInstance, BasisIndex, Element, Window};
use crate::arith::{int, ratio, HalfInt, Rational, RowReducer, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationCandidate {
    pub degree: HalfInt,
    pub domain: Window,
    /// Image of every domain basis symbol (zero images may be omitted).
    pub images: BTreeMap<BasisIndex, Element>,
}

impl DerivationCandidate {
    pub fn zero(degree: HalfInt, domain: Window) -> Self {
        DerivationCandidate {
            degree,
            domain,
            images: BTreeMap::new(),
        }
    }

    /// `ad z` on the window.
    pub fn inner(inst: &AlgebraInstance, z: &Element, domain: Window) -> Result<Self> {
        let degree = z.degree()?.unwrap_or(HalfInt::ZERO);
        let images = domain
            .basis(inst)
            .into_iter()
            .map(|b| (b, inst.bracket(z, &Element::basis(b))))
            .filter(|(_, e)| !e.is_zero())
            .collect();
        Ok(DerivationCandidate {
            degree,
            domain,
            images,
        })
    }

    pub fn image(&self, b: &BasisIndex) -> Option<Element> {
        if !self.domain.contains(b.index) {
            return None;
        }
        Some(self.images.get(b).cloned().unwrap_or_default())
    }

    pub fn apply(&self, x: &Element) -> Option<Element> {
        let mut out = Element::zero();
        for (b, c) in x.terms() {
            out.add_scaled(&self.image(b)?, c);
        }
        Some(out)
    }

    pub fn restrict(&self, win: Window) -> DerivationCandidate {
        DerivationCandidate {
            degree: self.degree,
            domain: win,
            images: self
                .images
                .iter()
                .filter(|(b, _)| win.contains(b.index))
                .map(|(b, e)| (*b, e.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(Element::is_zero)
    }
}

/// Coordinates `(source, target)` of homogeneous maps on a window basis.
struct Coords {
    pairs: Vec<(BasisIndex, BasisIndex)>,
    pos: BTreeMap<(BasisIndex, BasisIndex), usize>,
}

impl Coords {
    fn new(inst: &AlgebraInstance, win: &Window, degree: HalfInt) -> Self {
        let mut pairs = Vec::new();
        for x in win.basis(inst) {
            for t in inst.slice(x.index + degree) {
                pairs.push((x, t));
            }
        }
        let pos = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Coords { pairs, pos }
    }

    fn len(&self) -> usize {
        self.pairs.len()
    }

    fn var(&self, x: BasisIndex, t: BasisIndex) -> usize {
        self.pos[&(x, t)]
    }

    /// Coordinates of the candidate on this basis; images of symbols outside
    /// the coordinate window are ignored.
    fn vector(&self, cand: &DerivationCandidate) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (x, img) in &cand.images {
            if !self.pos.keys().any(|(s, _)| s == x) {
                continue;
            }
            for (t, c) in img.terms() {
                let i = self.pos.get(&(*x, *t)).ok_or_else(|| {
                    Error::Dimension(format!(
                        "image of degree {} has a term of degree {}, expected {}",
                        x.index,
                        t.index,
                        x.index + cand.degree
                    ))
                })?;
                v.insert(*i, c.clone());
            }
        }
        Ok(v)
    }

    fn candidate(&self, v: &SparseVec, degree: HalfInt, domain: Window) -> DerivationCandidate {
        let mut images: BTreeMap<BasisIndex, Element> = BTreeMap::new();
        for (i, c) in v {
            let (x, t) = self.pairs[*i];
            images.entry(x).or_default().add_term(t, c.clone());
        }
        images.retain(|_, e| !e.is_zero());
        DerivationCandidate {
            degree,
            domain,
            images,
        }
    }

    /// Re-indexes a vector onto a sub-window's coordinates, dropping the rest.
    fn project(&self, v: &SparseVec, onto: &Coords) -> SparseVec {
        v.iter()
            .filter_map(|(i, c)| onto.pos.get(&self.pairs[*i]).map(|j| (*j, c.clone())))
            .collect()
    }
}

struct RawSolution {
    coords: Coords,
    basis: Vec<SparseVec>,
    equations: usize,
}

fn solve_raw(inst: &AlgebraInstance, degree: HalfInt, win: &Window) -> Result<RawSolution> {
    let coords = Coords::new(inst, win, degree);
    let basis = win.basis(inst);
    let mut system = RowReducer::new(coords.len());
    let mut equations = 0;
    for (i, &x) in basis.iter().enumerate() {
        for &y in &basis[i + 1..] {
            let s = x.index + y.index;
            if !win.contains(s) || !win.contains(s + degree) {
                continue;
            }
            equations += 1;
            let mut rows: BTreeMap<BasisIndex, SparseVec> = BTreeMap::new();
            let mut add = |out: BasisIndex, var: usize, c: Rational| {
                let e = rows.entry(out).or_default().entry(var).or_insert_with(Rational::zero);
                *e += c;
            };
            // D[x, y]
            if let Some((z, c)) = inst.bracket_basis(x, y) {
                for t in inst.slice(z.index + degree) {
                    add(t, coords.var(z, t), c.clone());
                }
            }
            // -[Dx, y]
            for t in inst.slice(x.index + degree) {
                if let Some((w, c)) = inst.bracket_basis(t, y) {
                    add(w, coords.var(x, t), -c);
                }
            }
            // -[x, Dy]
            for t in inst.slice(y.index + degree) {
                if let Some((w, c)) = inst.bracket_basis(x, t) {
                    add(w, coords.var(y, t), -c);
                }
            }
            for row in rows.values() {
                system.push(row);
            }
        }
    }
    if equations == 0 {
        return Err(Error::Window(format!(
            "window {win} gives no Leibniz constraints in degree {degree}"
        )));
    }
    Ok(RawSolution {
        basis: system.nullspace(),
        coords,
        equations,
    })
}

/// Basis of the degree-`degree` solutions of the window Leibniz system.
pub fn solve_homogeneous_derivations(
    inst: &AlgebraInstance,
    degree: HalfInt,
    win: Window,
) -> Result<Vec<DerivationCandidate>> {
    let raw = solve_raw(inst, degree, &win)?;
    Ok(raw
        .basis
        .iter()
        .map(|v| raw.coords.candidate(v, degree, win))
        .collect())
}

/// `ad z` for each basis symbol `z` of degree `degree`.
/// Symbols acting as zero (central ones) are left out.
pub fn inner_derivations(
    inst: &AlgebraInstance,
    degree: HalfInt,
    win: Window,
) -> Vec<DerivationCandidate> {
    inst.slice(degree)
        .into_iter()
        .map(|z| DerivationCandidate::inner(inst, &Element::basis(z), win).expect("homogeneous"))
        .filter(|c| !c.is_zero())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub degree: HalfInt,
    pub solve_window: Window,
    pub interior_window: Window,
    pub margin: u32,
    pub equations: usize,
    /// Dimension of the raw window solution space.
    pub solution_dim: usize,
    /// Dimension after restriction to the interior.
    pub restricted_dim: usize,
    pub inner_dim: usize,
    pub outer_dim: usize,
    /// Restricted inner derivations lie in the restricted solution span.
    pub inner_contained: bool,
    pub outer_basis: Vec<DerivationCandidate>,
}

struct Quotient {
    report: H1Report,
    interior: Coords,
    solutions: RowReducer,
    inner: RowReducer,
    reps: RowReducer,
}

fn quotient(inst: &AlgebraInstance, degree: HalfInt, win: Window, margin: u32) -> Result<Quotient> {
    if margin < 2 {
        return Err(Error::Window(format!("margin must be at least 2, got {margin}")));
    }
    let interior_window = win.shrink(margin)?;
    let raw = solve_raw(inst, degree, &win)?;
    let interior = Coords::new(inst, &interior_window, degree);

    let mut solutions = RowReducer::new(interior.len());
    for v in &raw.basis {
        solutions.push(&raw.coords.project(v, &interior));
    }
    let mut inner = RowReducer::new(interior.len());
    let mut inner_contained = true;
    for cand in inner_derivations(inst, degree, interior_window) {
        let v = interior.vector(&cand)?;
        inner_contained &= solutions.contains(&v);
        inner.push(&v);
    }
    let mut reps = RowReducer::new(interior.len());
    for row in solutions.rows() {
        reps.push(&inner.reduce(row));
    }
    let outer_basis = reps
        .rows()
        .map(|v| interior.candidate(v, degree, interior_window))
        .collect();
    let report = H1Report {
        degree,
        solve_window: win,
        interior_window,
        margin,
        equations: raw.equations,
        solution_dim: raw.basis.len(),
        restricted_dim: solutions.rank(),
        inner_dim: inner.rank(),
        outer_dim: solutions.rank() - inner.rank().min(solutions.rank()),
        inner_contained,
        outer_basis,
    };
    Ok(Quotient {
        report,
        interior,
        solutions,
        inner,
        reps,
    })
}

/// Outer derivations of one degree: interior-restricted solutions modulo
/// interior-restricted inner derivations.
pub fn h1_component(
    inst: &AlgebraInstance,
    degree: HalfInt,
    win: Window,
    margin: u32,
) -> Result<H1Report> {
    Ok(quotient(inst, degree, win, margin)?.report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateAnalysis {
    pub leibniz_violations: usize,
    /// Interior restriction lies in the solver's restricted solution span.
    pub in_solution_space: bool,
    /// Nonzero modulo inner derivations.
    pub outer: bool,
    /// When the outer space is one-dimensional: the candidate is a nonzero
    /// multiple of the representative modulo inner derivations.
    pub proportional_to_representative: Option<bool>,
    pub report: H1Report,
}

/// Places a candidate relative to the solver's solution and inner spaces.
pub fn analyze_candidate(
    inst: &AlgebraInstance,
    cand: &DerivationCandidate,
    win: Window,
    margin: u32,
) -> Result<CandidateAnalysis> {
    let q = quotient(inst, cand.degree, win, margin)?;
    let leibniz_violations = check_leibniz(inst, cand, &win).len();
    let v = q.interior.vector(&cand.restrict(q.report.interior_window))?;
    let reduced = q.inner.reduce(&v);
    let in_solution_space = q.solutions.contains(&v);
    let outer = !reduced.is_empty();
    let proportional_to_representative = (q.report.outer_dim == 1).then(|| {
        let mut r = q.reps.clone();
        outer && !r.push(&reduced)
    });
    Ok(CandidateAnalysis {
        leibniz_violations,
        in_solution_space,
        outer,
        proportional_to_representative,
        report: q.report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub x: BasisIndex,
    pub y: BasisIndex,
    pub residual: Element,
}

/// `D[x, y] - [Dx, y] - [x, Dy]` over window pairs where `D` is known on
/// `x`, `y` and `[x, y]`.
pub fn check_leibniz(
    inst: &AlgebraInstance,
    cand: &DerivationCandidate,
    win: &Window,
) -> Vec<LeibnizViolation> {
    let basis = win.basis(inst);
    let mut out = Vec::new();
    for (i, &x) in basis.iter().enumerate() {
        for &y in &basis[i + 1..] {
            let (Some(dx), Some(dy)) = (cand.image(&x), cand.image(&y)) else {
                continue;
            };
            let (ex, ey) = (Element::basis(x), Element::basis(y));
            let Some(lhs) = cand.apply(&inst.bracket(&ex, &ey)) else {
                continue;
            };
            let rhs = &inst.bracket(&dx, &ey) + &inst.bracket(&ex, &dy);
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                out.push(LeibnizViolation { x, y, residual });
            }
        }
    }
    out
}

/// The closed-form outer derivations of the deformed Schrödinger-Virasoro
/// algebras, plus `D1Weighted`, the degree-0 ideal scaling `I ↦ I`,
/// `Y ↦ Y/2` that satisfies Leibniz on `[Y, Y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosedForm {
    D1,
    D1Weighted,
    D2_00,
    D2_01,
    D2_02,
    D3,
    D3_1m1,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 7] = [
        ClosedForm::D1,
        ClosedForm::D1Weighted,
        ClosedForm::D2_00,
        ClosedForm::D2_01,
        ClosedForm::D2_02,
        ClosedForm::D3,
        ClosedForm::D3_1m1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::D1 => "D1",
            ClosedForm::D1Weighted => "D1_weighted",
            ClosedForm::D2_00 => "D2_00",
            ClosedForm::D2_01 => "D2_01",
            ClosedForm::D2_02 => "D2_02",
            ClosedForm::D3 => "D3",
            ClosedForm::D3_1m1 => "D3_1m1",
        }
    }

    /// The `(a, b)` where the form is an outer derivation; `None` means any.
    pub fn designated(self) -> Option<(Rational, Rational)> {
        match self {
            ClosedForm::D1 | ClosedForm::D1Weighted => None,
            ClosedForm::D2_00 | ClosedForm::D3 => Some((int(0), int(0))),
            ClosedForm::D2_01 => Some((int(0), int(1))),
            ClosedForm::D2_02 => Some((int(0), int(2))),
            ClosedForm::D3_1m1 => Some((int(1), int(-1))),
        }
    }

    pub fn degree(self) -> HalfInt {
        match self {
            ClosedForm::D3_1m1 => -HalfInt::HALF,
            _ => HalfInt::ZERO,
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Builds a closed-form derivation on the window. Works at any parameters
/// so it can also be tested where it is not a derivation.
pub fn closed_form_derivation(
    form: ClosedForm,
    inst: &AlgebraInstance,
    win: Window,
) -> Result<DerivationCandidate> {
    let l = inst.family("L")?;
    let i = inst.family("I")?;
    let y = inst.family("Y")?;
    let mut cand = DerivationCandidate::zero(form.degree(), win);
    for b in win.basis(inst) {
        let m = b.index.to_rational();
        let same_index_i = BasisIndex { family: i, index: b.index };
        let image = match form {
            ClosedForm::D1 if b.family != l => Element::basis(b),
            ClosedForm::D1Weighted if b.family == i => Element::basis(b),
            ClosedForm::D1Weighted if b.family == y => Element::term(b, ratio(1, 2)),
            ClosedForm::D2_00 if b.family == l => Element::term(same_index_i, &m - int(1)),
            ClosedForm::D2_01 if b.family == l => Element::term(same_index_i, &m * &m - &m),
            ClosedForm::D2_02 if b.family == l => Element::term(same_index_i, &m * &m * &m),
            ClosedForm::D3 if b.family == l => Element::term(same_index_i, m),
            ClosedForm::D3_1m1 if b.family == y => Element::basis(BasisIndex {
                family: i,
                index: b.index - HalfInt::HALF,
            }),
            _ => Element::zero(),
        };
        if !image.is_zero() {
            cand.images.insert(b, image);
        }
    }
    Ok(cand)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wgab(a: Rational, b: Rational) -> AlgebraInstance {
        AlgebraInstance::preset("wgab", a, b).unwrap()
    }

    #[test]
    fn witt_degree_zero_is_inner() {
        let w = AlgebraInstance::preset("witt", int(0), int(0)).unwrap();
        let sols = solve_homogeneous_derivations(&w, HalfInt::ZERO, Window::symmetric(8)).unwrap();
        // boundary artifacts aside, the interior is spanned by ad L_0
        let r = h1_component(&w, HalfInt::ZERO, Window::symmetric(8), 3).unwrap();
        assert_eq!(r.outer_dim, 0);
        assert_eq!(r.inner_dim, 1);
        assert_eq!(r.restricted_dim, 1);
        assert!(!sols.is_empty());
    }

    #[test]
    fn inner_spans() {
        let g = wgab(int(0), int(0));
        let w = Window::symmetric(6);
        assert_eq!(inner_derivations(&g, HalfInt::ZERO, w).len(), 1);
        let g = wgab(ratio(1, 2), ratio(1, 2));
        assert_eq!(inner_derivations(&g, HalfInt::ZERO, w).len(), 2);
        assert_eq!(inner_derivations(&g, HalfInt::HALF, w).len(), 1);
        assert_eq!(inner_derivations(&g, HalfInt::from_int(2), w).len(), 2);
    }

    #[test]
    fn inner_derivations_satisfy_leibniz() {
        let g = wgab(ratio(2, 3), int(5));
        let w = Window::symmetric(5);
        for d in [-3, -1, 0, 1, 2] {
            for c in inner_derivations(&g, HalfInt::from_doubled(d), w) {
                assert!(check_leibniz(&g, &c, &w).is_empty());
            }
        }
    }

    #[test]
    fn zero_map_is_a_solution() {
        let g = wgab(ratio(1, 2), ratio(1, 2));
        let w = Window::symmetric(6);
        let z = DerivationCandidate::zero(HalfInt::ZERO, w);
        assert!(check_leibniz(&g, &z, &w).is_empty());
        let a = analyze_candidate(&g, &z, w, 2).unwrap();
        assert!(a.in_solution_space && !a.outer);
    }

    #[test]
    fn closed_forms_at_their_points() {
        let w = Window::symmetric(8);
        for form in [ClosedForm::D2_00, ClosedForm::D2_01, ClosedForm::D2_02, ClosedForm::D3, ClosedForm::D3_1m1] {
            let (a, b) = form.designated().unwrap();
            let g = wgab(a, b);
            let c = closed_form_derivation(form, &g, w).unwrap();
            assert!(check_leibniz(&g, &c, &w).is_empty(), "{form}");
        }
        let g = wgab(ratio(1, 2), ratio(1, 2));
        let c = closed_form_derivation(ClosedForm::D1Weighted, &g, w).unwrap();
        assert!(check_leibniz(&g, &c, &w).is_empty());
    }

    #[test]
    fn transplanted_form_fails() {
        let w = Window::symmetric(8);
        let g = wgab(int(0), int(1));
        let c = closed_form_derivation(ClosedForm::D2_02, &g, w).unwrap();
        assert!(!check_leibniz(&g, &c, &w).is_empty());
    }

    #[test]
    fn d3_1m1_representative() {
        let g = wgab(int(1), int(-1));
        let w = Window::symmetric(8);
        let c = closed_form_derivation(ClosedForm::D3_1m1, &g, w).unwrap();
        assert_eq!(c.images.len(), 16);
        let a = analyze_candidate(&g, &c, w, 3).unwrap();
        assert_eq!(a.report.outer_dim, 1);
        assert_eq!(a.proportional_to_representative, Some(true));
    }

    #[test]
    fn names_round_trip() {
        for f in ClosedForm::ALL {
            assert_eq!(f.name().parse::<ClosedForm>().unwrap(), f);
        }
        assert!("D4".parse::<ClosedForm>().is_err());
    }
}
