//! Center, perfectness and the even index shift between instances.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{AlgebraInstance, BasisIndex, Element, Truncation, Window, WindowMap};
use crate::arith::{int, HalfInt, Rational, RowReducer, SparseVec, Var};
use crate::automorphisms::{check_homomorphism_between, HomomorphismReport};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterMode {
    /// Test against the basis symbols of degree at most 2 in absolute value.
    Generators,
    /// Test against every window symbol.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub interior: Window,
    pub generators: usize,
    /// Reduced basis of the centralizing elements supported on the interior.
    pub basis: Vec<Element>,
}

/// Elements `v` on the interior with `[x, v] = 0` for every tested `x`.
/// Brackets are evaluated exactly, so nothing is lost at the window edge.
pub fn center(inst: &AlgebraInstance, win: &Window, margin: u32, mode: CenterMode) -> Result<CenterReport> {
    if margin < 2 {
        return Err(Error::Window("center needs margin >= 2".into()));
    }
    let interior = win.shrink(margin)?;
    let unknowns = interior.basis(inst);
    let generators = match mode {
        CenterMode::Generators => win
            .basis(inst)
            .into_iter()
            .filter(|b| b.index.abs() <= HalfInt::from_int(2))
            .collect::<Vec<_>>(),
        CenterMode::Full => win.basis(inst),
    };
    let mut red = RowReducer::new(unknowns.len());
    for x in &generators {
        // one equation per target symbol of [x, v]
        let mut rows: BTreeMap<BasisIndex, SparseVec> = BTreeMap::new();
        for (col, b) in unknowns.iter().enumerate() {
            if let Some((t, c)) = inst.bracket_basis(*x, *b) {
                rows.entry(t).or_default().insert(col, c);
            }
        }
        for row in rows.values() {
            red.push(row);
        }
    }
    let basis = red
        .nullspace()
        .into_iter()
        .map(|v| v.into_iter().map(|(i, c)| (unknowns[i], c)).collect())
        .collect();
    Ok(CenterReport {
        interior,
        generators: generators.len(),
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectReport {
    pub passed: bool,
    pub interior: Window,
    pub span_rank: usize,
    pub uncovered: Vec<BasisIndex>,
}

/// Whether the brackets of window pairs span every interior symbol.
pub fn perfectness_check(inst: &AlgebraInstance, win: &Window, margin: u32) -> Result<PerfectReport> {
    if margin < 2 {
        return Err(Error::Window("perfectness needs margin >= 2".into()));
    }
    let interior = win.shrink(margin)?;
    let basis = win.basis(inst);
    let pos: BTreeMap<BasisIndex, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let mut red = RowReducer::new(basis.len());
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            if let Some((t, c)) = inst.bracket_basis(*x, *y) {
                if let Some(&p) = pos.get(&t) {
                    red.push(&SparseVec::from([(p, c)]));
                }
            }
        }
    }
    let uncovered: Vec<BasisIndex> = interior
        .basis(inst)
        .into_iter()
        .filter(|b| !red.contains(&SparseVec::from([(pos[b], Rational::one())])))
        .collect();
    Ok(PerfectReport {
        passed: uncovered.is_empty(),
        interior,
        span_rank: red.rank(),
        uncovered,
    })
}

/// Image of a symbol under the shift `(a, b) -> (a + k, b)`:
/// `L_m -> L_m`, `I_n -> I_{n-k}`, `Y_j -> Y_{j-k/2}`.
pub fn shift_image(inst: &AlgebraInstance, k: i64, x: BasisIndex) -> Result<BasisIndex> {
    if k % 2 != 0 {
        return Err(Error::Parameter(format!("shift k = {k} must be even")));
    }
    let by = if x.family == inst.family("L")? {
        HalfInt::ZERO
    } else if x.family == inst.family("I")? {
        HalfInt::from_int(k)
    } else if x.family == inst.family("Y")? {
        HalfInt::from_int(k / 2)
    } else {
        return Err(Error::UnknownName(inst.family_name(x.family).to_string()));
    };
    Ok(BasisIndex {
        family: x.family,
        index: x.index - by,
    })
}

#[derive(Clone, Debug)]
pub struct ShiftIsoReport {
    pub k: i64,
    pub target: AlgebraInstance,
    pub map: WindowMap,
    pub check: HomomorphismReport,
}

impl ShiftIsoReport {
    pub fn passed(&self) -> bool {
        self.check.passed()
    }
}

/// Builds the shift map into the `(a + k, b)` instance and checks
/// `σ[x, y] = [σx, σy]` across the two instances on `win`.
pub fn shift_isomorphism(inst: &AlgebraInstance, k: i64, win: Window) -> Result<ShiftIsoReport> {
    if k % 2 != 0 {
        return Err(Error::Parameter(format!("shift k = {k} must be even")));
    }
    let mut params = inst.params().clone();
    let a = params
        .get_mut(&Var::A)
        .ok_or_else(|| Error::Parameter("the algebra has no parameter a".into()))?;
    *a += int(k);
    let target = AlgebraInstance::new(inst.spec().clone(), params)?;
    let lo = win.min() - HalfInt::from_int(k.max(0));
    let hi = win.max() - HalfInt::from_int(k.min(0));
    let codomain = Window::new(lo, hi)?;
    let map = WindowMap::from_images(inst, win, codomain, Truncation::Strict, |x| {
        Ok(Element::basis(shift_image(inst, k, x)?))
    })?;
    let check = check_homomorphism_between(inst, &target, &map, &win);
    Ok(ShiftIsoReport { k, target, map, check })
}

/// Whether `v` commutes with every symbol of `win` (exact brackets).
pub fn is_central_on(inst: &AlgebraInstance, v: &Element, win: &Window) -> bool {
    win.basis(inst)
        .into_iter()
        .all(|x| inst.bracket(&Element::basis(x), v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::spec::parse_spec;

    fn wgab(a: Rational, b: Rational) -> AlgebraInstance {
        AlgebraInstance::preset("wgab", a, b).unwrap()
    }

    #[test]
    fn center_at_origin_is_i0() {
        let g = wgab(int(0), int(0));
        let w = Window::symmetric(8);
        let r = center(&g, &w, 2, CenterMode::Generators).unwrap();
        let i0 = g.sym("I", HalfInt::ZERO).unwrap();
        assert_eq!(r.basis, vec![Element::basis(i0)]);
        assert!(is_central_on(&g, &r.basis[0], &w));
        assert_eq!(r.generators, 5 + 5 + 4);
    }

    #[test]
    fn center_vanishes_elsewhere() {
        for (a, b) in [(ratio(1, 2), int(0)), (int(0), int(1)), (int(1), int(-1))] {
            let g = wgab(a, b);
            let r = center(&g, &Window::symmetric(8), 2, CenterMode::Generators).unwrap();
            assert!(r.basis.is_empty());
            let f = center(&g, &Window::symmetric(6), 2, CenterMode::Full).unwrap();
            assert!(f.basis.is_empty());
        }
        assert!(center(&wgab(int(0), int(0)), &Window::symmetric(8), 1, CenterMode::Full).is_err());
    }

    #[test]
    fn perfect_presets() {
        for (a, b) in [(int(0), int(0)), (ratio(1, 2), ratio(1, 2)), (int(0), int(3))] {
            let r = perfectness_check(&wgab(a, b), &Window::symmetric(8), 2).unwrap();
            assert!(r.passed, "{:?}", r.uncovered);
        }
    }

    #[test]
    fn odd_a_with_b_three_misses_one_y() {
        // [L(m), Y(-1/2 - m)] has coefficient -((a - 1) + (b - 3) m) / 2,
        // which vanishes for every m at (1, 3); [Y, Y] and [L, I] never hit Y.
        let g = wgab(int(1), int(3));
        let r = perfectness_check(&g, &Window::symmetric(8), 2).unwrap();
        assert!(!r.passed);
        assert_eq!(r.uncovered, vec![g.sym("Y", HalfInt::from_doubled(-1)).unwrap()]);
        let g = wgab(int(-1), int(3));
        let r = perfectness_check(&g, &Window::symmetric(8), 2).unwrap();
        assert_eq!(r.uncovered, vec![g.sym("Y", HalfInt::HALF).unwrap()]);
    }

    #[test]
    fn abelian_is_not_perfect() {
        let spec = parse_spec("algebra ab\nfamily X\nfamily Z offset 1/2\n[X(m), X(n)] = 0\n[X(m), Z(n)] = 0\n[Z(m), Z(n)] = 0\n").unwrap();
        let g = AlgebraInstance::new(spec, Default::default()).unwrap();
        let r = perfectness_check(&g, &Window::symmetric(4), 2).unwrap();
        assert!(!r.passed);
        assert_eq!(r.uncovered.len(), 5 + 4);
        assert_eq!(r.span_rank, 0);
    }

    #[test]
    fn shift_by_two_is_compatible() {
        let g = wgab(ratio(1, 3), int(2));
        let r = shift_isomorphism(&g, 2, Window::symmetric(6)).unwrap();
        assert!(r.passed(), "{:?}", r.check.violations);
        assert_eq!(r.target.param(Var::A), ratio(7, 3));
        let id = shift_isomorphism(&g, 0, Window::symmetric(4)).unwrap();
        assert!(id.passed());
        assert!(id.map.is_identity_on(&g, &Window::symmetric(4)));
        assert!(matches!(shift_isomorphism(&g, 1, Window::symmetric(4)), Err(Error::Parameter(_))));
    }

    #[test]
    fn wrong_shift_is_rejected_by_the_check() {
        // shifting I by k/2 instead of k breaks the L-I relation
        let g = wgab(ratio(1, 3), int(2));
        let mut params = g.params().clone();
        *params.get_mut(&Var::A).unwrap() += int(2);
        let target = AlgebraInstance::new(g.spec().clone(), params).unwrap();
        let w = Window::symmetric(5);
        let ifam = g.family("I").unwrap();
        let map = WindowMap::from_images(&g, w, Window::symmetric(8), Truncation::Strict, |x| {
            let mut y = shift_image(&g, 2, x)?;
            if x.family == ifam {
                y.index = x.index - HalfInt::from_int(1);
            }
            Ok(Element::basis(y))
        })
        .unwrap();
        assert!(!check_homomorphism_between(&g, &target, &map, &w).passed());
    }
}
