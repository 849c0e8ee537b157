//! Algebras specialized at rational parameters: basis symbols, elements,
//! brackets, truncation windows and matrices of linear maps on them.

mod element;
mod jacobi;
mod text;
mod window;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{HalfInt, Poly, Rational, Var};
use crate::error::{Error, Result};
use crate::spec::{preset, AlgebraSpec};

pub use element::{BasisIndex, Element};
pub use jacobi::{jacobi_window, JacobiViolation, JacobiWindowReport};
pub use text::{format_basis, format_element, parse_basis, parse_bracket_expr, parse_element};
pub use window::{ad_matrix, ad_matrix_into, Basis, MapComparison, Truncation, Window, WindowMap};

#[derive(Clone, Debug)]
struct CompiledRule {
    /// Polynomial in `m` (left index) and `n` (right index) only.
    coefficient: Poly,
    target: usize,
    shift: HalfInt,
}

/// A spec with every parameter fixed to a rational value.
#[derive(Clone, Debug)]
pub struct AlgebraInstance {
    spec: AlgebraSpec,
    params: BTreeMap<Var, Rational>,
    table: Vec<Vec<Option<CompiledRule>>>,
}

impl AlgebraInstance {
    /// Fixes the parameters. Every declared parameter must be given and no
    /// others.
    pub fn new(spec: AlgebraSpec, params: BTreeMap<Var, Rational>) -> Result<Self> {
        spec.validate()?;
        for p in &spec.parameters {
            if !params.contains_key(p) {
                return Err(Error::Parameter(format!("missing value for `{}`", p.name())));
            }
        }
        for p in params.keys() {
            if !spec.parameters.contains(p) {
                return Err(Error::Parameter(format!(
                    "`{}` is not a parameter of `{}`",
                    p.name(),
                    spec.name
                )));
            }
        }
        let nf = spec.families.len();
        let mut table = vec![vec![None; nf]; nf];
        for r in &spec.rules {
            let Some(out) = &r.output else { continue };
            let l = spec.family_index(&r.left).expect("validated");
            let rt = spec.family_index(&r.right).expect("validated");
            let target = spec.family_index(&out.target).expect("validated");
            let coefficient = out.coefficient.partial_eval(&params);
            if l != rt {
                table[rt][l] = Some(CompiledRule {
                    coefficient: -coefficient.swap_vars(Var::M, Var::N),
                    target,
                    shift: out.shift,
                });
            }
            table[l][rt] = Some(CompiledRule {
                coefficient,
                target,
                shift: out.shift,
            });
        }
        Ok(AlgebraInstance {
            spec,
            params,
            table,
        })
    }

    /// Assigns `a` and `b` to whichever of them the description declares.
    pub fn with_ab(spec: AlgebraSpec, a: Rational, b: Rational) -> Result<Self> {
        let mut params = BTreeMap::new();
        if spec.parameters.contains(&Var::A) {
            params.insert(Var::A, a);
        }
        if spec.parameters.contains(&Var::B) {
            params.insert(Var::B, b);
        }
        AlgebraInstance::new(spec, params)
    }

    pub fn preset(name: &str, a: Rational, b: Rational) -> Result<Self> {
        AlgebraInstance::with_ab(preset(name)?, a, b)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn params(&self) -> &BTreeMap<Var, Rational> {
        &self.params
    }

    pub fn param(&self, v: Var) -> Rational {
        self.params.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_families(&self) -> usize {
        self.spec.families.len()
    }

    pub fn family_name(&self, f: usize) -> &str {
        &self.spec.families[f].name
    }

    pub fn family_offset(&self, f: usize) -> HalfInt {
        self.spec.families[f].offset
    }

    pub fn family(&self, name: &str) -> Result<usize> {
        self.spec
            .family_index(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Basis symbol of a family at a degree, if the degree has the right class.
    pub fn basis_index(&self, family: usize, index: HalfInt) -> Result<BasisIndex> {
        if index.frac() != self.family_offset(family) {
            return Err(Error::Parse(format!(
                "{} carries indices in {} + Z, got {}",
                self.family_name(family),
                self.family_offset(family),
                index
            )));
        }
        Ok(BasisIndex { family, index })
    }

    /// Basis symbol by family name.
    pub fn sym(&self, name: &str, index: HalfInt) -> Result<BasisIndex> {
        self.basis_index(self.family(name)?, index)
    }

    /// All basis symbols of one degree, in family order.
    pub fn slice(&self, degree: HalfInt) -> Vec<BasisIndex> {
        (0..self.num_families())
            .filter(|&f| self.family_offset(f) == degree.frac())
            .map(|family| BasisIndex {
                family,
                index: degree,
            })
            .collect()
    }

    /// Overwrites the coefficient of one family pair (both orientations).
    /// Used to build deliberately inconsistent instances.
    pub fn patch_coefficient(&mut self, left: &str, right: &str, coefficient: Poly) -> Result<()> {
        let l = self.family(left)?;
        let r = self.family(right)?;
        let (target, shift) = match &self.table[l][r] {
            Some(c) => (c.target, c.shift),
            None => {
                return Err(Error::InvalidSpec(format!(
                    "[{left}, {right}] is zero and has no target"
                )))
            }
        };
        let coefficient = coefficient.partial_eval(&self.params);
        self.table[r][l] = Some(CompiledRule {
            coefficient: -coefficient.swap_vars(Var::M, Var::N),
            target,
            shift,
        });
        self.table[l][r] = Some(CompiledRule {
            coefficient,
            target,
            shift,
        });
        Ok(())
    }

    /// Bracket of two basis symbols: a single symbol with a nonzero
    /// coefficient, or `None`.
    pub fn bracket_basis(&self, x: BasisIndex, y: BasisIndex) -> Option<(BasisIndex, Rational)> {
        let rule = self.table[x.family][y.family].as_ref()?;
        let c = eval_mn(&rule.coefficient, &x.index.to_rational(), &y.index.to_rational());
        if c.is_zero() {
            return None;
        }
        Some((
            BasisIndex {
                family: rule.target,
                index: x.index + y.index + rule.shift,
            },
            c,
        ))
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (bx, cx) in x.terms() {
            for (by, cy) in y.terms() {
                if let Some((t, c)) = self.bracket_basis(*bx, *by) {
                    out.add_term(t, c * cx * cy);
                }
            }
        }
        out
    }
}

fn eval_mn(p: &Poly, m: &Rational, n: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (mono, c) in p.terms() {
        let mut t = c.clone();
        for _ in 0..mono.exponent(Var::M) {
            t *= m;
        }
        for _ in 0..mono.exponent(Var::N) {
            t *= n;
        }
        acc += t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn h(d: i64) -> HalfInt {
        HalfInt::from_doubled(d)
    }

    #[test]
    fn parameter_checks() {
        let spec = preset("wgab").unwrap();
        let only_a = BTreeMap::from([(Var::A, int(0))]);
        assert!(matches!(
            AlgebraInstance::new(spec.clone(), only_a),
            Err(Error::Parameter(_))
        ));
        let witt = preset("witt").unwrap();
        let extra = BTreeMap::from([(Var::A, int(0))]);
        assert!(AlgebraInstance::new(witt, extra).is_err());
        assert!(AlgebraInstance::with_ab(spec, int(1), int(-1)).is_ok());
    }

    #[test]
    fn li_coefficient_at_origin_is_minus_n() {
        let g = AlgebraInstance::preset("wgab", int(0), int(0)).unwrap();
        let l = g.family("L").unwrap();
        let i = g.family("I").unwrap();
        for (m, n) in [(2, 3), (-1, 4), (5, 0)] {
            let got = g.bracket_basis(
                BasisIndex { family: l, index: HalfInt::from_int(m) },
                BasisIndex { family: i, index: HalfInt::from_int(n) },
            );
            let expected = (-n != 0).then(|| (BasisIndex { family: i, index: HalfInt::from_int(m + n) }, int(-n)));
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn bracket_examples() {
        let g = AlgebraInstance::preset("wgab", int(0), int(0)).unwrap();
        let e = |name: &str, d: i64| Element::basis(g.sym(name, h(d)).unwrap());
        assert_eq!(g.bracket(&e("L", 4), &e("L", 6)), e("L", 10).scale(&int(-1)));
        assert_eq!(g.bracket(&e("Y", 3), &e("Y", 1)), e("I", 4));
        assert!(g.bracket(&e("I", 6), &e("Y", 5)).is_zero());
        assert!(g.bracket(&e("L", 0), &e("I", 0)).is_zero());
        // reverse orientation is the negation
        assert_eq!(g.bracket(&e("I", 2), &e("L", 2)), g.bracket(&e("L", 2), &e("I", 2)).scale(&int(-1)));
        let g = AlgebraInstance::preset("wgab", ratio(1, 2), int(0)).unwrap();
        let e = |name: &str, d: i64| Element::basis(g.sym(name, h(d)).unwrap());
        // [I_0, L_m] = (a + b m) I_m
        assert_eq!(g.bracket(&e("I", 0), &e("L", 6)), e("I", 6).scale(&ratio(1, 2)));
    }

    #[test]
    fn wrong_index_class_rejected() {
        let g = AlgebraInstance::preset("wgab", int(0), int(0)).unwrap();
        assert!(g.sym("Y", h(2)).is_err());
        assert!(g.sym("L", h(1)).is_err());
        assert!(g.sym("Q", h(0)).is_err());
    }
}
