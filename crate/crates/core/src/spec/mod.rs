//! Algebra descriptions: families of basis symbols and bracket rules with
//! polynomial structure constants, plus the text format that describes them.
//!
//! Every family is indexed by its true degree: a family with offset `1/2`
//! carries half-integer indices. A rule `[F(m), G(n)] = c(m, n, a, b) T(m + n + s)`
//! is stored once per unordered family pair; the reverse orientation is the
//! exact negation with `m` and `n` swapped.

mod check;
mod parser;
mod presets;
mod printer;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{HalfInt, Poly, Var};
use crate::error::{Error, Result};

pub use check::{grading_audit, jacobi_symbolic, GradingReport, JacobiFailure, JacobiReport};
pub use parser::parse_spec;
pub use presets::{preset, preset_source, PRESET_NAMES};
pub use printer::print_spec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: String,
    /// Fractional part of every index in the family: 0 or 1/2.
    pub offset: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleOutput {
    /// Polynomial in `m`, `n` and the declared parameters.
    pub coefficient: Poly,
    pub target: String,
    /// The target index is `m + n + shift`.
    pub shift: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketRule {
    pub left: String,
    pub right: String,
    /// `None` is a declared zero bracket.
    pub output: Option<RuleOutput>,
}

impl BracketRule {
    pub fn is_zero(&self) -> bool {
        self.output.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub parameters: Vec<Var>,
    pub families: Vec<FamilyDecl>,
    pub rules: Vec<BracketRule>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub declared: usize,
    pub declared_zero: usize,
    pub missing: Vec<(String, String)>,
}

impl AlgebraSpec {
    pub fn family_index(&self, name: &str) -> Option<usize> {
        self.families.iter().position(|f| f.name == name)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyDecl> {
        self.families.iter().find(|f| f.name == name)
    }

    /// The stored rule for an unordered pair, with a flag telling whether it
    /// is stored in the requested orientation.
    pub fn rule_for(&self, left: &str, right: &str) -> Option<(&BracketRule, bool)> {
        self.rules.iter().find_map(|r| {
            if r.left == left && r.right == right {
                Some((r, true))
            } else if r.left == right && r.right == left {
                Some((r, false))
            } else {
                None
            }
        })
    }

    /// Which unordered family pairs have a rule, a declared zero, or nothing.
    pub fn coverage(&self) -> Coverage {
        let mut missing = Vec::new();
        for (i, f) in self.families.iter().enumerate() {
            for g in &self.families[i..] {
                if self.rule_for(&f.name, &g.name).is_none() {
                    missing.push((f.name.clone(), g.name.clone()));
                }
            }
        }
        Coverage {
            declared: self.rules.len(),
            declared_zero: self.rules.iter().filter(|r| r.is_zero()).count(),
            missing,
        }
    }

    /// Structural well-formedness: unique families, known references,
    /// declared parameters, one rule per pair, antisymmetric same-family rules.
    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for f in &self.families {
            if !names.insert(f.name.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate family `{}`", f.name)));
            }
            if f.offset != HalfInt::ZERO && f.offset != HalfInt::HALF {
                return Err(Error::InvalidSpec(format!(
                    "family `{}` has offset {}, expected 0 or 1/2",
                    f.name, f.offset
                )));
            }
        }
        for p in &self.parameters {
            if !p.is_parameter() {
                return Err(Error::InvalidSpec(format!(
                    "`{}` cannot be a parameter",
                    p.name()
                )));
            }
        }
        let mut pairs = BTreeSet::new();
        for r in &self.rules {
            for fam in [&r.left, &r.right] {
                if self.family(fam).is_none() {
                    return Err(Error::InvalidSpec(format!("unknown family `{fam}`")));
                }
            }
            let key = if r.left <= r.right {
                (r.left.as_str(), r.right.as_str())
            } else {
                (r.right.as_str(), r.left.as_str())
            };
            if !pairs.insert(key) {
                return Err(Error::InvalidSpec(format!(
                    "duplicate rule for [{}, {}]",
                    r.left, r.right
                )));
            }
            let Some(out) = &r.output else { continue };
            if self.family(&out.target).is_none() {
                return Err(Error::InvalidSpec(format!(
                    "unknown family `{}`",
                    out.target
                )));
            }
            for v in out.coefficient.variables() {
                let ok = matches!(v, Var::M | Var::N) || self.parameters.contains(&v);
                if !ok {
                    return Err(Error::InvalidSpec(format!(
                        "variable `{}` in [{}, {}] is not an index or declared parameter",
                        v.name(),
                        r.left,
                        r.right
                    )));
                }
            }
            if out.coefficient.is_zero() {
                return Err(Error::InvalidSpec(format!(
                    "rule [{}, {}] has a zero coefficient; declare it as `= 0`",
                    r.left, r.right
                )));
            }
            if r.left == r.right {
                let swapped = out.coefficient.swap_vars(Var::M, Var::N);
                if swapped != -&out.coefficient {
                    return Err(Error::InvalidSpec(format!(
                        "coefficient of [{}, {}] is not antisymmetric under m <-> n",
                        r.left, r.right
                    )));
                }
            }
        }
        Ok(())
    }
}
