use std::collections::BTreeMap;

use serde::Serialize;

use super::AlgebraSpec;
use crate::arith::{HalfInt, Poly, Var};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingViolation {
    pub left: String,
    pub right: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub passed: bool,
    pub rules_checked: usize,
    pub violations: Vec<GradingViolation>,
}

/// Checks that every rule maps degrees `m`, `n` to degree `m + n` and that the
/// half-integer classes of the families are consistent.
pub fn grading_audit(spec: &AlgebraSpec) -> GradingReport {
    let mut violations = Vec::new();
    for r in &spec.rules {
        let Some(out) = &r.output else { continue };
        let mut push = |message: String| {
            violations.push(GradingViolation {
                left: r.left.clone(),
                right: r.right.clone(),
                message,
            })
        };
        if out.shift != HalfInt::ZERO {
            push(format!(
                "target index is m + n + {}, so the degree is off by {}",
                out.shift, out.shift
            ));
            continue;
        }
        let offset = |name: &str| spec.family(name).map(|f| f.offset);
        if let (Some(l), Some(rt), Some(t)) =
            (offset(&r.left), offset(&r.right), offset(&out.target))
        {
            if (l + rt).frac() != t {
                push(format!(
                    "indices of {} have class {}, but {} + {} has class {}",
                    out.target,
                    t,
                    r.left,
                    r.right,
                    (l + rt).frac()
                ));
            }
        }
    }
    GradingReport {
        passed: violations.is_empty(),
        rules_checked: spec.rules.len(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiFailure {
    pub triple: [String; 3],
    pub target: String,
    /// Index of the target basis symbol, in the variables `m`, `n`, `k`.
    pub index: Poly,
    pub residual: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub passed: bool,
    pub triples_checked: usize,
    pub failures: Vec<JacobiFailure>,
}

/// A symbolic element: (family, index polynomial) -> coefficient polynomial.
type SymElem = BTreeMap<(usize, Poly), Poly>;

fn sym_bracket(spec: &AlgebraSpec, x: &SymElem, y: &SymElem) -> SymElem {
    let mut out = SymElem::new();
    for ((fx, ix), cx) in x {
        for ((fy, iy), cy) in y {
            let lname = &spec.families[*fx].name;
            let rname = &spec.families[*fy].name;
            let Some((rule, forward)) = spec.rule_for(lname, rname) else {
                continue;
            };
            let Some(o) = &rule.output else { continue };
            let Some(target) = spec.family_index(&o.target) else {
                continue;
            };
            let (p, q) = if forward { (ix, iy) } else { (iy, ix) };
            let subs = BTreeMap::from([(Var::M, p.clone()), (Var::N, q.clone())]);
            let mut coef = o.coefficient.substitute(&subs);
            if !forward {
                coef = -coef;
            }
            let index = &(ix + iy) + &Poly::constant(o.shift.to_rational());
            let term = &(cx * cy) * &coef;
            let slot = out.entry((target, index)).or_default();
            *slot = &*slot + &term;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn basis(f: usize, v: Var) -> SymElem {
    SymElem::from([((f, Poly::var(v)), Poly::one())])
}

/// Expands the cyclic Jacobi sum for every ordered triple of families with
/// symbolic indices `m`, `n`, `k` and symbolic parameters.
///
/// Works on any structurally complete spec, validated or not, so that
/// deliberately broken specs can be inspected.
pub fn jacobi_symbolic(spec: &AlgebraSpec) -> JacobiReport {
    let nf = spec.families.len();
    let mut failures = Vec::new();
    let mut triples = 0;
    for f in 0..nf {
        for g in 0..nf {
            for h in 0..nf {
                triples += 1;
                let (x, y, z) = (basis(f, Var::M), basis(g, Var::N), basis(h, Var::K));
                let mut total = SymElem::new();
                for part in [
                    sym_bracket(spec, &sym_bracket(spec, &x, &y), &z),
                    sym_bracket(spec, &sym_bracket(spec, &y, &z), &x),
                    sym_bracket(spec, &sym_bracket(spec, &z, &x), &y),
                ] {
                    for (key, c) in part {
                        let slot = total.entry(key).or_default();
                        *slot = &*slot + &c;
                    }
                }
                for ((target, index), residual) in total {
                    if residual.is_zero() {
                        continue;
                    }
                    failures.push(JacobiFailure {
                        triple: [
                            spec.families[f].name.clone(),
                            spec.families[g].name.clone(),
                            spec.families[h].name.clone(),
                        ],
                        target: spec.families[target].name.clone(),
                        index,
                        residual,
                    });
                }
            }
        }
    }
    JacobiReport {
        passed: failures.is_empty(),
        triples_checked: triples,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{parse_spec, preset};

    #[test]
    fn presets_pass() {
        for name in crate::spec::PRESET_NAMES {
            let s = preset(name).unwrap();
            assert!(grading_audit(&s).passed, "{name}");
            let j = jacobi_symbolic(&s);
            assert!(j.passed, "{name}: {:?}", j.failures);
        }
    }

    #[test]
    fn symmetric_yy_coefficient_fails_on_lyy() {
        let mut s = preset("wgab").unwrap();
        let rule = s
            .rules
            .iter_mut()
            .find(|r| r.left == "Y" && r.right == "Y")
            .unwrap();
        rule.output.as_mut().unwrap().coefficient = &Poly::var(Var::M) + &Poly::var(Var::N);
        let j = jacobi_symbolic(&s);
        assert!(!j.passed);
        let f = j
            .failures
            .iter()
            .find(|f| f.triple == ["L".to_string(), "Y".into(), "Y".into()])
            .expect("L,Y,Y triple should fail");
        assert_eq!(f.target, "I");
        assert!(!f.residual.is_zero());
    }

    #[test]
    fn shifted_target_violates_grading() {
        let s = parse_spec("family L\n[L(m), L(n)] = (m - n) L(m + n + 1)\n").unwrap();
        let g = grading_audit(&s);
        assert!(!g.passed);
        assert_eq!(g.violations.len(), 1);
    }

    #[test]
    fn wrong_half_class_violates_grading() {
        let s = parse_spec(
            "family L\nfamily Y offset 1/2\n[L(m), Y(n)] = L(m + n)\n[L(m), L(n)] = (m - n) L(m + n)\n",
        )
        .unwrap();
        assert!(!grading_audit(&s).passed);
    }
}
