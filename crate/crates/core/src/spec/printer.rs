use std::fmt::Write;

use num_traits::Signed;

use super::AlgebraSpec;
use crate::arith::{fmt_rational, HalfInt, Poly};

fn coefficient_text(c: &Poly) -> Option<String> {
    if c == &Poly::one() {
        None
    } else if c == &-Poly::one() {
        Some("-".to_string())
    } else {
        Some(format!("({c}) "))
    }
}

fn index_text(shift: HalfInt) -> String {
    let q = shift.to_rational();
    if shift == HalfInt::ZERO {
        "m + n".to_string()
    } else if q.is_negative() {
        format!("m + n - {}", fmt_rational(&-q))
    } else {
        format!("m + n + {}", fmt_rational(&q))
    }
}

/// Canonical source text; parsing it gives back an equal spec.
pub fn print_spec(spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    writeln!(out, "algebra {}", spec.name).unwrap();
    if !spec.parameters.is_empty() {
        let names: Vec<_> = spec.parameters.iter().map(|v| v.name()).collect();
        writeln!(out, "params {}", names.join(", ")).unwrap();
    }
    for f in &spec.families {
        if f.offset == HalfInt::ZERO {
            writeln!(out, "family {}", f.name).unwrap();
        } else {
            writeln!(out, "family {} offset {}", f.name, f.offset).unwrap();
        }
    }
    for r in &spec.rules {
        write!(out, "[{}(m), {}(n)] = ", r.left, r.right).unwrap();
        match &r.output {
            None => writeln!(out, "0").unwrap(),
            Some(o) => {
                let coef = coefficient_text(&o.coefficient).unwrap_or_default();
                writeln!(out, "{coef}{}({})", o.target, index_text(o.shift)).unwrap();
            }
        }
    }
    out
}
