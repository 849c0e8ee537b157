//! Element text: `coef * Fam(index)` terms joined by `+` / `-`, e.g.
//! `2*L(3) - 1/2*Y(3/2) + I(0)`.

use num_traits::{One, Signed};

use super::{AlgebraInstance, BasisIndex, Element};
use crate::arith::{fmt_rational, parse_rational, HalfInt, Rational};
use crate::error::{Error, Result};

pub fn format_basis(inst: &AlgebraInstance, b: &BasisIndex) -> String {
    format!("{}({})", inst.family_name(b.family), b.index)
}

pub fn format_element(inst: &AlgebraInstance, e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (b, c)) in e.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&fmt_rational(&mag));
            out.push('*');
        }
        out.push_str(&format_basis(inst, b));
    }
    out
}

pub fn parse_basis(inst: &AlgebraInstance, text: &str) -> Result<BasisIndex> {
    let t = text.trim();
    let bad = || Error::Parse(format!("expected Fam(index), got `{t}`"));
    let open = t.find('(').ok_or_else(bad)?;
    let inner = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let name = t[..open].trim();
    let index: HalfInt = inner.trim().parse()?;
    inst.sym(name, index)
}

fn parse_term(inst: &AlgebraInstance, text: &str) -> Result<(BasisIndex, Rational)> {
    let t = text.trim();
    let Some(open) = t.find('(') else {
        return Err(Error::Parse(format!("expected a basis symbol in `{t}`")));
    };
    let head = t[..open].trim();
    let name_start = head
        .rfind(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .map_or(0, |i| i + 1);
    let (coef_part, name) = head.split_at(name_start);
    let coef_part = coef_part.trim().trim_end_matches('*').trim();
    let coef = if coef_part.is_empty() {
        Rational::one()
    } else {
        parse_rational(coef_part)?
    };
    let b = parse_basis(inst, &format!("{name}{}", &t[open..]))?;
    Ok((b, coef))
}

pub fn parse_element(inst: &AlgebraInstance, text: &str) -> Result<Element> {
    let t = text.trim().replace('−', "-");
    if t.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    if t == "0" {
        return Ok(Element::zero());
    }
    // Split on + and - outside parentheses, keeping the sign with its term.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    let mut seen_symbol = false;
    for c in t.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth -= 1;
                current.push(c);
                seen_symbol = true;
            }
            '+' | '-' if depth == 0 && seen_symbol => {
                terms.push((negative, std::mem::take(&mut current)));
                negative = c == '-';
                seen_symbol = false;
            }
            '-' if depth == 0 && current.trim().is_empty() => negative = !negative,
            _ => current.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{t}`")));
    }
    terms.push((negative, current));
    let mut e = Element::zero();
    for (neg, term) in terms {
        let (b, c) = parse_term(inst, &term)?;
        e.add_term(b, if neg { -c } else { c });
    }
    Ok(e)
}

/// Parses `[x, y]` into its two elements.
pub fn parse_bracket_expr(inst: &AlgebraInstance, text: &str) -> Result<(Element, Element)> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected `[x, y]`, got `{t}`")))?;
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return Err(Error::Parse("too many commas in bracket".into()));
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    let i = split.ok_or_else(|| Error::Parse("bracket needs two arguments".into()))?;
    Ok((
        parse_element(inst, &inner[..i])?,
        parse_element(inst, &inner[i + 1..])?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn g() -> AlgebraInstance {
        AlgebraInstance::preset("wgab", int(0), int(0)).unwrap()
    }

    #[test]
    fn round_trip() {
        let g = g();
        for text in ["2*L(3) + I(0) - 1/2*Y(3/2)", "-L(-2)", "0", "Y(-1/2) - 3*Y(1/2)"] {
            let e = parse_element(&g, text).unwrap();
            assert_eq!(format_element(&g, &e), text);
        }
    }

    #[test]
    fn tolerant_spacing_and_signs() {
        let g = g();
        let e = parse_element(&g, " 3 * L(2)+-1/3 I(-1) ").unwrap();
        assert_eq!(e.coefficient(&g.sym("L", HalfInt::from_int(2)).unwrap()), int(3));
        assert_eq!(e.coefficient(&g.sym("I", HalfInt::from_int(-1)).unwrap()), ratio(-1, 3));
    }

    #[test]
    fn bracket_expression() {
        let g = g();
        let (x, y) = parse_bracket_expr(&g, "[Y(3/2), Y(1/2)]").unwrap();
        assert_eq!(format_element(&g, &g.bracket(&x, &y)), "I(2)");
        assert!(parse_bracket_expr(&g, "Y(3/2), Y(1/2)").is_err());
        assert!(parse_bracket_expr(&g, "[Y(3/2)]").is_err());
    }

    #[test]
    fn errors() {
        let g = g();
        assert!(parse_element(&g, "Z(1)").is_err());
        assert!(parse_element(&g, "Y(1)").is_err());
        assert!(parse_element(&g, "0.5*L(1)").is_err());
        assert!(parse_element(&g, "L(1").is_err());
        assert!(parse_element(&g, "").is_err());
    }
}
