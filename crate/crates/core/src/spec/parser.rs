//! Line-oriented parser for the algebra description format.
//!
//! ```text
//! # comment
//! algebra wgab
//! params a, b
//! family L offset 0
//! family Y offset 1/2
//! [L(m), L(n)] = (m - n) L(m + n)
//! [I(m), I(n)] = 0
//! ```
//!
//! Statements may also be separated by `;`. Coefficients are built from
//! `+ - * / ^`, integer and `p/q` literals, parentheses, the index variables
//! `m`, `n` and declared parameters. Division is only by nonzero constants.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{AlgebraSpec, BracketRule, FamilyDecl, RuleOutput};
use crate::arith::{HalfInt, Poly, Rational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        line,
        column: col,
        message: message.into(),
    })
}

fn lex_line(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                col,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                line,
                col,
            });
        } else if "[](),=+-*/^;".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
            });
            i += 1;
        } else if c == '−' {
            out.push(Token {
                tok: Tok::Sym('-'),
                line,
                col,
            });
            i += 1;
        } else {
            return err(line, col, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], line: usize, end_col: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            line,
            end_col,
        }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map_or((self.line, self.end_col), |t| (t.line, t.col))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        err(l, c, message)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize, usize)> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s),
                line,
                col,
            }) => {
                self.pos += 1;
                Ok((s.clone(), *line, *col))
            }
            _ => self.fail("expected identifier"),
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.fail("unexpected trailing input")
        }
    }
}

/// Which variables an expression may mention.
struct Scope<'a> {
    allowed: &'a [Var],
}

fn parse_sum(cur: &mut Cursor, scope: &Scope) -> Result<Poly> {
    let mut acc = parse_product(cur, scope)?;
    loop {
        if cur.eat_sym('+') {
            acc = &acc + &parse_product(cur, scope)?;
        } else if cur.eat_sym('-') {
            acc = &acc - &parse_product(cur, scope)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(cur: &mut Cursor, scope: &Scope) -> Result<Poly> {
    let mut acc = parse_unary(cur, scope)?;
    loop {
        if cur.eat_sym('*') {
            acc = &acc * &parse_unary(cur, scope)?;
        } else if matches!(cur.peek(), Some(Token { tok: Tok::Sym('/'), .. })) {
            let (l, c) = cur.here();
            cur.next();
            let d = parse_unary(cur, scope)?;
            match d.as_constant() {
                Some(q) if !q.is_zero() => acc = acc.scale(&q.recip()),
                Some(_) => return err(l, c, "division by zero"),
                None => {
                    return err(
                        l,
                        c,
                        "non-polynomial coefficient: division by a non-constant expression",
                    )
                }
            }
        } else {
            return Ok(acc);
        }
    }
}

fn parse_unary(cur: &mut Cursor, scope: &Scope) -> Result<Poly> {
    if cur.eat_sym('-') {
        return Ok(-parse_unary(cur, scope)?);
    }
    if cur.eat_sym('+') {
        return parse_unary(cur, scope);
    }
    let base = parse_primary(cur, scope)?;
    if cur.eat_sym('^') {
        match cur.next() {
            Some(Token {
                tok: Tok::Num(e), ..
            }) => {
                let e = e.to_u32().filter(|e| *e <= 64);
                match e {
                    Some(e) => Ok(base.pow(e)),
                    None => cur.fail("exponent too large"),
                }
            }
            _ => cur.fail("expected a nonnegative integer exponent"),
        }
    } else {
        Ok(base)
    }
}

fn parse_primary(cur: &mut Cursor, scope: &Scope) -> Result<Poly> {
    let (l, c) = cur.here();
    match cur.next() {
        Some(Token {
            tok: Tok::Num(n), ..
        }) => Ok(Poly::constant(Rational::from_integer(n.clone()))),
        Some(Token {
            tok: Tok::Ident(name),
            ..
        }) => match Var::from_name(name) {
            Some(v) if scope.allowed.contains(&v) => Ok(Poly::var(v)),
            _ => err(l, c, format!("unknown variable `{name}`")),
        },
        Some(Token {
            tok: Tok::Sym('('), ..
        }) => {
            let p = parse_sum(cur, scope)?;
            cur.expect_sym(')')?;
            Ok(p)
        }
        Some(_) => err(l, c, "expected a number, variable or `(`"),
        None => err(l, c, "unexpected end of expression"),
    }
}

fn parse_rational_tokens(cur: &mut Cursor) -> Result<Rational> {
    let p = parse_sum(cur, &Scope { allowed: &[] })?;
    match p.as_constant() {
        Some(q) => Ok(q),
        None => cur.fail("expected a rational constant"),
    }
}

struct Builder {
    name: Option<String>,
    parameters: Option<Vec<Var>>,
    families: Vec<FamilyDecl>,
    rules: Vec<BracketRule>,
}

impl Builder {
    fn family_known(&self, name: &str) -> bool {
        self.families.iter().any(|f| f.name == name)
    }

    fn allowed_vars(&self) -> Vec<Var> {
        let mut v = vec![Var::M, Var::N];
        v.extend(self.parameters.iter().flatten().copied());
        v
    }

    fn statement(&mut self, toks: &[Token], line: usize, end_col: usize) -> Result<()> {
        let mut cur = Cursor::new(toks, line, end_col);
        match cur.peek().map(|t| &t.tok) {
            Some(Tok::Ident(kw)) if kw == "algebra" => {
                cur.next();
                let (name, l, c) = cur.expect_ident()?;
                if self.name.is_some() {
                    return err(l, c, "algebra name declared twice");
                }
                self.name = Some(name);
                cur.expect_end()
            }
            Some(Tok::Ident(kw)) if kw == "params" => {
                cur.next();
                if self.parameters.is_some() {
                    return cur.fail("parameters declared twice");
                }
                let mut params = Vec::new();
                while !cur.at_end() {
                    let (p, l, c) = cur.expect_ident()?;
                    match Var::from_name(&p) {
                        Some(v) if v.is_parameter() => {
                            if params.contains(&v) {
                                return err(l, c, format!("parameter `{p}` repeated"));
                            }
                            params.push(v);
                        }
                        _ => return err(l, c, format!("`{p}` is not a parameter (use a or b)")),
                    }
                    if !cur.eat_sym(',') {
                        break;
                    }
                }
                self.parameters = Some(params);
                cur.expect_end()
            }
            Some(Tok::Ident(kw)) if kw == "family" => {
                cur.next();
                let (name, l, c) = cur.expect_ident()?;
                if self.family_known(&name) {
                    return err(l, c, format!("duplicate family `{name}`"));
                }
                if Var::from_name(&name).is_some() {
                    return err(l, c, format!("`{name}` is reserved for a variable"));
                }
                let mut offset = HalfInt::ZERO;
                if matches!(cur.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == "offset")
                {
                    cur.next();
                    let (ol, oc) = cur.here();
                    let q = parse_rational_tokens(&mut cur)?;
                    offset = match HalfInt::from_rational(&q) {
                        Some(h) if h == HalfInt::ZERO || h == HalfInt::HALF => h,
                        _ => return err(ol, oc, "family offset must be 0 or 1/2"),
                    };
                }
                self.families.push(FamilyDecl { name, offset });
                cur.expect_end()
            }
            Some(Tok::Sym('[')) => self.rule(&mut cur),
            _ => cur.fail("expected `algebra`, `params`, `family` or a bracket rule"),
        }
    }

    fn family_ref(&self, cur: &mut Cursor, var: &str) -> Result<String> {
        let (fam, l, c) = cur.expect_ident()?;
        if !self.family_known(&fam) {
            return err(l, c, format!("unknown family `{fam}`"));
        }
        cur.expect_sym('(')?;
        let (v, vl, vc) = cur.expect_ident()?;
        if v != var {
            return err(vl, vc, format!("expected index variable `{var}`"));
        }
        cur.expect_sym(')')?;
        Ok(fam)
    }

    fn rule(&mut self, cur: &mut Cursor) -> Result<()> {
        let (rl, rc) = cur.here();
        cur.expect_sym('[')?;
        let left = self.family_ref(cur, "m")?;
        cur.expect_sym(',')?;
        let right = self.family_ref(cur, "n")?;
        cur.expect_sym(']')?;
        cur.expect_sym('=')?;
        let duplicate = self.rules.iter().any(|r| {
            (r.left == left && r.right == right) || (r.left == right && r.right == left)
        });
        if duplicate {
            return err(rl, rc, format!("duplicate rule for [{left}, {right}]"));
        }

        let rhs = &cur.toks[cur.pos..];
        if rhs.is_empty() {
            return cur.fail("missing right-hand side");
        }
        // The target is the last `Ident (` at parenthesis depth zero.
        let mut depth = 0i32;
        let mut target_at = None;
        for (i, t) in rhs.iter().enumerate() {
            match &t.tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth -= 1,
                Tok::Ident(_) if depth == 0 => {
                    if matches!(rhs.get(i + 1), Some(Token { tok: Tok::Sym('('), .. })) {
                        target_at = Some(i);
                    }
                }
                _ => {}
            }
        }
        let allowed = self.allowed_vars();
        let scope = Scope { allowed: &allowed };
        let end_col = cur.end_col;

        let Some(ti) = target_at else {
            let mut sub = Cursor::new(rhs, cur.line, end_col);
            let c = parse_sum(&mut sub, &scope)?;
            sub.expect_end()?;
            if c.is_zero() {
                self.rules.push(BracketRule {
                    left,
                    right,
                    output: None,
                });
                return Ok(());
            }
            return err(rl, rc, "nonzero right-hand side without a target family");
        };

        let Tok::Ident(target) = &rhs[ti].tok else {
            unreachable!()
        };
        if !self.family_known(target) {
            return err(rhs[ti].line, rhs[ti].col, format!("unknown family `{target}`"));
        }
        let mut coef_toks = &rhs[..ti];
        if let Some(Token {
            tok: Tok::Sym('*'), ..
        }) = coef_toks.last()
        {
            coef_toks = &coef_toks[..coef_toks.len() - 1];
        }
        let coefficient = if coef_toks.is_empty() {
            Poly::one()
        } else if matches!(coef_toks, [Token { tok: Tok::Sym('-'), .. }]) {
            -Poly::one()
        } else {
            let mut sub = Cursor::new(coef_toks, cur.line, rhs[ti].col);
            let c = parse_sum(&mut sub, &scope)?;
            sub.expect_end()?;
            c
        };

        let mut sub = Cursor::new(&rhs[ti + 1..], cur.line, end_col);
        sub.expect_sym('(')?;
        let (il, ic) = sub.here();
        let index = parse_sum(
            &mut sub,
            &Scope {
                allowed: &[Var::M, Var::N],
            },
        )?;
        sub.expect_sym(')')?;
        sub.expect_end()?;
        let (shift, rest) = index.split_constant();
        if rest != &Poly::var(Var::M) + &Poly::var(Var::N) {
            return err(il, ic, "target index must have the form m + n + constant");
        }
        let shift = match HalfInt::from_rational(&shift) {
            Some(s) => s,
            None => return err(il, ic, "target index shift must be a half-integer"),
        };

        let output = if coefficient.is_zero() {
            None
        } else {
            Some(RuleOutput {
                coefficient,
                target: target.clone(),
                shift,
            })
        };
        if left == right {
            if let Some(out) = &output {
                if out.coefficient.swap_vars(Var::M, Var::N) != -&out.coefficient {
                    return err(
                        rl,
                        rc,
                        format!("coefficient of [{left}, {right}] must be antisymmetric in m, n"),
                    );
                }
            }
        }
        self.rules.push(BracketRule {
            left,
            right,
            output,
        });
        Ok(())
    }
}

/// Parses the text format into a validated [`AlgebraSpec`].
pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    let mut b = Builder {
        name: None,
        parameters: None,
        families: Vec::new(),
        rules: Vec::new(),
    };
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let toks = lex_line(line, line_no)?;
        let end_col = line.chars().count() + 1;
        for stmt in toks.split(|t| t.tok == Tok::Sym(';')) {
            if !stmt.is_empty() {
                b.statement(stmt, line_no, end_col)?;
            }
        }
    }
    let spec = AlgebraSpec {
        name: b.name.unwrap_or_else(|| "unnamed".to_string()),
        parameters: b.parameters.unwrap_or_default(),
        families: b.families,
        rules: b.rules,
    };
    spec.validate()?;
    Ok(spec)
}
