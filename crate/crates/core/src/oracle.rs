//! Slow, separately written reference computations.
//!
//! Nothing here uses the description parser or the solvers. Brackets are
//! typed in directly in the integer-indexed form (`Y_{n+1/2}` stored as
//! `n`) and linear algebra is dense elimination. Only the rational type is
//! shared.

use num_traits::{One, Zero};

use crate::arith::Rational;

/// Basis symbol in integer-indexed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    L(i64),
    I(i64),
    /// `Y(n)` is `Y_{n+1/2}`.
    Y(i64),
}

impl Sym {
    /// Twice the degree.
    pub fn deg2(self) -> i64 {
        match self {
            Sym::L(m) | Sym::I(m) => 2 * m,
            Sym::Y(n) => 2 * n + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAlgebra {
    Witt,
    Wgab { a: Rational, b: Rational },
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl OracleAlgebra {
    pub fn wgab(a: Rational, b: Rational) -> Self {
        OracleAlgebra::Wgab { a, b }
    }

    /// All symbols with doubled degree in `[lo2, hi2]`.
    pub fn symbols(&self, lo2: i64, hi2: i64) -> Vec<Sym> {
        let mut out = Vec::new();
        for d in lo2..=hi2 {
            out.extend(self.symbols_at(d));
        }
        out
    }

    pub fn symbols_at(&self, d2: i64) -> Vec<Sym> {
        match (self, d2.rem_euclid(2)) {
            (_, 0) if matches!(self, OracleAlgebra::Witt) => vec![Sym::L(d2 / 2)],
            (_, 0) => vec![Sym::L(d2 / 2), Sym::I(d2 / 2)],
            (OracleAlgebra::Witt, _) => vec![],
            _ => vec![Sym::Y((d2 - 1) / 2)],
        }
    }

    /// `[x, y]` as a single term, or `None` when zero.
    pub fn bracket(&self, x: Sym, y: Sym) -> Option<(Sym, Rational)> {
        let (a, b) = match self {
            OracleAlgebra::Witt => (Rational::zero(), Rational::zero()),
            OracleAlgebra::Wgab { a, b } => (a.clone(), b.clone()),
        };
        let two = q(2);
        let (s, c) = match (x, y) {
            (Sym::L(m), Sym::L(n)) => (Sym::L(m + n), q(m - n)),
            (Sym::L(m), Sym::I(n)) => (Sym::I(m + n), -(q(n) + &a + &b * q(m))),
            (Sym::I(n), Sym::L(m)) => (Sym::I(m + n), q(n) + &a + &b * q(m)),
            (Sym::L(m), Sym::Y(n)) => (Sym::Y(m + n), -(q(n) + (q(1 - m) + &a + &b * q(m)) / &two)),
            (Sym::Y(n), Sym::L(m)) => (Sym::Y(m + n), q(n) + (q(1 - m) + &a + &b * q(m)) / &two),
            (Sym::Y(m), Sym::Y(n)) => (Sym::I(m + n + 1), q(m - n)),
            _ => return None,
        };
        if c.is_zero() {
            None
        } else {
            Some((s, c))
        }
    }
}

/// Dense echelon form built one row at a time.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    fn add(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // keep earlier rows reduced at the new pivot
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn nullspace(&self, cols: usize) -> Vec<Vec<Rational>> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); cols];
                v[free] = Rational::one();
                for (p, r) in &self.rows {
                    v[*p] = -r[free].clone();
                }
                v
            })
            .collect()
    }
}

/// Outer derivation dimension in doubled degree `d2`.
///
/// Unknowns are the coefficients of `D(x)` for window symbols `x`; every
/// unordered window pair whose bracket and shifted bracket stay in the
/// window gives a Leibniz equation. Solutions and inner derivations are
/// cut down to symbols at least `margin` inside the window and the quotient
/// dimension is returned.
pub fn oracle_h1(alg: &OracleAlgebra, d2: i64, lo: i64, hi: i64, margin: i64) -> usize {
    let (lo2, hi2) = (2 * lo, 2 * hi);
    let in_win = |e2: i64| lo2 <= e2 && e2 <= hi2;
    let syms = alg.symbols(lo2, hi2);
    let mut vars: Vec<(Sym, Sym)> = Vec::new();
    for &x in &syms {
        for t in alg.symbols_at(x.deg2() + d2) {
            vars.push((x, t));
        }
    }
    let var = |x: Sym, t: Sym| vars.iter().position(|p| *p == (x, t)).expect("variable");
    let n = vars.len();

    let mut system = Echelon::new();
    for (i, &x) in syms.iter().enumerate() {
        for &y in &syms[i + 1..] {
            let s2 = x.deg2() + y.deg2();
            if !in_win(s2) || !in_win(s2 + d2) {
                continue;
            }
            // D[x,y] - [Dx,y] - [x,Dy], one equation per output symbol
            for out in alg.symbols_at(s2 + d2) {
                let mut row = vec![Rational::zero(); n];
                if let Some((z, c)) = alg.bracket(x, y) {
                    row[var(z, out)] += c;
                }
                for t in alg.symbols_at(x.deg2() + d2) {
                    if let Some((w, c)) = alg.bracket(t, y) {
                        if w == out {
                            row[var(x, t)] -= c;
                        }
                    }
                }
                for t in alg.symbols_at(y.deg2() + d2) {
                    if let Some((w, c)) = alg.bracket(x, t) {
                        if w == out {
                            row[var(y, t)] -= c;
                        }
                    }
                }
                system.add(row);
            }
        }
    }

    let inner_cols: Vec<usize> = (0..n)
        .filter(|&i| {
            let e2 = vars[i].0.deg2();
            lo2 + 2 * margin <= e2 && e2 <= hi2 - 2 * margin
        })
        .collect();
    let restrict = |v: &[Rational]| inner_cols.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();

    let mut inner = Echelon::new();
    for z in alg.symbols_at(d2) {
        let mut v = vec![Rational::zero(); n];
        for (i, (x, t)) in vars.iter().enumerate() {
            if let Some((w, c)) = alg.bracket(z, *x) {
                if w == *t {
                    v[i] = c;
                }
            }
        }
        inner.add(restrict(&v));
    }
    let inner_rank = inner.rank();
    let mut both = inner;
    for v in system.nullspace(n) {
        both.add(restrict(&v));
    }
    both.rank() - inner_rank
}

type Dense = Vec<Vec<Rational>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn ad(alg: &OracleAlgebra, z: Sym, syms: &[Sym]) -> Dense {
    let n = syms.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (j, &x) in syms.iter().enumerate() {
        if let Some((w, c)) = alg.bracket(z, x) {
            if let Some(i) = syms.iter().position(|s| *s == w) {
                m[i][j] = c;
            }
        }
    }
    m
}

fn exp(m: &Dense, coef: &Rational) -> Dense {
    let n = m.len();
    let mut out = identity(n);
    let mut power = identity(n);
    let mut scale = Rational::one();
    for k in 1..=n {
        power = matmul(&power, m);
        scale = scale * coef / q(k as i64);
        if power.iter().all(|r| r.iter().all(Zero::is_zero)) {
            break;
        }
        for i in 0..n {
            for j in 0..n {
                if !power[i][j].is_zero() {
                    out[i][j] += &power[i][j] * &scale;
                }
            }
        }
    }
    out
}

/// The group commutator of `exp(α ad Y_{j+1/2})` and `exp(β ad Y_{i+1/2})`
/// on the symbols of degree in `[-half_width, half_width]`, matched against
/// `exp(γ ad I_{i+j+1}) = 1 + γ ad I_{i+j+1}`. Only columns far enough from
/// the edge that no truncated path can reach them are compared. Returns the
/// fitted `γ`, or `None` when no value fits.
pub fn oracle_exp_commutator(
    alg: &OracleAlgebra,
    alpha: &Rational,
    beta: &Rational,
    i: i64,
    j: i64,
    half_width: i64,
) -> Option<Rational> {
    let syms = alg.symbols(-2 * half_width, 2 * half_width);
    let n = syms.len();
    let (yj, yi) = (ad(alg, Sym::Y(j), &syms), ad(alg, Sym::Y(i), &syms));
    let c = [
        exp(&yj, alpha),
        exp(&yi, beta),
        exp(&yj, &-alpha.clone()),
        exp(&yi, &-beta.clone()),
    ]
    .iter()
    .fold(identity(n), |acc, m| matmul(&acc, m));
    let target = ad(alg, Sym::I(i + j + 1), &syms);

    // ad Y moves L -> Y -> I -> 0, so a path through the product uses at
    // most two nonzero ad Y steps
    let shifts = [2 * i + 1, 2 * j + 1];
    let up = 2 * shifts.iter().copied().max().unwrap().max(0);
    let down = 2 * shifts.iter().copied().min().unwrap().min(0);
    let exact: Vec<usize> = (0..n)
        .filter(|&k| {
            let d = syms[k].deg2();
            d + down >= -2 * half_width && d + up <= 2 * half_width
        })
        .collect();
    if exact.is_empty() {
        return None;
    }
    let mut gamma: Option<Rational> = None;
    for &col in &exact {
        for row in 0..n {
            let diff = &c[row][col] - if row == col { Rational::one() } else { Rational::zero() };
            let t = &target[row][col];
            if t.is_zero() {
                if !diff.is_zero() {
                    return None;
                }
                continue;
            }
            let g = diff / t;
            match &gamma {
                None => gamma = Some(g),
                Some(prev) if *prev != g => return None,
                _ => {}
            }
        }
    }
    Some(gamma.unwrap_or_else(Rational::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn brackets_are_antisymmetric() {
        let g = OracleAlgebra::wgab(r(2, 3), r(5, 1));
        let syms = g.symbols(-6, 6);
        for &x in &syms {
            for &y in &syms {
                let xy = g.bracket(x, y);
                let yx = g.bracket(y, x).map(|(s, c)| (s, -c));
                assert_eq!(xy, yx);
            }
        }
    }

    #[test]
    fn witt_has_no_outer_degree_zero() {
        assert_eq!(oracle_h1(&OracleAlgebra::Witt, 0, -6, 6, 2), 0);
    }

    #[test]
    fn known_small_values() {
        assert_eq!(oracle_h1(&OracleAlgebra::wgab(r(0, 1), r(1, 1)), 0, -8, 8, 3), 2);
        assert_eq!(oracle_h1(&OracleAlgebra::wgab(r(2, 3), r(5, 1)), 0, -8, 8, 3), 1);
    }

    #[test]
    fn commutator_gamma() {
        let g = OracleAlgebra::wgab(r(1, 2), r(0, 1));
        assert_eq!(oracle_exp_commutator(&g, &r(1, 1), &r(1, 1), 0, 2, 16), Some(r(2, 1)));
        assert_eq!(oracle_exp_commutator(&g, &r(1, 1), &r(1, 1), 3, 3, 12), Some(r(0, 1)));
    }
}
