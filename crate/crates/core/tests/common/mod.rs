//! Shared fixtures: the oracle-pinned values and the parameter points they cover.

#![allow(dead_code)]

use std::path::PathBuf;

use graded_lie::arith::{fmt_rational, parse_rational, HalfInt, Rational};
use graded_lie::oracle::{oracle_exp_commutator, oracle_h1, OracleAlgebra};
use serde_json::{json, Value};

pub fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn pinned_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/oracle_pinned.json")
}

/// Degree-0 points with expected dimensions fixed by the classification.
pub const DEGREE_ZERO_POINTS: [(&str, &str, usize); 6] = [
    ("0", "0", 3),
    ("0", "1", 2),
    ("0", "2", 2),
    ("1/2", "1/2", 1),
    ("1", "0", 1),
    ("2/3", "5", 1),
];

/// Points whose nonzero degrees are swept for vanishing.
pub const VANISHING_POINTS: [(&str, &str); 4] = [("2/3", "5"), ("0", "1"), ("1/2", "0"), ("1", "-1")];

/// Doubled degrees ±1/2, ±1, ±3/2, ±2.
pub const NONZERO_DEGREES2: [i64; 8] = [-4, -3, -2, -1, 1, 2, 3, 4];

pub const COMMUTATOR_TUPLES: [(&str, &str, i64, i64); 3] = [("1", "1", 0, 2), ("3", "-2", -1, 1), ("1", "1", 5, 5)];

pub const COMMUTATOR_POINTS: [(&str, &str); 2] = [("1/2", "0"), ("2/3", "5")];

pub const ORACLE_HALF_WIDTH: i64 = 16;

#[derive(Clone, Debug)]
pub struct H1Case {
    pub algebra: &'static str,
    pub a: String,
    pub b: String,
    pub degree2: i64,
    pub window: i64,
    pub margin: i64,
}

impl H1Case {
    pub fn degree(&self) -> HalfInt {
        HalfInt::from_doubled(self.degree2)
    }

    pub fn key(&self) -> String {
        format!("{}({},{})@{}[{}:{}]", self.algebra, self.a, self.b, self.degree(), self.window, self.margin)
    }
}

pub fn h1_cases() -> Vec<H1Case> {
    let mut out = Vec::new();
    let case = |a: &str, b: &str, d2: i64| H1Case {
        algebra: "wgab",
        a: a.into(),
        b: b.into(),
        degree2: d2,
        window: 10,
        margin: 3,
    };
    for (a, b, _) in DEGREE_ZERO_POINTS {
        out.push(case(a, b, 0));
    }
    out.push(case("1", "-1", 0));
    for (a, b) in VANISHING_POINTS {
        for d2 in NONZERO_DEGREES2 {
            out.push(case(a, b, d2));
        }
    }
    out.push(H1Case {
        algebra: "witt",
        a: "0".into(),
        b: "0".into(),
        degree2: 0,
        window: 8,
        margin: 3,
    });
    out
}

fn oracle_algebra(name: &str, a: &str, b: &str) -> OracleAlgebra {
    match name {
        "witt" => OracleAlgebra::Witt,
        _ => OracleAlgebra::wgab(q(a), q(b)),
    }
}

/// Runs every oracle; this is what the pinned file stores.
pub fn compute_pinned() -> Value {
    let h1: Vec<Value> = h1_cases()
        .iter()
        .map(|c| {
            let dim = oracle_h1(&oracle_algebra(c.algebra, &c.a, &c.b), c.degree2, -c.window, c.window, c.margin);
            json!({
                "key": c.key(),
                "algebra": c.algebra,
                "a": c.a,
                "b": c.b,
                "degree": c.degree().to_string(),
                "window": format!("{}:{}", -c.window, c.window),
                "margin": c.margin,
                "outer_dim": dim,
            })
        })
        .collect();
    let mut comm = Vec::new();
    for (a, b) in COMMUTATOR_POINTS {
        for (alpha, beta, i, j) in COMMUTATOR_TUPLES {
            let g = oracle_exp_commutator(&OracleAlgebra::wgab(q(a), q(b)), &q(alpha), &q(beta), i, j, ORACLE_HALF_WIDTH);
            comm.push(json!({
                "a": a,
                "b": b,
                "alpha": alpha,
                "beta": beta,
                "i": i,
                "j": j,
                "half_width": ORACLE_HALF_WIDTH,
                "gamma": g.map(|g| fmt_rational(&g)),
            }));
        }
    }
    json!({ "schema": 1, "h1": h1, "exp_commutator": comm })
}

pub fn load_pinned() -> Value {
    let text = std::fs::read_to_string(pinned_path()).expect("pinned oracle file; regenerate with UPDATE_PINNED=1");
    serde_json::from_str(&text).expect("pinned file is JSON")
}

/// Pinned oracle dimension for one case.
pub fn pinned_h1(pinned: &Value, case: &H1Case) -> usize {
    pinned["h1"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["key"] == case.key())
        .unwrap_or_else(|| panic!("no pinned value for {}", case.key()))["outer_dim"]
        .as_u64()
        .unwrap() as usize
}

pub fn pinned_gamma(pinned: &Value, a: &str, b: &str, alpha: &str, beta: &str, i: i64, j: i64) -> Option<Rational> {
    pinned["exp_commutator"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["a"] == a && v["b"] == b && v["alpha"] == alpha && v["beta"] == beta && v["i"] == i && v["j"] == j)
        .expect("pinned commutator case")["gamma"]
        .as_str()
        .map(q)
}

pub fn instance(algebra: &str, a: &str, b: &str) -> graded_lie::algebra::AlgebraInstance {
    graded_lie::algebra::AlgebraInstance::preset(algebra, q(a), q(b)).unwrap()
}

pub fn wgab(a: &str, b: &str) -> graded_lie::algebra::AlgebraInstance {
    instance("wgab", a, b)
}

/// Engine outer dimension for one case.
pub fn engine_h1(case: &H1Case) -> usize {
    let g = instance(case.algebra, &case.a, &case.b);
    graded_lie::derivations::h1_component(
        &g,
        case.degree(),
        graded_lie::algebra::Window::symmetric(case.window),
        case.margin as u32,
    )
    .unwrap()
    .outer_dim
}

/// Finds the case with the given parameters among [`h1_cases`].
pub fn find_case(a: &str, b: &str, degree2: i64) -> H1Case {
    h1_cases()
        .into_iter()
        .find(|c| c.algebra == "wgab" && c.a == a && c.b == b && c.degree2 == degree2)
        .unwrap_or_else(|| panic!("no case for ({a},{b}) at doubled degree {degree2}"))
}
