//! Built-in algebras.
//!
//! `wgab` indexes `Y` by its true half-integer degree. Writing `Y(k)` for the
//! element of degree `k = j + 1/2`, the bracket `[L(m), Y(k)]` has coefficient
//! `-(j + (1 - m + a + b m)/2) = -(k + (-m + a + b m)/2)`, and
//! `[Y(m), Y(n)] = (m - n) I(m + n)` since the `+1` shift of the integer-index
//! form is absorbed by the two half offsets.

use super::{parse_spec, AlgebraSpec};
use crate::error::{Error, Result};

pub const PRESET_NAMES: [&str; 3] = ["witt", "wab", "wgab"];

const WITT: &str = "\
algebra witt
family L
[L(m), L(n)] = (m - n) L(m + n)
";

const WAB: &str = "\
algebra wab
params a, b
family L
family I
[L(m), L(n)] = (m - n) L(m + n)
[L(m), I(n)] = -(n + a + b*m) I(m + n)
[I(m), I(n)] = 0
";

const WGAB: &str = "\
algebra wgab
params a, b
family L
family I
family Y offset 1/2
[L(m), L(n)] = (m - n) L(m + n)
[L(m), I(n)] = -(n + a + b*m) I(m + n)
[L(m), Y(n)] = -(n + (-m + a + b*m)/2) Y(m + n)
[I(m), I(n)] = 0
[Y(m), Y(n)] = (m - n) I(m + n)
[I(m), Y(n)] = 0
";

pub fn preset_source(name: &str) -> Result<&'static str> {
    match name {
        "witt" => Ok(WITT),
        "wab" => Ok(WAB),
        "wgab" => Ok(WGAB),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub fn preset(name: &str) -> Result<AlgebraSpec> {
    parse_spec(preset_source(name)?)
}
