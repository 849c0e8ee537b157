use serde::Serialize;

use super::{format_basis, format_element, AlgebraInstance, Element, Window};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub triple: [String; 3],
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiWindowReport {
    pub passed: bool,
    pub triples_checked: usize,
    pub violations: Vec<JacobiViolation>,
}

/// Cyclic Jacobi sums over all triples of window basis symbols whose
/// pairwise and total degrees stay in the window.
///
/// The cyclic sum is alternating under permutations, so each unordered
/// triple is checked once.
pub fn jacobi_window(inst: &AlgebraInstance, win: &Window) -> JacobiWindowReport {
    let basis = win.basis(inst);
    let mut violations = Vec::new();
    let mut checked = 0;
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate().skip(i) {
            if !win.contains(x.index + y.index) {
                continue;
            }
            for &z in &basis[j..] {
                let total = x.index + y.index + z.index;
                if !(win.contains(y.index + z.index) && win.contains(z.index + x.index) && win.contains(total)) {
                    continue;
                }
                checked += 1;
                let (ex, ey, ez) = (Element::basis(x), Element::basis(y), Element::basis(z));
                let mut sum = inst.bracket(&inst.bracket(&ex, &ey), &ez);
                sum = &sum + &inst.bracket(&inst.bracket(&ey, &ez), &ex);
                sum = &sum + &inst.bracket(&inst.bracket(&ez, &ex), &ey);
                if !sum.is_zero() {
                    violations.push(JacobiViolation {
                        triple: [format_basis(inst, &x), format_basis(inst, &y), format_basis(inst, &z)],
                        residual: format_element(inst, &sum),
                    });
                }
            }
        }
    }
    JacobiWindowReport {
        passed: violations.is_empty(),
        triples_checked: checked,
        violations,
    }
}
