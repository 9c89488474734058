//! Exact check of every defining relation on a Specht module.

use super::module::{check_presentation, KlrModule};
use super::ops::SparseOp;
use super::specht::SpechtModule;
use crate::error::{Error, Result};
use crate::weights::{all_bipartitions, dominant_residues};
use std::collections::BTreeSet;

fn fail(m: &SpechtModule, what: &str) -> Error {
    Error::RelationViolated(format!("{what} on Δ{}", m.shape))
}

/// Verifies the full presentation, degree homogeneity and positivity.
pub fn validate(m: &SpechtModule) -> Result<()> {
    check_presentation(m)?;
    // degrees are non-negative on e(i^ν)Δ(λ); other residue spaces may dip below 0
    let dominant_residues: BTreeSet<Vec<u32>> = all_bipartitions(m.n())
        .iter()
        .map(|l| dominant_residues(l, &m.geometry).0)
        .collect();
    if m.degrees[m.dominant] != 0 {
        return Err(fail(m, "dominant vector has degree 0"));
    }
    for t in 0..m.dim() {
        if m.degrees[t] < 0 && dominant_residues.contains(&m.residues[t].0) {
            return Err(fail(m, "grading is non-negative on e(i^ν)Δ(λ)"));
        }
    }
    Ok(())
}

/// Cases where the y-generator jumps: `|i_r - i_{r+1}| = 1` and `e(s_r i) = 0`
/// force `y_{r+1} e(i) = y_r e(i)`. Returns the number of instances checked.
pub fn check_y_jump<M: KlrModule + ?Sized>(m: &M, valid: impl Fn(&[u32]) -> bool) -> Result<usize> {
    let e = m.geometry().e();
    let classes: BTreeSet<&Vec<u32>> = m.residues().iter().map(|r| &r.0).collect();
    let mut count = 0;
    for i in classes {
        let ei = SparseOp::projection(m.dim(), |j| m.residues()[j].0 == *i);
        for r in 1..m.n() {
            let (a, b) = (i[r - 1], i[r]);
            if (a + 1) % e != b && (b + 1) % e != a {
                continue;
            }
            let mut s = i.clone();
            s.swap(r - 1, r);
            if valid(&s) {
                continue;
            }
            count += 1;
            if m.y_ops()[r].compose(&ei) != m.y_ops()[r - 1].compose(&ei) {
                return Err(Error::RelationViolated(format!(
                    "y-jump y_{} e(i) = y_{r} e(i) for i = {i:?} on {}",
                    r + 1,
                    m.label()
                )));
            }
        }
    }
    Ok(count)
}
