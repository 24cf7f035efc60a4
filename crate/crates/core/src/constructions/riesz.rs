//! Riesz systems (`sum k_i = d`): when does the unique dual happen to be projective?

use crate::duals::canonical_dual;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::system::ReconstructionSystem;

#[derive(Debug, Clone)]
pub struct RieszIndexDetail {
    /// 0-based block index.
    pub index: usize,
    /// Singular values of `V_i` restricted to `S_i = ∩_{j != i} ker V_j`.
    pub singular_values: Vec<f64>,
    pub multiple_of_isometry: bool,
}

#[derive(Debug, Clone)]
pub struct RieszDualCheck {
    /// Every restriction `V_i|S_i` is a multiple of an isometry.
    pub has_projective_dual: bool,
    /// The canonical dual (the only dual) classifies as projective.
    pub canonical_dual_projective: bool,
    pub details: Vec<RieszIndexDetail>,
}

impl RieszDualCheck {
    /// First block whose restriction is not a multiple of an isometry.
    pub fn first_failure(&self) -> Option<usize> {
        self.details.iter().find(|d| !d.multiple_of_isometry).map(|d| d.index)
    }
}

pub fn riesz_projective_dual_check(v: &ReconstructionSystem, tolerance: f64) -> Result<RieszDualCheck> {
    let cl = v.classify(tolerance);
    if !cl.is_riesz {
        return Err(Error::Precondition("Riesz check needs sum k_i = d".into()));
    }
    if !cl.is_rs {
        return Err(Error::NotAnRs { lambda_min: cl.lower_bound, tolerance });
    }
    let d = v.d();
    let mut details = Vec::with_capacity(v.m());
    for i in 0..v.m() {
        let others: Vec<ComplexMatrix> = (0..v.m()).filter(|&j| j != i).map(|j| v.block(j).clone()).collect();
        let basis = if others.is_empty() {
            linalg::identity(d)
        } else {
            linalg::null_space(&linalg::vstack(&others), tolerance)
        };
        let restricted = v.block(i) * &basis;
        let singular_values = linalg::singular_values(&restricted);
        let max = singular_values.first().copied().unwrap_or(0.0);
        let min = singular_values.last().copied().unwrap_or(0.0);
        let multiple_of_isometry = basis.ncols() == v.k()[i] && max - min <= tolerance * max.max(1.0);
        details.push(RieszIndexDetail { index: i, singular_values, multiple_of_isometry });
    }
    let canonical_dual_projective = canonical_dual(v, tolerance)?.classify(tolerance).is_projective;
    Ok(RieszDualCheck {
        has_projective_dual: details.iter().all(|d| d.multiple_of_isometry),
        canonical_dual_projective,
        details,
    })
}
