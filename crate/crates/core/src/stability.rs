//! Erasure of a known set `J` of packets.
//!
//! With `M_J = I - sum_{i in J} V_i^* V_i S_V^{-1}`, the remaining system
//! `V_J = (V_i)_{i not in J}` has frame operator `M_J S_V`, so it is still a
//! reconstruction system exactly when `M_J` is invertible. Its canonical dual
//! is the truncated canonical dual of `V` corrected by `M_J^{-1}`.

use crate::duals::canonical_dual;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::system::ReconstructionSystem;

#[derive(Debug, Clone)]
pub struct TruncationReport {
    /// Dropped indices, 0-based and sorted.
    pub dropped: Vec<usize>,
    pub m_j: ComplexMatrix,
    pub is_rs_after: bool,
    /// Frame operator of the remaining system, computed from its blocks.
    pub s_truncated: ComplexMatrix,
    /// `A_V / ||M_J^{-1}||_sp`, when `M_J` is invertible.
    pub lower_bound_estimate: Option<f64>,
    /// `(A_{V_J}, B_{V_J})`, when the remaining system is an RS.
    pub bounds_actual: Option<(f64, f64)>,
    /// `(A_V, B_V)` of the full system.
    pub bounds_full: (f64, f64),
}

fn normalize_indices(v: &ReconstructionSystem, dropped: &[usize]) -> Result<Vec<usize>> {
    let mut j = dropped.to_vec();
    j.sort_unstable();
    j.dedup();
    if let Some(&bad) = j.iter().find(|&&i| i >= v.m()) {
        return Err(Error::InvalidArgument(format!("index {} out of range 1..={}", bad + 1, v.m())));
    }
    if j.len() == v.m() {
        return Err(Error::InvalidArgument("cannot erase every block".into()));
    }
    Ok(j)
}

/// `M_J = I - sum_{i in J} V_i^* V_i S_V^{-1}`.
pub fn m_matrix(v: &ReconstructionSystem, dropped: &[usize], s_inv: &ComplexMatrix) -> ComplexMatrix {
    let mut lost = ComplexMatrix::zeros(v.d(), v.d());
    for &i in dropped {
        let b = v.block(i);
        lost += b.adjoint() * b;
    }
    linalg::identity(v.d()) - lost * s_inv
}

pub fn truncate(v: &ReconstructionSystem, dropped: &[usize], tolerance: f64) -> Result<TruncationReport> {
    let dropped = normalize_indices(v, dropped)?;
    let s_inv = v.frame_operator_inverse(tolerance)?;
    let m_j = m_matrix(v, &dropped, &s_inv);
    let sigma = linalg::singular_values(&m_j);
    let sigma_min = *sigma.last().expect("d >= 1");
    let is_rs_after = sigma_min > tolerance * sigma[0].max(1.0);

    let rest = v.without(&dropped)?;
    let s_truncated = rest.frame_operator();
    let bounds_full = v.bounds();
    let (lower_bound_estimate, bounds_actual) = if is_rs_after {
        // ||M_J^{-1}||_sp = 1 / sigma_min(M_J)
        (Some(bounds_full.0 * sigma_min), Some(rest.bounds()))
    } else {
        (None, None)
    };

    Ok(TruncationReport {
        dropped,
        m_j,
        is_rs_after,
        s_truncated,
        lower_bound_estimate,
        bounds_actual,
        bounds_full,
    })
}

/// Canonical dual of the remaining system, `{V_i S_{V_J}^{-1}}_{i not in J}`.
pub fn truncated_canonical_dual(
    v: &ReconstructionSystem,
    dropped: &[usize],
    tolerance: f64,
) -> Result<ReconstructionSystem> {
    let dropped = normalize_indices(v, dropped)?;
    let rest = v.without(&dropped)?;
    canonical_dual(&rest, tolerance)
}

/// The same dual via `{V#_i M_J^{-1}}_{i not in J}`.
pub fn truncated_canonical_dual_via_m(
    v: &ReconstructionSystem,
    dropped: &[usize],
    tolerance: f64,
) -> Result<ReconstructionSystem> {
    let report = truncate(v, dropped, tolerance)?;
    if !report.is_rs_after {
        let lambda_min = linalg::hermitian_eigenvalues(&report.s_truncated)[0];
        return Err(Error::NotAnRs { lambda_min, tolerance });
    }
    let m_inv = linalg::inverse(&report.m_j).ok_or(Error::NotAnRs { lambda_min: 0.0, tolerance })?;
    let canon = canonical_dual(v, tolerance)?;
    let blocks = canon
        .blocks()
        .iter()
        .enumerate()
        .filter(|(i, _)| !report.dropped.contains(i))
        .map(|(_, b)| b * &m_inv)
        .collect();
    ReconstructionSystem::new(v.d(), blocks)
}

/// Sufficient invertibility test `sum_{i in J} ||V_i||_sp^2 < A_V`, and the
/// lower-bound estimate `A_V - sum_{i in J} ||V_i||_sp^2`.
pub fn ck_sufficient_condition(v: &ReconstructionSystem, dropped: &[usize], tolerance: f64) -> Result<(bool, f64)> {
    v.ensure_rs(tolerance)?;
    let mut j = dropped.to_vec();
    j.sort_unstable();
    j.dedup();
    if let Some(&bad) = j.iter().find(|&&i| i >= v.m()) {
        return Err(Error::InvalidArgument(format!("index {} out of range 1..={}", bad + 1, v.m())));
    }
    let (a, _) = v.bounds();
    let lost: f64 = j.iter().map(|&i| linalg::spectral_norm(v.block(i)).powi(2)).sum();
    Ok((lost < a, a - lost))
}
