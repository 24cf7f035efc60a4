//! Packet erasures and erasure-optimal duals.
//!
//! A signal is sent as packets `V_i x`. When packet `j` is lost and the
//! receiver decodes with a dual `W` anyway, the error is `W_j^* V_j x`. The
//! per-packet error norms `||W_j^* V_j||_2` (Frobenius) form the error vector;
//! its Euclidean norm is the 2-error and its maximum the worst-case error.

use rand::Rng;

use crate::duals::{self, DualManifold};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};
use crate::random;
use crate::system::ReconstructionSystem;

/// Set of erased packet indices (0-based) out of `m` packets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasureMask {
    indices: Vec<usize>,
    m: usize,
}

impl ErasureMask {
    pub fn new(mut indices: Vec<usize>, m: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(&bad) = indices.iter().find(|&&j| j >= m) {
            return Err(Error::InvalidArgument(format!("packet index {} out of range 1..={m}", bad + 1)));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate packet index in mask".into()));
        }
        Ok(Self { indices, m })
    }

    pub fn empty(m: usize) -> Self {
        Self { indices: Vec::new(), m }
    }

    pub fn single(j: usize, m: usize) -> Result<Self> {
        Self::new(vec![j], m)
    }

    pub fn all(m: usize) -> Self {
        Self { indices: (0..m).collect(), m }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }
}

/// Decodes `coeffs` with `W` after zeroing the erased packets:
/// `sum_{i not in J} W_i^* coeffs_i`.
pub fn blind_reconstruct(
    v: &ReconstructionSystem,
    w: &ReconstructionSystem,
    coeffs: &[ComplexVector],
    mask: &ErasureMask,
) -> Result<ComplexVector> {
    w.ensure_same_signature(v)?;
    if mask.m() != v.m() {
        return Err(Error::Shape(format!("mask is over {} packets, system has {}", mask.m(), v.m())));
    }
    let kept: Vec<ComplexVector> = coeffs
        .iter()
        .enumerate()
        .map(|(i, y)| if mask.contains(i) { ComplexVector::zeros(y.len()) } else { y.clone() })
        .collect();
    w.synthesis_apply(&kept)
}

/// Per-packet error norms of blind reconstruction with a given dual.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// `||W_j^* V_j||_2` for each packet `j`.
    pub per_index: Vec<f64>,
    /// Euclidean norm of `per_index`.
    pub two_error: f64,
    /// Maximum of `per_index`.
    pub worst_case: f64,
}

impl ErrorReport {
    pub fn from_per_index(per_index: Vec<f64>) -> Self {
        let two_error = per_index.iter().map(|e| e * e).sum::<f64>().sqrt();
        let worst_case = per_index.iter().copied().fold(0.0, f64::max);
        Self { per_index, two_error, worst_case }
    }
}

pub fn error_report(v: &ReconstructionSystem, w: &ReconstructionSystem) -> Result<ErrorReport> {
    w.ensure_same_signature(v)?;
    let per_index = w
        .blocks()
        .iter()
        .zip(v.blocks())
        .map(|(wi, vi)| (wi.adjoint() * vi).norm())
        .collect();
    Ok(ErrorReport::from_per_index(per_index))
}

/// `S_{V,D} = sum v_i^{-2} V_i^* V_i`; for a projective system this is the sum
/// of the projections onto `R(V_i^*)`.
pub fn weighted_frame_operator(v: &ReconstructionSystem, weights: &[f64]) -> ComplexMatrix {
    let d = v.d();
    let mut s = ComplexMatrix::zeros(d, d);
    for (b, &w) in v.blocks().iter().zip(weights) {
        s += (b.adjoint() * b).scale(1.0 / (w * w));
    }
    linalg::hermitian_part(&s)
}

/// The unique dual minimizing the 2-error of a projective system:
/// blocks `v_i^{-2} V_i S_{V,D}^{-1}`.
pub fn optimal_dual_two_error(v: &ReconstructionSystem, tolerance: f64) -> Result<ReconstructionSystem> {
    let cl = v.classify(tolerance);
    let weights = cl
        .weights
        .ok_or_else(|| Error::Precondition("2-error optimal dual needs a projective system".into()))?;
    if !cl.is_rs {
        return Err(Error::NotAnRs { lambda_min: cl.lower_bound, tolerance });
    }
    // S_{V,D} >= min v_i^{-2} S_V > 0 for any RS.
    let s_d_inv = linalg::inverse_hpd(&weighted_frame_operator(v, &weights))
        .expect("S_{V,D} dominates a positive multiple of S_V");
    v.map_blocks(|i, b| (b * &s_d_inv).scale(1.0 / (weights[i] * weights[i])))
}

/// Common value `c` of `||S_V^{-1} V_i^* V_i||_2` over all blocks, if they agree.
///
/// When present, the canonical dual is the unique dual minimizing the
/// worst-case error.
pub fn wce_condition(v: &ReconstructionSystem, tolerance: f64) -> Result<Option<f64>> {
    if !v.classify(tolerance).is_projective {
        return Err(Error::Precondition("worst-case condition needs a projective system".into()));
    }
    let norms = wce_norms(v, tolerance)?;
    let max = norms.iter().copied().fold(0.0, f64::max);
    let min = norms.iter().copied().fold(f64::INFINITY, f64::min);
    if max - min <= tolerance * max.max(1.0) {
        Ok(Some(norms.iter().sum::<f64>() / norms.len() as f64))
    } else {
        Ok(None)
    }
}

/// `||S_V^{-1} V_i^* V_i||_2` for every block; these are the entries of the
/// error vector of the canonical dual.
pub fn wce_norms(v: &ReconstructionSystem, tolerance: f64) -> Result<Vec<f64>> {
    let s_inv = v.frame_operator_inverse(tolerance)?;
    Ok(v.blocks().iter().map(|b| (&s_inv * b.adjoint() * b).norm()).collect())
}

/// Outcome of the worst-case error minimization.
#[derive(Debug, Clone)]
pub struct WceMinimum {
    pub dual: ReconstructionSystem,
    pub worst_case: f64,
    /// Iterations actually performed (fewer than requested on early exit).
    pub iterations: usize,
}

/// Default number of subgradient steps.
pub const DEFAULT_WCE_ITERATIONS: usize = 5000;

/// Minimizes `max_i ||W_i^* V_i||_2` over the duals of an injective system.
///
/// Runs a normalized subgradient method on the parameter `Z` of
/// [`DualManifold`], starting at the canonical dual, with step `eta / sqrt(t)`.
/// When several blocks attain the maximum, the subgradient is a random convex
/// combination of their gradients drawn from `seed`. Returns the best point seen.
pub fn wce_minimize(
    v: &ReconstructionSystem,
    iterations: usize,
    seed: u64,
    tolerance: f64,
) -> Result<WceMinimum> {
    let cl = v.classify(tolerance);
    if !cl.is_injective {
        return Err(Error::Precondition("worst-case minimization needs an injective system".into()));
    }
    let manifold = DualManifold::new(v, tolerance)?;
    let canonical = manifold.canonical()?;
    let start = error_report(v, &canonical)?.worst_case;
    if manifold.is_point() || iterations == 0 {
        return Ok(WceMinimum { dual: canonical, worst_case: start, iterations: 0 });
    }

    let sig = v.signature();
    let total = sig.total_dim();
    let d = v.d();
    let s_inv = v.frame_operator_inverse(tolerance)?;
    let p = manifold.complement_projector();

    // f_i(Z) = ||A_i + Z B_i||_2 with A_i = S^{-1} V_i^* V_i and B_i = P E_i V_i.
    let mut fixed = Vec::with_capacity(v.m());
    let mut moving = Vec::with_capacity(v.m());
    for (i, b) in v.blocks().iter().enumerate() {
        fixed.push(&s_inv * b.adjoint() * b);
        let mut lifted = ComplexMatrix::zeros(total, d);
        lifted.view_mut((sig.offset(i), 0), (b.nrows(), d)).copy_from(b);
        moving.push(p * lifted);
    }
    let reach = moving.iter().map(linalg::spectral_norm).fold(0.0, f64::max);
    if reach <= tolerance {
        return Ok(WceMinimum { dual: canonical, worst_case: start, iterations: 0 });
    }
    let eta = 0.5 * start / reach;

    let mut rng = random::rng(seed);
    let mut z = ComplexMatrix::zeros(d, total);
    let mut best_z = z.clone();
    let mut best = start;
    let mut performed = 0;
    for t in 1..=iterations {
        performed = t;
        let residuals: Vec<ComplexMatrix> = fixed.iter().zip(&moving).map(|(a, b)| a + &z * b).collect();
        let values: Vec<f64> = residuals.iter().map(|r| r.norm()).collect();
        let current = values.iter().copied().fold(0.0, f64::max);
        if current < best {
            best = current;
            best_z = z.clone();
        }
        let cutoff = current - 1e-12 * current.max(1.0);
        let mut g = ComplexMatrix::zeros(d, total);
        let mut mass = 0.0;
        for (i, r) in residuals.iter().enumerate() {
            if values[i] >= cutoff && values[i] > 0.0 {
                let lambda: f64 = -rng.gen::<f64>().max(f64::MIN_POSITIVE).ln();
                g += (r * moving[i].adjoint()).scale(lambda / values[i]);
                mass += lambda;
            }
        }
        if mass == 0.0 {
            break;
        }
        let g_norm = g.norm() / mass;
        if g_norm <= 1e-14 {
            break;
        }
        let step = eta / (t as f64).sqrt();
        z -= g.scale(step / (g_norm * mass));
    }

    let values: Vec<f64> = fixed.iter().zip(&moving).map(|(a, b)| (a + &z * b).norm()).collect();
    let last = values.iter().copied().fold(0.0, f64::max);
    if last < best {
        best = last;
        best_z = z;
    }
    let dual = manifold.dual_at(&best_z)?;
    let worst_case = error_report(v, &dual)?.worst_case;
    debug_assert!((worst_case - best).abs() <= 1e-9 * best.max(1.0));
    debug_assert!(duals::dual_residual(&dual, v)? <= 1e-6);
    Ok(WceMinimum { dual, worst_case, iterations: performed })
}
