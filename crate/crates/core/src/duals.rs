//! Dual systems: the canonical dual, dual verification and a parametrization
//! of the whole dual set `D(V)`.
//!
//! `W` is a dual of `V` when `T_W^* T_V = I_d`, i.e. when the synthesis matrix
//! of `W` is a left inverse of the analysis matrix of `V`. Every left inverse
//! has the form
//!
//! ```text
//! T_W^* = T_{V#}^* + Z (I_K - T_V S_V^{-1} T_V^*)
//! ```
//!
//! for some `d x K` matrix `Z`, which is what [`DualManifold`] implements.

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::random;
use crate::system::ReconstructionSystem;

/// Maximum number of redraws when a sampled dual has a singular frame operator.
pub const MAX_REDRAWS: usize = 100;

/// Canonical dual `V# = {V_i S_V^{-1}}`.
pub fn canonical_dual(v: &ReconstructionSystem, tolerance: f64) -> Result<ReconstructionSystem> {
    let s_inv = v.frame_operator_inverse(tolerance)?;
    v.map_blocks(|_, b| b * &s_inv)
}

/// A candidate dual `W` together with its residual against a reference `V`.
#[derive(Debug, Clone)]
pub struct DualCandidate {
    pub system: ReconstructionSystem,
    pub reference: ReconstructionSystem,
    /// `||T_W^* T_V - I||_2` (Frobenius).
    pub dual_residual: f64,
    pub tolerance: f64,
}

impl DualCandidate {
    pub fn is_verified(&self) -> bool {
        self.dual_residual <= self.tolerance
    }
}

/// `||sum W_i^* V_i - I||_2`.
pub fn dual_residual(w: &ReconstructionSystem, v: &ReconstructionSystem) -> Result<f64> {
    w.ensure_same_signature(v)?;
    let d = v.d();
    let mut acc = -linalg::identity(d);
    for (wi, vi) in w.blocks().iter().zip(v.blocks()) {
        acc += wi.adjoint() * vi;
    }
    Ok(acc.norm())
}

pub fn verify_dual(
    w: &ReconstructionSystem,
    v: &ReconstructionSystem,
    tolerance: f64,
) -> Result<DualCandidate> {
    let dual_residual = dual_residual(w, v)?;
    Ok(DualCandidate {
        system: w.clone(),
        reference: v.clone(),
        dual_residual,
        tolerance,
    })
}

/// The affine manifold of synthesis matrices of duals of a fixed system.
#[derive(Debug, Clone)]
pub struct DualManifold {
    reference: ReconstructionSystem,
    canonical_synthesis: ComplexMatrix,
    complement: ComplexMatrix,
    tolerance: f64,
}

impl DualManifold {
    pub fn new(v: &ReconstructionSystem, tolerance: f64) -> Result<Self> {
        let s_inv = v.frame_operator_inverse(tolerance)?;
        let t = v.analysis_matrix();
        let canonical_synthesis = &s_inv * t.adjoint();
        let range_projector = &t * &canonical_synthesis;
        let complement = linalg::identity(t.nrows()) - linalg::hermitian_part(&range_projector);
        Ok(Self {
            reference: v.clone(),
            canonical_synthesis,
            complement,
            tolerance,
        })
    }

    pub fn reference(&self) -> &ReconstructionSystem {
        &self.reference
    }

    /// `T_{V#}^*`, the Moore-Penrose pseudoinverse of `T_V`.
    pub fn canonical_synthesis(&self) -> &ComplexMatrix {
        &self.canonical_synthesis
    }

    /// `I_K - T_V S_V^{-1} T_V^*`, the projector onto `ker T_V^*`.
    pub fn complement_projector(&self) -> &ComplexMatrix {
        &self.complement
    }

    /// True when `D(V)` is a single point (the Riesz case).
    pub fn is_point(&self) -> bool {
        self.complement.norm() <= self.tolerance
    }

    pub fn canonical(&self) -> Result<ReconstructionSystem> {
        ReconstructionSystem::from_synthesis(self.reference.signature().clone(), &self.canonical_synthesis)
    }

    /// `T_{V#}^* + Z (I - T_V S_V^{-1} T_V^*)`.
    pub fn synthesis_at(&self, z: &ComplexMatrix) -> Result<ComplexMatrix> {
        if z.shape() != self.canonical_synthesis.shape() {
            return Err(Error::Shape(format!(
                "parameter is {}x{}, expected {}x{}",
                z.nrows(),
                z.ncols(),
                self.canonical_synthesis.nrows(),
                self.canonical_synthesis.ncols()
            )));
        }
        Ok(&self.canonical_synthesis + z * &self.complement)
    }

    pub fn dual_at(&self, z: &ComplexMatrix) -> Result<ReconstructionSystem> {
        let synthesis = self.synthesis_at(z)?;
        ReconstructionSystem::from_synthesis(self.reference.signature().clone(), &synthesis)
    }

    /// Draws `count` duals with Gaussian parameters of the given scale.
    /// Samples whose own frame operator is singular are redrawn.
    pub fn sample(&self, seed: u64, count: usize, scale: f64) -> Result<Vec<ReconstructionSystem>> {
        if count == 0 {
            return Err(Error::InvalidArgument("sample count must be at least 1".into()));
        }
        let mut rng = random::rng(seed);
        let (d, k) = self.canonical_synthesis.shape();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut accepted = None;
            for _ in 0..=MAX_REDRAWS {
                let z = random::gaussian_matrix(&mut rng, d, k, scale);
                let w = self.dual_at(&z)?;
                if w.is_rs(self.tolerance) {
                    accepted = Some(w);
                    break;
                }
            }
            out.push(accepted.ok_or_else(|| {
                Error::Precondition(format!("no invertible dual found after {MAX_REDRAWS} redraws"))
            })?);
        }
        Ok(out)
    }
}

/// `count` pseudo-random duals of `v`, deterministic in `seed`.
pub fn dual_manifold_sample(
    v: &ReconstructionSystem,
    seed: u64,
    count: usize,
    tolerance: f64,
) -> Result<Vec<ReconstructionSystem>> {
    DualManifold::new(v, tolerance)?.sample(seed, count, 1.0)
}
