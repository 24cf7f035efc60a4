//! Seeded random matrices and systems.
//!
//! Used by the dual-manifold sampler and by the test oracles. Every generator
//! takes an explicit RNG so results are reproducible from a seed.

use nalgebra::QR;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{c, ComplexMatrix};
use crate::system::ReconstructionSystem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries i.i.d. `scale * (N(0,1) + i N(0,1))`.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(scale * re, scale * im)
    })
}

/// `d x k` matrix with orthonormal columns (`k <= d`), Haar distributed.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, d: usize, k: usize) -> ComplexMatrix {
    assert!(k <= d, "an isometry C^{k} -> C^{d} needs k <= d");
    let g = gaussian_matrix(rng, d, k, 1.0);
    let qr = QR::new(g);
    let mut q = qr.q();
    let r = qr.r();
    // Fix column phases so the distribution does not depend on the QR convention.
    for j in 0..k {
        let rjj = r[(j, j)];
        let n = rjj.norm();
        if n > 0.0 {
            let phase = rjj / n;
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

/// `k x d` coisometry (`U U^* = I_k`).
pub fn random_coisometry<R: Rng + ?Sized>(rng: &mut R, k: usize, d: usize) -> ComplexMatrix {
    random_isometry(rng, d, k).adjoint()
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    random_isometry(rng, n, n)
}

/// Gaussian blocks of the given dimensions.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, k: &[usize], d: usize) -> Result<ReconstructionSystem> {
    let blocks = k.iter().map(|&ki| gaussian_matrix(rng, ki, d, 1.0)).collect();
    ReconstructionSystem::new(d, blocks)
}

/// Blocks `v_i U_i` with `U_i` random coisometries.
pub fn random_projective<R: Rng + ?Sized>(
    rng: &mut R,
    k: &[usize],
    d: usize,
    weights: &[f64],
) -> Result<ReconstructionSystem> {
    let blocks = k
        .iter()
        .zip(weights)
        .map(|(&ki, &w)| random_coisometry(rng, ki, d).scale(w))
        .collect();
    ReconstructionSystem::new(d, blocks)
}
