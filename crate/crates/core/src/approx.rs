//! Nearest projective system to an injective one.
//!
//! Each block is replaced by `alpha_i U_i` where `U_i` is the coisometry of its
//! polar decomposition and `alpha_i = tr|S_i| / k_i` the mean singular value.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::system::ReconstructionSystem;

/// `block = U P` with `U U^* = I` and `P = |block| >= 0`.
#[derive(Debug, Clone)]
pub struct PolarFactorization {
    /// Coisometry factor, `k x d`.
    pub u: ComplexMatrix,
    /// Positive factor `(block^* block)^{1/2}`, `d x d`.
    pub p: ComplexMatrix,
    /// Singular values of the block, decreasing.
    pub singular_values: Vec<f64>,
}

impl PolarFactorization {
    /// `tr |block|`.
    pub fn trace_abs(&self) -> f64 {
        self.singular_values.iter().sum()
    }
}

/// Polar decomposition of a full-rank `k x d` block (`k <= d`).
pub fn polar_coisometry(block: &ComplexMatrix, tolerance: f64) -> Result<PolarFactorization> {
    let (k, d) = block.shape();
    if k > d {
        return Err(Error::Precondition(format!("a {k}x{d} block cannot be surjective")));
    }
    let svd = block.clone().svd(true, true);
    let u_svd = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let sigma_min = sigma.iter().copied().fold(f64::INFINITY, f64::min);
    if sigma_min <= tolerance * sigma_max.max(1.0) {
        return Err(Error::Precondition(format!(
            "block is rank deficient (smallest singular value {sigma_min:e})"
        )));
    }
    let u = &u_svd * &v_t;
    let scaled_v_t = ComplexMatrix::from_fn(k, d, |i, j| v_t[(i, j)] * sigma[i]);
    let p = v_t.adjoint() * scaled_v_t;
    let mut singular_values: Vec<f64> = sigma.iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    Ok(PolarFactorization { u, p, singular_values })
}

/// Result of [`nearest_projective`].
#[derive(Debug, Clone)]
pub struct ProjectiveApproximation {
    pub system: ReconstructionSystem,
    /// `alpha_i = tr|S_i| / k_i`.
    pub weights: Vec<f64>,
    /// `||T_S - T_W||_2`.
    pub distance: f64,
}

/// `d(S, W) = ||T_S - T_W||_2`, the Frobenius distance of the analysis operators.
pub fn system_distance(a: &ReconstructionSystem, b: &ReconstructionSystem) -> Result<f64> {
    a.ensure_same_signature(b)?;
    Ok(a
        .blocks()
        .iter()
        .zip(b.blocks())
        .map(|(x, y)| (x - y).norm_squared())
        .sum::<f64>()
        .sqrt())
}

pub fn nearest_projective(s: &ReconstructionSystem, tolerance: f64) -> Result<ProjectiveApproximation> {
    if !s.classify(tolerance).is_injective {
        return Err(Error::Precondition("nearest projective system needs an injective system".into()));
    }
    let mut weights = Vec::with_capacity(s.m());
    let mut blocks = Vec::with_capacity(s.m());
    for b in s.blocks() {
        let polar = polar_coisometry(b, tolerance)?;
        let alpha = polar.trace_abs() / b.nrows() as f64;
        blocks.push(polar.u.scale(alpha));
        weights.push(alpha);
    }
    let system = ReconstructionSystem::with_signature(s.signature().clone(), blocks)?;
    let distance = system_distance(s, &system)?;
    Ok(ProjectiveApproximation { system, weights, distance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, from_real_rows, identity};
    use crate::random::{gaussian_matrix, random_coisometry, random_projective, rng};

    const TOL: f64 = 1e-9;

    #[test]
    fn coisometry_is_fixed() {
        let u = random_coisometry(&mut rng(1), 2, 4);
        let f = polar_coisometry(&u, TOL).unwrap();
        assert!((&f.u - &u).norm() < 1e-12);
        assert!((&f.p - u.adjoint() * &u).norm() < 1e-12);
        let f2 = polar_coisometry(&u.scale(2.0), TOL).unwrap();
        assert!((&f2.u - &u).norm() < 1e-12);
        assert!((&f2.p - (u.adjoint() * &u).scale(2.0)).norm() < 1e-12);
    }

    #[test]
    fn factorization_reconstructs() {
        let a = gaussian_matrix(&mut rng(2), 3, 5, 1.0);
        let f = polar_coisometry(&a, TOL).unwrap();
        assert!((&f.u * &f.p - &a).norm() < 1e-10);
        assert!((&f.u * f.u.adjoint() - identity(3)).norm() < 1e-12);
        assert!((&f.p - f.p.adjoint()).norm() < 1e-12);
        assert!(crate::linalg::hermitian_eigenvalues(&f.p)[0] > -1e-12);
    }

    #[test]
    fn rank_deficient_block_is_refused() {
        let a = from_real_rows(2, 3, &[1., 0., 0., 2., 0., 0.]);
        assert!(matches!(polar_coisometry(&a, TOL), Err(Error::Precondition(_))));
        let tall = gaussian_matrix(&mut rng(3), 4, 2, 1.0);
        assert!(polar_coisometry(&tall, TOL).is_err());
    }

    #[test]
    fn singular_values_two_and_four() {
        let s = ReconstructionSystem::new(2, vec![diag(&[2.0, 4.0])]).unwrap();
        let out = nearest_projective(&s, TOL).unwrap();
        assert!((out.weights[0] - 3.0).abs() < 1e-14);
        assert!((out.distance.powi(2) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn projective_is_a_fixed_point() {
        let s = random_projective(&mut rng(4), &[2, 1, 3], 4, &[0.3, 1.0, 2.2]).unwrap();
        let out = nearest_projective(&s, TOL).unwrap();
        assert!(out.distance <= 1e-12);
        for (w, e) in out.weights.iter().zip([0.3, 1.0, 2.2]) {
            assert!((w - e).abs() < 1e-12);
        }
    }

    #[test]
    fn non_injective_is_refused() {
        let s = ReconstructionSystem::new(2, vec![identity(2), ComplexMatrix::zeros(1, 2)]).unwrap();
        assert!(matches!(nearest_projective(&s, TOL), Err(Error::Precondition(_))));
    }
}
