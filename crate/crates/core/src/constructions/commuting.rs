//! Projective duals of projective systems whose range projections commute.
//!
//! The projections `P_i` onto `R(V_i^*)` are resolved into mutually orthogonal
//! common pieces `Q_j`. Each block is then twisted by a unimodular diagonal
//! `U_i = sum_{j in J_i} eps_ij Q_j`, with coefficients chosen from
//! `{1, -1, w, conj w}` (`w = 1/2 + i sqrt(3)/2`) so that the conjugated
//! coefficients over each piece sum to one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::system::ReconstructionSystem;

/// `w = 1/2 + i sqrt(3)/2`, a unimodular number with `w + conj w = 1`.
pub fn omega() -> Complex64 {
    Complex64::new(0.5, 3f64.sqrt() / 2.0)
}

/// Coefficients `eps_1, ..., eps_r` in `{1, -1, w, conj w}` with
/// `sum conj(eps_i) = 1`.
///
/// Odd `r`: `(r-1)/2` cancelling pairs `(1, -1)` and a final `1`.
/// Even `r`: `(r-2)/2` pairs and a final `(conj w, w)`.
pub fn epsilon_coefficients(r: usize) -> Vec<Complex64> {
    assert!(r >= 1, "every piece is covered by at least one projection");
    let one = linalg::ONE;
    let mut out = Vec::with_capacity(r);
    let pairs = if r % 2 == 1 { (r - 1) / 2 } else { (r - 2) / 2 };
    for _ in 0..pairs {
        out.push(one);
        out.push(-one);
    }
    if r % 2 == 1 {
        out.push(one);
    } else {
        out.push(omega().conj());
        out.push(omega());
    }
    out
}

/// Mutually orthogonal projections `Q_j` summing to the identity, each tagged
/// with the set of projections `P_i` that contain it.
#[derive(Debug, Clone)]
pub struct CommonResolution {
    pub pieces: Vec<ComplexMatrix>,
    /// `members[j]`: sorted indices `i` with `Q_j <= P_i`.
    pub members: Vec<Vec<usize>>,
}

impl CommonResolution {
    /// `r_j = |S_j|`.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

/// Simultaneous diagonalization of pairwise commuting orthogonal projections.
///
/// Diagonalizes `sum 3^i P_i`; an eigenvalue's base-3 digits record which
/// projections contain the eigenvector.
pub fn common_resolution(projections: &[ComplexMatrix], tolerance: f64) -> Result<CommonResolution> {
    let m = projections.len();
    if m == 0 || m > 30 {
        return Err(Error::InvalidArgument(format!("need between 1 and 30 projections, got {m}")));
    }
    let d = projections[0].nrows();
    for i in 0..m {
        for j in i + 1..m {
            let comm = &projections[i] * &projections[j] - &projections[j] * &projections[i];
            if comm.norm() > tolerance {
                return Err(Error::Precondition(format!(
                    "projections {} and {} do not commute",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut weighted = ComplexMatrix::zeros(d, d);
    let mut power = 1.0;
    for p in projections {
        weighted += p.scale(power);
        power *= 3.0;
    }
    let (values, vectors) = linalg::hermitian_eigen(&weighted);

    let mut codes: Vec<u64> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (col, &lambda) in values.iter().enumerate() {
        let code = lambda.round();
        if (lambda - code).abs() > 0.25 || code < 0.0 {
            return Err(Error::Precondition(format!(
                "eigenvalue {lambda} of the weighted sum is not a digit pattern; inputs are not commuting projections"
            )));
        }
        let code = code as u64;
        match codes.iter().position(|&c| c == code) {
            Some(g) => groups[g].push(col),
            None => {
                codes.push(code);
                groups.push(vec![col]);
            }
        }
    }

    let mut pieces = Vec::with_capacity(groups.len());
    let mut members = Vec::with_capacity(groups.len());
    for (code, cols) in codes.iter().zip(&groups) {
        let mut digits = Vec::new();
        let mut rest = *code;
        for i in 0..m {
            match rest % 3 {
                0 => {}
                1 => digits.push(i),
                _ => {
                    return Err(Error::Precondition(
                        "weighted sum has a non-binary digit; inputs are not projections".into(),
                    ))
                }
            }
            rest /= 3;
        }
        if rest != 0 {
            return Err(Error::Precondition("eigenvalue exceeds the weighted sum range".into()));
        }
        let mut basis = ComplexMatrix::zeros(d, cols.len());
        for (dst, &c) in cols.iter().enumerate() {
            basis.set_column(dst, &vectors.column(c));
        }
        pieces.push(&basis * basis.adjoint());
        members.push(digits);
    }
    Ok(CommonResolution { pieces, members })
}

/// A projective dual of a projective system whose range projections commute.
pub fn commuting_projective_dual(v: &ReconstructionSystem, tolerance: f64) -> Result<ReconstructionSystem> {
    let cl = v.classify(tolerance);
    let weights = cl
        .weights
        .ok_or_else(|| Error::Precondition("commuting construction needs a projective system".into()))?;
    if !cl.is_rs {
        return Err(Error::NotAnRs { lambda_min: cl.lower_bound, tolerance });
    }
    let projections: Vec<ComplexMatrix> = v
        .blocks()
        .iter()
        .zip(&weights)
        .map(|(b, &w)| (b.adjoint() * b).scale(1.0 / (w * w)))
        .collect();
    let resolution = common_resolution(&projections, tolerance)?;
    if let Some(j) = resolution.members.iter().position(Vec::is_empty) {
        // Only reachable when S_V is singular, which is_rs excludes.
        return Err(Error::Precondition(format!("piece {j} is not covered by any block")));
    }

    let d = v.d();
    let mut twists = vec![ComplexMatrix::zeros(d, d); v.m()];
    for (piece, members) in resolution.pieces.iter().zip(&resolution.members) {
        for (&i, eps) in members.iter().zip(epsilon_coefficients(members.len())) {
            twists[i] += piece * eps;
        }
    }
    v.map_blocks(|i, b| (b * &twists[i]).scale(1.0 / (weights[i] * weights[i])))
}
