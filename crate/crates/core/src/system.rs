//! Reconstruction systems: ordered families of linear maps `V_i : C^d -> C^{k_i}`
//! whose frame operator `S_V = sum V_i^* V_i` is positive invertible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};

/// Tolerance used by every flag unless the caller picks another one.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// The `(m, k, d)` signature of a system: block dimensions `k_i` and ambient
/// dimension `d`. The number of blocks `m` is `k.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    k: Vec<usize>,
    d: usize,
}

impl Signature {
    pub fn new(k: Vec<usize>, d: usize) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidArgument("a system needs at least one block".into()));
        }
        if d == 0 {
            return Err(Error::InvalidArgument("ambient dimension must be positive".into()));
        }
        if let Some(i) = k.iter().position(|&ki| ki == 0) {
            return Err(Error::InvalidArgument(format!("block {} has zero dimension", i + 1)));
        }
        Ok(Self { k, d })
    }

    pub fn m(&self) -> usize {
        self.k.len()
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `tr k = sum k_i`, the dimension of the coefficient space.
    pub fn total_dim(&self) -> usize {
        self.k.iter().sum()
    }

    /// Row offset of block `i` inside the stacked analysis matrix.
    pub fn offset(&self, i: usize) -> usize {
        self.k[..i].iter().sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, k={:?}, d={})", self.m(), self.k, self.d)
    }
}

/// An ordered list of blocks `V_i` of shape `k_i x d`.
///
/// Construction only checks shapes and finiteness. Whether the family is a
/// genuine reconstruction system (invertible frame operator) is reported by
/// [`ReconstructionSystem::classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionSystem {
    signature: Signature,
    blocks: Vec<ComplexMatrix>,
}

impl ReconstructionSystem {
    /// Builds a system from its blocks; `k_i` is read off each block's row count.
    pub fn new(d: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        let k = blocks.iter().map(|b| b.nrows()).collect();
        Self::with_signature(Signature::new(k, d)?, blocks)
    }

    pub fn with_signature(signature: Signature, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if blocks.len() != signature.m() {
            return Err(Error::Shape(format!(
                "signature declares {} blocks, got {}",
                signature.m(),
                blocks.len()
            )));
        }
        for (i, (b, &ki)) in blocks.iter().zip(signature.k()).enumerate() {
            if b.nrows() != ki || b.ncols() != signature.d() {
                return Err(Error::Shape(format!(
                    "block {} is {}x{}, expected {}x{}",
                    i + 1,
                    b.nrows(),
                    b.ncols(),
                    ki,
                    signature.d()
                )));
            }
            linalg::check_finite(b)?;
        }
        Ok(Self { signature, blocks })
    }

    /// Rebuilds a system from a `d x (sum k_i)` synthesis matrix `T^*`.
    pub fn from_synthesis(signature: Signature, synthesis: &ComplexMatrix) -> Result<Self> {
        if synthesis.nrows() != signature.d() || synthesis.ncols() != signature.total_dim() {
            return Err(Error::Shape(format!(
                "synthesis matrix is {}x{}, expected {}x{}",
                synthesis.nrows(),
                synthesis.ncols(),
                signature.d(),
                signature.total_dim()
            )));
        }
        let blocks = (0..signature.m())
            .map(|i| {
                synthesis
                    .columns(signature.offset(i), signature.k()[i])
                    .adjoint()
            })
            .collect();
        Self::with_signature(signature, blocks)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn m(&self) -> usize {
        self.signature.m()
    }

    pub fn d(&self) -> usize {
        self.signature.d()
    }

    pub fn k(&self) -> &[usize] {
        self.signature.k()
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &ComplexMatrix {
        &self.blocks[i]
    }

    pub fn into_blocks(self) -> Vec<ComplexMatrix> {
        self.blocks
    }

    /// Applies `f` to every block, keeping the signature.
    pub fn map_blocks<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, &ComplexMatrix) -> ComplexMatrix,
    {
        let blocks = self.blocks.iter().enumerate().map(|(i, b)| f(i, b)).collect();
        Self::with_signature(self.signature.clone(), blocks)
    }

    /// `{c_i V_i}` for positive scalars `c_i`.
    pub fn scaled(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.m() {
            return Err(Error::Shape(format!("expected {} factors, got {}", self.m(), factors.len())));
        }
        self.map_blocks(|i, b| b.scale(factors[i]))
    }

    /// The subsystem `(V_i)_{i not in J}` (0-based indices).
    pub fn without(&self, dropped: &[usize]) -> Result<Self> {
        let blocks: Vec<ComplexMatrix> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| !dropped.contains(i))
            .map(|(_, b)| b.clone())
            .collect();
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("cannot drop every block".into()));
        }
        Self::new(self.d(), blocks)
    }

    /// Analysis matrix `T_V`: the `(sum k_i) x d` vertical stack of the blocks.
    pub fn analysis_matrix(&self) -> ComplexMatrix {
        linalg::vstack(&self.blocks)
    }

    /// Synthesis matrix `T_V^*`.
    pub fn synthesis_matrix(&self) -> ComplexMatrix {
        self.analysis_matrix().adjoint()
    }

    /// Frame operator `S_V = sum V_i^* V_i`, symmetrized.
    pub fn frame_operator(&self) -> ComplexMatrix {
        let d = self.d();
        let mut s = ComplexMatrix::zeros(d, d);
        for b in &self.blocks {
            s += b.adjoint() * b;
        }
        linalg::hermitian_part(&s)
    }

    /// `T_V x = (V_1 x, ..., V_m x)`.
    pub fn analysis_apply(&self, x: &ComplexVector) -> Result<Vec<ComplexVector>> {
        if x.len() != self.d() {
            return Err(Error::Shape(format!("signal has length {}, expected {}", x.len(), self.d())));
        }
        Ok(self.blocks.iter().map(|b| b * x).collect())
    }

    /// `T_V^* (y_i) = sum V_i^* y_i`.
    pub fn synthesis_apply(&self, y: &[ComplexVector]) -> Result<ComplexVector> {
        if y.len() != self.m() {
            return Err(Error::Shape(format!("expected {} packets, got {}", self.m(), y.len())));
        }
        let mut x = ComplexVector::zeros(self.d());
        for (i, (b, yi)) in self.blocks.iter().zip(y).enumerate() {
            if yi.len() != b.nrows() {
                return Err(Error::Shape(format!(
                    "packet {} has length {}, expected {}",
                    i + 1,
                    yi.len(),
                    b.nrows()
                )));
            }
            x += b.adjoint() * yi;
        }
        Ok(x)
    }

    /// Spectral norms `||V_i||_sp`; these are the weights when the system is projective.
    pub fn block_norms(&self) -> Vec<f64> {
        self.blocks.iter().map(linalg::spectral_norm).collect()
    }

    /// Frame bounds `(A_V, B_V)`: extreme eigenvalues of `S_V`.
    pub fn bounds(&self) -> (f64, f64) {
        let eig = linalg::hermitian_eigenvalues(&self.frame_operator());
        (eig[0], eig[eig.len() - 1])
    }

    pub fn is_rs(&self, tolerance: f64) -> bool {
        let (a, b) = self.bounds();
        a > tolerance * b.max(1.0)
    }

    /// Errors with [`Error::NotAnRs`] unless `S_V` is positive invertible.
    pub fn ensure_rs(&self, tolerance: f64) -> Result<()> {
        let (a, b) = self.bounds();
        if a > tolerance * b.max(1.0) {
            Ok(())
        } else {
            Err(Error::NotAnRs { lambda_min: a, tolerance })
        }
    }

    /// `S_V^{-1}`.
    pub fn frame_operator_inverse(&self, tolerance: f64) -> Result<ComplexMatrix> {
        self.ensure_rs(tolerance)?;
        linalg::inverse_hpd(&self.frame_operator()).ok_or(Error::NotAnRs {
            lambda_min: self.bounds().0,
            tolerance,
        })
    }

    pub fn classify(&self, tolerance: f64) -> SystemClassification {
        let (lower, upper) = self.bounds();
        let is_rs = lower > tolerance * upper.max(1.0);

        let norms = self.block_norms();
        let is_injective = self.blocks.iter().zip(&norms).all(|(b, &n)| {
            b.nrows() <= b.ncols()
                && linalg::smallest_singular_value(b) > tolerance * n.max(1.0)
        });

        let is_projective = self.blocks.iter().zip(&norms).all(|(b, &v)| {
            let v2 = v * v;
            let gram = b * b.adjoint();
            let dev = (gram - linalg::identity(b.nrows()).scale(v2)).norm();
            v > tolerance && dev <= tolerance * v2.max(1.0)
        });
        let weights = is_projective.then(|| norms.clone());

        let is_uniform = is_projective && {
            let max = norms.iter().copied().fold(0.0, f64::max);
            let min = norms.iter().copied().fold(f64::INFINITY, f64::min);
            max - min <= tolerance * max.max(1.0)
        };

        let d = self.d();
        let is_protocol = (self.frame_operator() - linalg::identity(d)).norm() <= tolerance;
        let is_riesz = self.signature.total_dim() == d;

        SystemClassification {
            is_rs,
            is_injective,
            is_projective,
            weights,
            is_uniform,
            is_protocol,
            is_riesz,
            lower_bound: lower,
            upper_bound: upper,
            tolerance,
        }
    }

    /// Projective weights `v_i`, or a precondition error naming the failing test.
    pub fn projective_weights(&self, tolerance: f64) -> Result<Vec<f64>> {
        self.classify(tolerance)
            .weights
            .ok_or_else(|| Error::Precondition("system is not projective".into()))
    }

    pub fn ensure_same_signature(&self, other: &Self) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch {
                left: self.signature.to_string(),
                right: other.signature.to_string(),
            });
        }
        Ok(())
    }
}

/// Computed structural flags of a system, all judged at `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemClassification {
    pub is_rs: bool,
    pub is_injective: bool,
    pub is_projective: bool,
    pub weights: Option<Vec<f64>>,
    pub is_uniform: bool,
    pub is_protocol: bool,
    pub is_riesz: bool,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub tolerance: f64,
}
