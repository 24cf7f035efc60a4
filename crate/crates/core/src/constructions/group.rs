//! Group reconstruction systems `{V U_g}_{g in G}` for a unitary representation
//! of a finite group.

use crate::approx::{nearest_projective, polar_coisometry};
use crate::duals::canonical_dual;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::system::ReconstructionSystem;

const REPRESENTATION_TOLERANCE: f64 = 1e-10;

/// A finite group given by its multiplication table, represented by unitaries.
#[derive(Debug, Clone)]
pub struct UnitaryRepresentation {
    unitaries: Vec<ComplexMatrix>,
    table: Vec<Vec<usize>>,
}

impl UnitaryRepresentation {
    /// Validates unitarity, closure `U_g U_h = U_{gh}` and the presence of an identity.
    pub fn new(unitaries: Vec<ComplexMatrix>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = unitaries.len();
        if m == 0 {
            return Err(Error::InvalidArgument("group must have at least one element".into()));
        }
        let d = unitaries[0].nrows();
        if table.len() != m || table.iter().any(|row| row.len() != m || row.iter().any(|&x| x >= m)) {
            return Err(Error::Shape(format!("multiplication table must be {m}x{m} with entries < {m}")));
        }
        let id = linalg::identity(d);
        for (g, u) in unitaries.iter().enumerate() {
            if u.shape() != (d, d) {
                return Err(Error::Shape(format!("U_{g} is {}x{}, expected {d}x{d}", u.nrows(), u.ncols())));
            }
            if (u.adjoint() * u - &id).norm() > REPRESENTATION_TOLERANCE * d as f64 {
                return Err(Error::Precondition(format!("U_{g} is not unitary")));
            }
        }
        for g in 0..m {
            for h in 0..m {
                let prod = &unitaries[g] * &unitaries[h];
                if (prod - &unitaries[table[g][h]]).norm() > REPRESENTATION_TOLERANCE * d as f64 {
                    return Err(Error::Precondition(format!(
                        "U_{g} U_{h} differs from U_{} given by the table",
                        table[g][h]
                    )));
                }
            }
        }
        if !unitaries.iter().any(|u| (u - &id).norm() <= REPRESENTATION_TOLERANCE) {
            return Err(Error::Precondition("representation has no identity element".into()));
        }
        Ok(Self { unitaries, table })
    }

    /// `Z_n` acting on `C^n` by cyclic shifts, `U_g e_j = e_{j+g mod n}`.
    pub fn cyclic_shift(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group order must be positive".into()));
        }
        let unitaries = (0..n)
            .map(|g| {
                ComplexMatrix::from_fn(n, n, |i, j| {
                    if i == (j + g) % n {
                        linalg::ONE
                    } else {
                        linalg::ZERO
                    }
                })
            })
            .collect();
        let table = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        Self::new(unitaries, table)
    }

    /// Direct product `G x H` acting on the tensor product by `U_g (x) U_h`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let (m1, m2) = (self.order(), other.order());
        let mut unitaries = Vec::with_capacity(m1 * m2);
        for a in &self.unitaries {
            for b in &other.unitaries {
                unitaries.push(a.kronecker(b));
            }
        }
        let table = (0..m1 * m2)
            .map(|x| {
                (0..m1 * m2)
                    .map(|y| self.table[x / m2][y / m2] * m2 + other.table[x % m2][y % m2])
                    .collect()
            })
            .collect();
        Self::new(unitaries, table)
    }

    /// Product of cyclic shift representations `Z_{n_1} x ... x Z_{n_r}`.
    pub fn cyclic_product(orders: &[usize]) -> Result<Self> {
        let (first, rest) = orders
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("need at least one factor".into()))?;
        rest.iter()
            .try_fold(Self::cyclic_shift(*first)?, |acc, &n| acc.product(&Self::cyclic_shift(n)?))
    }

    pub fn order(&self) -> usize {
        self.unitaries.len()
    }

    pub fn dim(&self) -> usize {
        self.unitaries[0].nrows()
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// `{V U_g}_{g in G}`. Whether this is an RS is left to the caller.
pub fn group_rs(rep: &UnitaryRepresentation, base: &ComplexMatrix) -> Result<ReconstructionSystem> {
    if base.ncols() != rep.dim() {
        return Err(Error::Shape(format!(
            "base operator has {} columns, representation acts on C^{}",
            base.ncols(),
            rep.dim()
        )));
    }
    let blocks = rep.unitaries().iter().map(|u| base * u).collect();
    ReconstructionSystem::new(rep.dim(), blocks)
}

#[derive(Debug, Clone)]
pub struct GroupRsReport {
    /// `max_h ||S U_h - U_h S||_2`.
    pub commutation_residual: f64,
    /// Largest blockwise distance between the canonical dual and the group
    /// system generated by `V S^{-1}`.
    pub canonical_dual_residual: f64,
    /// For a surjective base: largest blockwise distance between the nearest
    /// projective system to the canonical dual and `{w W U_g}`.
    pub projective_approximation_residual: Option<f64>,
    /// `w = tr|V S^{-1}| / k`, for a surjective base.
    pub projective_weight: Option<f64>,
}

pub fn group_rs_checks(
    rep: &UnitaryRepresentation,
    base: &ComplexMatrix,
    tolerance: f64,
) -> Result<GroupRsReport> {
    let system = group_rs(rep, base)?;
    let s = system.frame_operator();
    let s_inv = system.frame_operator_inverse(tolerance)?;

    let commutation_residual = rep
        .unitaries()
        .iter()
        .map(|u| (&s * u - u * &s).norm())
        .fold(0.0, f64::max);

    let canonical = canonical_dual(&system, tolerance)?;
    let dual_base = base * &s_inv;
    let generated = group_rs(rep, &dual_base)?;
    let canonical_dual_residual = max_block_distance(&canonical, &generated);

    let surjective = system.classify(tolerance).is_injective;
    let (projective_approximation_residual, projective_weight) = if surjective {
        let nearest = nearest_projective(&canonical, tolerance)?;
        let polar = polar_coisometry(&dual_base, tolerance)?;
        let w = polar.trace_abs() / base.nrows() as f64;
        let predicted = group_rs(rep, &polar.u.scale(w))?;
        (Some(max_block_distance(&nearest.system, &predicted)), Some(w))
    } else {
        (None, None)
    };

    Ok(GroupRsReport {
        commutation_residual,
        canonical_dual_residual,
        projective_approximation_residual,
        projective_weight,
    })
}

fn max_block_distance(a: &ReconstructionSystem, b: &ReconstructionSystem) -> f64 {
    a.blocks()
        .iter()
        .zip(b.blocks())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
