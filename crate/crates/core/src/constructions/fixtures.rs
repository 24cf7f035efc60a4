//! Worked examples as named fixtures.
//!
//! - `ex62`: `V_1(x,y,z) = (y,z)`, `V_2(x,y,z) = (x,z)` on `C^3`.
//! - `ex62_omega_dual`: `W_1^*(x,y) = (0,x,w y)`, `W_2^*(x,y) = (x,0,conj(w) y)`,
//!   a projective dual of `ex62`.
//! - `ex63`: `V_1(x) = (x_1, x_2)`, `V_2(x) = (x_3, (x_2 - x_4)/sqrt 2)` on `C^4`.
//! - `ex63_enlarged`: `ex63` plus a third coisometry with the same kernel as `V_2`.
//! - `ex63_prime`: `V_1` together with `V_3(x) = (x_1 - x_3, x_2 - x_4)`.

use std::collections::BTreeMap;

use crate::constructions::commuting::omega;
use crate::linalg::{from_real_rows, ComplexMatrix, ONE};
use crate::system::ReconstructionSystem;

pub const FIXTURE_NAMES: [&str; 5] = ["ex62", "ex62_omega_dual", "ex63", "ex63_enlarged", "ex63_prime"];

fn system(d: usize, blocks: Vec<ComplexMatrix>) -> ReconstructionSystem {
    ReconstructionSystem::new(d, blocks).expect("fixture blocks are well formed")
}

fn ex62() -> ReconstructionSystem {
    let v1 = from_real_rows(2, 3, &[0., 1., 0., 0., 0., 1.]);
    let v2 = from_real_rows(2, 3, &[1., 0., 0., 0., 0., 1.]);
    system(3, vec![v1, v2])
}

fn ex62_omega_dual() -> ReconstructionSystem {
    let w = omega();
    let mut w1_adj = ComplexMatrix::zeros(3, 2);
    w1_adj[(1, 0)] = ONE;
    w1_adj[(2, 1)] = w;
    let mut w2_adj = ComplexMatrix::zeros(3, 2);
    w2_adj[(0, 0)] = ONE;
    w2_adj[(2, 1)] = w.conj();
    system(3, vec![w1_adj.adjoint(), w2_adj.adjoint()])
}

fn ex63_v1() -> ComplexMatrix {
    from_real_rows(2, 4, &[1., 0., 0., 0., 0., 1., 0., 0.])
}

fn ex63_v2() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    from_real_rows(2, 4, &[0., 0., 1., 0., 0., h, 0., -h])
}

fn ex63_v3() -> ComplexMatrix {
    from_real_rows(2, 4, &[1., 0., -1., 0., 0., 1., 0., -1.])
}

/// Freshly built fixtures keyed by name.
pub fn named_fixtures() -> BTreeMap<String, ReconstructionSystem> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    // Same kernel span{e_1, e_2 + e_4} as V_2, rows swapped.
    let extra = from_real_rows(2, 4, &[0., h, 0., -h, 0., 0., 1., 0.]);
    let mut out = BTreeMap::new();
    out.insert("ex62".to_string(), ex62());
    out.insert("ex62_omega_dual".to_string(), ex62_omega_dual());
    out.insert("ex63".to_string(), system(4, vec![ex63_v1(), ex63_v2()]));
    out.insert("ex63_enlarged".to_string(), system(4, vec![ex63_v1(), ex63_v2(), extra]));
    out.insert("ex63_prime".to_string(), system(4, vec![ex63_v1(), ex63_v3()]));
    out
}

pub fn fixture(name: &str) -> Option<ReconstructionSystem> {
    named_fixtures().remove(name)
}
