//! Generators and checkers: group systems, commuting-projection projective
//! duals, Riesz systems and the worked examples.

pub mod commuting;
pub mod fixtures;
pub mod group;
pub mod riesz;

pub use commuting::{commuting_projective_dual, common_resolution, epsilon_coefficients, omega, CommonResolution};
pub use fixtures::{fixture, named_fixtures, FIXTURE_NAMES};
pub use group::{group_rs, group_rs_checks, GroupRsReport, UnitaryRepresentation};
pub use riesz::{riesz_projective_dual_check, RieszDualCheck, RieszIndexDetail};
