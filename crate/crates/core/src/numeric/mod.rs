//! Arbitrary-precision evaluation of theta constants on the Siegel upper
//! half-space, and numeric checks of transformation laws.

pub mod complex;
pub mod laws;
pub mod siegel;
pub mod theta;

pub use complex::{Complex, PRECISION};
pub use laws::{
    character_law_check, diagonal_vanishing_check, sample_cases, t_antisymmetry_defect, transform_modulus_check,
    CharacterMeasurement, DiagonalReport, FormKind, ModulusCheck,
};
pub use siegel::SiegelPoint;
pub use theta::{series_numeric_consistency, theta_eval, ConsistencyReport, EvalResult, DROPPED_LIMIT};
