//! Genus-2 theta constants of level two, the modular forms built from them,
//! and the Calabi-Yau threefold they cut out.

pub mod chargeom;
pub mod error;
pub mod exact_arith;
pub mod modforms;
pub mod numeric;
pub mod qseries;
pub mod symplectic;
pub mod variety;

pub use error::{Error, Result};
