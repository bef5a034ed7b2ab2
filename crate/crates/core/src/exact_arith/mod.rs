//! Exact arithmetic: cyclotomic integers, polynomials, rational functions and 3-forms.

pub mod cyc8;
pub mod form;
pub mod linalg;
pub mod mpoly;
pub mod ratfn;

pub use cyc8::CycInt8;
pub use form::{Pullback, ThreeForm};
pub use linalg::{graded_membership, Certificate};
pub use mpoly::{q, MPoly, Monomial, Symbol, Q};
pub use ratfn::{rational_jacobian, RatFn};
