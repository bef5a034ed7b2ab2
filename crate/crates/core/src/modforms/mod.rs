//! Named modular forms built from theta expansions, their relations, and the
//! boundary behaviour of the sextuple products.

pub mod actions;
pub mod boundary;
pub mod expr;
pub mod registry;
pub mod relations;

pub use actions::{runge_action_checks, ActionCheck, Substitution};
pub use boundary::{boundary_distribution, boundary_orders, q0_parity_check, BoundaryOrders};
pub use expr::{Expr, Form};
pub use registry::{build_generators, sextuple_form, FormRegistry};
pub use relations::{mutations, relation, relations, verify_identity, Relation};
