//! t-modules, Drinfeld modules, Carlitz tensor powers and their exponential series.

pub mod expseries;
pub mod motive;
pub mod spec;
pub mod taupoly;

pub use expseries::{compose, exp_coeffs, functional_equation_residual, is_identity, log_coeffs, log_from_exp, ExpSeries};
pub use motive::{carlitz_power_motive, carlitz_tensor, drinfeld_motive, drinfeld_twist, motive_to_tmodule, MotiveSpec};
pub use spec::{make_carlitz, make_drinfeld, TModuleKind, TModuleSpec};
pub use taupoly::{Frobenius, TauPoly, TauRing};
