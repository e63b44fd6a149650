//! Extensions K/k with explicit O_K, primes of A, residue modules and K_infinity.

pub mod extension;
pub mod kinf;
pub mod reduction;

pub use extension::{carlitz_cyclotomic_deg1, trivial_extension, ExtKind, ExtensionData, InfinitePlace, OkElem};
pub use kinf::{KInf, KInfOps};
pub use reduction::{reduction, residue_actions, xi_taming, PrimeOfA, ResidueActions, ResidueRing, TamingModule};
