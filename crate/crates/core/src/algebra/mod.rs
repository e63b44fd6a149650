//! Exact arithmetic: finite fields, polynomials, Laurent series, matrices.

pub mod fq;
pub mod irreducible;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod trunc;

pub use fq::{FieldSpec, FiniteField, FqElem};
pub use irreducible::{enumerate_monic_irreducibles, is_irreducible, primes_up_to};
pub use laurent::{Laurent, LaurentRing, EXACT};
pub use matrix::{MatOps, Matrix};
pub use poly::{Poly, PolyRing};
pub use ratfunc::{RatFunc, RatFuncField};
pub use ring::{Field, Ring};
pub use trunc::TruncRing;

/// The polynomial ring A = F_q[t].
pub type ARing = PolyRing<FiniteField>;
/// An element of A.
pub type APoly = Poly<FqElem>;
