//! Group rings F_q[G] of finite abelian groups, characters and monic representatives.

pub mod characters;
pub mod group;
pub mod monic;
pub mod ring;

pub use characters::{CharacterClass, GroupAlgebra, SylowSplit};
pub use group::GroupSpec;
pub use monic::{local_monic_split, poly_unit_inverse, GrLaurent};
pub use ring::{GrElem, GroupRing};
