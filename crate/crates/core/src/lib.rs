pub mod algebra;
pub mod cli;
pub mod error;
pub mod fields;
pub mod grpring;
pub mod lvalue;
pub mod modsize;
pub mod nuclear;
pub mod tmodule;
pub mod volume;

pub use error::{Error, Result};
