//! Noetherian operators and Macaulay dual spaces for primary ideals.

pub mod algebra;
pub mod diffops;
pub mod dual;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod noetherian;
pub mod numerical;

pub use error::{Error, Result};
