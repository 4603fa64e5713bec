//! Canonical bases of the q-wedge Fock space of type A and the character
//! formulas they govern for parabolic categories of the queer Lie
//! superalgebra q(n).

pub mod canon;
pub mod chars;
pub mod error;
pub mod fock;
pub mod laurent;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use fock::{Generator, TensorVector, WedgeVector};
pub use laurent::LaurentQ;
pub use weights::{EpsWeight, GLWeight, HalfInt, QueerWeight, SuperIndex, WeightFunction};
