pub mod affine;
pub mod classification;
pub mod cli;
pub mod coset;
pub mod error;
pub mod free_field;
pub mod lincomb;
pub mod linalg;
pub mod n2;
pub mod pbw;
pub mod rational;
pub mod verma;
pub mod vertex;

pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use rational::{ExactRational, HalfInt};
