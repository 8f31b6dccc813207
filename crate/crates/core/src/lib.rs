//! Exact PBW and canonical bases for the negative half of quantized
//! enveloping algebras of rank at most four, with foldings and the
//! piecewise-linear label bijections between reduced words.

#![allow(clippy::needless_range_loop)]

pub mod canonical;
pub mod cartan;
pub mod cli;
pub mod error;
pub mod folding;
pub mod freealg;
pub mod linalg;
pub mod pbw;
pub mod scalar;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
