//! Scalars: integers, Laurent polynomials and rational functions in `q`.

mod gcd;
mod int;
mod laurent;
mod qint;
mod ratfunc;

pub use gcd::{gcd, normalize_unit};
pub use int::Int;
pub use laurent::LaurentPoly;
pub(crate) use laurent::pow_mod;
pub use qint::{in_shifted_unit, quantum_binomial, quantum_factorial, quantum_integer};
pub use ratfunc::{in_one_plus_qa0, RatFunc};
