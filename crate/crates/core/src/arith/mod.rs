//! Exact scalar tower: rationals, cyclotomic fields, polynomials, rational
//! functions of `q` and truncated exponential generating functions.

pub mod cyclotomic;
pub mod egf;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, parse_cyclotomic, Cyclotomic, PowerAccumulator};
pub use egf::EgfSeries;
pub use poly::Poly;
pub use ratfunc::{QRationalFunction, RatFunc};
pub use scalar::{int, parse_rational, rat, rational_to_string, Rational, Scalar};
