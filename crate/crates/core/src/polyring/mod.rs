//! Exact sparse multivariate polynomials over the rationals, in cyclic
//! coordinates `x0..x{n-1}` and Laurent parameters.

mod monomial;
mod parse;
mod poly;
mod subst;
mod varspace;

pub use monomial::Monomial;
pub use poly::{rat, Poly, TauDegree, XDegree};
pub use subst::{Assignment, Value};
pub(crate) use varspace::same_space;
pub use varspace::VarSpace;

pub use num_rational::BigRational as Rational;
