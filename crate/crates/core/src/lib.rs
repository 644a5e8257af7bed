//! Exact algebra for polynomial Poisson structures on cyclic coordinates
//! `x0..x{n-1}` that are invariant under the finite Heisenberg group
//! generated by the shift `sigma` and the phase `tau`.

pub mod bivector;
pub mod catalog;
pub mod cli;
pub mod constraints;
pub mod error;
pub mod heisenberg;
pub mod linalg;
pub mod polyring;

pub use bivector::{Bivector, UnimodularCheck, VectorField, VerificationReport, Witness};
pub use constraints::ConstraintSystem;
pub use error::{Error, Result};
pub use heisenberg::{Check, GenericTensor, ParamOrigin};
pub use polyring::{
    rat, Assignment, Monomial, Poly, Rational, TauDegree, Value, VarSpace, XDegree,
};
