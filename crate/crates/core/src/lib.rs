//! Exceptional Laguerre polynomials: exact construction from Wronskian-type
//! determinants, their second-order operators and Darboux factorizations,
//! the admissibility decision procedures, and numerical certification of the
//! real-axis and contour orthogonality relations.

pub mod admissibility;
pub mod analysis;
pub mod darboux;
pub mod error;
pub mod exactnum;
pub mod exceptional;
pub mod laguerre;
pub mod operator;

pub use error::{Error, Result};
pub use exactnum::{BigRational, RationalFunction, RationalPolynomial};
pub use exceptional::{Component, ExceptionalFamily, PairF};
pub use operator::LinearDiffOperator;
