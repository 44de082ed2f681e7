//! Analysis of finite-dimensional Lie algebras given by structure constants.
//!
//! The crate finds Frobenius functionals, computes principal elements and the
//! left-symmetric product induced by the coboundary 2-form, classifies
//! right-units, right-nils and conformal vectors, computes derivation
//! algebras, splits adjoint operators into semisimple and nilpotent parts, and
//! embeds an algebra carrying a left-symmetric product into `sl(p+1)`.
//!
//! All algorithms are generic over [`Scalar`]. Two fields are provided:
//! exact rationals ([`Rational`]) for everything that must hold on the nose,
//! and double-precision complex numbers ([`Complex`]) for spectra that leave
//! the rationals.

pub mod catalog;
pub mod check;
pub mod derivations;
pub mod embed;
pub mod error;
pub mod frobenius;
pub mod lie;
pub mod linalg;
pub mod lsa;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod spectral;

pub use check::{CheckFailure, CheckResult};
pub use error::{Error, Result};
pub use lie::{Functional, LieAlgebra, ValidationReport, Vector};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use scalar::{FieldContext, FieldKind, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Approximate complex scalar.
pub type Complex = num_complex::Complex64;

pub type RationalMatrix = Matrix<Rational>;
pub type ComplexMatrix = Matrix<Complex>;
pub type RationalPolynomial = Polynomial<Rational>;
pub type RationalLieAlgebra = LieAlgebra<Rational>;
pub type ComplexLieAlgebra = LieAlgebra<Complex>;
