//! Gamma matrices of the functional equations of zeta functions attached to
//! homogeneous cones, their factorization into diagonal and rotation
//! factors, and numerical verification of the identities relating them.

pub mod cli;
pub mod cone_model;
pub mod error;
pub mod gamma_matrices;
pub mod matrix;
pub mod quadrature;
pub mod sign_algebra;
pub mod special_functions;
pub mod structured_factors;
pub mod verification;
pub mod zeta_numeric;

pub use cone_model::{catalog, ConeStructure, RationalVector};
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
