//! Lie-algebraic machinery of u(N) and su(N), Weyl polar decomposition of
//! unitary matrices, and the Laplace-Beltrami operator on U(N) and SU(N) in
//! polar-coordinate and Casimir form, with numerical cross-checks between
//! the two.

pub mod error;
pub mod laplacian;
pub mod lie_basis;
pub mod matrix;
pub mod polar;
pub mod report;
pub mod representations;
pub mod sampling;
pub mod stencil;
pub mod su3;
pub mod tangent;

pub use error::{Error, Result};
pub use laplacian::{casimir_laplacian, full_laplacian, GroupFunction, RadialFunction};
pub use lie_basis::{BasisKind, GeneratorBasis};
pub use matrix::CMatrix;
pub use polar::{polar_decompose, AngleVector, PolarForm};
pub use report::VerificationReport;
pub use representations::{casimir_matrix, Partition, Representation};
pub use stencil::{StencilConfig, StencilOrder};
