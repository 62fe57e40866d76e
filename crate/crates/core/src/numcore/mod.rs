//! Numerical substrate: scalar backends, dense polynomial algebra,
//! double-exponential quadrature, simultaneous root finding and Hessenberg
//! eigenvalues.
//!
//! Everything here is a pure function of its inputs; values are immutable
//! after construction and safe to share across threads.

pub mod dd;
pub mod eig;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod scalar;

pub use eig::{hessenberg_eigenvalues, hessenberg_eigenvalues_dd};
pub use poly::Poly;
pub use quad::{tanh_sinh_integrate, tanh_sinh_integrate2};
pub use roots::{poly_roots, real_roots_polished};
pub use scalar::{approx_eq, rat, rint, Backend, Rat, Scalar};
