//! Multiple orthogonal polynomials for a pair of weights built from Gauss'
//! hypergeometric function on (0,1).
//!
//! The crate constructs the type I pairs and type II (2-orthogonal)
//! polynomials on the step line, exposes their recurrence, differential and
//! continued-fraction structure, and verifies the defining identities —
//! exactly in rational arithmetic where the identities are algebraic, and to
//! explicit tolerances where they are analytic or asymptotic.
//!
//! Module map:
//! - [`numcore`]: scalars, polynomials, quadrature, roots, eigenvalues;
//! - [`hyperfun`]: Gamma/Pochhammer, 2F1, terminating pFq, entire 0F2;
//! - [`weights`]: the weight pair, moments, Nikishin S-fraction, Pearson;
//! - [`typeii`]: the monic 2-orthogonal sequence and its identities;
//! - [`typei`]: type I pairs, Rodrigues formula, derivative relations;
//! - [`asymptotics`]: ratio limit, zero density, Mehler-Heine scaling.

pub mod asymptotics;
pub mod error;
pub mod hyperfun;
pub mod numcore;
pub mod typei;
pub mod typeii;
pub mod weights;

pub use error::{Error, Result};
pub use numcore::{Poly, Rat};
pub use weights::Params;
