//! Exact computation of tensored Segre classes for subschemes of projective
//! space cut out by forms of a common degree.
//!
//! The crate is organised in three layers:
//!
//! * [`kernel`]: sparse polynomials over `F_p` or `Q`, Buchberger's algorithm,
//!   ideal quotients, saturation and Hilbert series of homogeneous ideals.
//! * [`chow`]: integer Chow classes of `P^n`, the twist (`⊗`) action of
//!   line bundles, joins with linear spaces and Segre zeta functions.
//! * [`engine`]: the residual-degree algorithm that turns degrees of
//!   residual schemes of random combinations into Segre classes, and CSM
//!   classes of hypersurfaces built on top of it.

pub mod chow;
pub mod engine;
pub mod kernel;

pub use chow::{ChowClass, SegreZeta, SubvarietyModel, TwistedSegreClass};
pub use engine::{ResidualReport, SegreJob};
pub use kernel::{Field, Ideal, PolyRing, Polynomial, PrimeField, Rationals};
