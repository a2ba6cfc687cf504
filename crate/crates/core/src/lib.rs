//! Exact Born-Oppenheimer wave functions near an isotropic conic level
//! crossing.
//!
//! The crate builds the two-component radial solutions of the canonical
//! zero-energy crossing system from 0F3 hypergeometric series, assembles the
//! full two-dimensional wave field, and verifies both against an independent
//! adaptive ODE integrator and WKB asymptotics.
//!
//! Modules:
//! - [`bigfloat`]: configurable-precision real/complex scalars.
//! - [`hypergeom`]: 0F3 series, identities, asymptotics, Gamma.
//! - [`radial`]: exact basis solutions and the bounded combination of the
//!   canonical coupled radial system.
//! - [`oracle`]: adaptive Runge-Kutta integration of the canonical and full
//!   radial models, WKB reference solutions.
//! - [`wavefield`]: angular basis, wave-function assembly, mixing weight and
//!   scaling scans.

pub mod bigfloat;
pub mod error;
pub mod hypergeom;
pub mod oracle;
pub mod radial;
pub mod wavefield;

pub use bigfloat::{BigComplex, BigReal, Rational};
pub use error::{Error, Result};
