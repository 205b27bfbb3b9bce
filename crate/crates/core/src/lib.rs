//! Radial harmonic analysis on one-sheeted hyperboloids.
//!
//! The hyperboloid X = {x₁² + … + xₙ² − xₙ₊₁² = 1} carries an invariant
//! Laplace–Beltrami operator whose K-finite eigenfunctions separate into a
//! spherical-harmonic factor and a radial factor. This crate makes that
//! radial layer executable:
//!
//! * [`specfun`] — Pochhammer symbols, Gamma values (exact at half-integers),
//!   the Gauss hypergeometric series, equal-index Jacobi polynomials, and the
//!   logarithmic second solution of the hypergeometric equation;
//! * [`eigen`] — the radial eigenfunctions, their reflections and second
//!   solutions, ODE residuals, asymptotic constants and zonal harmonics;
//! * [`spectrum`] — which eigenspaces meet L², the tempered space and the
//!   weighted L^p scale, decided exactly and corroborated by quadrature;
//! * [`ladder`] — exact raising/lowering coefficients, ladder identities,
//!   irreducibility as connectivity, and the equivalence certificate built
//!   from basis-invariant coefficient products.
//!
//! Exact rational arithmetic (with tracked powers of √π) backs every
//! classification and certification path; floating point is reserved for
//! residual checks, asymptotic probes and quadrature.

pub mod eigen;
pub mod error;
pub mod ladder;
pub mod odeint;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod specfun;
pub mod spectrum;

pub use eigen::{Branch, Geometry, RadialSolution, SpectralParam};
pub use error::{Error, Result};
pub use ladder::{EquivalenceReport, LadderCoeffs, LadderFamily};
pub use scalar::ExactScalar;
pub use spectrum::{DiscreteKTypeSet, MembershipVerdict, ParityClass, TheoremVerdict};
