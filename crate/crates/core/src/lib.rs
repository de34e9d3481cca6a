//! Numerical calculus of elementary symmetric functions on Gårding cones.
//!
//! The crate evaluates, exactly verifies, and stress-tests the σ_k machinery
//! behind k-Hessian curvature estimates:
//!
//! * [`symfunc`] — σ_m, minors σ_m(κ|ab…), and first/second partials, in
//!   three scalar modes (f64 / arbitrary-precision / exact rational);
//! * [`cone`] — Γ_k membership, the iterated-partial characterization,
//!   Maclaurin gaps, and seeded rejection sampling of cone points;
//! * [`forms`] — the concavity quadratic form, its matrix, the four
//!   auxiliary forms **A**/**B**/**C**/**D**, the Cauchy–Schwarz minorant,
//!   and the explicit lower bound with its exact assembly identity;
//! * [`lemmas`] — signed gap evaluators for the standalone inequalities
//!   (Θ-bounds, ratio bounds, negativity bounds, exponential divided
//!   differences, the piecewise L function, dominance inequalities);
//! * [`harness`] — the exponential test function P, the five stability
//!   terms A_i…E_i, their nonnegativity claim, and the case classifier;
//! * [`exactcheck`] — randomized exact (rational) verification of every
//!   algebraic identity used by the derivations;
//! * [`eigen`] — symmetric minimum-eigenvalue solver generic over the
//!   scalar kernel (tridiagonalize + Sturm bisection) plus an f64 Jacobi
//!   decomposition for eigenvector witnesses;
//! * [`search`] — counterexample scans, local refinement, and κ_1-threshold
//!   measurement with deterministic seeding;
//! * [`report`] — versioned JSON report envelope and CSV witness output.

pub mod cone;
pub mod eigen;
pub mod error;
pub mod exactcheck;
pub mod forms;
pub mod harness;
pub mod lemmas;
pub mod report;
pub mod scalar;
pub mod search;
pub mod symfunc;

pub use error::{Error, Result};
pub use scalar::{Ext, Rat, Real, ScalarMode};
