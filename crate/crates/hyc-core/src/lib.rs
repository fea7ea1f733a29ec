//! Numerical toolkit for Carleson measures on the right half-plane and the
//! boundedness of the Laplace transform into weighted `L^q` spaces.
//!
//! The crate is organised around a handful of concrete objects:
//!
//! * [`StepFunction`] — complex step functions on `[0, ∞)` with a phase
//!   modulation, the test class for all transform estimates;
//! * [`HalfPlaneMeasure`] — finite positive measures on `Re z ≥ 0` built from
//!   atoms, boundary densities, horizontal segments, and boxes;
//! * [`carleson_norm`] — the supremum of `μ(Q)/h` over boundary squares, with
//!   an exact candidate search for atomic/boundary measures and a certified
//!   branch-and-bound for the rest;
//! * [`laplace_eval`] / [`vertical_line_norm`] — pointwise Laplace transforms
//!   and certified `L^s` norms along vertical lines;
//! * [`hy_ratio`] / [`hy_lower_bound`] / [`verify_eqnorm`] — the embedding
//!   ratio `‖Lu‖^q / ‖u‖^q`, deterministic lower-bound searches, and the
//!   two-sided comparison against the Carleson norm;
//! * [`poisson_cz`] — Poisson extensions of real step functions, dyadic
//!   stopping-time decompositions, and the weak/strong type checks they feed.
//!
//! Everything is deterministic: random suites are seeded, quadrature is
//! adaptive with certified error accounting, and reported tolerances are the
//! tolerances actually achieved.

pub mod carleson;
pub mod consts;
pub mod error;
pub mod hy;
pub mod laplace;
pub mod measure;
pub mod poisson_cz;
pub(crate) mod quad;
pub mod report;
pub mod stepfun;
pub mod suites;

pub use carleson::{carleson_norm, default_carleson_tol, rn_bound_check, CarlesonResult, Method, Witness};
pub use consts::{
    a1_bound, a2_bound, babenko_constant, conjugate_exponent, hardy_constant, m_bound,
    marcinkiewicz_optimum, ExponentPair, MarcinkiewiczOptimum,
};
pub use error::{Error, Result};
pub use hy::{hy_lower_bound, hy_ratio, verify_eqnorm, witness_from_square, HyEstimate};
pub use laplace::{laplace_eval, phi, ray_tail_bound, taylor_bound_check, vertical_line_norm};
pub use measure::{BoundaryPiece, CarlesonSquare, Component, HalfPlaneMeasure};
pub use poisson_cz::{
    coverage_check, cz_decompose, poisson_eval, shadow_squares, strong_type_check,
    uhp_carleson_norm, weak_type_check, CzResult, RealStepFunction, RSquare, UhpComponent,
    UhpMeasure,
};
pub use report::{Check, VerificationReport};
pub use stepfun::StepFunction;

pub use num_complex::Complex64;
