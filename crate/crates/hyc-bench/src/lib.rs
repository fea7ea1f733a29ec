//! Shared input builders for the kernel benchmarks.

use hyc_core::measure::{BoundaryPiece, Component, HalfPlaneMeasure};
use hyc_core::poisson_cz::RealStepFunction;
use hyc_core::stepfun::StepFunction;
use hyc_core::Complex64;

/// A six-piece modulated step function with irrational-looking breakpoints.
pub fn bench_step_function() -> StepFunction {
    let bps = vec![0.1, 0.7, 1.3, 2.2, 3.1, 4.5, 6.0];
    let values = vec![
        Complex64::new(0.9, -0.3),
        Complex64::new(-0.4, 0.8),
        Complex64::new(0.2, 0.1),
        Complex64::new(-0.7, -0.6),
        Complex64::new(0.5, 0.4),
        Complex64::new(0.1, -0.9),
    ];
    StepFunction::new(bps, values, 1.7).expect("valid bench function")
}

/// Eight atoms: exact-path Carleson input.
pub fn bench_atoms() -> HalfPlaneMeasure {
    let coords = [
        (0.3, -1.2, 0.7),
        (0.9, 0.4, 1.1),
        (1.4, -0.3, 0.5),
        (0.6, 1.8, 0.9),
        (2.1, 0.9, 1.3),
        (1.8, -1.7, 0.4),
        (0.2, 0.1, 0.8),
        (2.7, 1.1, 0.6),
    ];
    HalfPlaneMeasure::new(
        coords
            .iter()
            .map(|&(x, y, w)| Component::Atom { x, y, w })
            .collect(),
    )
    .expect("valid bench measure")
}

/// Atoms plus boxes plus a boundary piece: branch-and-bound input.
pub fn bench_mixed_measure() -> HalfPlaneMeasure {
    let mut comps: Vec<Component> = bench_atoms().components().to_vec();
    comps.push(Component::BoxDensity { x0: 0.2, x1: 1.1, y0: -0.8, y1: 0.6, rho: 0.7 });
    comps.push(Component::BoxDensity { x0: 0.5, x1: 1.7, y0: 0.9, y1: 1.9, rho: 0.4 });
    comps.push(Component::BoundaryDensity {
        pieces: vec![BoundaryPiece { y0: -2.0, y1: 2.0, rho: 0.3 }],
    });
    HalfPlaneMeasure::new(comps).expect("valid bench measure")
}

/// A ten-piece real step function and a threshold deep below its sup.
pub fn bench_real_function() -> (RealStepFunction, f64) {
    let bps = vec![-4.0, -3.1, -2.2, -1.0, -0.4, 0.3, 1.1, 1.9, 2.8, 3.5, 4.2];
    let values = vec![0.8, -2.4, 1.2, -0.5, 3.1, -1.8, 0.4, 2.2, -0.9, 1.5];
    let f = RealStepFunction::new(bps, values).expect("valid bench function");
    (f, 0.35)
}
