//! Shared helpers for the integration test targets: an independent
//! brute-force oracle for the Carleson norm of atomic measures, a pure-atom
//! population generator, and the acceptance line printer.
// each test target compiles this module separately and uses a subset
#![allow(dead_code)]

use hyc_core::measure::{CarlesonSquare, Component, HalfPlaneMeasure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute-force Carleson norm of an atomic measure over a dense grid of
/// squares, with no candidate enumeration or pruning.
///
/// Heights run geometrically with step `1+delta` from just below the
/// smallest atom abscissa to just above `max(x_max, y-span)`; for each
/// height the anchor sweeps linearly with step `delta·h/4`. Every evaluated
/// ratio is a true `μ(Q)/h ≤ ‖μ‖`, and the optimum square `(a*, h*)` is
/// approximated by a grid square capturing the same atoms with
/// `h ≤ h*(1+1.5δ)`, so the returned value sits within a factor
/// `1 + 1.5·delta` below the supremum.
pub fn grid_carleson_norm_atomic(mu: &HalfPlaneMeasure, delta: f64) -> f64 {
    assert!(mu.is_atomic(), "grid oracle only handles atomic measures");
    assert!(delta > 0.0 && delta < 0.1);
    let atoms: Vec<(f64, f64, f64)> = mu
        .components()
        .iter()
        .map(|c| match *c {
            Component::Atom { x, y, w } => (x, y, w),
            _ => unreachable!(),
        })
        .collect();
    if atoms.is_empty() {
        return 0.0;
    }
    if atoms.iter().any(|&(x, _, _)| x == 0.0) {
        return f64::INFINITY;
    }

    let x_min = atoms.iter().map(|a| a.0).fold(f64::INFINITY, f64::min);
    let x_max = atoms.iter().map(|a| a.0).fold(0.0_f64, f64::max);
    let y_lo = atoms.iter().map(|a| a.1).fold(f64::INFINITY, f64::min);
    let y_hi = atoms.iter().map(|a| a.1).fold(f64::NEG_INFINITY, f64::max);
    let h_max = x_max.max(y_hi - y_lo).max(x_min) * 1.02;

    let mut best = 0.0_f64;
    let mut h = 0.99 * x_min;
    while h <= h_max {
        // only atoms within depth h can ever land in a height-h square
        let reachable: Vec<&(f64, f64, f64)> =
            atoms.iter().filter(|&&(x, _, _)| x <= h).collect();
        if !reachable.is_empty() {
            let a_step = delta * h / 4.0;
            let mut a = y_lo - h;
            while a <= y_hi {
                let mass: f64 = reachable
                    .iter()
                    .filter(|&&&(_, y, _)| y >= a && y <= a + h)
                    .map(|&&(_, _, w)| w)
                    .sum();
                best = best.max(mass / h);
                a += a_step;
            }
        }
        h *= 1.0 + delta;
    }
    best
}

/// Purely atomic seeded measures: 2–8 interior atoms in the strip
/// `x ∈ [0.1, 3)`, `y ∈ [−2, 2)`, weights in `[0.1, 2)`.
pub fn atomic_measures(seed: u64, n: usize) -> Vec<HalfPlaneMeasure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let comps: Vec<Component> = (0..rng.gen_range(2..=8usize))
                .map(|_| Component::Atom {
                    x: rng.gen_range(0.1..3.0),
                    y: rng.gen_range(-2.0..2.0),
                    w: rng.gen_range(0.1..2.0),
                })
                .collect();
            HalfPlaneMeasure::new(comps).expect("generated measure is valid")
        })
        .collect()
}

/// Print the one-line verdict for an acceptance criterion.
pub fn acceptance_line(number: usize, passed: bool, detail: &str) {
    println!(
        "ACCEPTANCE {number:02} {} {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
}

/// Convenience: a square that must exist.
pub fn square(a: f64, h: f64) -> CarlesonSquare {
    CarlesonSquare::new(a, h).expect("square parameters are valid")
}
