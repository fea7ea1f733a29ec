//! Randomized invariants: algebraic laws the library must satisfy on every
//! input, checked over proptest-generated populations. Anything that needs
//! heavy quadrature stays out of here (see the acceptance target); these
//! properties all run on exact or near-exact code paths.

mod common;

use hyc_core::carleson::carleson_norm;
use hyc_core::consts::{conjugate_exponent, marcinkiewicz_optimum};
use hyc_core::hy::{hy_lower_bound, hy_ratio};
use hyc_core::laplace::phi;
use hyc_core::measure::{CarlesonSquare, Component, HalfPlaneMeasure};
use hyc_core::poisson_cz::{cz_decompose, RealStepFunction};
use hyc_core::stepfun::StepFunction;
use hyc_core::Complex64;

use proptest::prelude::*;

// --- strategies -----------------------------------------------------------

fn atom_strategy() -> impl Strategy<Value = Component> {
    (0.05f64..3.0, -2.0f64..2.0, 0.05f64..2.0)
        .prop_map(|(x, y, w)| Component::Atom { x, y, w })
}

fn atomic_measure_strategy() -> impl Strategy<Value = HalfPlaneMeasure> {
    prop::collection::vec(atom_strategy(), 1..6)
        .prop_map(|atoms| HalfPlaneMeasure::new(atoms).unwrap())
}

fn step_function_strategy() -> impl Strategy<Value = StepFunction> {
    (
        prop::collection::vec((0.05f64..1.2, -1.0f64..1.0, -1.0f64..1.0), 1..5),
        0.0f64..0.5,
        -3.0f64..3.0,
    )
        .prop_map(|(pieces, start, modulation)| {
            let mut bps = vec![start];
            let mut values = Vec::new();
            for (gap, re, im) in pieces {
                bps.push(bps.last().unwrap() + 0.05 + gap);
                values.push(Complex64::new(re, im + 0.3)); // keep some mass
            }
            StepFunction::new(bps, values, modulation).unwrap()
        })
}

fn real_step_function_strategy() -> impl Strategy<Value = RealStepFunction> {
    (
        prop::collection::vec((0.05f64..1.5, -3.0f64..3.0), 1..7),
        -4.0f64..0.0,
    )
        .prop_map(|(pieces, start)| {
            let mut bps = vec![start];
            let mut values = Vec::new();
            for (gap, v) in pieces {
                bps.push(bps.last().unwrap() + gap);
                values.push(v + 0.2); // avoid the all-zero corner
            }
            RealStepFunction::new(bps, values).unwrap()
        })
}

// --- exponent and constant laws -------------------------------------------

proptest! {
    #[test]
    fn conjugate_is_an_involution(p in 1.0001f64..50.0) {
        let pp = conjugate_exponent(p).unwrap();
        let back = conjugate_exponent(pp).unwrap();
        prop_assert!((back - p).abs() <= 1e-9 * p);
        prop_assert!((1.0 / p + 1.0 / pp - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn interpolation_cost_minimum_is_global(r in 1.0001f64..10.0) {
        // the reported optimum never exceeds the cost at any other point
        let opt = marcinkiewicz_optimum();
        let cost = (2.0f64).powf(r) * r / (r - 1.0);
        prop_assert!(opt.m <= cost + 1e-9, "m={} cost({})={}", opt.m, r, cost);
    }

    #[test]
    fn phi_is_a_contraction_with_quadratic_error(re in 0.0f64..10.0, im in -10.0f64..10.0) {
        let w = Complex64::new(re, im);
        let v = phi(w);
        prop_assert!(v.norm() <= 1.0 + 1e-12);
        prop_assert!((v - Complex64::new(1.0, 0.0)).norm() <= 0.5 * w.norm() + 1e-12);
    }
}

// --- step function laws -----------------------------------------------------

proptest! {
    #[test]
    fn rescaling_preserves_its_norm(u in step_function_strategy(),
                                    h in 0.05f64..20.0,
                                    p in 1.01f64..2.0) {
        let v = u.scale(h, p).unwrap();
        let a = u.lp_norm(p).unwrap();
        let b = v.lp_norm(p).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn modulation_preserves_all_norms(u in step_function_strategy(), a in -5.0f64..5.0) {
        let v = u.modulate(a).unwrap();
        for q in [1.0, 1.5, 2.0, f64::INFINITY] {
            let x = u.lp_norm(q).unwrap();
            let y = v.lp_norm(q).unwrap();
            prop_assert!((x - y).abs() <= 1e-12 * x.max(1.0));
        }
    }

    #[test]
    fn rescaling_composes_multiplicatively(u in step_function_strategy(),
                                           h1 in 0.1f64..5.0,
                                           h2 in 0.1f64..5.0,
                                           p in 1.01f64..2.0) {
        let once = u.scale(h1 * h2, p).unwrap();
        let twice = u.scale(h1, p).unwrap().scale(h2, p).unwrap();
        for (x, y) in once.breakpoints().iter().zip(twice.breakpoints()) {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
        for (x, y) in once.values().iter().zip(twice.values()) {
            prop_assert!((x - y).norm() <= 1e-12 * x.norm().max(1.0));
        }
        prop_assert!((once.modulation() - twice.modulation()).abs() <= 1e-12);
    }
}

// --- measure laws -----------------------------------------------------------

proptest! {
    #[test]
    fn square_mass_is_additive_and_monotone(mu in atomic_measure_strategy(),
                                            a in -3.0f64..3.0,
                                            h in 0.1f64..4.0,
                                            grow in 0.0f64..2.0) {
        let q = CarlesonSquare::new(a, h).unwrap();
        // additivity across a split of the component list
        let comps = mu.components();
        let k = comps.len() / 2;
        let left = HalfPlaneMeasure::new(comps[..k].to_vec()).unwrap();
        let right = HalfPlaneMeasure::new(comps[k..].to_vec()).unwrap();
        let total = mu.measure_square(&q);
        prop_assert!(
            (left.measure_square(&q) + right.measure_square(&q) - total).abs() <= 1e-12
        );
        // monotonicity under square growth
        let big = CarlesonSquare::new(a - grow, h + 2.0 * grow).unwrap();
        prop_assert!(total <= mu.measure_square(&big) + 1e-12);
    }

    #[test]
    fn norm_is_homogeneous_in_the_weights(mu in atomic_measure_strategy(), c in 0.1f64..10.0) {
        let scaled: Vec<Component> = mu
            .components()
            .iter()
            .map(|comp| match *comp {
                Component::Atom { x, y, w } => Component::Atom { x, y, w: c * w },
                ref other => other.clone(),
            })
            .collect();
        let nu = HalfPlaneMeasure::new(scaled).unwrap();
        let a = carleson_norm(&mu, 1e-9).unwrap().norm;
        let b = carleson_norm(&nu, 1e-9).unwrap().norm;
        prop_assert!((b - c * a).abs() <= 1e-9 * (1.0 + c * a));
    }

    #[test]
    fn dilation_with_weights_restored_is_an_isometry(mu in atomic_measure_strategy(),
                                                     lambda in 0.2f64..5.0) {
        // (x, y, w) -> (λx, λy, λw) preserves the norm;
        // without the weight factor the norm scales by 1/λ.
        let moved: Vec<Component> = mu
            .components()
            .iter()
            .map(|comp| match *comp {
                Component::Atom { x, y, w } => Component::Atom {
                    x: lambda * x,
                    y: lambda * y,
                    w: lambda * w,
                },
                ref other => other.clone(),
            })
            .collect();
        let nu = HalfPlaneMeasure::new(moved).unwrap();
        let a = carleson_norm(&mu, 1e-9).unwrap().norm;
        let b = carleson_norm(&nu, 1e-9).unwrap().norm;
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a));
    }
}

// --- transform-ratio laws ----------------------------------------------------

proptest! {
    #[test]
    fn ratio_ignores_a_global_phase(mu in atomic_measure_strategy(),
                                    u in step_function_strategy(),
                                    theta in 0.0f64..6.28) {
        let rot = Complex64::from_polar(1.0, theta);
        let v = StepFunction::new(
            u.breakpoints().to_vec(),
            u.values().iter().map(|c| rot * c).collect(),
            u.modulation(),
        )
        .unwrap();
        let p = 1.5;
        let a = hy_ratio(&mu, &u, p, 1e-9).unwrap();
        let b = hy_ratio(&mu, &v, p, 1e-9).unwrap();
        prop_assert!((a - b).abs() <= 1e-11 * (1.0 + a));
    }

    #[test]
    fn ratio_is_linear_in_the_measure(mu in atomic_measure_strategy(),
                                      u in step_function_strategy(),
                                      c in 0.1f64..10.0) {
        let scaled: Vec<Component> = mu
            .components()
            .iter()
            .map(|comp| match *comp {
                Component::Atom { x, y, w } => Component::Atom { x, y, w: c * w },
                ref other => other.clone(),
            })
            .collect();
        let nu = HalfPlaneMeasure::new(scaled).unwrap();
        let p = 1.25;
        let a = hy_ratio(&mu, &u, p, 1e-9).unwrap();
        let b = hy_ratio(&nu, &u, p, 1e-9).unwrap();
        prop_assert!((b - c * a).abs() <= 1e-10 * (1.0 + c * a));
    }
}

// --- search and decomposition laws --------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn search_improves_with_budget(mu in atomic_measure_strategy(),
                                   seed in 0u64..1000,
                                   b1 in 1usize..8,
                                   extra in 1usize..8) {
        let lo = hy_lower_bound(&mu, 1.5, b1, seed).unwrap();
        let hi = hy_lower_bound(&mu, 1.5, b1 + extra, seed).unwrap();
        prop_assert!(lo.lower_bound <= hi.lower_bound + 1e-12);
    }
}

proptest! {
    #[test]
    fn decomposition_means_are_sandwiched(f in real_step_function_strategy(),
                                          frac in 0.05f64..1.5) {
        let alpha = frac * f.sup_norm();
        prop_assume!(alpha > 0.0);
        let cz = cz_decompose(&f, alpha).unwrap();
        for w in cz.intervals.windows(2) {
            prop_assert!(w[0].1 <= w[1].0 + 1e-12);
        }
        for m in &cz.averages {
            prop_assert!(*m > alpha && *m <= 2.0 * alpha * (1.0 + 1e-12));
        }
        prop_assert!(cz.total_length() <= f.l1_norm() / alpha + 1e-9);
    }
}
