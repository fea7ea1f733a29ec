//! Upper-half-plane machinery: closed-form harmonic (Poisson) extensions of
//! real step functions, a dyadic stopping-time decomposition at a threshold,
//! the tripled squares that shadow its selected intervals, and the level-set
//! and `L^p` bounds those objects certify.
//!
//! Measures here live strictly above the real axis; every norm question is
//! answered by swapping coordinates `(x, y) → (y, x)`, which carries the
//! squares `R_{a,h} = [a, a+h] × (0, h]` onto the boundary squares of
//! [`crate::carleson_norm`] and lets that routine do the work.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::carleson::{carleson_norm, default_carleson_tol, CarlesonResult};
use crate::consts::m_bound;
use crate::error::{Error, Result};
use crate::measure::{Component, HalfPlaneMeasure};
use crate::report::VerificationReport;
use crate::Complex64;

/// Pointwise bound enforced outside the shadow squares: `|g| ≤ 6.5·α`.
const COVERAGE_FACTOR: f64 = 6.5;
/// Level-set mass bound factor: `μ(E) ≤ 10·‖μ‖·‖f‖₁`.
const WEAK_TYPE_FACTOR: f64 = 10.0;

/// A real-valued step function on the line: `f = f_k` on `[s_k, s_{k+1})`,
/// zero outside `[s₀, s_n]`. Unlike [`crate::StepFunction`] the support may
/// extend to negative abscissas and the values carry no phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RealStepRepr", into = "RealStepRepr")]
pub struct RealStepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RealStepRepr {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RealStepRepr> for RealStepFunction {
    type Error = Error;

    fn try_from(r: RealStepRepr) -> Result<Self> {
        RealStepFunction::new(r.breakpoints, r.values)
    }
}

impl From<RealStepFunction> for RealStepRepr {
    fn from(f: RealStepFunction) -> Self {
        RealStepRepr { breakpoints: f.breakpoints, values: f.values }
    }
}

impl RealStepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::invalid("a step function needs at least 2 breakpoints"));
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::invalid(format!(
                "breakpoint count {} must be value count {} plus one",
                breakpoints.len(),
                values.len()
            )));
        }
        if !breakpoints.iter().all(|t| t.is_finite()) {
            return Err(Error::invalid("breakpoints must be finite"));
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("breakpoints must be strictly increasing"));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("piece values must be finite"));
        }
        Ok(RealStepFunction { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Support interval `[s₀, s_n]`.
    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    pub fn is_null(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    /// Pointwise value with the half-open convention `[s_k, s_{k+1})`.
    pub fn eval(&self, x: f64) -> f64 {
        if x < self.breakpoints[0] || x >= *self.breakpoints.last().unwrap() {
            return 0.0;
        }
        // partition_point returns the first index with breakpoint > x
        let k = self.breakpoints.partition_point(|s| *s <= x);
        self.values[k - 1]
    }

    pub fn l1_norm(&self) -> f64 {
        self.values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(v, w)| v.abs() * (w[1] - w[0]))
            .sum()
    }

    /// `(Σ |f_k|^p Δ_k)^{1/p}`; `p = ∞` gives `max |f_k|`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::domain(format!("lp_norm needs p >= 1, got {p}")));
        }
        if p == f64::INFINITY {
            return Ok(self.sup_norm());
        }
        let sum: f64 = self
            .values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(v, w)| v.abs().powf(p) * (w[1] - w[0]))
            .sum();
        Ok(sum.powf(1.0 / p))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// `∫_{[lo, hi]} |f|`, exact piecewise arithmetic.
    fn integrate_abs(&self, lo: f64, hi: f64) -> f64 {
        self.values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(v, w)| {
                let over = (hi.min(w[1]) - lo.max(w[0])).max(0.0);
                v.abs() * over
            })
            .sum()
    }

    /// `sup_{(lo, hi)} |f|` over pieces meeting the open interval.
    fn sup_abs(&self, lo: f64, hi: f64) -> f64 {
        self.values
            .iter()
            .zip(self.breakpoints.windows(2))
            .filter(|(_, w)| hi.min(w[1]) > lo.max(w[0]))
            .map(|(v, _)| v.abs())
            .fold(0.0, f64::max)
    }
}

/// One mass-carrying piece of an [`UhpMeasure`]. Point masses must sit
/// strictly above the axis; one-dimensional pieces are vertical segments
/// (so their swapped image is a horizontal segment), and boxes may rest on
/// the axis, where their mass density vanishes in measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum UhpComponent {
    Atom { x: f64, y: f64, w: f64 },
    VerticalDensity { x: f64, y0: f64, y1: f64, rho: f64 },
    BoxDensity { x0: f64, x1: f64, y0: f64, y1: f64, rho: f64 },
}

impl UhpComponent {
    fn validate(&self) -> Result<()> {
        match self {
            UhpComponent::Atom { x, y, w } => {
                if !(x.is_finite() && y.is_finite() && w.is_finite()) {
                    return Err(Error::invalid("atom fields must be finite"));
                }
                if !(*y > 0.0) {
                    return Err(Error::domain(format!(
                        "point mass must lie strictly above the axis, got y = {y}"
                    )));
                }
                if !(*w > 0.0) {
                    return Err(Error::invalid(format!("atom weight must be positive, got {w}")));
                }
            }
            UhpComponent::VerticalDensity { x, y0, y1, rho } => {
                if !(x.is_finite() && y0.is_finite() && y1.is_finite() && rho.is_finite()) {
                    return Err(Error::invalid("segment fields must be finite"));
                }
                if !(*y0 >= 0.0 && y0 < y1) {
                    return Err(Error::domain(format!(
                        "vertical segment needs 0 <= y0 < y1, got [{y0}, {y1}]"
                    )));
                }
                if *rho < 0.0 {
                    return Err(Error::invalid(format!("density must be nonnegative, got {rho}")));
                }
            }
            UhpComponent::BoxDensity { x0, x1, y0, y1, rho } => {
                if ![x0, x1, y0, y1, rho].iter().all(|v| v.is_finite()) {
                    return Err(Error::invalid("box fields must be finite"));
                }
                if !(x0 < x1) {
                    return Err(Error::domain(format!("box needs x0 < x1, got [{x0}, {x1}]")));
                }
                if !(*y0 >= 0.0 && y0 < y1) {
                    return Err(Error::domain(format!(
                        "box needs 0 <= y0 < y1, got [{y0}, {y1}]"
                    )));
                }
                if *rho < 0.0 {
                    return Err(Error::invalid(format!("density must be nonnegative, got {rho}")));
                }
            }
        }
        Ok(())
    }

    /// Swap `(x, y) → (y, x)` into the right-half-plane component family.
    fn swapped(&self) -> Component {
        match *self {
            UhpComponent::Atom { x, y, w } => Component::Atom { x: y, y: x, w },
            UhpComponent::VerticalDensity { x, y0, y1, rho } => {
                Component::HorizontalDensity { y: x, x0: y0, x1: y1, rho }
            }
            UhpComponent::BoxDensity { x0, x1, y0, y1, rho } => {
                Component::BoxDensity { x0: y0, x1: y1, y0: x0, y1: x1, rho }
            }
        }
    }
}

/// A finite positive measure supported in the open upper half-plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UhpRepr", into = "UhpRepr")]
pub struct UhpMeasure {
    components: Vec<UhpComponent>,
}

#[derive(Serialize, Deserialize)]
struct UhpRepr {
    components: Vec<UhpComponent>,
}

impl TryFrom<UhpRepr> for UhpMeasure {
    type Error = Error;

    fn try_from(r: UhpRepr) -> Result<Self> {
        UhpMeasure::new(r.components)
    }
}

impl From<UhpMeasure> for UhpRepr {
    fn from(m: UhpMeasure) -> Self {
        UhpRepr { components: m.components }
    }
}

impl UhpMeasure {
    pub fn new(components: Vec<UhpComponent>) -> Result<Self> {
        for c in &components {
            c.validate()?;
        }
        Ok(UhpMeasure { components })
    }

    pub fn components(&self) -> &[UhpComponent] {
        &self.components
    }

    pub fn is_atomic(&self) -> bool {
        self.components.iter().all(|c| matches!(c, UhpComponent::Atom { .. }))
    }

    /// The right-half-plane measure with the same masses under
    /// `(x, y) → (y, x)`.
    pub fn swapped(&self) -> HalfPlaneMeasure {
        HalfPlaneMeasure::new(self.components.iter().map(UhpComponent::swapped).collect())
            .expect("validated upper-half-plane components swap to valid components")
    }
}

/// Carleson norm over the squares `R_{a,h} = [a, a+h] × (0, h]`: the
/// coordinate swap carries them onto boundary squares, so this delegates to
/// [`carleson_norm`] on the swapped measure. The reported witness square is
/// in swapped coordinates (`a` along the axis, side `h`).
pub fn uhp_carleson_norm(mu: &UhpMeasure, tol: f64) -> Result<CarlesonResult> {
    carleson_norm(&mu.swapped(), tol)
}

fn poisson_eval_raw(f: &RealStepFunction, x: f64, y: f64) -> f64 {
    let bp = f.breakpoints();
    let inv_pi = std::f64::consts::FRAC_1_PI;
    let mut acc = 0.0;
    for (k, v) in f.values().iter().enumerate() {
        if *v == 0.0 {
            continue;
        }
        let left = ((x - bp[k]) / y).atan();
        let right = ((x - bp[k + 1]) / y).atan();
        acc += v * (left - right);
    }
    inv_pi * acc
}

/// Harmonic extension of `f` to the point `x + iy`, `y > 0`: the convolution
/// with the kernel `y/(π(y² + t²))` in exact closed form,
/// `(1/π)·Σ_k f_k·[arctan((x−s_k)/y) − arctan((x−s_{k+1})/y)]`.
pub fn poisson_eval(f: &RealStepFunction, x: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::domain(format!(
            "harmonic extension needs y > 0, got y = {y}"
        )));
    }
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::domain("evaluation point must be finite".to_string()));
    }
    Ok(poisson_eval_raw(f, x, y))
}

/// Output of the dyadic stopping-time decomposition at threshold `alpha`.
///
/// Invariants (enforced by construction, re-checked by the property suite):
/// the selected intervals are pairwise disjoint dyadic cells of the recorded
/// root, each carries mean `alpha < M_j ≤ 2·alpha` of `|f|`, their total
/// length is at most `‖f‖₁/alpha`, and `|f| ≤ alpha` off their union.
#[derive(Debug, Clone, Serialize)]
pub struct CzResult {
    pub alpha: f64,
    /// Selected intervals `[a_j, b_j]`, sorted by left endpoint.
    pub intervals: Vec<(f64, f64)>,
    /// Mean of `|f|` over each selected interval, parallel to `intervals`.
    pub averages: Vec<f64>,
    /// The enlarged dyadic root interval the recursion started from.
    pub root: (f64, f64),
}

impl CzResult {
    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

/// Dyadic stopping-time decomposition of `f` at threshold `alpha > 0`.
///
/// The root is the smallest power-of-two cell containing the support, with
/// its left edge snapped to the half-scale grid anchored at 0, enlarged by
/// alternate right/left doubling until the mean of `|f|` drops to `alpha`.
/// Bisection then selects a half exactly when its mean exceeds `alpha`
/// (the parent mean is at most `alpha`, so the selected mean is at most
/// `2·alpha`) and recurses into halves that still see `sup |f| > alpha`.
/// Step breakpoints are binary rationals, so the recursion aligns with them
/// exactly and terminates.
pub fn cz_decompose(f: &RealStepFunction, alpha: f64) -> Result<CzResult> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!("threshold must be positive, got {alpha}")));
    }
    let (slo, shi) = f.support();
    let span = shi - slo;

    // smallest power-of-two cell, left edge on the half-scale grid
    let mut k = span.log2().ceil() as i32;
    let (mut lo, mut hi);
    loop {
        let len = (2.0_f64).powi(k);
        let half = len / 2.0;
        lo = (slo / half).floor() * half;
        if lo + len >= shi {
            hi = lo + len;
            break;
        }
        k += 1;
    }

    // enlarge by doubling, alternating sides, until the mean is below threshold
    let mut d = 0usize;
    while f.integrate_abs(lo, hi) / (hi - lo) > alpha {
        let w = hi - lo;
        if d % 2 == 0 {
            hi += w;
        } else {
            lo -= w;
        }
        d += 1;
    }
    let root = (lo, hi);

    let mut selected: Vec<(f64, f64, f64)> = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((l, r)) = stack.pop() {
        if f.sup_abs(l, r) <= alpha {
            continue;
        }
        let mid = l + (r - l) / 2.0;
        if mid <= l || mid >= r {
            // interval is at floating-point resolution; nothing to split
            continue;
        }
        for (a, b) in [(l, mid), (mid, r)] {
            let avg = f.integrate_abs(a, b) / (b - a);
            if avg > alpha {
                selected.push((a, b, avg));
            } else if f.sup_abs(a, b) > alpha {
                stack.push((a, b));
            }
        }
    }
    selected.sort_by(|p, q| p.0.total_cmp(&q.0));

    Ok(CzResult {
        alpha,
        intervals: selected.iter().map(|&(a, b, _)| (a, b)).collect(),
        averages: selected.iter().map(|&(_, _, m)| m).collect(),
        root,
    })
}

/// A square `[x0, x1] × (0, side]` resting on the axis, with
/// `x1 − x0 = side`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RSquare {
    pub x0: f64,
    pub x1: f64,
    pub side: f64,
}

impl RSquare {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y > 0.0 && y <= self.side
    }
}

/// The squares shadowing the selected intervals: each `[a, b]` grows to the
/// tripled base `[a − (b−a), b + (b−a)]` with side `3(b−a)`.
pub fn shadow_squares(cz: &CzResult) -> Vec<RSquare> {
    cz.intervals
        .iter()
        .map(|&(a, b)| {
            let len = b - a;
            RSquare { x0: a - len, x1: b + len, side: 3.0 * len }
        })
        .collect()
}

fn outside_all(squares: &[RSquare], x: f64, y: f64) -> bool {
    squares.iter().all(|s| !s.contains(x, y))
}

/// Samples the region above the axis and outside the shadow squares and
/// checks the harmonic extension of `f` stays within `6.5·(λ/7)` there.
///
/// Sampling is seeded and deterministic: roughly a tenth of the points are
/// forced within `0.01·(side/3)` of a square boundary, a fixed ring of
/// far-field points probes the kernel-decay regime, and the rest are drawn
/// uniformly (half log-scaled toward the axis) over the support window
/// expanded by `10·‖f‖₁/λ`.
pub fn coverage_check(
    f: &RealStepFunction,
    lambda: f64,
    n_samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(format!("level must be positive, got {lambda}")));
    }
    if n_samples == 0 {
        return Err(Error::domain("need at least one sample".to_string()));
    }
    let alpha = lambda / 7.0;
    let cz = cz_decompose(f, alpha)?;
    let squares = shadow_squares(&cz);
    let bound = COVERAGE_FACTOR * alpha;

    let (slo, shi) = f.support();
    let span = shi - slo;
    let l1 = f.l1_norm();
    let w_ext = if l1 > 0.0 { WEAK_TYPE_FACTOR * l1 / lambda } else { 1.0 };
    let x_lo = slo - w_ext;
    let x_hi = shi + w_ext;
    let max_side = squares.iter().map(|s| s.side).fold(0.0, f64::max);
    let height = (2.0 * max_side).max(w_ext).max(span).max(1e-3);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_near = if squares.is_empty() { 0 } else { (n_samples / 10).max(1) };
    let n_interior = n_samples - n_near;

    let mut max_interior = 0.0_f64;
    for _ in 0..n_interior {
        let mut placed = None;
        for _ in 0..200 {
            let x = rng.gen_range(x_lo..x_hi);
            let y = if rng.gen_bool(0.5) {
                rng.gen_range(0.0..height).max(1e-12)
            } else {
                // log-scaled toward the axis, down to 1e-6 of the window height
                height * (-rng.gen_range(0.0..1.0) * (1e6_f64).ln()).exp()
            };
            if outside_all(&squares, x, y) {
                placed = Some((x, y));
                break;
            }
        }
        // fallback: directly above the squares, always exterior
        let (x, y) = placed.unwrap_or_else(|| {
            (
                rng.gen_range(x_lo..x_hi),
                max_side + rng.gen_range(0.0..height).max(1e-12),
            )
        });
        max_interior = max_interior.max(poisson_eval_raw(f, x, y).abs());
    }

    let mut max_near = 0.0_f64;
    for i in 0..n_near {
        let sq = &squares[i % squares.len()];
        let margin = 0.01 * sq.side / 3.0;
        let mut placed = None;
        for _ in 0..50 {
            let delta = rng.gen_range(0.0..margin).max(1e-14 * sq.side);
            let (x, y) = match i % 3 {
                0 => (sq.x0 - delta, rng.gen_range(0.0..sq.side).max(1e-12)),
                1 => (sq.x1 + delta, rng.gen_range(0.0..sq.side).max(1e-12)),
                _ => (rng.gen_range(sq.x0..sq.x1), sq.side + delta),
            };
            if outside_all(&squares, x, y) {
                placed = Some((x, y));
                break;
            }
        }
        let (x, y) = placed.unwrap_or((sq.x0, sq.side + margin.max(1e-12)));
        max_near = max_near.max(poisson_eval_raw(f, x, y).abs());
    }

    let mut max_far = 0.0_f64;
    let reach = 5.0 * (w_ext + span + 1.0);
    for m in 1..=3 {
        let fm = m as f64;
        let pts = [
            (slo - fm * reach, fm * height),
            (shi + fm * reach, height / fm),
            (0.5 * (slo + shi), max_side + 10.0 * fm * height),
        ];
        for (x, y) in pts {
            if outside_all(&squares, x, y) {
                max_far = max_far.max(poisson_eval_raw(f, x, y).abs());
            }
        }
    }

    let mut report = VerificationReport::new("coverage", seed);
    report.param("lambda", lambda);
    report.param("alpha", alpha);
    report.param("n_interior", n_interior);
    report.param("n_near_boundary", n_near);
    report.param("shadow_squares", squares.len());
    report.param("total_shadow_side", squares.iter().map(|s| s.side).sum::<f64>());
    report.check("interior_max_g <= 6.5*alpha", max_interior, bound, 0.0);
    report.check("near_boundary_max_g <= 6.5*alpha", max_near, bound, 0.0);
    report.check("far_field_max_g <= 6.5*alpha", max_far, bound, 0.0);
    Ok(report)
}

/// Exact level-set mass bound for atomic measures:
/// `μ{|g| > λ} ≤ 10·‖μ‖·‖f‖₁` with `g` the harmonic extension of `f` and
/// `‖μ‖` the Carleson norm over the squares `R_{a,h}`. Atom evaluations and
/// the level-set mass are exact; non-atomic measures are rejected because
/// the set `{|g| > λ}` has no closed form for them.
pub fn weak_type_check(
    f: &RealStepFunction,
    mu: &UhpMeasure,
    lambda: f64,
) -> Result<VerificationReport> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(format!("level must be positive, got {lambda}")));
    }
    if !mu.is_atomic() {
        return Err(Error::NotApplicable(
            "exact level-set mass needs an atomic measure".to_string(),
        ));
    }
    let swapped = mu.swapped();
    let cn = uhp_carleson_norm(mu, default_carleson_tol(&swapped))?;
    let mut level_mass = 0.0;
    for c in mu.components() {
        if let UhpComponent::Atom { x, y, w } = c {
            if poisson_eval_raw(f, *x, *y).abs() > lambda {
                level_mass += w;
            }
        }
    }
    let l1 = f.l1_norm();
    let rhs = WEAK_TYPE_FACTOR * cn.norm * l1;

    let mut report = VerificationReport::new("weak_type", 0);
    report.param("lambda", lambda);
    report.param("carleson_norm", cn.norm);
    report.param("f_l1", l1);
    report.param("level_set_mass", level_mass);
    report.check(
        "level_set_mass <= 10*carleson*l1",
        level_mass,
        rhs,
        1e-12 * (1.0 + rhs),
    );
    Ok(report)
}

/// `L^p` contraction bound: `‖g‖_{L^p(dμ)} ≤ (m_bound(p)·‖μ‖)^{1/p}·‖f‖_p`,
/// with the left side integrated adaptively to absolute tolerance `tol` and
/// the same `tol` granted as slack in the comparison.
pub fn strong_type_check(
    f: &RealStepFunction,
    mu: &UhpMeasure,
    p: f64,
    tol: f64,
) -> Result<VerificationReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::domain(format!("exponent must satisfy 1 < p < inf, got {p}")));
    }
    let m = m_bound(p)?;
    let swapped = mu.swapped();
    let cn = uhp_carleson_norm(mu, default_carleson_tol(&swapped))?;
    // the swapped integrand reads upper-half-plane coordinates back off the
    // right-half-plane point: x along the axis is Im, height is Re
    let g_norm = swapped.integrate_pnorm(
        |z| Complex64::new(poisson_eval_raw(f, z.im, z.re), 0.0),
        p,
        tol,
    )?;
    let f_norm = f.lp_norm(p)?;
    let rhs = (m * cn.norm).powf(1.0 / p) * f_norm;

    let mut report = VerificationReport::new("strong_type", 0);
    report.param("p", p);
    report.param("m_bound", m);
    report.param("carleson_norm", cn.norm);
    report.param("f_lp", f_norm);
    report.param("g_lp_mu", g_norm);
    report.check("g_norm <= (m*carleson)^(1/p)*f_norm", g_norm, rhs, tol);
    Ok(report)
}
