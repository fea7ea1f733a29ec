//! Modulated complex step functions on `[0, ∞)`: the test-function class.
//!
//! A [`StepFunction`] is `u(t) = c_k · e^{iat}` on `[t_k, t_{k+1})` and `0`
//! beyond the last breakpoint. Every norm and transform of such a function
//! has a closed form, which keeps all downstream inequality checks exact up
//! to rounding and quadrature tolerances.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A compactly supported step function `u(t) = c_k e^{iat}` on
/// `[t_k, t_{k+1})`, zero for `t ≥ t_n`.
///
/// Invariants enforced at construction: breakpoints strictly increasing,
/// finite, starting at `t₀ ≥ 0`; one value per piece; finite values and
/// modulation. The all-zero function is legal (callers that need a non-null
/// function must check [`StepFunction::is_null`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepFunctionRepr", into = "StepFunctionRepr")]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<Complex64>,
    modulation: f64,
}

/// Wire format: `{"breakpoints":[...], "values":[[re,im],...], "modulation":a}`.
#[derive(Serialize, Deserialize)]
struct StepFunctionRepr {
    breakpoints: Vec<f64>,
    values: Vec<[f64; 2]>,
    modulation: f64,
}

impl TryFrom<StepFunctionRepr> for StepFunction {
    type Error = Error;

    fn try_from(r: StepFunctionRepr) -> Result<Self> {
        StepFunction::new(
            r.breakpoints,
            r.values.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
            r.modulation,
        )
    }
}

impl From<StepFunction> for StepFunctionRepr {
    fn from(u: StepFunction) -> Self {
        StepFunctionRepr {
            breakpoints: u.breakpoints,
            values: u.values.iter().map(|c| [c.re, c.im]).collect(),
            modulation: u.modulation,
        }
    }
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<Complex64>, modulation: f64) -> Result<Self> {
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
        if breakpoints[0] < 0.0 {
            return Err(Error::invalid(format!(
                "support must lie in t >= 0, first breakpoint is {}",
                breakpoints[0]
            )));
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("breakpoints must be strictly increasing"));
        }
        if !values.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::invalid("piece values must be finite"));
        }
        if !modulation.is_finite() {
            return Err(Error::invalid("modulation must be finite"));
        }
        Ok(StepFunction {
            breakpoints,
            values,
            modulation,
        })
    }

    /// The normalized box `ε^{−1/p}` on `(0, ε)`, modulation 0; its `L^p`
    /// norm is exactly 1.
    pub fn unit_box(eps: f64, p: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::domain(format!("box width must be positive, got {eps}")));
        }
        if !(p >= 1.0) {
            return Err(Error::domain(format!("box normalization needs p >= 1, got {p}")));
        }
        let height = eps.powf(-1.0 / p);
        StepFunction::new(vec![0.0, eps], vec![Complex64::new(height, 0.0)], 0.0)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn modulation(&self) -> f64 {
        self.modulation
    }

    /// Number of pieces (one less than the breakpoint count).
    pub fn pieces(&self) -> usize {
        self.values.len()
    }

    /// Last breakpoint: the end of the support.
    pub fn support_end(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// True when every piece value is zero.
    pub fn is_null(&self) -> bool {
        self.values.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// `(Σ_k |c_k|^p Δ_k)^{1/p}`; for `p = ∞`, `max_k |c_k|`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::domain(format!("lp_norm needs p >= 1, got {p}")));
        }
        if p == f64::INFINITY {
            return Ok(self.values.iter().map(|c| c.norm()).fold(0.0, f64::max));
        }
        let sum: f64 = self
            .values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(c, w)| c.norm().powf(p) * (w[1] - w[0]))
            .sum();
        Ok(sum.powf(1.0 / p))
    }

    /// The rescaled function `u_h(t) = h^{1/p} u(ht)`: breakpoints divided by
    /// `h`, values multiplied by `h^{1/p}`, modulation multiplied by `h`.
    /// Preserves the `L^p` norm exactly.
    pub fn scale(&self, h: f64, p: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::domain(format!("scale factor must be positive, got {h}")));
        }
        let amp = h.powf(1.0 / p);
        StepFunction::new(
            self.breakpoints.iter().map(|t| t / h).collect(),
            self.values.iter().map(|c| c * amp).collect(),
            self.modulation * h,
        )
    }

    /// Multiply by `e^{iat}`: adds `a` to the modulation frequency. Leaves
    /// every `L^p` norm unchanged.
    pub fn modulate(&self, a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::domain("modulation frequency must be finite".to_string()));
        }
        StepFunction::new(
            self.breakpoints.clone(),
            self.values.clone(),
            self.modulation + a,
        )
    }

    /// Midpoint sampling of `exp(−(t−center)²/(2σ²))` on
    /// `[center − half_width, center + half_width]` with `n` equal pieces.
    pub fn gaussian_steps(center: f64, sigma: f64, half_width: f64, n: usize) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::domain(format!(
                "half_width must be positive, got {half_width}"
            )));
        }
        if n < 2 {
            return Err(Error::domain(format!("need at least 2 pieces, got {n}")));
        }
        let lo = center - half_width;
        if lo < 0.0 {
            return Err(Error::domain(format!(
                "support [{lo}, {}] leaves t >= 0",
                center + half_width
            )));
        }
        let width = 2.0 * half_width / n as f64;
        let breakpoints: Vec<f64> = (0..=n).map(|k| lo + k as f64 * width).collect();
        let values: Vec<Complex64> = (0..n)
            .map(|k| {
                let mid = lo + (k as f64 + 0.5) * width;
                let arg = (mid - center) / sigma;
                Complex64::new((-0.5 * arg * arg).exp(), 0.0)
            })
            .collect();
        StepFunction::new(breakpoints, values, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn box_examples() {
        let u = StepFunction::unit_box(1.0, 2.0).unwrap();
        assert_eq!(u.breakpoints(), &[0.0, 1.0]);
        assert_eq!(u.values()[0], Complex64::new(1.0, 0.0));
        assert!((u.lp_norm(2.0).unwrap() - 1.0).abs() < 1e-15);

        let v = StepFunction::unit_box(std::f64::consts::FRAC_1_SQRT_2, 2.0).unwrap();
        assert!((v.values()[0].re - 1.1892071150027211).abs() < 1e-14);

        for &(eps, p) in &[(1e-3, 1.0), (1.0, 1.5), (1e3, 2.0), (0.37, 1.25)] {
            let b = StepFunction::unit_box(eps, p).unwrap();
            assert!((b.lp_norm(p).unwrap() - 1.0).abs() < 1e-12, "eps={eps} p={p}");
        }
        assert!(StepFunction::unit_box(0.0, 2.0).is_err());
        assert!(StepFunction::unit_box(1.0, 0.5).is_err());
    }

    #[test]
    fn lp_norm_hand_values() {
        // two pieces (1, 2i) on (0,1), (1,3): L1 norm = 1 + 2*2 = 5
        let u = StepFunction::new(
            vec![0.0, 1.0, 3.0],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
            0.0,
        )
        .unwrap();
        assert!((u.lp_norm(1.0).unwrap() - 5.0).abs() < 1e-14);
        assert!((u.lp_norm(f64::INFINITY).unwrap() - 2.0).abs() < 1e-15);
        assert!(u.lp_norm(0.99).is_err());
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(StepFunction::new(vec![0.0], vec![], 0.0).is_err());
        assert!(StepFunction::new(vec![1.0, 0.5], vec![Complex64::new(1.0, 0.0)], 0.0).is_err());
        assert!(StepFunction::new(vec![-0.1, 1.0], vec![Complex64::new(1.0, 0.0)], 0.0).is_err());
        assert!(
            StepFunction::new(vec![0.0, f64::NAN], vec![Complex64::new(1.0, 0.0)], 0.0).is_err()
        );
        assert!(StepFunction::new(vec![0.0, 1.0], vec![Complex64::new(1.0, 0.0)], f64::NAN).is_err());
    }

    #[test]
    fn scale_identity_and_composition() {
        let u = StepFunction::new(
            vec![0.0, 0.5, 2.0],
            vec![Complex64::new(1.0, -0.5), Complex64::new(0.25, 0.75)],
            1.5,
        )
        .unwrap();
        let same = u.scale(1.0, 2.0).unwrap();
        for (a, b) in same.breakpoints().iter().zip(u.breakpoints()) {
            assert!((a - b).abs() < 1e-15);
        }

        let one = u.scale(3.0, 1.5).unwrap().scale(0.7, 1.5).unwrap();
        let two = u.scale(2.1, 1.5).unwrap();
        for (a, b) in one.breakpoints().iter().zip(two.breakpoints()) {
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
        for (a, b) in one.values().iter().zip(two.values()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!((one.modulation() - two.modulation()).abs() < 1e-12);

        for &p in &[1.0, 1.5, 2.0] {
            for &h in &[0.1, 1.0, 7.3] {
                let s = u.scale(h, p).unwrap();
                assert!(
                    (s.lp_norm(p).unwrap() - u.lp_norm(p).unwrap()).abs() < 1e-12,
                    "h={h} p={p}"
                );
            }
        }
    }

    #[test]
    fn modulate_group_action() {
        let u = StepFunction::unit_box(2.0, 2.0).unwrap();
        let back = u.modulate(3.7).unwrap().modulate(-3.7).unwrap();
        assert_eq!(back.modulation(), u.modulation());
        assert!((u.modulate(1.0).unwrap().lp_norm(2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian_steps_shape() {
        let g = StepFunction::gaussian_steps(10.0, 1.5, 9.0, 400).unwrap();
        // peak piece value ~ 1
        let peak = g.values().iter().map(|c| c.re).fold(0.0, f64::max);
        assert!((peak - 1.0).abs() < 1e-3);
        // symmetry c_k = c_{n-1-k}
        let n = g.pieces();
        for k in 0..n {
            assert!((g.values()[k].re - g.values()[n - 1 - k].re).abs() < 1e-12);
        }
        // L1 mass ~ sigma * sqrt(2 pi) within 1%
        let mass = g.lp_norm(1.0).unwrap();
        let exact = 1.5 * (2.0 * PI).sqrt();
        assert!((mass - exact).abs() < 0.01 * exact, "{mass} vs {exact}");
        // support must stay nonnegative
        assert!(StepFunction::gaussian_steps(1.0, 1.0, 2.0, 10).is_err());
    }

    #[test]
    fn json_round_trip() {
        let u = StepFunction::new(
            vec![0.0, 1.0, 2.5],
            vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)],
            0.25,
        )
        .unwrap();
        let s = serde_json::to_string(&u).unwrap();
        let v: StepFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(u, v);
        // malformed: breakpoints/values length mismatch
        let bad = r#"{"breakpoints":[0.0,1.0],"values":[[1.0,0.0],[2.0,0.0]],"modulation":0.0}"#;
        assert!(serde_json::from_str::<StepFunction>(bad).is_err());
    }
}
