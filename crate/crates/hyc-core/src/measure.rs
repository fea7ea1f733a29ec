//! Finite positive measures on the closed right half-plane `Re z ≥ 0`,
//! built from four component kinds — atoms, boundary line densities,
//! horizontal segment densities, and box densities — together with exact
//! square masses and adaptive integration of `|v|^q`.
//!
//! The restriction to this parametric family is deliberate: every component
//! has a closed-form mass on every square, which the Carleson-norm search
//! requires, while still covering point masses, the boundary line element,
//! the horizontal axis element, and bulk area densities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate_adaptive, uniform_edges};

/// One piece of a boundary density: `rho · dy` on `x = 0`, `y ∈ [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPiece {
    pub y0: f64,
    pub y1: f64,
    pub rho: f64,
}

/// A single building block of a [`HalfPlaneMeasure`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Component {
    /// Point mass `w` at `x + iy`, `x ≥ 0`.
    Atom { x: f64, y: f64, w: f64 },
    /// Density `rho · dy` on the boundary segment(s) `x = 0`.
    BoundaryDensity { pieces: Vec<BoundaryPiece> },
    /// Density `rho · dx` on the horizontal segment `y` fixed, `x ∈ [x0, x1]`.
    HorizontalDensity { y: f64, x0: f64, x1: f64, rho: f64 },
    /// Area density `rho · dx dy` on `[x0, x1] × [y0, y1]`.
    BoxDensity {
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        rho: f64,
    },
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(msg))
    }
}

impl Component {
    fn validate(&self) -> Result<()> {
        match self {
            Component::Atom { x, y, w } => {
                require(x.is_finite() && y.is_finite() && w.is_finite(), "atom fields must be finite")?;
                require(*x >= 0.0, format!("atom must have x >= 0, got {x}"))?;
                require(*w > 0.0, format!("atom weight must be positive, got {w}"))
            }
            Component::BoundaryDensity { pieces } => {
                require(!pieces.is_empty(), "boundary density needs at least one piece")?;
                for p in pieces {
                    require(
                        p.y0.is_finite() && p.y1.is_finite() && p.rho.is_finite(),
                        "boundary piece fields must be finite",
                    )?;
                    require(p.y0 < p.y1, format!("boundary piece needs y0 < y1, got [{}, {}]", p.y0, p.y1))?;
                    require(p.rho >= 0.0, format!("density must be non-negative, got {}", p.rho))?;
                }
                let mut sorted: Vec<&BoundaryPiece> = pieces.iter().collect();
                sorted.sort_by(|a, b| a.y0.total_cmp(&b.y0));
                for w in sorted.windows(2) {
                    require(
                        w[0].y1 <= w[1].y0,
                        format!(
                            "boundary pieces overlap: [{}, {}] and [{}, {}]",
                            w[0].y0, w[0].y1, w[1].y0, w[1].y1
                        ),
                    )?;
                }
                Ok(())
            }
            Component::HorizontalDensity { y, x0, x1, rho } => {
                require(
                    y.is_finite() && x0.is_finite() && x1.is_finite() && rho.is_finite(),
                    "horizontal density fields must be finite",
                )?;
                require(*x0 >= 0.0, format!("horizontal density needs x0 >= 0, got {x0}"))?;
                require(*x1 > *x0, format!("horizontal density needs x1 > x0, got [{x0}, {x1}]"))?;
                require(*rho >= 0.0, format!("density must be non-negative, got {rho}"))
            }
            Component::BoxDensity { x0, x1, y0, y1, rho } => {
                require(
                    [x0, x1, y0, y1, rho].iter().all(|v| v.is_finite()),
                    "box density fields must be finite",
                )?;
                require(*x0 >= 0.0, format!("box density needs x0 >= 0, got {x0}"))?;
                require(*x1 > *x0, format!("box density needs x1 > x0, got [{x0}, {x1}]"))?;
                require(*y0 < *y1, format!("box density needs y0 < y1, got [{y0}, {y1}]"))?;
                require(*rho >= 0.0, format!("density must be non-negative, got {rho}"))
            }
        }
    }

    fn mass(&self) -> f64 {
        match self {
            Component::Atom { w, .. } => *w,
            Component::BoundaryDensity { pieces } => {
                pieces.iter().map(|p| p.rho * (p.y1 - p.y0)).sum()
            }
            Component::HorizontalDensity { x0, x1, rho, .. } => rho * (x1 - x0),
            Component::BoxDensity { x0, x1, y0, y1, rho } => rho * (x1 - x0) * (y1 - y0),
        }
    }

    /// True when the component lives entirely on the boundary line `x = 0`.
    fn on_boundary(&self) -> bool {
        match self {
            Component::Atom { x, .. } => *x == 0.0,
            Component::BoundaryDensity { .. } => true,
            _ => false,
        }
    }
}

/// A closed boundary square `{Re z ∈ [0, h], Im z ∈ [a, a+h]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonSquare {
    pub a: f64,
    pub h: f64,
}

impl CarlesonSquare {
    pub fn new(a: f64, h: f64) -> Result<Self> {
        if !(a.is_finite() && h.is_finite() && h > 0.0) {
            return Err(Error::domain(format!(
                "square needs finite a and h > 0, got a={a}, h={h}"
            )));
        }
        Ok(CarlesonSquare { a, h })
    }
}

fn overlap(lo1: f64, hi1: f64, lo2: f64, hi2: f64) -> f64 {
    (hi1.min(hi2) - lo1.max(lo2)).max(0.0)
}

/// A validated finite positive measure on the closed right half-plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub struct HalfPlaneMeasure {
    components: Vec<Component>,
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    components: Vec<Component>,
}

impl TryFrom<MeasureRepr> for HalfPlaneMeasure {
    type Error = Error;
    fn try_from(r: MeasureRepr) -> Result<Self> {
        HalfPlaneMeasure::new(r.components)
    }
}

impl From<HalfPlaneMeasure> for MeasureRepr {
    fn from(m: HalfPlaneMeasure) -> Self {
        MeasureRepr { components: m.components }
    }
}

impl HalfPlaneMeasure {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        for c in &components {
            c.validate()?;
        }
        Ok(HalfPlaneMeasure { components })
    }

    /// The empty (zero) measure.
    pub fn empty() -> Self {
        HalfPlaneMeasure { components: Vec::new() }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.components.iter().map(Component::mass).sum()
    }

    /// True when every component is an atom.
    pub fn is_atomic(&self) -> bool {
        self.components.iter().all(|c| matches!(c, Component::Atom { .. }))
    }

    /// True when the measure contains only atoms and boundary densities
    /// (the inputs for which the Carleson norm is computed exactly).
    pub fn is_atomic_or_boundary(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, Component::Atom { .. } | Component::BoundaryDensity { .. }))
    }

    /// Vertical extent `[min Im, max Im]` of the support, if non-empty.
    pub fn y_extent(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in &self.components {
            let (l, h) = match c {
                Component::Atom { y, .. } => (*y, *y),
                Component::BoundaryDensity { pieces } => (
                    pieces.iter().map(|p| p.y0).fold(f64::INFINITY, f64::min),
                    pieces.iter().map(|p| p.y1).fold(f64::NEG_INFINITY, f64::max),
                ),
                Component::HorizontalDensity { y, .. } => (*y, *y),
                Component::BoxDensity { y0, y1, .. } => (*y0, *y1),
            };
            lo = lo.min(l);
            hi = hi.max(h);
        }
        if lo.is_finite() {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Largest Re-coordinate in the support (0 for pure boundary measures).
    pub fn x_max(&self) -> f64 {
        self.components
            .iter()
            .map(|c| match c {
                Component::Atom { x, .. } => *x,
                Component::BoundaryDensity { .. } => 0.0,
                Component::HorizontalDensity { x1, .. } => *x1,
                Component::BoxDensity { x1, .. } => *x1,
            })
            .fold(0.0, f64::max)
    }

    /// Exact mass of the closed square `Q` under this measure.
    pub fn measure_square(&self, q: &CarlesonSquare) -> f64 {
        let (a, h) = (q.a, q.h);
        self.components
            .iter()
            .map(|c| match c {
                Component::Atom { x, y, w } => {
                    if *x <= h && *y >= a && *y <= a + h {
                        *w
                    } else {
                        0.0
                    }
                }
                Component::BoundaryDensity { pieces } => pieces
                    .iter()
                    .map(|p| p.rho * overlap(p.y0, p.y1, a, a + h))
                    .sum(),
                Component::HorizontalDensity { y, x0, x1, rho } => {
                    if *y >= a && *y <= a + h {
                        rho * overlap(*x0, *x1, 0.0, h)
                    } else {
                        0.0
                    }
                }
                Component::BoxDensity { x0, x1, y0, y1, rho } => {
                    rho * overlap(*x0, *x1, 0.0, h) * overlap(*y0, *y1, a, a + h)
                }
            })
            .sum()
    }

    /// Split into the boundary part (boundary densities plus atoms at
    /// `x = 0`) and the interior part (everything else).
    pub fn split_boundary(&self) -> (HalfPlaneMeasure, HalfPlaneMeasure) {
        let (b, i): (Vec<Component>, Vec<Component>) = self
            .components
            .iter()
            .cloned()
            .partition(Component::on_boundary);
        (HalfPlaneMeasure { components: b }, HalfPlaneMeasure { components: i })
    }

    /// `(∫ |v|^q dμ)^{1/q}`: atoms summed exactly, density components by
    /// adaptive Gauss–Legendre panels with the tolerance split evenly
    /// across integration units (pieces/segments/boxes).
    pub fn integrate_pnorm<F>(&self, v: F, q: f64, tol: f64) -> Result<f64>
    where
        F: Fn(Complex64) -> Complex64,
    {
        if !(q >= 1.0 && q.is_finite()) {
            return Err(Error::domain(format!("integration exponent needs 1 <= q < inf, got {q}")));
        }
        if !(tol > 0.0) {
            return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
        }
        let units: usize = self
            .components
            .iter()
            .map(|c| match c {
                Component::Atom { .. } => 0,
                Component::BoundaryDensity { pieces } => pieces.len(),
                Component::HorizontalDensity { .. } => 1,
                Component::BoxDensity { .. } => 1,
            })
            .sum();
        let tol_unit = if units > 0 { tol / units as f64 } else { tol };

        let mut total = 0.0_f64;
        for c in &self.components {
            match c {
                Component::Atom { x, y, w } => {
                    total += w * v(Complex64::new(*x, *y)).norm().powf(q);
                }
                Component::BoundaryDensity { pieces } => {
                    for p in pieces {
                        if p.rho == 0.0 {
                            continue;
                        }
                        let mut f = |y: f64| v(Complex64::new(0.0, y)).norm().powf(q);
                        let len = p.y1 - p.y0;
                        let edges = uniform_edges(p.y0, p.y1, len / 16.0, 1 << 12);
                        let quad =
                            integrate_adaptive(&mut f, &edges, tol_unit / p.rho, 1 << 17);
                        total += p.rho * quad.value;
                    }
                }
                Component::HorizontalDensity { y, x0, x1, rho } => {
                    if *rho == 0.0 {
                        continue;
                    }
                    let mut f = |x: f64| v(Complex64::new(x, *y)).norm().powf(q);
                    let edges = uniform_edges(*x0, *x1, (x1 - x0) / 16.0, 1 << 12);
                    let quad = integrate_adaptive(&mut f, &edges, tol_unit / rho, 1 << 17);
                    total += rho * quad.value;
                }
                Component::BoxDensity { x0, x1, y0, y1, rho } => {
                    if *rho == 0.0 {
                        continue;
                    }
                    // iterated integral: inner in x at a fixed absolute
                    // tolerance, outer in y with the remaining budget
                    let tol_inner = tol_unit / (4.0 * rho * (y1 - y0));
                    let inner_edges = uniform_edges(*x0, *x1, (x1 - x0) / 8.0, 1 << 10);
                    let mut outer = |y: f64| {
                        let mut f = |x: f64| v(Complex64::new(x, y)).norm().powf(q);
                        integrate_adaptive(&mut f, &inner_edges, tol_inner, 1 << 14).value
                    };
                    let outer_edges = uniform_edges(*y0, *y1, (y1 - y0) / 8.0, 1 << 10);
                    let quad = integrate_adaptive(
                        &mut outer,
                        &outer_edges,
                        tol_unit / (2.0 * rho),
                        1 << 14,
                    );
                    total += rho * quad.value;
                }
            }
        }
        Ok(total.max(0.0).powf(1.0 / q))
    }
}
