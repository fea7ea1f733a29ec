//! Adaptive panel quadrature: fixed-order Gauss–Legendre (16 nodes) on
//! panels refined by two-level Richardson disagreement, worst-panel-first.
//!
//! The refinement queue is keyed on (error estimate, insertion counter), so
//! results are bit-stable for a given integrand and panel layout.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Gauss–Legendre nodes on [-1, 1], order 16 (positive half; the rule is
/// symmetric). 17 significant digits, verified against the defining
/// Legendre-polynomial roots before freezing.
const GL16_NODES: [f64; 8] = [
    9.894_009_349_916_499_4e-1,
    9.445_750_230_732_326_0e-1,
    8.656_312_023_878_317_6e-1,
    7.554_044_083_550_030_0e-1,
    6.178_762_444_026_437_7e-1,
    4.580_167_776_572_273_7e-1,
    2.816_035_507_792_589_2e-1,
    9.501_250_983_763_745_4e-2,
];

const GL16_WEIGHTS: [f64; 8] = [
    2.715_245_941_175_403_7e-2,
    6.225_352_393_864_770_6e-2,
    9.515_851_168_249_259_1e-2,
    1.246_289_712_555_340_3e-1,
    1.495_959_888_165_767_6e-1,
    1.691_565_193_950_026_2e-1,
    1.826_034_150_449_236_1e-1,
    1.894_506_104_550_685_9e-1,
];

/// 16-node Gauss–Legendre approximation of `∫_a^b f`.
pub(crate) fn gl16<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for i in 0..8 {
        let dx = half * GL16_NODES[i];
        sum += GL16_WEIGHTS[i] * (f(mid - dx) + f(mid + dx));
    }
    sum * half
}

struct Panel {
    lo: f64,
    hi: f64,
    /// Two-level value: sum of GL16 over both halves.
    value: f64,
    /// |two-level − one-level|: the Richardson disagreement.
    err: f64,
    seq: u64,
}

impl Panel {
    fn build<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64, seq: u64) -> Panel {
        let whole = gl16(f, lo, hi);
        let mid = 0.5 * (lo + hi);
        let value = gl16(f, lo, mid) + gl16(f, mid, hi);
        Panel {
            lo,
            hi,
            value,
            err: (value - whole).abs(),
            seq,
        }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on err; ties broken by earliest insertion for determinism
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Result of an adaptive integration: the value, the summed per-panel error
/// estimate actually achieved, and the number of leaf panels used.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Quadrature {
    pub value: f64,
    pub err: f64,
    // cost diagnostic; consumed by tests only
    #[allow(dead_code)]
    pub panels: usize,
}

/// Integrate `f` over the given initial panels, bisecting the worst panel
/// until the summed error estimate drops to `tol` or `max_panels` is
/// reached. Initial panel edges must be increasing and cover the domain.
pub(crate) fn integrate_adaptive<F: FnMut(f64) -> f64>(
    f: &mut F,
    edges: &[f64],
    tol: f64,
    max_panels: usize,
) -> Quadrature {
    debug_assert!(edges.len() >= 2);
    let mut heap: BinaryHeap<Panel> = BinaryHeap::with_capacity(edges.len() + 64);
    let mut seq = 0u64;
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in edges.windows(2) {
        let p = Panel::build(f, w[0], w[1], seq);
        seq += 1;
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    while total_err > tol && heap.len() < max_panels {
        let worst = match heap.pop() {
            Some(p) if p.err > 0.0 => p,
            _ => break,
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // cannot subdivide further at f64 resolution; keep as-is
            heap.push(worst);
            break;
        }
        total -= worst.value;
        total_err -= worst.err;
        let left = Panel::build(f, worst.lo, mid, seq);
        seq += 1;
        let right = Panel::build(f, mid, worst.hi, seq);
        seq += 1;
        total += left.value + right.value;
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }
    Quadrature {
        value: total,
        err: total_err,
        panels: heap.len(),
    }
}

/// Uniform panel edges over `[a, b]` with panel width at most `max_width`
/// and panel count capped at `cap`.
pub(crate) fn uniform_edges(a: f64, b: f64, max_width: f64, cap: usize) -> Vec<f64> {
    debug_assert!(b > a && max_width > 0.0);
    let n = (((b - a) / max_width).ceil() as usize).clamp(1, cap.max(1));
    let step = (b - a) / n as f64;
    let mut edges: Vec<f64> = (0..n).map(|k| a + k as f64 * step).collect();
    edges.push(b);
    edges
}

/// Symmetric panel edges over `[-y, y]`: width `w0` inside `|η| ≤ core`,
/// growing linearly with distance outside but never beyond `gmax · w0`
/// (the integrands this serves decay algebraically while oscillating at a
/// bounded frequency, so panels must stay below the oscillation scale
/// everywhere — unbounded growth would alias the far field).
pub(crate) fn symmetric_graded_edges(y: f64, w0: f64, core: f64, gmax: f64) -> Vec<f64> {
    debug_assert!(y > 0.0 && w0 > 0.0 && core > 0.0 && gmax >= 1.0);
    let mut pos = vec![0.0];
    let mut eta = 0.0;
    while eta < y {
        let w = if eta <= core { w0 } else { (w0 * (eta / core)).min(gmax * w0) };
        eta = (eta + w).min(y);
        pos.push(eta);
    }
    // mirror, dropping the shared 0 edge once
    let mut edges: Vec<f64> = pos.iter().skip(1).rev().map(|t| -t).collect();
    edges.extend(pos);
    edges
}
