//! Globally adaptive 32-point Gauss-Legendre quadrature.
//!
//! Each panel is integrated on its own and on its two halves; the
//! difference is the panel's error estimate and the halves' sum is kept as
//! its value. The panel with the largest estimate is split until the summed
//! estimate meets `ABS_TOL + REL_TOL * |I|`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const ABS_TOL: f64 = 1e-10;
pub const REL_TOL: f64 = 1e-10;
pub const MAX_DEPTH: u32 = 40;
const NODES: usize = 32;
const MAX_PANELS: usize = 200_000;

/// Value and error bound of an integral.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

impl std::ops::Add for Integral {
    type Output = Integral;
    fn add(self, o: Integral) -> Integral {
        Integral {
            value: self.value + o.value,
            error: self.error + o.error,
        }
    }
}

impl Integral {
    /// `c * self`, with the error bound scaled by `|c|`.
    pub fn scale(self, c: f64) -> Integral {
        Integral {
            value: c * self.value,
            error: c.abs() * self.error,
        }
    }
}

/// Nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre() -> &'static ([f64; NODES], [f64; NODES]) {
    static RULE: OnceLock<([f64; NODES], [f64; NODES])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut x = [0.0; NODES];
        let mut w = [0.0; NODES];
        for i in 0..n / 2 {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let wi = 2.0 / ((1.0 - z * z) * dp * dp);
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = wi;
            w[n - 1 - i] = wi;
        }
        (x, w)
    })
}

/// Single-panel Gauss-Legendre rule on `[a, b]`.
pub fn gauss_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (x, w) = gauss_legendre();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut s = 0.0;
    for i in 0..NODES {
        s += w[i] * f(mid + half * x[i]);
    }
    s * half
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error).then(o.a.total_cmp(&self.a))
    }
}

fn make_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, depth: u32) -> Panel {
    let m = 0.5 * (a + b);
    let whole = gauss_panel(f, a, b);
    let split = gauss_panel(f, a, m) + gauss_panel(f, m, b);
    Panel {
        a,
        b,
        value: split,
        error: (whole - split).abs(),
        depth,
    }
}

/// `∫ f` over `[points[0], points.last()]`, with `points` (ascending) seeding
/// the initial panels.
pub fn integrate(f: impl Fn(f64) -> f64, points: &[f64]) -> Result<Integral> {
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(make_panel(&f, w[0], w[1], 0));
        }
    }
    loop {
        // summed in panel order so the result does not depend on heap layout
        let (value, error) = total(&heap);
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature {
                estimate: value,
                error_bound: error,
            });
        }
        if error <= ABS_TOL + REL_TOL * value.abs() {
            return Ok(Integral { value, error });
        }
        let worst = heap.pop().expect("non-empty heap");
        // below rounding level of the panel itself there is nothing to gain
        if worst.error <= 64.0 * f64::EPSILON * worst.value.abs() {
            heap.push(worst);
            return Ok(Integral { value, error });
        }
        if worst.depth >= MAX_DEPTH || heap.len() >= MAX_PANELS {
            return Err(Error::Quadrature {
                estimate: value,
                error_bound: error,
            });
        }
        let m = 0.5 * (worst.a + worst.b);
        heap.push(make_panel(&f, worst.a, m, worst.depth + 1));
        heap.push(make_panel(&f, m, worst.b, worst.depth + 1));
    }
}

fn total(heap: &BinaryHeap<Panel>) -> (f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// Sorted, deduplicated panel seeds on `[lo, hi]`: the given breakpoints
/// inside the interval plus a ratio-2 geometric subdivision of every gap.
pub fn panel_seeds(breakpoints: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > lo && x < hi).collect();
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut out = vec![pts[0]];
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a > 0.0 {
            let mut x = 2.0 * a;
            while x < b / 1.5 {
                out.push(x);
                x *= 2.0;
            }
        }
        out.push(b);
    }
    out
}
