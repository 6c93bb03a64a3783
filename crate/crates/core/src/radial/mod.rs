//! Radial test functions and weighted radial quadrature.
//!
//! Every profile lives on `(0, ∞)` with derivatives supported in a compact
//! interval `[r_lo, r_hi]` away from the origin, and reports the radii where
//! its smoothness may drop so that quadrature can split there.

mod quadrature;
mod spline;

use std::fmt::Debug;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use quadrature::{gauss_legendre, gauss_panel, integrate, panel_seeds, Integral, ABS_TOL, MAX_DEPTH, REL_TOL};
pub use spline::SplineBump;

use crate::error::{Error, Result};

/// Bound constant for the cutoff `g_ε`:
/// `|g'| <= c/ε, |g''| <= c/ε²` on `[ε, 2ε]` and `|g'| <= cε, |g''| <= cε²`
/// on `[1/(2ε), 1/ε]`.
///
/// The inner layer satisfies these with `c = 6`. The outer layer has width
/// `1/(2ε)`, so `|g''|` there reaches `4ε² max|s''| ≈ 23.1ε²`; any transition
/// from 1 to 0 with vanishing end slopes over that width needs at least `16ε²`.
pub const CUTOFF_CONSTANT: f64 = 24.0;
/// Bound constant valid for both derivatives on the inner layer and for
/// `g'` on the outer layer.
pub const INNER_CUTOFF_CONSTANT: f64 = 6.0;

pub trait RadialProfile: Debug + Send + Sync {
    fn value(&self, r: f64) -> f64;
    fn d1(&self, r: f64) -> f64;
    fn d2(&self, r: f64) -> f64;

    /// Interval outside which the derivatives vanish.
    fn support(&self) -> (f64, f64);

    /// Radii inside the support where smoothness may drop, ascending.
    fn breakpoints(&self) -> Vec<f64>;

    /// False for profiles that are constant but nonzero beyond the support.
    fn value_vanishes_outside_support(&self) -> bool {
        true
    }

    fn derivative(&self, q: u8, r: f64) -> f64 {
        match q {
            0 => self.value(r),
            1 => self.d1(r),
            _ => self.d2(r),
        }
    }
}

/// Quintic smoothstep `s(t) = 6t⁵ - 15t⁴ + 10t³` and its derivatives.
pub fn smoothstep(t: f64) -> (f64, f64, f64) {
    let t = t.clamp(0.0, 1.0);
    let s = t * t * t * (t * (6.0 * t - 15.0) + 10.0);
    let s1 = 30.0 * t * t * (1.0 - t) * (1.0 - t);
    let s2 = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
    (s, s1, s2)
}

/// `0` below `a`, rising to `1` on `[a, b]`, `1` on `[b, c]`, falling to `0`
/// on `[c, e]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWindow {
    a: f64,
    b: f64,
    c: f64,
    e: f64,
}

impl SmoothWindow {
    pub fn new(a: f64, b: f64, c: f64, e: f64) -> Result<Self> {
        if !(a > 0.0 && a < b && b <= c && c < e && e.is_finite()) {
            return Err(Error::arg(format!(
                "window radii must satisfy 0 < a < b <= c < e < inf, got {a}, {b}, {c}, {e}"
            )));
        }
        Ok(Self { a, b, c, e })
    }

    fn eval(&self, r: f64) -> (f64, f64, f64) {
        if r <= self.a || r >= self.e {
            (0.0, 0.0, 0.0)
        } else if r < self.b {
            let w = self.b - self.a;
            let (s, s1, s2) = smoothstep((r - self.a) / w);
            (s, s1 / w, s2 / (w * w))
        } else if r <= self.c {
            (1.0, 0.0, 0.0)
        } else {
            let w = self.e - self.c;
            let (s, s1, s2) = smoothstep((self.e - r) / w);
            (s, -s1 / w, s2 / (w * w))
        }
    }
}

impl RadialProfile for SmoothWindow {
    fn value(&self, r: f64) -> f64 {
        self.eval(r).0
    }
    fn d1(&self, r: f64) -> f64 {
        self.eval(r).1
    }
    fn d2(&self, r: f64) -> f64 {
        self.eval(r).2
    }
    fn support(&self) -> (f64, f64) {
        (self.a, self.e)
    }
    fn breakpoints(&self) -> Vec<f64> {
        let mut v = vec![self.a, self.b, self.c, self.e];
        v.dedup();
        v
    }
}

/// The cutoff `g_ε`: zero on `(0, ε]` and `[1/ε, ∞)`, one on
/// `[2ε, 1/(2ε)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffProfile {
    epsilon: f64,
    window: SmoothWindow,
}

impl CutoffProfile {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn transition_constant(&self) -> f64 {
        CUTOFF_CONSTANT
    }

    /// The plateau `[2ε, 1/(2ε)]`.
    pub fn plateau(&self) -> (f64, f64) {
        (2.0 * self.epsilon, 0.5 / self.epsilon)
    }
}

impl RadialProfile for CutoffProfile {
    fn value(&self, r: f64) -> f64 {
        self.window.value(r)
    }
    fn d1(&self, r: f64) -> f64 {
        self.window.d1(r)
    }
    fn d2(&self, r: f64) -> f64 {
        self.window.d2(r)
    }
    fn support(&self) -> (f64, f64) {
        self.window.support()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.window.breakpoints()
    }
}

pub fn make_cutoff(epsilon: f64) -> Result<CutoffProfile> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::arg(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    Ok(CutoffProfile {
        epsilon,
        window: SmoothWindow::new(epsilon, 2.0 * epsilon, 0.5 / epsilon, 1.0 / epsilon)?,
    })
}

/// `f(r) = r^p w(r)` for a smooth window `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerProfile {
    exponent: f64,
    window: SmoothWindow,
}

impl PowerProfile {
    pub fn new(exponent: f64, window: SmoothWindow) -> Self {
        Self { exponent, window }
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    fn eval(&self, r: f64) -> (f64, f64, f64) {
        let (g, g1, g2) = self.window.eval(r);
        if g == 0.0 && g1 == 0.0 && g2 == 0.0 {
            return (0.0, 0.0, 0.0);
        }
        let p = self.exponent;
        let rp = r.powf(p);
        let f = rp * g;
        let f1 = rp * (p * g / r + g1);
        let f2 = rp * (p * (p - 1.0) * g / (r * r) + 2.0 * p * g1 / r + g2);
        (f, f1, f2)
    }
}

impl RadialProfile for PowerProfile {
    fn value(&self, r: f64) -> f64 {
        self.eval(r).0
    }
    fn d1(&self, r: f64) -> f64 {
        self.eval(r).1
    }
    fn d2(&self, r: f64) -> f64 {
        self.eval(r).2
    }
    fn support(&self) -> (f64, f64) {
        self.window.support()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.window.breakpoints()
    }
}

/// `h_ε(r) = ∫_0^r g_ε(s)/s ds`. Its derivatives are supported in
/// `[ε, 1/ε]`; its value is the constant `h_ε(1/ε) > 0` beyond.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogProfile {
    cutoff: CutoffProfile,
    /// `h_ε(2ε)`.
    inner: f64,
    /// `h_ε(1/ε)`.
    total: f64,
}

impl LogProfile {
    pub fn new(epsilon: f64) -> Result<Self> {
        let cutoff = make_cutoff(epsilon)?;
        let (p0, p1) = cutoff.plateau();
        let inner = gauss_panel(&|s: f64| cutoff.value(s) / s, epsilon, p0);
        let outer = gauss_panel(&|s: f64| cutoff.value(s) / s, p1, 1.0 / epsilon);
        Ok(Self {
            cutoff,
            inner,
            total: inner + (p1 / p0).ln() + outer,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.cutoff.epsilon
    }
}

impl RadialProfile for LogProfile {
    fn value(&self, r: f64) -> f64 {
        let eps = self.cutoff.epsilon;
        let (p0, p1) = self.cutoff.plateau();
        let g_over_s = |s: f64| self.cutoff.value(s) / s;
        if r <= eps {
            0.0
        } else if r < p0 {
            gauss_panel(&g_over_s, eps, r)
        } else if r <= p1 {
            self.inner + (r / p0).ln()
        } else if r < 1.0 / eps {
            self.inner + (p1 / p0).ln() + gauss_panel(&g_over_s, p1, r)
        } else {
            self.total
        }
    }
    fn d1(&self, r: f64) -> f64 {
        self.cutoff.value(r) / r
    }
    fn d2(&self, r: f64) -> f64 {
        (self.cutoff.d1(r) - self.cutoff.value(r) / r) / r
    }
    fn support(&self) -> (f64, f64) {
        self.cutoff.support()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.cutoff.breakpoints()
    }
    fn value_vanishes_outside_support(&self) -> bool {
        false
    }
}

/// `f(r) = P(r) w(r)` with `P` given by ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialProfile {
    coefficients: Vec<f64>,
    window: SmoothWindow,
}

impl PolynomialProfile {
    pub fn new(coefficients: Vec<f64>, window: SmoothWindow) -> Self {
        Self { coefficients, window }
    }

    fn poly(&self, r: f64) -> (f64, f64, f64) {
        let (mut p, mut p1, mut p2) = (0.0, 0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            p2 = p2 * r + 2.0 * p1;
            p1 = p1 * r + p;
            p = p * r + c;
        }
        (p, p1, p2)
    }

    fn eval(&self, r: f64) -> (f64, f64, f64) {
        let (g, g1, g2) = self.window.eval(r);
        let (p, p1, p2) = self.poly(r);
        (p * g, p1 * g + p * g1, p2 * g + 2.0 * p1 * g1 + p * g2)
    }
}

impl RadialProfile for PolynomialProfile {
    fn value(&self, r: f64) -> f64 {
        self.eval(r).0
    }
    fn d1(&self, r: f64) -> f64 {
        self.eval(r).1
    }
    fn d2(&self, r: f64) -> f64 {
        self.eval(r).2
    }
    fn support(&self) -> (f64, f64) {
        self.window.support()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.window.breakpoints()
    }
}

/// `κ f` for a shared profile `f`.
#[derive(Debug, Clone)]
pub struct ScaledProfile {
    inner: Arc<dyn RadialProfile>,
    factor: f64,
}

impl ScaledProfile {
    pub fn new(inner: Arc<dyn RadialProfile>, factor: f64) -> Self {
        Self { inner, factor }
    }
}

impl RadialProfile for ScaledProfile {
    fn value(&self, r: f64) -> f64 {
        self.factor * self.inner.value(r)
    }
    fn d1(&self, r: f64) -> f64 {
        self.factor * self.inner.d1(r)
    }
    fn d2(&self, r: f64) -> f64 {
        self.factor * self.inner.d2(r)
    }
    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }
    fn value_vanishes_outside_support(&self) -> bool {
        self.inner.value_vanishes_outside_support()
    }
}

/// The zero function, with a nominal support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroProfile {
    pub lo: f64,
    pub hi: f64,
}

impl RadialProfile for ZeroProfile {
    fn value(&self, _: f64) -> f64 {
        0.0
    }
    fn d1(&self, _: f64) -> f64 {
        0.0
    }
    fn d2(&self, _: f64) -> f64 {
        0.0
    }
    fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.lo, self.hi]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimizingBranch {
    /// `f_ε = r^{-(d-α-4)/2} g_ε`.
    Power,
    /// `h_ε`, for the radial mode when `d - α - 4 = 0`.
    RadialLog,
}

impl MinimizingBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            MinimizingBranch::Power => "power",
            MinimizingBranch::RadialLog => "radial-log",
        }
    }
}

/// `r^p g_ε(r)`.
pub fn power_cutoff_profile(epsilon: f64, exponent: f64) -> Result<PowerProfile> {
    Ok(PowerProfile::new(exponent, make_cutoff(epsilon)?.window))
}

/// Radial profile of the minimizing sequence for `C(d, α)`.
pub fn minimizing_profile(
    epsilon: f64,
    d: u32,
    alpha: f64,
    branch: MinimizingBranch,
) -> Result<Arc<dyn RadialProfile>> {
    Ok(match branch {
        MinimizingBranch::Power => Arc::new(power_cutoff_profile(epsilon, -(d as f64 - alpha - 4.0) / 2.0)?),
        MinimizingBranch::RadialLog => Arc::new(LogProfile::new(epsilon)?),
    })
}

/// `∫_0^∞ |f^{(q)}(r)|² r^power dr`.
pub fn weighted_integral(p: &dyn RadialProfile, q: u8, power: f64) -> Result<f64> {
    weighted_integral_with_error(p, q, power).map(|i| i.value)
}

/// [`weighted_integral`] together with its quadrature error bound.
pub fn weighted_integral_with_error(p: &dyn RadialProfile, q: u8, power: f64) -> Result<Integral> {
    if q == 0 && !p.value_vanishes_outside_support() {
        return Err(Error::arg(
            "the profile does not vanish beyond its support, so its weighted L2 norm is infinite",
        ));
    }
    let (lo, hi) = p.support();
    weighted_integral_on_with_error(p, q, power, lo, hi)
}

/// `∫_lo^hi |f^{(q)}(r)|² r^power dr`.
pub fn weighted_integral_on(p: &dyn RadialProfile, q: u8, power: f64, lo: f64, hi: f64) -> Result<f64> {
    weighted_integral_on_with_error(p, q, power, lo, hi).map(|i| i.value)
}

pub fn weighted_integral_on_with_error(
    p: &dyn RadialProfile,
    q: u8,
    power: f64,
    lo: f64,
    hi: f64,
) -> Result<Integral> {
    if q > 2 {
        return Err(Error::arg(format!("derivative order must be 0, 1 or 2, got {q}")));
    }
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) || !power.is_finite() {
        return Err(Error::arg(format!("invalid integration range [{lo}, {hi}] or power {power}")));
    }
    if lo == hi {
        return Ok(Integral::default());
    }
    let seeds = panel_seeds(&p.breakpoints(), lo, hi);
    integrate(
        |r| {
            let v = p.derivative(q, r);
            v * v * r.powf(power)
        },
        &seeds,
    )
}

/// Built-in profile constructors, as named in problem and modes files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileSpec {
    /// Cubic B-spline; coefficients default to all ones.
    Bump {
        knots: Vec<f64>,
        #[serde(default)]
        coefficients: Option<Vec<f64>>,
    },
    Cutoff { epsilon: f64 },
    Minimizing { epsilon: f64, branch: MinimizingBranch },
}

impl ProfileSpec {
    pub fn build(&self, d: u32, alpha: f64) -> Result<Arc<dyn RadialProfile>> {
        Ok(match self {
            ProfileSpec::Bump { knots, coefficients } => {
                let n = knots.len().saturating_sub(4);
                let c = coefficients.clone().unwrap_or_else(|| vec![1.0; n]);
                Arc::new(SplineBump::new(knots.clone(), c)?)
            }
            ProfileSpec::Cutoff { epsilon } => Arc::new(make_cutoff(*epsilon)?),
            ProfileSpec::Minimizing { epsilon, branch } => minimizing_profile(*epsilon, d, alpha, *branch)?,
        })
    }
}
