//! Rayleigh quotients of mode-decomposed test functions
//! `ψ(r, ω) = Σ f_m(r) u_m(ω)`, reduced to radial integrals.
//!
//! The angular eigenfunctions `u_m` are taken orthonormal, so cross terms
//! vanish and every quantity is a sum over modes. The surface measure of the
//! sphere is dropped throughout since only ratios are reported.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radial::{
    integrate, panel_seeds, weighted_integral_with_error, Integral, RadialProfile,
};
use crate::spectra::AngularOperator;

/// Relative slack of inequality checks.
pub const RATIO_SLACK: f64 = 1e-6;

/// One term `f(r) u(ω)` with `Λ_ω u = λ u`.
#[derive(Debug, Clone)]
pub struct ModeFunction {
    pub eigenvalue: f64,
    pub profile: Arc<dyn RadialProfile>,
}

impl ModeFunction {
    pub fn new(eigenvalue: f64, profile: Arc<dyn RadialProfile>) -> Result<Self> {
        if !(eigenvalue >= 0.0 && eigenvalue.is_finite()) {
            return Err(Error::arg(format!("mode eigenvalue must be finite and >= 0, got {eigenvalue}")));
        }
        Ok(Self { eigenvalue, profile })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub mode_eigenvalues: Vec<f64>,
    pub mode_numerators: Vec<f64>,
    pub mode_denominators: Vec<f64>,
    pub numerator_error: f64,
    pub denominator_error: f64,
}

impl QuotientReport {
    fn assemble(terms: Vec<(f64, Integral, Integral)>) -> Result<Self> {
        let (mut num, mut den) = (Integral::default(), Integral::default());
        for (_, n, d) in &terms {
            num = num + *n;
            den = den + *d;
        }
        if !(den.value > 0.0) {
            return Err(Error::DegenerateInput(format!(
                "quotient denominator is {}; the test function vanishes",
                den.value
            )));
        }
        Ok(Self {
            numerator: num.value,
            denominator: den.value,
            ratio: num.value / den.value,
            mode_eigenvalues: terms.iter().map(|t| t.0).collect(),
            mode_numerators: terms.iter().map(|t| t.1.value).collect(),
            mode_denominators: terms.iter().map(|t| t.2.value).collect(),
            numerator_error: num.error,
            denominator_error: den.error,
        })
    }

    /// `ratio >= constant (1 - slack)`, with the slack taken on `|constant|`.
    pub fn satisfies(&self, constant: f64, slack: f64) -> bool {
        self.ratio >= constant - slack * constant.abs()
    }
}

/// `coef * ∫|f^{(q)}|² r^power`, skipping the integral when `coef = 0`.
fn term(p: &dyn RadialProfile, coef: f64, q: u8, power: f64) -> Result<Integral> {
    if coef == 0.0 {
        return Ok(Integral::default());
    }
    Ok(weighted_integral_with_error(p, q, power)?.scale(coef))
}

fn numerator_integral(m: &ModeFunction, d: u32, alpha: f64) -> Result<Integral> {
    let (dd, l) = (d as f64, m.eigenvalue);
    let p = &*m.profile;
    Ok(term(p, 1.0, 2, dd - alpha - 1.0)?
        + term(p, (dd - 1.0) * (alpha + 1.0) + 2.0 * l, 1, dd - alpha - 3.0)?
        + term(p, l * ((alpha + 2.0) * (dd - alpha - 4.0) + l), 0, dd - alpha - 5.0)?)
}

fn denominator_integral(m: &ModeFunction, d: u32, alpha: f64) -> Result<Integral> {
    let dd = d as f64;
    let p = &*m.profile;
    Ok(term(p, 1.0, 1, dd - alpha - 3.0)? + term(p, m.eigenvalue, 0, dd - alpha - 5.0)?)
}

/// Per-mode contribution to `∫|Lψ|²/|x|^α`:
/// `∫|f''|² r^{d-α-1} + [(d-1)(α+1) + 2λ] ∫|f'|² r^{d-α-3}
///  + λ[(α+2)(d-α-4) + λ] ∫|f|² r^{d-α-5}`.
pub fn mode_numerator(m: &ModeFunction, d: u32, alpha: f64) -> Result<f64> {
    numerator_integral(m, d, alpha).map(|i| i.value)
}

/// Per-mode contribution to `∫ D(ψ)/|x|^{α+2}`:
/// `∫|f'|² r^{d-α-3} + λ ∫|f|² r^{d-α-5}`.
pub fn mode_denominator(m: &ModeFunction, d: u32, alpha: f64) -> Result<f64> {
    denominator_integral(m, d, alpha).map(|i| i.value)
}

fn require_modes(modes: &[ModeFunction]) -> Result<()> {
    if modes.is_empty() {
        return Err(Error::arg("at least one mode is required"));
    }
    Ok(())
}

/// `∫|Lψ|²/|x|^α ÷ ∫ D(ψ)/|x|^{α+2}`.
pub fn hardy_rellich_quotient(modes: &[ModeFunction], d: u32, alpha: f64) -> Result<QuotientReport> {
    require_modes(modes)?;
    let terms = modes
        .iter()
        .map(|m| Ok((m.eigenvalue, numerator_integral(m, d, alpha)?, denominator_integral(m, d, alpha)?)))
        .collect::<Result<Vec<_>>>()?;
    QuotientReport::assemble(terms)
}

/// `∫ D(ψ)/|x|^β ÷ ∫|ψ|²/|x|^{β+2}`.
pub fn hardy_quotient(modes: &[ModeFunction], d: u32, beta: f64) -> Result<QuotientReport> {
    require_modes(modes)?;
    let dd = d as f64;
    let terms = modes
        .iter()
        .map(|m| {
            let p = &*m.profile;
            let den = term(p, 1.0, 0, dd - beta - 3.0)?;
            let num = term(p, 1.0, 1, dd - beta - 1.0)? + den.scale(m.eigenvalue);
            Ok((m.eigenvalue, num, den))
        })
        .collect::<Result<Vec<_>>>()?;
    QuotientReport::assemble(terms)
}

/// `|LHS - RHS|` of the Carré du Champ identity
///
/// ```text
/// ∫ Γ(ψ)|x|^β = ∫|∂_r ψ|²|x|^β + ∫|Λ^{1/2}ψ|²|x|^{β-2} - ½∫|ψ|²|x|^{-2} Λ|x|^β
/// ```
///
/// for `Λ = -Δ_S + a` with constant `a` and `ψ = f(r)u(ω)`. The left side
/// integrates the definition `2Γ(ψ) = 2ψLψ - L|ψ|²` pointwise, the right
/// side is assembled from weighted integrals.
pub fn carre_du_champ_residual(m: &ModeFunction, operator: &AngularOperator, d: u32, beta: f64) -> Result<f64> {
    let a = match operator {
        AngularOperator::Free { dim } if *dim == d => 0.0,
        AngularOperator::ElectricConst { dim, a } if *dim == d => *a,
        AngularOperator::Free { .. } | AngularOperator::ElectricConst { .. } => {
            return Err(Error::arg("angular operator dimension does not match d"))
        }
        _ => {
            return Err(Error::arg(
                "the Carré du Champ identity is available only for a constant angular potential",
            ))
        }
    };
    let l = m.eigenvalue;
    if l < a {
        return Err(Error::arg(format!(
            "eigenvalue {l} lies below the potential {a}, so it is not in the spectrum of -Δ_S + a"
        )));
    }
    let dd = d as f64;
    let p = &*m.profile;

    let (lo, hi) = p.support();
    let lhs = integrate(
        |r| {
            let (f, f1, f2) = (p.value(r), p.d1(r), p.d2(r));
            let lr_f = -f2 - (dd - 1.0) * f1 / r;
            let lr_f2 = -2.0 * f1 * f1 - 2.0 * f * f2 - 2.0 * (dd - 1.0) * f * f1 / r;
            let gamma = f * lr_f + l * f * f / (r * r) - 0.5 * lr_f2 - 0.5 * a * f * f / (r * r);
            gamma * r.powf(beta + dd - 1.0)
        },
        &panel_seeds(&p.breakpoints(), lo, hi),
    )?;

    let radial = weighted_integral_with_error(p, 1, beta + dd - 1.0)?;
    let angular = weighted_integral_with_error(p, 0, beta + dd - 3.0)?;
    let rhs = radial.value + l * angular.value - 0.5 * a * angular.value;
    Ok((lhs.value - rhs).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneDHardy {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `∫|f'|² r^{t+2} >= ((t+1)/2)² ∫|f|² r^t`.
pub fn one_d_hardy_check(f: &dyn RadialProfile, t: f64) -> Result<OneDHardy> {
    let lhs = weighted_integral_with_error(f, 1, t + 2.0)?.value;
    let rhs = ((t + 1.0) / 2.0).powi(2) * weighted_integral_with_error(f, 0, t)?.value;
    Ok(OneDHardy {
        lhs,
        rhs,
        holds: lhs >= rhs * (1.0 - 1e-9),
    })
}
