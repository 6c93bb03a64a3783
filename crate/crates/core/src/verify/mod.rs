//! Brute-force oracles, minimizing-sequence sweeps and the seeded
//! verification suites.

mod suite;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::constants::{hardy_rellich_constant, is_degenerate, Branch, ProblemSpec, ZERO_EIGENVALUE_TOL};
use crate::error::{Error, Result};
use crate::quotient::{hardy_rellich_quotient, ModeFunction};
use crate::radial::{minimizing_profile, MinimizingBranch, RadialProfile, SplineBump};
use crate::spectra::AngularSpectrum;

pub use suite::{run_suite, CheckRecord, Suite, VerificationReport};

/// Seed used by the suites unless overridden.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Default ε grid of the minimizing sweeps.
pub const DEFAULT_EPSILONS: [f64; 5] = [1e-2, 3e-3, 1e-3, 3e-4, 1e-4];

/// Largest tolerated spread `max/min` of `gap · |ln 4ε²|` across a sweep.
pub const LOG_LAW_SPREAD: f64 = 4.0;

pub fn seeded_rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Minimum of the Hardy-Rellich mode function over the first `window`
/// eigenvalues, by direct evaluation of every term.
pub fn brute_force_constant(spectrum: &AngularSpectrum, d: u32, alpha: f64, window: usize) -> f64 {
    let dd = d as f64;
    let s = dd - alpha - 4.0;
    let values = spectrum.eigenvalues().iter().take(window.max(1));
    if is_degenerate(d, alpha) {
        values
            .filter(|&&l| l > ZERO_EIGENVALUE_TOL)
            .fold((dd - 2.0).powi(2), |m, &l| m.min(l))
    } else {
        values
            .map(|&l| (4.0 * l + (dd + alpha) * s).powi(2) / (4.0 * (4.0 * l + s * s)))
            .fold(f64::INFINITY, f64::min)
    }
}

/// A random C² cubic B-spline bump with 1 to 3 basis functions and knots in
/// `[0.1, 10]`, at least 0.05 apart.
pub fn random_bump(rng: &mut impl Rng) -> SplineBump {
    let n = rng.random_range(1..=3usize);
    loop {
        let mut knots: Vec<f64> = (0..n + 4).map(|_| rng.random_range(0.1..10.0)).collect();
        knots.sort_by(f64::total_cmp);
        if knots.windows(2).any(|w| w[1] - w[0] < 0.05) {
            continue;
        }
        let coefficients = (0..n)
            .map(|_| {
                let c: f64 = rng.random_range(0.2..1.0);
                if rng.random_bool(0.3) {
                    -c
                } else {
                    c
                }
            })
            .collect();
        return SplineBump::new(knots, coefficients).expect("valid random knots");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub ratio: f64,
    pub constant: f64,
    pub gap: f64,
    pub gap_times_log: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub branch: MinimizingBranch,
    /// Eigenvalue of the single mode carrying the test function.
    pub eigenvalue: f64,
    /// Limit the sweep approaches.
    pub constant: f64,
    pub rows: Vec<SweepRow>,
    /// Ratios strictly decrease as ε decreases.
    pub monotone: bool,
    /// `max/min` of `gap · |ln 4ε²|`, infinite if some gap is not positive.
    pub log_law_spread: f64,
}

impl SweepReport {
    pub fn log_law_holds(&self) -> bool {
        self.log_law_spread < LOG_LAW_SPREAD
    }

    pub fn passes(&self) -> bool {
        self.monotone && self.log_law_holds()
    }

    pub fn final_ratio(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.ratio)
    }
}

/// Evaluates the minimizing sequence for `C(d, α)` along `epsilons`.
///
/// With no branch given, the radial-log profile is used when the constant
/// is the radial value `(d-2)²` of the case `d - α - 4 = 0`, and the power
/// profile on the minimizing eigenvalue otherwise. A forced radial-log
/// branch targets `(d-2)²`.
pub fn minimizing_sweep(p: &ProblemSpec, epsilons: &[f64], branch: Option<MinimizingBranch>) -> Result<SweepReport> {
    if epsilons.len() < 2 {
        return Err(Error::arg("a sweep needs at least two values of epsilon"));
    }
    if epsilons.iter().any(|e| !(*e > 0.0 && *e < 0.5)) {
        return Err(Error::arg("every epsilon must lie in (0, 1/2)"));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::arg("epsilons must be strictly decreasing"));
    }
    let c = hardy_rellich_constant(p)?;
    let degenerate = c.branch == Branch::Degenerate;
    let branch = branch.unwrap_or(if c.is_radial() {
        MinimizingBranch::RadialLog
    } else {
        MinimizingBranch::Power
    });
    let (eigenvalue, constant) = match branch {
        MinimizingBranch::RadialLog => {
            if !degenerate {
                return Err(Error::arg("the radial-log branch needs d - alpha - 4 = 0"));
            }
            (0.0, (p.d as f64 - 2.0).powi(2))
        }
        MinimizingBranch::Power => {
            let l = c.argmin_eigenvalue.unwrap_or(0.0);
            if degenerate && l <= ZERO_EIGENVALUE_TOL {
                return Err(Error::arg(
                    "the radial constant (d-2)^2 is approached by the radial-log branch only",
                ));
            }
            (l, c.value)
        }
    };

    let rows = epsilons
        .iter()
        .map(|&eps| {
            let profile: Arc<dyn RadialProfile> = minimizing_profile(eps, p.d, p.alpha, branch)?;
            let q = hardy_rellich_quotient(&[ModeFunction::new(eigenvalue, profile)?], p.d, p.alpha)?;
            let gap = q.ratio - constant;
            Ok(SweepRow {
                epsilon: eps,
                ratio: q.ratio,
                constant,
                gap,
                gap_times_log: gap * (4.0 * eps * eps).ln().abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let monotone = rows.windows(2).all(|w| w[1].ratio < w[0].ratio);
    let logs: Vec<f64> = rows.iter().map(|r| r.gap_times_log).collect();
    let min = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_law_spread = if min > 0.0 { max / min } else { f64::INFINITY };
    Ok(SweepReport {
        branch,
        eigenvalue,
        constant,
        rows,
        monotone,
        log_law_spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::RadialProfile;
    use crate::spectra::{ab_spectrum, laplace_beltrami_spectrum, AngularOperator};

    #[test]
    fn brute_force_examples() {
        let free5 = laplace_beltrami_spectrum(5, 200).unwrap();
        assert_eq!(brute_force_constant(&free5, 5, 0.0, 200), 6.25);
        let free3 = laplace_beltrami_spectrum(3, 200).unwrap();
        assert_eq!(brute_force_constant(&free3, 3, 0.0, 2), 25.0 / 36.0);
        let ab = ab_spectrum(2, 0.5, 101).unwrap();
        assert!((brute_force_constant(&ab, 2, 0.0, 101) - 0.45).abs() < 1e-12);
        let free4 = laplace_beltrami_spectrum(4, 200).unwrap();
        assert_eq!(brute_force_constant(&free4, 4, 0.0, 200), 3.0);
    }

    #[test]
    fn random_bumps_are_reproducible() {
        let a = random_bump(&mut seeded_rng(7));
        let b = random_bump(&mut seeded_rng(7));
        assert_eq!(a, b);
        let (lo, hi) = a.support();
        assert!(lo >= 0.1 && hi <= 10.0);
    }

    #[test]
    fn sweep_branch_selection() {
        let eps = [1e-2, 1e-3];
        let p = ProblemSpec::new(4, 0.0, AngularOperator::Free { dim: 4 });
        let s = minimizing_sweep(&p, &eps, None).unwrap();
        assert_eq!(s.branch, MinimizingBranch::Power);
        assert_eq!((s.eigenvalue, s.constant), (3.0, 3.0));
        let s = minimizing_sweep(&p, &eps, Some(MinimizingBranch::RadialLog)).unwrap();
        assert_eq!(s.constant, 4.0);
        assert!(s.monotone && s.rows[1].ratio > 4.0);

        let p = ProblemSpec::new(6, 2.0, AngularOperator::Free { dim: 6 });
        let s = minimizing_sweep(&p, &eps, None).unwrap();
        assert_eq!((s.branch, s.constant), (MinimizingBranch::Power, 5.0));

        let p = ProblemSpec::new(3, -1.0, AngularOperator::Free { dim: 3 });
        let s = minimizing_sweep(&p, &eps, None).unwrap();
        assert_eq!((s.branch, s.constant), (MinimizingBranch::RadialLog, 1.0));

        let p = ProblemSpec::new(5, 0.0, AngularOperator::Free { dim: 5 });
        assert!(minimizing_sweep(&p, &eps, Some(MinimizingBranch::RadialLog)).is_err());
        assert!(minimizing_sweep(&p, &[1e-3, 1e-2], None).is_err());
        assert!(minimizing_sweep(&p, &[1e-3], None).is_err());
    }

    #[test]
    fn sweep_law_for_d5() {
        let p = ProblemSpec::new(5, 0.0, AngularOperator::Free { dim: 5 });
        let s = minimizing_sweep(&p, &DEFAULT_EPSILONS, None).unwrap();
        assert!(s.passes(), "{s:?}");
        assert!(s.rows.iter().all(|r| r.gap > 0.0));
    }
}
