//! Eigenvalue enumerations for the angular operators on the unit sphere.
//!
//! Closed-form providers cover the Laplace-Beltrami operator, its constant
//! shift, the Aharonov-Bohm magnetic Laplace-Beltrami operator and the
//! monopole operator `K_g`. The circle provider diagonalizes
//! `-d^2/dtheta^2 + a(theta)` numerically.

mod circle;
pub mod jacobi;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use circle::{circle_schrodinger_spectrum, resample_periodic, sample_potential};

/// Which operator family produced a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum SpectrumSource {
    LaplaceBeltrami { dim: u32 },
    Shifted { base: Box<SpectrumSource>, shift: f64 },
    AharonovBohm { dim: u32, flux: f64 },
    Monopole { g: f64 },
    Circle { grid: usize },
    Explicit,
    Filtered { base: Box<SpectrumSource> },
}

/// Finite, non-decreasing prefix of the spectrum of a non-negative angular
/// operator.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSpectrum {
    eigenvalues: Vec<f64>,
    source: SpectrumSource,
    exhaustive: bool,
}

impl AngularSpectrum {
    /// Wraps an arbitrary list of eigenvalues. The list is sorted; negative
    /// entries are rejected.
    pub fn explicit(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if let Some(bad) = eigenvalues.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::arg(format!("eigenvalue {bad} is not a finite non-negative number")));
        }
        eigenvalues.sort_by(f64::total_cmp);
        Ok(Self {
            eigenvalues,
            source: SpectrumSource::Explicit,
            exhaustive: true,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.eigenvalues.get(index).copied()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn source(&self) -> &SpectrumSource {
        &self.source
    }

    /// True when the enumeration is the exact non-decreasing ordering of the
    /// operator's eigenvalues (closed forms), false for numerical
    /// approximations.
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }
}

/// Enumeration indices to drop before minimization.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeExclusion(BTreeSet<usize>);

impl ModeExclusion {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().next_back().copied()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for ModeExclusion {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::arg("count must be at least 1"));
    }
    Ok(())
}

fn check_dim(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::arg(format!("dimension must be >= 2, got {d}")));
    }
    Ok(())
}

/// Distinct eigenvalues `k(k + d - 2)`, `k = 0, 1, ...` of `-Δ` on `S^{d-1}`.
pub fn laplace_beltrami_spectrum(d: u32, count: usize) -> Result<AngularSpectrum> {
    check_dim(d)?;
    check_count(count)?;
    let shift = d as f64 - 2.0;
    let eigenvalues = (0..count)
        .map(|k| {
            let k = k as f64;
            k * (k + shift)
        })
        .collect();
    Ok(AngularSpectrum {
        eigenvalues,
        source: SpectrumSource::LaplaceBeltrami { dim: d },
        exhaustive: true,
    })
}

/// Spectrum of `base + a`.
pub fn shifted_spectrum(base: &AngularSpectrum, a: f64) -> Result<AngularSpectrum> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::arg(format!("shift must be finite and non-negative, got {a}")));
    }
    Ok(AngularSpectrum {
        eigenvalues: base.eigenvalues.iter().map(|l| l + a).collect(),
        source: SpectrumSource::Shifted {
            base: Box::new(base.source.clone()),
            shift: a,
        },
        exhaustive: base.exhaustive,
    })
}

/// Aharonov-Bohm eigenvalues `(m + Ψ)(m + Ψ + d - 2)` over
/// `Z' = {m : m <= 2 - d - Ψ or m >= -Ψ}`, sorted, one entry per `m`.
///
/// Both branches of `Z'` are monotone in `|m|`, so the two outward walks are
/// merged pointwise.
pub fn ab_spectrum(d: u32, flux: f64, count: usize) -> Result<AngularSpectrum> {
    check_dim(d)?;
    check_count(count)?;
    if !flux.is_finite() {
        return Err(Error::arg("flux must be finite"));
    }
    let shift = d as f64 - 2.0;
    let value = |m: i64| {
        let t = m as f64 + flux;
        t * (t + shift)
    };
    let mut up = (-flux).ceil() as i64;
    // the two branches coincide at m = -Ψ when d = 2 and Ψ is an integer
    let mut down = ((2.0 - d as f64 - flux).floor() as i64).min(up - 1);

    let mut eigenvalues = Vec::with_capacity(count);
    while eigenvalues.len() < count {
        let (vu, vd) = (value(up), value(down));
        if vu <= vd {
            eigenvalues.push(vu.max(0.0));
            up += 1;
        } else {
            eigenvalues.push(vd.max(0.0));
            down -= 1;
        }
    }
    Ok(AngularSpectrum {
        eigenvalues,
        source: SpectrumSource::AharonovBohm { dim: d, flux },
        exhaustive: true,
    })
}

/// Monopole eigenvalues `k(k + 2)/4 - g^2` with `k = 2(|g| + l)`.
pub fn monopole_spectrum(g: f64, count: usize) -> Result<AngularSpectrum> {
    check_count(count)?;
    let two_g = 2.0 * g.abs();
    if !g.is_finite() || two_g < 1.0 || (two_g - two_g.round()).abs() > 1e-12 {
        return Err(Error::arg(format!(
            "monopole strength must satisfy |g| >= 1/2 with 2g an integer, got {g}"
        )));
    }
    let g2 = g * g;
    let eigenvalues = (0..count)
        .map(|l| {
            let k = two_g + 2.0 * l as f64;
            k * (k + 2.0) / 4.0 - g2
        })
        .collect();
    Ok(AngularSpectrum {
        eigenvalues,
        source: SpectrumSource::Monopole { g },
        exhaustive: true,
    })
}

/// Removes the listed enumeration indices.
pub fn apply_exclusion(spec: &AngularSpectrum, excl: &ModeExclusion) -> Result<AngularSpectrum> {
    if excl.is_empty() {
        return Ok(spec.clone());
    }
    if let Some(max) = excl.max_index() {
        if max >= spec.len() {
            return Err(Error::arg(format!(
                "excluded index {max} is out of range for a spectrum of {} values",
                spec.len()
            )));
        }
    }
    Ok(AngularSpectrum {
        eigenvalues: spec
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(i, _)| !excl.contains(*i))
            .map(|(_, v)| *v)
            .collect(),
        source: SpectrumSource::Filtered {
            base: Box::new(spec.source.clone()),
        },
        exhaustive: spec.exhaustive,
    })
}

/// An angular operator `Λ_ω` from one of the supported families. This is the
/// lazily enumerable counterpart of [`AngularSpectrum`].
#[derive(Debug, Clone, PartialEq)]
pub enum AngularOperator {
    /// `-Δ_{S^{d-1}}`.
    Free { dim: u32 },
    /// `-Δ_{S^{d-1}} + a` with constant `a >= 0`.
    ElectricConst { dim: u32, a: f64 },
    /// `-d^2/dθ^2 + a(θ)` on the circle, `a` sampled on a uniform grid.
    ElectricProfile { samples: Vec<f64> },
    AharonovBohm { dim: u32, flux: f64 },
    /// Monopole operator `K_g` on `S^2`.
    Monopole { g: f64 },
    /// A fixed, finite list of eigenvalues.
    Explicit(AngularSpectrum),
}

impl AngularOperator {
    /// Dimension of the ambient space, when the family fixes it.
    pub fn dim(&self) -> Option<u32> {
        match self {
            Self::Free { dim } | Self::ElectricConst { dim, .. } | Self::AharonovBohm { dim, .. } => {
                Some(*dim)
            }
            Self::ElectricProfile { .. } => Some(2),
            Self::Monopole { .. } => Some(3),
            Self::Explicit(_) => None,
        }
    }

    /// Largest count that [`spectrum`](Self::spectrum) can deliver, `None` if
    /// unbounded.
    pub fn max_count(&self) -> Option<usize> {
        match self {
            Self::ElectricProfile { samples } => Some(samples.len() / 4),
            Self::Explicit(s) => Some(s.len()),
            _ => None,
        }
    }

    /// First `count` eigenvalues in non-decreasing order.
    pub fn spectrum(&self, count: usize) -> Result<AngularSpectrum> {
        match self {
            Self::Free { dim } => laplace_beltrami_spectrum(*dim, count),
            Self::ElectricConst { dim, a } => shifted_spectrum(&laplace_beltrami_spectrum(*dim, count)?, *a),
            Self::ElectricProfile { samples } => circle_schrodinger_spectrum(samples, count),
            Self::AharonovBohm { dim, flux } => ab_spectrum(*dim, *flux, count),
            Self::Monopole { g } => monopole_spectrum(*g, count),
            Self::Explicit(s) => {
                check_count(count)?;
                if count > s.len() {
                    return Err(Error::arg(format!(
                        "requested {count} eigenvalues from an explicit list of {}",
                        s.len()
                    )));
                }
                Ok(AngularSpectrum {
                    eigenvalues: s.eigenvalues[..count].to_vec(),
                    source: s.source.clone(),
                    exhaustive: s.exhaustive,
                })
            }
        }
    }

    /// Up to `count` eigenvalues, capped at [`max_count`](Self::max_count).
    pub fn spectrum_up_to(&self, count: usize) -> Result<AngularSpectrum> {
        let n = self.max_count().map_or(count, |m| count.min(m));
        self.spectrum(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplace_beltrami_values() {
        assert_eq!(laplace_beltrami_spectrum(2, 3).unwrap().eigenvalues(), &[0.0, 1.0, 4.0]);
        assert_eq!(laplace_beltrami_spectrum(4, 2).unwrap().eigenvalues(), &[0.0, 3.0]);
        assert_eq!(
            laplace_beltrami_spectrum(5, 4).unwrap().eigenvalues(),
            &[0.0, 4.0, 10.0, 18.0]
        );
        assert!(laplace_beltrami_spectrum(1, 3).is_err());
        assert!(laplace_beltrami_spectrum(3, 0).is_err());
    }

    #[test]
    fn shifted_values() {
        let d2 = laplace_beltrami_spectrum(2, 3).unwrap();
        assert_eq!(shifted_spectrum(&d2, 2.0).unwrap().eigenvalues(), &[2.0, 3.0, 6.0]);
        assert_eq!(shifted_spectrum(&d2, 0.0).unwrap().eigenvalues(), d2.eigenvalues());
        let d3 = laplace_beltrami_spectrum(3, 3).unwrap();
        assert_eq!(shifted_spectrum(&d3, 0.5).unwrap().eigenvalues(), &[0.5, 2.5, 6.5]);
        assert!(shifted_spectrum(&d3, -0.1).is_err());
    }

    #[test]
    fn ab_values() {
        assert_eq!(ab_spectrum(2, 0.0, 3).unwrap().eigenvalues(), &[0.0, 1.0, 1.0]);
        assert_eq!(ab_spectrum(2, 0.5, 2).unwrap().eigenvalues(), &[0.25, 0.25]);
        assert_eq!(ab_spectrum(4, 0.5, 2).unwrap().eigenvalues(), &[1.25, 1.25]);
    }

    #[test]
    fn ab_branches_do_not_overlap_for_integer_flux() {
        // d = 2, Ψ = 3: m = -3 lies on both branch boundaries and must appear once
        let s = ab_spectrum(2, 3.0, 5).unwrap();
        assert_eq!(s.eigenvalues(), &[0.0, 1.0, 1.0, 4.0, 4.0]);
    }

    #[test]
    fn ab_spectrum_matches_direct_enumeration_of_z_prime() {
        for d in 2..=6u32 {
            for &flux in &[-1.3, 0.0, 0.25, 0.5, 0.9, 2.0] {
                let mut brute: Vec<f64> = (-200i64..=200)
                    .filter(|&m| {
                        let m = m as f64;
                        m <= 2.0 - d as f64 - flux || m >= -flux
                    })
                    .map(|m| {
                        let t = m as f64 + flux;
                        t * (t + d as f64 - 2.0)
                    })
                    .collect();
                brute.sort_by(f64::total_cmp);
                let s = ab_spectrum(d, flux, 40).unwrap();
                for (a, b) in s.eigenvalues().iter().zip(&brute) {
                    assert!((a - b).abs() < 1e-12, "d={d} flux={flux}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn monopole_values() {
        assert_eq!(monopole_spectrum(0.5, 2).unwrap().eigenvalues(), &[0.5, 3.5]);
        assert_eq!(monopole_spectrum(1.0, 2).unwrap().eigenvalues(), &[1.0, 5.0]);
        for &g in &[0.5, 1.0, 1.5, 4.0, -2.5] {
            let first = monopole_spectrum(g, 1).unwrap().eigenvalues()[0];
            assert!((first - g.abs()).abs() < 1e-12);
        }
        assert!(monopole_spectrum(0.25, 2).is_err());
        assert!(monopole_spectrum(0.7, 2).is_err());
    }

    #[test]
    fn exclusion() {
        let d2 = laplace_beltrami_spectrum(2, 4).unwrap();
        let one: ModeExclusion = [1].into_iter().collect();
        assert_eq!(apply_exclusion(&d2, &one).unwrap().eigenvalues(), &[0.0, 4.0, 9.0]);
        assert_eq!(apply_exclusion(&d2, &ModeExclusion::none()).unwrap(), d2);
        let s = AngularSpectrum::explicit(vec![0.0, 3.0, 8.0]).unwrap();
        let zero: ModeExclusion = [0].into_iter().collect();
        assert_eq!(apply_exclusion(&s, &zero).unwrap().eigenvalues(), &[3.0, 8.0]);
        let far: ModeExclusion = [3].into_iter().collect();
        assert!(apply_exclusion(&s, &far).is_err());
    }

    #[test]
    fn explicit_rejects_negative() {
        assert!(AngularSpectrum::explicit(vec![1.0, -0.5]).is_err());
        let s = AngularSpectrum::explicit(vec![3.0, 1.0]).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 3.0]);
    }

    #[test]
    fn operator_dispatch() {
        let op = AngularOperator::ElectricConst { dim: 2, a: 2.0 };
        assert_eq!(op.spectrum(3).unwrap().eigenvalues(), &[2.0, 3.0, 6.0]);
        assert_eq!(op.max_count(), None);
        let op = AngularOperator::ElectricProfile { samples: vec![1.0; 16] };
        assert_eq!(op.max_count(), Some(4));
        assert_eq!(op.spectrum_up_to(10).unwrap().len(), 4);
    }
}
