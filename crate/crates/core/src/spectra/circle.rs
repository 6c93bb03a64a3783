//! Spectrum of `-d^2/dθ^2 + a(θ)` on the circle.
//!
//! The operator is projected onto the real trigonometric basis
//! `{1, √2 cos kθ, √2 sin kθ : 1 <= k <= N/4}` with the potential term
//! evaluated by the N-point trapezoid rule, which is exact for every product
//! of two basis functions. The Galerkin matrix is diagonalized with the
//! cyclic Jacobi solver.

use std::f64::consts::{PI, SQRT_2};

use super::jacobi::{symmetric_eigenvalues, SymmetricMatrix};
use super::{AngularSpectrum, SpectrumSource};
use crate::error::{Error, Result};

/// Samples `a` at `θ_n = 2πn/grid`.
pub fn sample_potential(a: impl Fn(f64) -> f64, grid: usize) -> Vec<f64> {
    (0..grid).map(|n| a(2.0 * PI * n as f64 / grid as f64)).collect()
}

/// Periodic linear interpolation of uniformly spaced samples onto a grid of
/// `grid` points.
pub fn resample_periodic(samples: &[f64], grid: usize) -> Vec<f64> {
    let m = samples.len();
    if m == grid || m == 0 {
        return samples.to_vec();
    }
    (0..grid)
        .map(|n| {
            let x = n as f64 * m as f64 / grid as f64;
            let i = x.floor() as usize % m;
            let w = x - x.floor();
            (1.0 - w) * samples[i] + w * samples[(i + 1) % m]
        })
        .collect()
}

/// Smallest `count` eigenvalues of `-d^2/dθ^2 + a(θ)`, where `samples` holds
/// `a` on a uniform grid of `N = samples.len()` points.
pub fn circle_schrodinger_spectrum(samples: &[f64], count: usize) -> Result<AngularSpectrum> {
    let grid = samples.len();
    if count == 0 {
        return Err(Error::arg("count must be at least 1"));
    }
    if !grid.is_multiple_of(2) {
        return Err(Error::arg(format!("grid size must be even, got {grid}")));
    }
    if grid < 4 * count {
        return Err(Error::Resolution {
            grid,
            count,
            required: 4 * count,
        });
    }
    if let Some(bad) = samples.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::arg(format!("potential sample {bad} is negative or not finite")));
    }

    let max_mode = grid / 4;
    let size = 2 * max_mode + 1;
    // basis[i][n] and the squared wavenumber of basis function i
    let mut basis = vec![vec![0.0; grid]; size];
    let mut wavenumber_sq = vec![0.0; size];
    basis[0].fill(1.0);
    for k in 1..=max_mode {
        let (c, s) = (2 * k - 1, 2 * k);
        wavenumber_sq[c] = (k * k) as f64;
        wavenumber_sq[s] = (k * k) as f64;
        for n in 0..grid {
            let theta = 2.0 * PI * (k * n) as f64 / grid as f64;
            basis[c][n] = SQRT_2 * theta.cos();
            basis[s][n] = SQRT_2 * theta.sin();
        }
    }

    let mut m = SymmetricMatrix::zeros(size);
    let inv_n = 1.0 / grid as f64;
    for i in 0..size {
        for j in i..size {
            let potential: f64 = (0..grid).map(|n| samples[n] * basis[i][n] * basis[j][n]).sum();
            let mut v = potential * inv_n;
            if i == j {
                v += wavenumber_sq[i];
            }
            m.set(i, j, v);
        }
    }

    let mut eigenvalues = symmetric_eigenvalues(&m)?;
    eigenvalues.truncate(count);
    Ok(AngularSpectrum {
        eigenvalues,
        source: SpectrumSource::Circle { grid },
        exhaustive: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_potential() {
        let s = circle_schrodinger_spectrum(&vec![2.0; 64], 3).unwrap();
        for (x, y) in s.eigenvalues().iter().zip([2.0, 3.0, 3.0]) {
            assert!((x - y).abs() < 1e-10);
        }
        let s = circle_schrodinger_spectrum(&vec![0.0; 64], 3).unwrap();
        for (x, y) in s.eigenvalues().iter().zip([0.0, 1.0, 1.0]) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn first_ten_modes_at_256_points() {
        let a = 1.5;
        let s = circle_schrodinger_spectrum(&vec![a; 256], 10).unwrap();
        let expected = [0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0, 16.0, 16.0, 25.0];
        for (x, k2) in s.eigenvalues().iter().zip(expected) {
            assert!((x - (k2 + a)).abs() < 1e-8, "{x} vs {}", k2 + a);
        }
    }

    #[test]
    fn self_convergence_for_cosine_potential() {
        let a = |t: f64| 2.0 + t.cos();
        let coarse = circle_schrodinger_spectrum(&sample_potential(a, 128), 5).unwrap();
        let fine = circle_schrodinger_spectrum(&sample_potential(a, 256), 5).unwrap();
        for (x, y) in coarse.eigenvalues().iter().zip(fine.eigenvalues()) {
            assert!((x - y).abs() < 1e-8, "{x} vs {y}");
        }
        assert!(coarse.eigenvalues()[0] >= 1.0 - 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            circle_schrodinger_spectrum(&[1.0; 16], 5),
            Err(Error::Resolution { .. })
        ));
        assert!(circle_schrodinger_spectrum(&[1.0; 15], 2).is_err());
        let mut s = vec![1.0; 16];
        s[3] = -0.1;
        assert!(matches!(circle_schrodinger_spectrum(&s, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn resample_is_identity_on_same_grid() {
        let s = sample_potential(|t| t.sin() + 2.0, 8);
        assert_eq!(resample_periodic(&s, 8), s);
        let up = resample_periodic(&s, 16);
        assert_eq!(up.len(), 16);
        assert!((up[2] - s[1]).abs() < 1e-15);
    }
}
