//! Cubic B-spline bumps, stored as one cubic polynomial per knot interval.

use super::RadialProfile;
use crate::error::{Error, Result};

type Cubic = [f64; 4];

/// A C² cubic spline `Σ c_i B_i(r)` over a strictly increasing knot vector,
/// vanishing outside `[t_0, t_last]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineBump {
    knots: Vec<f64>,
    coefficients: Vec<f64>,
    /// Taylor coefficients of the spline on `[knots[j], knots[j+1]]` in
    /// powers of `r - knots[j]`.
    pieces: Vec<Cubic>,
}

impl SplineBump {
    /// `knots` must be strictly increasing and positive, with
    /// `knots.len() == coefficients.len() + 4`.
    pub fn new(knots: Vec<f64>, coefficients: Vec<f64>) -> Result<Self> {
        if knots.len() < 5 {
            return Err(Error::arg("a cubic B-spline needs at least 5 knots"));
        }
        if knots.len() != coefficients.len() + 4 {
            return Err(Error::arg(format!(
                "{} knots need {} coefficients, got {}",
                knots.len(),
                knots.len() - 4,
                coefficients.len()
            )));
        }
        if !(knots[0] > 0.0) || knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::arg("knots must be positive and finite"));
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::arg("knots must be strictly increasing"));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::arg("coefficients must be finite"));
        }
        let pieces = (0..knots.len() - 1)
            .map(|j| {
                let mut p = [0.0; 4];
                for (i, c) in coefficients.iter().enumerate() {
                    let b = basis_piece(&knots, i, 3, j);
                    for k in 0..4 {
                        p[k] += c * b[k];
                    }
                }
                p
            })
            .collect();
        Ok(Self {
            knots,
            coefficients,
            pieces,
        })
    }

    /// A single B-spline basis function on five knots.
    pub fn single(knots: [f64; 5]) -> Result<Self> {
        Self::new(knots.to_vec(), vec![1.0])
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    fn locate(&self, r: f64) -> Option<(usize, f64)> {
        let n = self.knots.len();
        if !(r >= self.knots[0] && r <= self.knots[n - 1]) {
            return None;
        }
        let j = self.knots.partition_point(|&k| k <= r).saturating_sub(1).min(n - 2);
        Some((j, r - self.knots[j]))
    }
}

/// `B_{i,k}` restricted to knot interval `j`, as a polynomial in
/// `x = r - t_j`, by the Cox-de Boor recursion.
fn basis_piece(t: &[f64], i: usize, k: usize, j: usize) -> Cubic {
    if k == 0 {
        return if i == j { [1.0, 0.0, 0.0, 0.0] } else { [0.0; 4] };
    }
    let mut out = [0.0; 4];
    // (r - t_i)/(t_{i+k} - t_i) B_{i,k-1}
    let left = basis_piece(t, i, k - 1, j);
    let dl = t[i + k] - t[i];
    let shift = t[j] - t[i];
    for m in 0..3 {
        out[m] += shift * left[m] / dl;
        out[m + 1] += left[m] / dl;
    }
    // (t_{i+k+1} - r)/(t_{i+k+1} - t_{i+1}) B_{i+1,k-1}
    let right = basis_piece(t, i + 1, k - 1, j);
    let dr = t[i + k + 1] - t[i + 1];
    let shift = t[i + k + 1] - t[j];
    for m in 0..3 {
        out[m] += shift * right[m] / dr;
        out[m + 1] -= right[m] / dr;
    }
    out
}

impl RadialProfile for SplineBump {
    fn value(&self, r: f64) -> f64 {
        self.locate(r).map_or(0.0, |(j, x)| {
            let p = &self.pieces[j];
            ((p[3] * x + p[2]) * x + p[1]) * x + p[0]
        })
    }

    fn d1(&self, r: f64) -> f64 {
        self.locate(r).map_or(0.0, |(j, x)| {
            let p = &self.pieces[j];
            (3.0 * p[3] * x + 2.0 * p[2]) * x + p[1]
        })
    }

    fn d2(&self, r: f64) -> f64 {
        self.locate(r).map_or(0.0, |(j, x)| {
            let p = &self.pieces[j];
            6.0 * p[3] * x + 2.0 * p[2]
        })
    }

    fn support(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.knots.clone()
    }
}
