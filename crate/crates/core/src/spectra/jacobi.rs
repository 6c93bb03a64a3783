//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.
//!
//! Each rotation annihilates one off-diagonal pair; sweeps visit every pair
//! `(p, q)` with `p < q` in row order. Iteration stops once the off-diagonal
//! Frobenius norm falls below `REL_TOL` times the Frobenius norm of the input.

use crate::error::{Error, Result};

const REL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    s += v * v;
                }
            }
        }
        s.sqrt()
    }
}

/// Eigenvalues of `a` in non-decreasing order.
pub fn symmetric_eigenvalues(a: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = a.n;
    let mut m = a.clone();
    let scale = m.frobenius();
    if n <= 1 || scale == 0.0 {
        let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
        d.sort_by(f64::total_cmp);
        return Ok(d);
    }
    let threshold = REL_TOL * scale;

    let mut sweeps = 0;
    let mut off = m.off_diagonal_norm();
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Eigensolver {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, p, q);
            }
        }
        sweeps += 1;
        off = m.off_diagonal_norm();
    }

    let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Applies the rotation that zeroes `m[p][q]`.
fn rotate(m: &mut SymmetricMatrix, p: usize, q: usize) {
    let apq = m.get(p, q);
    if apq == 0.0 {
        return;
    }
    let app = m.get(p, p);
    let aqq = m.get(q, q);
    let theta = (aqq - app) / (2.0 * apq);
    // smaller root of t^2 + 2 t theta - 1 = 0
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    let n = m.n;
    m.data[p * n + p] = app - t * apq;
    m.data[q * n + q] = aqq + t * apq;
    m.set(p, q, 0.0);
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = m.get(r, p);
        let arq = m.get(r, q);
        m.set(r, p, arp - s * (arq + tau * arp));
        m.set(r, q, arq + s * (arp - tau * arq));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let mut a = SymmetricMatrix::zeros(2);
        a.set(0, 0, 2.0);
        a.set(1, 1, 2.0);
        a.set(0, 1, 1.0);
        let ev = symmetric_eigenvalues(&a).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14);
        assert!((ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn periodic_second_difference_matrix() {
        // eigenvalues of the circulant [2, -1, 0, ..., -1] are 4 sin^2(pi k / n)
        let n = 12;
        let mut a = SymmetricMatrix::zeros(n);
        for i in 0..n {
            a.set(i, i, 2.0);
            a.set(i, (i + 1) % n, -1.0);
        }
        let ev = symmetric_eigenvalues(&a).unwrap();
        let mut expected: Vec<f64> = (0..n)
            .map(|k| 4.0 * (std::f64::consts::PI * k as f64 / n as f64).sin().powi(2))
            .collect();
        expected.sort_by(f64::total_cmp);
        for (x, y) in ev.iter().zip(&expected) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn trace_is_preserved() {
        let n = 9;
        let mut a = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                a.set(i, j, ((i * 7 + j * 3) % 5) as f64 - 2.0 + (i == j) as u8 as f64 * 0.5);
            }
        }
        let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
        let ev = symmetric_eigenvalues(&a).unwrap();
        assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-10);
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }
}
