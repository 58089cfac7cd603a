//! Spectral derivative and antiderivative on the 2π-periodic grid, plus
//! the loop container used by the operator and hierarchy numerics.
//!
//! Wavenumbers follow the usual FFT layout with the Nyquist bin assigned
//! to -N/2 in both the derivative and the antiderivative, so that
//! `∂_x⁻¹ ∘ ∂_x` is exactly the mean-removal projection as a linear map.
//! `∂_x⁻¹` is defined on (numerically) mean-zero inputs only and returns
//! the zero-mean antiderivative branch; the inherent integration constant
//! of a non-local operator is fixed by this convention.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::sample::LoopSpec;
use crate::{Error, Result};

pub struct Spectral {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Spectral {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Spectral {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn wavenumber(&self, j: usize) -> f64 {
        if j < self.n / 2 {
            j as f64
        } else {
            j as f64 - self.n as f64
        }
    }

    fn is_nyquist(&self, j: usize) -> bool {
        2 * j == self.n
    }

    fn spectrum(&self, f: &[f64]) -> Vec<Complex<f64>> {
        assert_eq!(f.len(), self.n);
        let mut buf: Vec<Complex<f64>> = f.iter().map(|&x| Complex::new(x, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    fn inverse_real(&self, mut buf: Vec<Complex<f64>>) -> Vec<f64> {
        self.inv.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter().map(|z| z.re * scale).collect()
    }

    /// Differentiation in Fourier space. The derivative and antiderivative
    /// of the unpaired Nyquist cosine both sample to zero on this grid, so
    /// that bin is zeroed exactly in both directions.
    pub fn derivative(&self, f: &[f64]) -> Vec<f64> {
        let mut buf = self.spectrum(f);
        for (j, z) in buf.iter_mut().enumerate() {
            *z = if self.is_nyquist(j) {
                Complex::new(0.0, 0.0)
            } else {
                *z * Complex::new(0.0, self.wavenumber(j))
            };
        }
        self.inverse_real(buf)
    }

    /// Zero-mean antiderivative of the fluctuating part: the k = 0 mode is
    /// dropped, every other mode divided by ik.
    pub fn antiderivative_zero_mean(&self, f: &[f64]) -> Vec<f64> {
        let mut buf = self.spectrum(f);
        buf[0] = Complex::new(0.0, 0.0);
        for (j, z) in buf.iter_mut().enumerate().skip(1) {
            *z = if self.is_nyquist(j) {
                Complex::new(0.0, 0.0)
            } else {
                *z / Complex::new(0.0, self.wavenumber(j))
            };
        }
        self.inverse_real(buf)
    }
}

pub fn mean(f: &[f64]) -> f64 {
    f.iter().sum::<f64>() / f.len() as f64
}

/// Trapezoidal = spectral quadrature of a periodic grid function over the
/// full circle.
pub fn circle_integral(f: &[f64]) -> f64 {
    mean(f) * std::f64::consts::TAU
}

pub fn sup_norm(f: &[f64]) -> f64 {
    f.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

/// A periodic discretized curve `u(x_k)`, `x_k = 2πk/N`, with its spectral
/// derivative. Grids are powers of two so transforms stay exact-friendly.
pub struct LoopGrid {
    pub n_points: usize,
    /// `values[i][k] = u^i(x_k)`, one row per coordinate
    pub values: Vec<Vec<f64>>,
    /// `derivs[i][k] = (u^i)_x(x_k)`
    pub derivs: Vec<Vec<f64>>,
}

impl LoopGrid {
    pub fn from_values(values: Vec<Vec<f64>>, spectral: &Spectral) -> Result<Self> {
        let n = spectral.len();
        if !n.is_power_of_two() || n < 8 {
            return Err(Error::Invalid(format!(
                "grid size {n} must be a power of two and at least 8"
            )));
        }
        if values.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("loop rows must match the grid size".into()));
        }
        let derivs = values.iter().map(|row| spectral.derivative(row)).collect();
        Ok(LoopGrid {
            n_points: n,
            values,
            derivs,
        })
    }

    pub fn from_spec(spec: &LoopSpec, spectral: &Spectral) -> Result<Self> {
        Self::from_values(spec.sample(spectral.len()), spectral)
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn point(&self, k: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[k]).collect()
    }
}
