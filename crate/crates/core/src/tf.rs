//! Functions on the time-frequency plane of a one-dimensional grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::grid::{weighted_lp_norm, Grid};

/// Description of the dual frequency axis: `ω_k = (k - n/2)·dω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreqAxis {
    pub n: usize,
    pub domega: f64,
    pub omega0: f64,
}

impl FreqAxis {
    pub fn of(grid: &Grid) -> Self {
        FreqAxis {
            n: grid.n,
            domega: grid.domega(),
            omega0: grid.omega(0),
        }
    }
}

/// Samples `F(x_i, ω_k)` stored row-major at `i·n + k`, with `k` the centered
/// frequency index.
#[derive(Debug, Clone, PartialEq)]
pub struct TfFunction {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl TfFunction {
    pub fn new(grid: Grid, samples: Vec<Complex64>) -> Result<Self> {
        grid.ensure_dim1()?;
        if samples.len() != grid.n * grid.n {
            return Err(Error::InvalidSignal(format!(
                "time-frequency function needs {} samples, got {}",
                grid.n * grid.n,
                samples.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidSignal("non-finite time-frequency sample".into()));
        }
        Ok(TfFunction { grid, samples })
    }

    pub fn zeros(grid: Grid) -> Result<Self> {
        TfFunction::new(grid, vec![Complex64::new(0.0, 0.0); grid.n * grid.n])
    }

    /// Samples `f(x, ω)` at every lattice point.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        let n = grid.n;
        let samples = (0..n * n).map(|i| f(grid.x(i / n), grid.omega(i % n))).collect();
        TfFunction::new(grid, samples)
    }

    pub(crate) fn from_raw(grid: Grid, samples: Vec<Complex64>) -> Self {
        debug_assert_eq!(samples.len(), grid.n * grid.n);
        TfFunction { grid, samples }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn fgrid(&self) -> FreqAxis {
        FreqAxis::of(&self.grid)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn get(&self, xi: usize, ki: usize) -> Complex64 {
        self.samples[xi * self.grid.n + ki]
    }

    /// Cell measure `dx·dω`.
    pub fn cell(&self) -> f64 {
        self.grid.dx * self.grid.domega()
    }

    pub fn lp_norm(&self, p: Exponent) -> f64 {
        weighted_lp_norm(self.samples.iter().map(|z| z.norm()), self.cell(), p)
    }

    pub fn sup_norm(&self) -> f64 {
        self.lp_norm(Exponent::Infinity)
    }

    pub fn conj(&self) -> TfFunction {
        TfFunction::from_raw(self.grid, self.samples.iter().map(|z| z.conj()).collect())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> TfFunction {
        TfFunction::from_raw(self.grid, self.samples.iter().map(|&z| f(z)).collect())
    }

    /// `z ↦ F(-z)` on the periodic lattice.
    pub fn reflect(&self) -> Result<TfFunction> {
        let n = self.grid.n;
        let s = self.grid.origin_index()?;
        let rx = |i: usize| (2 * s + n - i) % n;
        // ω_k = (k - n/2)dω, so -ω_k sits at n - k (mod n)
        let rk = |k: usize| (n - k) % n;
        let samples = (0..n * n).map(|i| self.samples[rx(i / n) * n + rk(i % n)]).collect();
        Ok(TfFunction::from_raw(self.grid, samples))
    }

    /// Largest pointwise difference.
    pub fn max_abs_diff(&self, other: &TfFunction) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// Translation by `(a_steps·dx, b_steps·dω)` on the torus.
    pub fn translate(&self, a_steps: i64, b_steps: i64) -> TfFunction {
        let n = self.grid.n as i64;
        let samples = (0..n * n)
            .map(|i| {
                let xi = (i / n - a_steps).rem_euclid(n);
                let ki = (i % n - b_steps).rem_euclid(n);
                self.samples[(xi * n + ki) as usize]
            })
            .collect();
        TfFunction::from_raw(self.grid, samples)
    }

    /// `Σ F·Ḡ·dx·dω`.
    pub fn inner(&self, other: &TfFunction) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let s: Complex64 = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.cell())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn reflection_and_translation() {
        let g = make_grid(8, 0.5, true).unwrap();
        let f = TfFunction::from_fn(g, |x, w| Complex64::new(x, 10.0 * w)).unwrap();
        let r = f.reflect().unwrap();
        // (x, ω) = (1, 0.25) maps to (-1, -0.25)
        let xi = 6;
        let ki = 5;
        assert_eq!(g.x(xi), 1.0);
        assert_eq!(g.omega(ki), 0.25);
        assert_eq!(r.get(xi, ki), Complex64::new(-1.0, -2.5));
        let t = f.translate(1, 2);
        assert_eq!(t.get(3, 4), f.get(2, 2));
    }

    #[test]
    fn norms_use_the_phase_space_cell() {
        let g = make_grid(8, 0.5, true).unwrap();
        let one = TfFunction::from_fn(g, |_, _| Complex64::new(1.0, 0.0)).unwrap();
        // area n·dx · n·dω = n = 8
        assert!((one.lp_norm(Exponent::ONE) - 8.0).abs() < 1e-12);
        assert!((one.lp_norm(Exponent::TWO) - 8f64.sqrt()).abs() < 1e-12);
    }
}
