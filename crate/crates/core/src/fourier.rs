//! FFT plumbing: physical-phase DFTs, band-limited 2× interpolation and
//! 1-D / 2-D convolutions (zero-padded or circular) that respect grid origins.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::Grid;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

fn inverse_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n))
}

/// Unnormalized in-place forward FFT, `X_k = Σ x_j e^{-2πijk/n}`.
pub fn fft(buf: &mut [Complex64]) {
    forward_plan(buf.len()).process(buf);
}

/// Unnormalized in-place inverse FFT, `x_j = Σ X_k e^{2πijk/n}`.
pub fn ifft(buf: &mut [Complex64]) {
    inverse_plan(buf.len()).process(buf);
}

/// Forward FFT of every contiguous row of length `n`.
pub fn fft_rows(buf: &mut [Complex64], n: usize) {
    let plan = forward_plan(n);
    plan.process(buf);
}

fn ifft_rows(buf: &mut [Complex64], n: usize) {
    inverse_plan(n).process(buf);
}

fn transpose(buf: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); buf.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = buf[r * cols + c];
        }
    }
    out
}

/// Unnormalized 2-D FFT of a row-major `m × m` array.
pub fn fft2(buf: &mut Vec<Complex64>, m: usize) {
    fft_rows(buf, m);
    let mut t = transpose(buf, m, m);
    fft_rows(&mut t, m);
    *buf = transpose(&t, m, m);
}

/// Unnormalized 2-D inverse FFT of a row-major `m × m` array.
pub fn ifft2(buf: &mut Vec<Complex64>, m: usize) {
    ifft_rows(buf, m);
    let mut t = transpose(buf, m, m);
    ifft_rows(&mut t, m);
    *buf = transpose(&t, m, m);
}

/// `F̂(ω_k) = dx · Σ_j f_j e^{-2πi ω_k x_j}` for a one-dimensional grid, in
/// centered order (index `k + n/2`).
pub fn physical_dft(grid: &Grid, samples: &[Complex64]) -> Vec<Complex64> {
    let n = grid.n;
    let mut buf = samples.to_vec();
    fft(&mut buf);
    (0..n)
        .map(|kc| {
            let omega = grid.omega(kc);
            let k = (kc + n / 2) % n;
            buf[k] * Complex64::from_polar(grid.dx, -2.0 * PI * omega * grid.x0)
        })
        .collect()
}

/// Inverse of [`physical_dft`]: `f_j = dω · Σ_k F̂_k e^{2πi ω_k x_j}`.
pub fn physical_idft(grid: &Grid, spectrum: &[Complex64]) -> Vec<Complex64> {
    let n = grid.n;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (kc, &v) in spectrum.iter().enumerate() {
        let omega = grid.omega(kc);
        buf[(kc + n / 2) % n] = v * Complex64::from_polar(1.0, 2.0 * PI * omega * grid.x0);
    }
    ifft(&mut buf);
    let dw = grid.domega();
    buf.iter().map(|z| z * dw).collect()
}

/// Band-limited 2× interpolation of a periodic sequence: `out[2j] = x[j]` and
/// the odd entries sit halfway between. The Nyquist bin is split evenly so
/// real input stays real.
pub fn interp2x(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let mut spec = x.to_vec();
    fft(&mut spec);
    let mut wide = vec![Complex64::new(0.0, 0.0); 2 * n];
    let half = n / 2;
    wide[..half].copy_from_slice(&spec[..half]);
    wide[2 * n - half + 1..].copy_from_slice(&spec[half + 1..]);
    wide[half] = spec[half] * 0.5;
    wide[2 * n - half] = spec[half] * 0.5;
    ifft(&mut wide);
    let scale = 1.0 / n as f64;
    let mut out: Vec<Complex64> = wide.iter().map(|z| z * scale).collect();
    for (j, &v) in x.iter().enumerate() {
        out[2 * j] = v;
    }
    out
}

/// Boundary handling for convolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvMode {
    /// Linear convolution on a 2n zero-padded grid, cropped back.
    ZeroPadded,
    /// Convolution on the n-periodic torus.
    Circular,
}

/// `c[i] = w · Σ_j a[i + s - j] · b[j]` where `s` is the index of the origin,
/// i.e. the quadrature of `(a ∗ b)(x_i)` when both sequences live on the
/// same grid.
pub fn convolve_1d(a: &[Complex64], b: &[Complex64], s: usize, weight: f64, mode: ConvMode) -> Vec<Complex64> {
    let n = a.len();
    assert_eq!(n, b.len());
    let m = match mode {
        ConvMode::ZeroPadded => 2 * n,
        ConvMode::Circular => n,
    };
    let mut fa = vec![Complex64::new(0.0, 0.0); m];
    let mut fb = fa.clone();
    fa[..n].copy_from_slice(a);
    fb[..n].copy_from_slice(b);
    fft(&mut fa);
    fft(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    ifft(&mut fa);
    let scale = weight / m as f64;
    (0..n).map(|i| fa[(i + s) % m] * scale).collect()
}

/// Two-dimensional analogue of [`convolve_1d`] on row-major `n × n` arrays,
/// with origin indices `s = (s_row, s_col)`.
pub fn convolve_2d(
    a: &[Complex64],
    b: &[Complex64],
    n: usize,
    s: (usize, usize),
    weight: f64,
    mode: ConvMode,
) -> Vec<Complex64> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n * n);
    let m = match mode {
        ConvMode::ZeroPadded => 2 * n,
        ConvMode::Circular => n,
    };
    let pad = |src: &[Complex64]| {
        let mut out = vec![Complex64::new(0.0, 0.0); m * m];
        for r in 0..n {
            out[r * m..r * m + n].copy_from_slice(&src[r * n..(r + 1) * n]);
        }
        out
    };
    let mut fa = pad(a);
    let mut fb = pad(b);
    fft2(&mut fa, m);
    fft2(&mut fb, m);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    ifft2(&mut fa, m);
    let scale = weight / (m * m) as f64;
    let mut out = Vec::with_capacity(n * n);
    for r in 0..n {
        let rr = (r + s.0) % m;
        for c in 0..n {
            out.push(fa[rr * m + (c + s.1) % m] * scale);
        }
    }
    out
}
