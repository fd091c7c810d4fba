//! Seeded random test data: Gaussian mixtures, smooth symbols and kernels.
//!
//! Parameters scale with the grid's half-widths `X = n·dx/2` and
//! `W = n·dω/2`, so draws stay well inside the periodic window in both time
//! and frequency.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grid::{Grid, Signal};
use crate::tf::TfFunction;

/// Base seed of every randomized check.
pub const SEED: u64 = 0xC04E;

/// Deterministic generator for an independent stream.
pub fn seeded_rng(stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(stream);
    rng
}

fn unit_phase(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))
}

/// One modulated, translated Gaussian atom.
#[derive(Debug, Clone, Copy)]
pub struct Atom {
    pub amplitude: Complex64,
    pub center: f64,
    pub rate: f64,
    pub modulation: f64,
}

impl Atom {
    pub fn eval(&self, x: f64) -> Complex64 {
        let d = x - self.center;
        self.amplitude * (-PI * self.rate * d * d).exp() * Complex64::from_polar(1.0, 2.0 * PI * self.modulation * x)
    }
}

/// Draws one to three atoms with centers in `[-X/5, X/5]`, modulations in
/// `[-W/5, W/5]` and rates in `[0.75, 1.5]`.
pub fn random_atoms(grid: &Grid, rng: &mut ChaCha8Rng) -> Vec<Atom> {
    let xh = grid.period() / 2.0;
    let wh = grid.n as f64 * grid.domega() / 2.0;
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| Atom {
            amplitude: unit_phase(rng) * rng.gen_range(0.5..1.5),
            center: rng.gen_range(-xh / 5.0..xh / 5.0),
            rate: rng.gen_range(0.75..1.5),
            modulation: rng.gen_range(-wh / 5.0..wh / 5.0),
        })
        .collect()
}

/// Random Gaussian mixture on a one-dimensional grid.
pub fn random_mixture(grid: &Grid, rng: &mut ChaCha8Rng) -> Signal {
    let atoms = random_atoms(grid, rng);
    Signal::from_fn(*grid, |x| atoms.iter().map(|a| a.eval(x[0])).sum()).expect("mixture samples are finite")
}

/// Random complex samples with independent uniform real and imaginary parts.
pub fn random_samples(grid: &Grid, rng: &mut ChaCha8Rng) -> Signal {
    let samples = (0..grid.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Signal::new(*grid, samples).expect("finite samples")
}

/// Sum of one to three Gaussian bumps on the time-frequency plane, centered
/// within a fifth of the half-widths. `real` restricts amplitudes to real
/// values.
pub fn random_symbol(grid: &Grid, rng: &mut ChaCha8Rng, real: bool) -> TfFunction {
    let xh = grid.period() / 2.0;
    let wh = grid.n as f64 * grid.domega() / 2.0;
    let k = rng.gen_range(1..=3);
    let bumps: Vec<(Complex64, f64, f64, f64, f64)> = (0..k)
        .map(|_| {
            let amp = if real {
                Complex64::new(rng.gen_range(-1.5..1.5), 0.0)
            } else {
                unit_phase(rng) * rng.gen_range(0.5..1.5)
            };
            (
                amp,
                rng.gen_range(-xh / 5.0..xh / 5.0),
                rng.gen_range(-wh / 5.0..wh / 5.0),
                rng.gen_range(0.5..1.5),
                rng.gen_range(0.5..1.5),
            )
        })
        .collect();
    TfFunction::from_fn(*grid, |x, w| {
        bumps
            .iter()
            .map(|&(a, cx, cw, rx, rw)| a * (-PI * (rx * (x - cx).powi(2) + rw * (w - cw).powi(2))).exp())
            .sum()
    })
    .expect("symbol samples are finite")
}

/// Random centered kernel: one or two Gaussian bumps at the origin with
/// random widths and, unless `real`, a random complex phase tilt.
pub fn random_kernel(grid: &Grid, rng: &mut ChaCha8Rng, real: bool) -> TfFunction {
    let k = rng.gen_range(1..=2);
    let parts: Vec<(Complex64, f64, f64, f64)> = (0..k)
        .map(|_| {
            let amp = if real {
                Complex64::new(rng.gen_range(0.5..1.5), 0.0)
            } else {
                unit_phase(rng)
            };
            let tilt = if real { 0.0 } else { rng.gen_range(-0.5..0.5) };
            (amp, rng.gen_range(1.0..3.0), rng.gen_range(1.0..3.0), tilt)
        })
        .collect();
    TfFunction::from_fn(*grid, |x, w| {
        parts
            .iter()
            .map(|&(a, rx, rw, tilt)| {
                a * (-PI * (rx * x * x + rw * w * w)).exp() * Complex64::from_polar(1.0, 2.0 * PI * tilt * x * w)
            })
            .sum()
    })
    .expect("kernel samples are finite")
}
