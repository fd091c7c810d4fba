//! Sampling grids, signals, discrete Lᵖ norms, lattice time-frequency
//! shifts, dilations, the Gaussian families and measurable sets.
//!
//! Every signal is n-periodic on its grid. Integrals over ℝᵈ are Riemann
//! sums with weight `dxᵈ`; integrals over the frequency axis use `dωᵈ`
//! with `dω = 1/(n·dx)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;

/// Relative tolerance for deciding that an offset lies on the lattice.
const LATTICE_TOL: f64 = 1e-9;

/// Uniform sampling lattice, identical on every axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct Grid {
    pub dim: usize,
    pub n: usize,
    pub dx: f64,
    pub x0: f64,
}

#[derive(Deserialize)]
struct RawGrid {
    #[serde(default = "one")]
    dim: usize,
    n: usize,
    dx: f64,
    x0: f64,
}

fn one() -> usize {
    1
}

impl TryFrom<RawGrid> for Grid {
    type Error = Error;
    fn try_from(raw: RawGrid) -> Result<Self> {
        Grid::new(raw.dim, raw.n, raw.dx, raw.x0)
    }
}

impl Grid {
    pub fn new(dim: usize, n: usize, dx: f64, x0: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid(format!("dimension must be 1 or 2, got {dim}")));
        }
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("n must be even and >= 8, got {n}")));
        }
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidGrid(format!("dx must be positive, got {dx}")));
        }
        if !x0.is_finite() {
            return Err(Error::InvalidGrid("x0 must be finite".into()));
        }
        Ok(Grid { dim, n, dx, x0 })
    }

    /// Grid whose points are `-n·dx/2, …, n·dx/2 - dx` on every axis.
    pub fn centered(dim: usize, n: usize, dx: f64) -> Result<Self> {
        Grid::new(dim, n, dx, -(n as f64) * dx / 2.0)
    }

    /// Number of samples, `nᵈ`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn domega(&self) -> f64 {
        1.0 / (self.n as f64 * self.dx)
    }

    /// Period `n·dx`.
    pub fn period(&self) -> f64 {
        self.n as f64 * self.dx
    }

    /// Coordinate of index `j` along one axis.
    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    /// Frequency of centered index `k ∈ [0, n)`, i.e. `(k - n/2)·dω`.
    pub fn omega(&self, k: usize) -> f64 {
        (k as f64 - (self.n / 2) as f64) * self.domega()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    pub fn omegas(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.omega(k)).collect()
    }

    /// Spatial cell measure `dxᵈ`.
    pub fn cell(&self) -> f64 {
        self.dx.powi(self.dim as i32)
    }

    /// Frequency cell measure `dωᵈ`.
    pub fn freq_cell(&self) -> f64 {
        self.domega().powi(self.dim as i32)
    }

    /// Per-axis indices of a flat row-major index.
    pub fn unflatten(&self, flat: usize) -> [usize; 2] {
        if self.dim == 1 {
            [flat, 0]
        } else {
            [flat / self.n, flat % self.n]
        }
    }

    pub fn flatten(&self, idx: [usize; 2]) -> usize {
        if self.dim == 1 {
            idx[0]
        } else {
            idx[0] * self.n + idx[1]
        }
    }

    /// Spatial coordinates of a flat index (unused axes are zero).
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let [i, j] = self.unflatten(flat);
        if self.dim == 1 {
            [self.x(i), 0.0]
        } else {
            [self.x(i), self.x(j)]
        }
    }

    /// Frequency coordinates of a flat centered index.
    pub fn freq_point(&self, flat: usize) -> [f64; 2] {
        let [i, j] = self.unflatten(flat);
        if self.dim == 1 {
            [self.omega(i), 0.0]
        } else {
            [self.omega(i), self.omega(j)]
        }
    }

    /// Index of the point `x = 0` modulo `n`. Requires `x0` to be an integer
    /// multiple of `dx`, which every transform relies on.
    pub fn origin_index(&self) -> Result<usize> {
        let s = -self.x0 / self.dx;
        let r = s.round();
        if (s - r).abs() > LATTICE_TOL * s.abs().max(1.0) {
            return Err(Error::InvalidGrid(format!(
                "x0 = {} is not an integer multiple of dx = {}",
                self.x0, self.dx
            )));
        }
        Ok((r as i64).rem_euclid(self.n as i64) as usize)
    }

    pub fn ensure_same(&self, other: &Grid) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }

    pub fn ensure_dim1(&self) -> Result<()> {
        if self.dim != 1 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        Ok(())
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid(d={}, n={}, dx={}, x0={})", self.dim, self.n, self.dx, self.x0)
    }
}

/// Builds a one-dimensional grid.
pub fn make_grid(n: usize, dx: f64, centered: bool) -> Result<Grid> {
    if centered {
        Grid::centered(1, n, dx)
    } else {
        Grid::new(1, n, dx, 0.0)
    }
}

/// `x ↦ amplitude · e^{-π·rate·|x|²}`, kept alongside Gaussian samples so
/// that dilations can be evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianGenerator {
    pub amplitude: f64,
    pub rate: f64,
}

impl GaussianGenerator {
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.amplitude * (-PI * self.rate * (x[0] * x[0] + x[1] * x[1])).exp()
    }
}

/// Complex samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: Grid,
    samples: Vec<Complex64>,
    generator: Option<GaussianGenerator>,
}

impl Signal {
    pub fn new(grid: Grid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidSignal(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidSignal(format!("sample {i} is not finite")));
        }
        Ok(Signal {
            grid,
            samples,
            generator: None,
        })
    }

    pub fn zeros(grid: Grid) -> Self {
        Signal {
            grid,
            samples: vec![Complex64::new(0.0, 0.0); grid.len()],
            generator: None,
        }
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> Complex64) -> Result<Self> {
        let samples = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Signal::new(grid, samples)
    }

    pub fn from_generator(grid: Grid, generator: GaussianGenerator) -> Result<Self> {
        let mut s = Signal::from_fn(grid, |x| Complex64::new(generator.eval(x), 0.0))?;
        s.generator = Some(generator);
        Ok(s)
    }

    /// Attaches a stored generator to samples read back from disk.
    pub(crate) fn with_generator(mut self, generator: Option<GaussianGenerator>) -> Self {
        self.generator = generator;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn generator(&self) -> Option<GaussianGenerator> {
        self.generator
    }

    pub fn lp_norm(&self, p: Exponent) -> f64 {
        lp_norm(self, p)
    }

    pub fn l2_norm(&self) -> f64 {
        weighted_lp_norm(self.samples.iter().map(|z| z.norm()), self.grid.cell(), Exponent::TWO)
    }

    /// `c·f`; a real positive factor keeps the generator.
    pub fn scale(&self, c: Complex64) -> Signal {
        let generator = match self.generator {
            Some(g) if c.im == 0.0 && c.re > 0.0 => Some(GaussianGenerator {
                amplitude: g.amplitude * c.re,
                rate: g.rate,
            }),
            _ => None,
        };
        Signal {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z * c).collect(),
            generator,
        }
    }

    /// `f / ‖f‖₂`.
    pub fn normalized(&self) -> Result<Signal> {
        let n = self.l2_norm();
        if n == 0.0 {
            return Err(Error::ZeroSignal);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// `α·f + β·g`.
    pub fn combine(&self, alpha: Complex64, other: &Signal, beta: Complex64) -> Result<Signal> {
        self.grid.ensure_same(&other.grid)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(Signal {
            grid: self.grid,
            samples,
            generator: None,
        })
    }

    /// `(f, g) = Σ f·ḡ·dxᵈ`.
    pub fn inner(&self, other: &Signal) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let s: Complex64 = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum();
        Ok(s * self.grid.cell())
    }

    pub fn conj(&self) -> Signal {
        Signal {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z.conj()).collect(),
            generator: self.generator,
        }
    }

    /// `f̃(x) = f(-x)` on the periodic grid.
    pub fn reflect(&self) -> Result<Signal> {
        let s = self.grid.origin_index()?;
        let n = self.grid.n;
        let refl = |i: usize| (2 * s + n - i % n) % n;
        let samples = (0..self.grid.len())
            .map(|flat| {
                let [i, j] = self.grid.unflatten(flat);
                let src = if self.grid.dim == 1 {
                    refl(i)
                } else {
                    self.grid.flatten([refl(i), refl(j)])
                };
                self.samples[src]
            })
            .collect();
        Ok(Signal {
            grid: self.grid,
            samples,
            generator: self.generator,
        })
    }
}

/// `(Σ |v|ᵖ·w)^{1/p}` or `max |v|` for `p = ∞`. Values are rescaled by their
/// maximum first so large exponents do not underflow.
pub fn weighted_lp_norm(values: impl Iterator<Item = f64> + Clone, weight: f64, p: Exponent) -> f64 {
    let max = values.clone().fold(0.0_f64, |m, v| m.max(v.abs()));
    match p {
        Exponent::Infinity => max,
        Exponent::Finite(p) => {
            if max == 0.0 {
                return 0.0;
            }
            let sum: f64 = values.map(|v| (v.abs() / max).powf(p)).sum();
            max * (sum * weight).powf(1.0 / p)
        }
    }
}

/// Discrete Lᵖ norm with cell weight `dxᵈ`.
pub fn lp_norm(f: &Signal, p: Exponent) -> f64 {
    weighted_lp_norm(f.samples.iter().map(|z| z.norm()), f.grid.cell(), p)
}

fn lattice_steps(offset: f64, step: f64, what: &str) -> Result<i64> {
    let s = offset / step;
    let r = s.round();
    if (s - r).abs() > LATTICE_TOL * s.abs().max(1.0) {
        return Err(Error::UnalignedShift(format!(
            "{what} = {offset} is not a multiple of {step}"
        )));
    }
    Ok(r as i64)
}

/// Time-frequency shift `t ↦ e^{2πi b·t} f(t - a)` with circular translation.
/// `a` must be a multiple of `dx` and `b` a multiple of `dω` on every axis.
pub fn tf_shift(f: &Signal, a: &[f64], b: &[f64]) -> Result<Signal> {
    let g = f.grid;
    if a.len() != g.dim || b.len() != g.dim {
        return Err(Error::InvalidArgument(format!(
            "shift vectors must have length {}, got {} and {}",
            g.dim,
            a.len(),
            b.len()
        )));
    }
    let n = g.n as i64;
    let mut steps = [0_i64; 2];
    for (axis, &ai) in a.iter().enumerate() {
        steps[axis] = lattice_steps(ai, g.dx, "time shift")?;
    }
    for &bi in b {
        lattice_steps(bi, g.domega(), "frequency shift")?;
    }
    let wrap = |i: usize, s: i64| ((i as i64 - s).rem_euclid(n)) as usize;
    let samples = (0..g.len())
        .map(|flat| {
            let [i, j] = g.unflatten(flat);
            let src = if g.dim == 1 {
                wrap(i, steps[0])
            } else {
                g.flatten([wrap(i, steps[0]), wrap(j, steps[1])])
            };
            let x = g.point(flat);
            let phase: f64 = b.iter().zip(x.iter()).map(|(bi, xi)| bi * xi).sum();
            f.samples[src] * Complex64::from_polar(1.0, 2.0 * PI * phase)
        })
        .collect();
    Ok(Signal {
        grid: g,
        samples,
        generator: None,
    })
}

/// Dilation `x ↦ f(λx)`, evaluated exactly from the signal's generator.
pub fn dilate(f: &Signal, lambda: f64) -> Result<Signal> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dilation factor must be positive, got {lambda}"
        )));
    }
    let g = f.generator.ok_or(Error::NoGenerator)?;
    let dilated = GaussianGenerator {
        amplitude: g.amplitude,
        rate: g.rate * lambda * lambda,
    };
    Signal::from_generator(f.grid, dilated)
}

/// The three Gaussian families `h_λ`, `Φ_λ = h_λ/‖h_λ‖₂`, `φ_λ = h_λ/‖h_λ‖₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaussianKind {
    #[serde(rename = "h")]
    Plain,
    #[serde(rename = "Phi")]
    UnitL2,
    #[serde(rename = "phi")]
    UnitL1,
}

impl FromStr for GaussianKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(GaussianKind::Plain),
            "Phi" | "L2" => Ok(GaussianKind::UnitL2),
            "phi" | "L1" => Ok(GaussianKind::UnitL1),
            _ => Err(Error::InvalidArgument(format!(
                "unknown Gaussian family '{s}' (h, Phi, phi)"
            ))),
        }
    }
}

/// Generator of the requested family; the normalizations use the analytic
/// norms `‖h_λ‖₂ = (2λ)^{-d/4}` and `‖h_λ‖₁ = λ^{-d/2}`.
pub fn gaussian_generator(kind: GaussianKind, lambda: f64, dim: usize) -> GaussianGenerator {
    let d = dim as f64;
    let amplitude = match kind {
        GaussianKind::Plain => 1.0,
        GaussianKind::UnitL2 => (2.0 * lambda).powf(d / 4.0),
        GaussianKind::UnitL1 => lambda.powf(d / 2.0),
    };
    GaussianGenerator {
        amplitude,
        rate: lambda,
    }
}

/// Samples of `h_λ`, `Φ_λ` or `φ_λ`. Logs a warning when the Gaussian has not
/// decayed below `1e-12` at the nearest grid edge.
pub fn gaussian(kind: GaussianKind, lambda: f64, grid: &Grid) -> Result<Signal> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    let edge = grid.x0.abs().min((grid.x0 + grid.period()).abs());
    let tail = (-PI * lambda * edge * edge).exp();
    if tail >= 1e-12 {
        log::warn!("Gaussian with lambda = {lambda} is truncated by {grid}: edge value {tail:.3e}");
    }
    Signal::from_generator(*grid, gaussian_generator(kind, lambda, grid.dim))
}

/// Whether a set lives on the spatial axis or on the dual frequency axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SetDomain {
    #[default]
    Time,
    Frequency,
}

/// Union of grid cells on the spatial or frequency lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurableSet {
    grid: Grid,
    domain: SetDomain,
    mask: Vec<bool>,
}

impl MeasurableSet {
    pub fn from_mask(grid: Grid, domain: SetDomain, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "mask has {} cells, grid has {}",
                mask.len(),
                grid.len()
            )));
        }
        Ok(MeasurableSet { grid, domain, mask })
    }

    pub fn empty(grid: Grid, domain: SetDomain) -> Self {
        MeasurableSet {
            grid,
            domain,
            mask: vec![false; grid.len()],
        }
    }

    pub fn full(grid: Grid, domain: SetDomain) -> Self {
        MeasurableSet {
            grid,
            domain,
            mask: vec![true; grid.len()],
        }
    }

    /// Cells whose center lies in one of the closed boxes. A box holds one
    /// `[a, b]` interval per axis.
    pub fn from_boxes(grid: Grid, domain: SetDomain, boxes: &[Vec<[f64; 2]>]) -> Result<Self> {
        for b in boxes {
            if b.len() != grid.dim {
                return Err(Error::InvalidArgument(format!(
                    "box has {} intervals, grid has dimension {}",
                    b.len(),
                    grid.dim
                )));
            }
            if b.iter().any(|[lo, hi]| !(lo <= hi)) {
                return Err(Error::InvalidArgument(format!("empty or invalid box {b:?}")));
            }
        }
        let tol = 1e-9 * grid.dx.min(grid.domega());
        let mask = (0..grid.len())
            .map(|flat| {
                let c = match domain {
                    SetDomain::Time => grid.point(flat),
                    SetDomain::Frequency => grid.freq_point(flat),
                };
                boxes.iter().any(|b| {
                    b.iter()
                        .enumerate()
                        .all(|(axis, [lo, hi])| c[axis] >= lo - tol && c[axis] <= hi + tol)
                })
            })
            .collect();
        Ok(MeasurableSet { grid, domain, mask })
    }

    /// One-dimensional union of closed intervals.
    pub fn from_intervals(grid: Grid, domain: SetDomain, intervals: &[[f64; 2]]) -> Result<Self> {
        grid.ensure_dim1()?;
        let boxes: Vec<Vec<[f64; 2]>> = intervals.iter().map(|iv| vec![*iv]).collect();
        MeasurableSet::from_boxes(grid, domain, &boxes)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn domain(&self) -> SetDomain {
        self.domain
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Indicator as 0/1 samples.
    pub fn indicator(&self) -> Vec<f64> {
        self.mask.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect()
    }

    pub fn cell_measure(&self) -> f64 {
        match self.domain {
            SetDomain::Time => self.grid.cell(),
            SetDomain::Frequency => self.grid.freq_cell(),
        }
    }

    pub fn measure(&self) -> f64 {
        set_measure(self)
    }
}

/// `count · dxᵈ` (or `count · dωᵈ` for frequency sets).
pub fn set_measure(set: &MeasurableSet) -> f64 {
    set.count() as f64 * set.cell_measure()
}
