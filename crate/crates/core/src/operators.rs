//! Dense operator matrices for Weyl, localization and Cohen quantizations.
//!
//! An [`OperatorMatrix`] acts by `(Mf)_t = Σ_u M[t,u]·f_u·dx`, so entries
//! approximate the continuous Schwartz kernel. Symbols are smoothed by
//! convolution on the periodic phase-space torus, which keeps symbols that
//! are constant along one axis (such as `χ_T(x) ⊗ 1_ω`) exactly constant.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{ifft, interp2x, physical_dft, physical_idft, ConvMode};
use crate::grid::{Grid, Signal};
use crate::random::seeded_rng;
use crate::tf::TfFunction;
use crate::transforms::{tf_convolve, wigner, CohenKernel};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Relative tolerance of the power iteration.
pub const POWER_TOL: f64 = 1e-10;
/// Iteration cap of the power iteration.
pub const POWER_MAX_ITER: usize = 10_000;
/// Largest dimension for which a failed power iteration falls back to an SVD.
pub const SVD_FALLBACK_DIM: usize = 512;

/// Known structure enabling fast application.
#[derive(Debug, Clone, PartialEq)]
pub enum Structure {
    Dense,
    Identity,
    /// `f ↦ F·f` with `F(x_t)` stored per sample.
    Multiplication(Vec<Complex64>),
    /// `f ↦ 𝓕⁻¹[F·f̂]` with `F(ω_k)` stored in centered order.
    FourierMultiplier(Vec<Complex64>),
}

impl Structure {
    pub fn name(&self) -> &'static str {
        match self {
            Structure::Dense => "dense",
            Structure::Identity => "identity",
            Structure::Multiplication(_) => "multiplication",
            Structure::FourierMultiplier(_) => "fourier_multiplier",
        }
    }
}

/// How an operator was built.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub quantization: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_phi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_psi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl Provenance {
    pub fn new(quantization: &str) -> Self {
        Provenance {
            quantization: quantization.to_string(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    grid: Grid,
    entries: Vec<Complex64>,
    structure: Structure,
    provenance: Provenance,
}

/// Row-major `n × n` kernel of the Fourier multiplier with symbol `F`.
fn fourier_multiplier_entries(grid: &Grid, symbol: &[Complex64]) -> Vec<Complex64> {
    let n = grid.n;
    let b = lag_transform(symbol);
    let dw = grid.domega();
    let mut out = vec![ZERO; n * n];
    for t in 0..n {
        for u in 0..n {
            out[t * n + u] = b[(t + n - u) % n] * dw;
        }
    }
    out
}

/// `B(δ) = Σ_k F(ω_k)·e^{2πi δ·dx·ω_k}` for `δ ∈ [0, n)`, from a centered
/// frequency row.
fn lag_transform(row: &[Complex64]) -> Vec<Complex64> {
    let mut b = row.to_vec();
    ifft(&mut b);
    for (d, z) in b.iter_mut().enumerate() {
        if d % 2 == 1 {
            *z = -*z;
        }
    }
    b
}

impl OperatorMatrix {
    pub fn dense(grid: Grid, entries: Vec<Complex64>, provenance: Provenance) -> Result<Self> {
        grid.ensure_dim1()?;
        if entries.len() != grid.n * grid.n {
            return Err(Error::InvalidArgument(format!(
                "operator needs {} entries, got {}",
                grid.n * grid.n,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite operator entry".into()));
        }
        Ok(OperatorMatrix {
            grid,
            entries,
            structure: Structure::Dense,
            provenance,
        })
    }

    pub fn identity(grid: Grid) -> Result<Self> {
        grid.ensure_dim1()?;
        let n = grid.n;
        let mut entries = vec![ZERO; n * n];
        for t in 0..n {
            entries[t * n + t] = Complex64::new(1.0 / grid.dx, 0.0);
        }
        Ok(OperatorMatrix {
            grid,
            entries,
            structure: Structure::Identity,
            provenance: Provenance::new("identity"),
        })
    }

    /// Multiplication by `F(x_t)`.
    pub fn multiplication(grid: Grid, symbol: Vec<Complex64>) -> Result<Self> {
        grid.ensure_dim1()?;
        let n = grid.n;
        if symbol.len() != n {
            return Err(Error::InvalidArgument(format!(
                "multiplier needs {n} values, got {}",
                symbol.len()
            )));
        }
        let mut entries = vec![ZERO; n * n];
        for t in 0..n {
            entries[t * n + t] = symbol[t] / grid.dx;
        }
        Ok(OperatorMatrix {
            grid,
            entries,
            structure: Structure::Multiplication(symbol),
            provenance: Provenance::new("multiplication"),
        })
    }

    /// Fourier multiplier by `F(ω_k)`, centered frequency order.
    pub fn fourier_multiplier(grid: Grid, symbol: Vec<Complex64>) -> Result<Self> {
        grid.ensure_dim1()?;
        if symbol.len() != grid.n {
            return Err(Error::InvalidArgument(format!(
                "Fourier multiplier needs {} values, got {}",
                grid.n,
                symbol.len()
            )));
        }
        let entries = fourier_multiplier_entries(&grid, &symbol);
        Ok(OperatorMatrix {
            grid,
            entries,
            structure: Structure::FourierMultiplier(symbol),
            provenance: Provenance::new("fourier_multiplier"),
        })
    }

    /// Rebuilds an operator from stored parts.
    pub fn from_parts(
        grid: Grid,
        entries: Vec<Complex64>,
        structure: Structure,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut m = OperatorMatrix::dense(grid, entries, provenance)?;
        m.structure = structure;
        Ok(m)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn size(&self) -> usize {
        self.grid.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, t: usize, u: usize) -> Complex64 {
        self.entries[t * self.grid.n + u]
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Drops any structure tag so that [`apply`] uses the dense product.
    pub fn to_dense(&self) -> OperatorMatrix {
        OperatorMatrix {
            structure: Structure::Dense,
            ..self.clone()
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A - B‖_F / ‖A‖_F`.
    pub fn relative_frobenius_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        let diff: f64 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok(diff.sqrt() / self.frobenius().max(f64::MIN_POSITIVE))
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// Matrix of the action on unweighted coefficient vectors, `M·dx`.
    fn weighted(&self) -> DMatrix<Complex64> {
        let n = self.grid.n;
        let dx = self.grid.dx;
        DMatrix::from_fn(n, n, |t, u| self.entries[t * n + u] * dx)
    }
}

/// `(Mf)_t = Σ_u M[t,u]·f_u·dx`, using the structured path when available.
pub fn apply(m: &OperatorMatrix, f: &Signal) -> Result<Signal> {
    m.grid.ensure_same(f.grid())?;
    let g = m.grid;
    let samples = match &m.structure {
        Structure::Identity => f.samples().to_vec(),
        Structure::Multiplication(fm) => f.samples().iter().zip(fm).map(|(a, b)| a * b).collect(),
        Structure::FourierMultiplier(fm) => {
            let spec: Vec<Complex64> = physical_dft(&g, f.samples())
                .iter()
                .zip(fm)
                .map(|(a, b)| a * b)
                .collect();
            physical_idft(&g, &spec)
        }
        Structure::Dense => dense_apply(m, f.samples()),
    };
    Signal::new(g, samples)
}

fn dense_apply(m: &OperatorMatrix, f: &[Complex64]) -> Vec<Complex64> {
    let n = m.grid.n;
    let dx = m.grid.dx;
    m.entries
        .par_chunks(n)
        .map(|row| row.iter().zip(f).map(|(a, b)| a * b).sum::<Complex64>() * dx)
        .collect()
}

/// Conjugate transpose; structured operators keep their structure.
pub fn adjoint(m: &OperatorMatrix) -> OperatorMatrix {
    let n = m.grid.n;
    let mut entries = vec![ZERO; n * n];
    for t in 0..n {
        for u in 0..n {
            entries[u * n + t] = m.entries[t * n + u].conj();
        }
    }
    let conj = |v: &Vec<Complex64>| v.iter().map(|z| z.conj()).collect();
    let structure = match &m.structure {
        Structure::Dense => Structure::Dense,
        Structure::Identity => Structure::Identity,
        Structure::Multiplication(v) => Structure::Multiplication(conj(v)),
        Structure::FourierMultiplier(v) => Structure::FourierMultiplier(conj(v)),
    };
    let mut provenance = m.provenance.clone();
    provenance.quantization = if provenance.quantization.ends_with("^*") {
        provenance.quantization.trim_end_matches("^*").to_string()
    } else {
        format!("{}^*", provenance.quantization)
    };
    OperatorMatrix {
        grid: m.grid,
        entries,
        structure,
        provenance,
    }
}

/// Symbol resampled at half steps along `x`: row `i` holds `b(x0 + i·dx/2, ·)`.
fn half_step_symbol(b: &TfFunction) -> Vec<Complex64> {
    let n = b.n();
    let mut out = vec![ZERO; 2 * n * n];
    for kc in 0..n {
        let col: Vec<Complex64> = (0..n).map(|i| b.get(i, kc)).collect();
        for (i, z) in interp2x(&col).into_iter().enumerate() {
            out[i * n + kc] = z;
        }
    }
    out
}

/// Half-step index of the midpoint of `x_t` and `x_u` along the shorter arc
/// of the torus. The antipodal lag returns both candidates.
fn midpoints(t: usize, u: usize, n: usize) -> (usize, Option<usize>) {
    let d = (t + n - u) % n;
    let n2 = 2 * n as i64;
    if d == n / 2 {
        let a = (2 * u as i64 - (n / 2) as i64).rem_euclid(n2) as usize;
        let b = (2 * u as i64 + (n / 2) as i64).rem_euclid(n2) as usize;
        (a, Some(b))
    } else {
        let dh = if d < n / 2 { d as i64 } else { d as i64 - n as i64 };
        ((2 * u as i64 + dh).rem_euclid(n2) as usize, None)
    }
}

/// Weyl quantization `M[t,u] = Σ_k b((x_t + x_u)/2, ω_k)·e^{2πi(x_t - x_u)ω_k}·dω`.
///
/// Midpoint values come from band-limited interpolation along `x`; lags are
/// taken along the shorter arc of the torus.
pub fn weyl_matrix(b: &TfFunction) -> Result<OperatorMatrix> {
    let grid = *b.grid();
    grid.origin_index()?;
    let n = grid.n;
    let b2 = half_step_symbol(b);
    let lags: Vec<Vec<Complex64>> = (0..2 * n)
        .into_par_iter()
        .map(|i| lag_transform(&b2[i * n..(i + 1) * n]))
        .collect();
    let dw = grid.domega();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|t| {
            (0..n)
                .map(|u| {
                    let d = (t + n - u) % n;
                    let v = match midpoints(t, u, n) {
                        (i, None) => lags[i][d],
                        (i, Some(j)) => (lags[i][d] + lags[j][d]) * 0.5,
                    };
                    v * dw
                })
                .collect()
        })
        .collect();
    OperatorMatrix::dense(grid, rows.concat(), Provenance::new("weyl"))
}

/// Schwartz kernel `k(x_t, x_u) = 𝓕₂⁻¹[b]((x_t + x_u)/2, x_t - x_u)` by
/// direct summation over frequencies. Independent of [`weyl_matrix`]'s FFT
/// path and meant for small grids.
pub fn schwartz_kernel(b: &TfFunction) -> Result<OperatorMatrix> {
    let grid = *b.grid();
    grid.origin_index()?;
    let n = grid.n;
    let b2 = half_step_symbol(b);
    let dw = grid.domega();
    let omegas = grid.omegas();
    let inverse_ft = |i: usize, tau: f64| -> Complex64 {
        (0..n)
            .map(|k| b2[i * n + k] * Complex64::from_polar(1.0, 2.0 * PI * tau * omegas[k]))
            .sum::<Complex64>()
            * dw
    };
    let mut entries = vec![ZERO; n * n];
    for t in 0..n {
        for u in 0..n {
            let d = (t + n - u) % n;
            let dh = if d < n / 2 { d as f64 } else { d as f64 - n as f64 };
            let tau = dh * grid.dx;
            entries[t * n + u] = match midpoints(t, u, n) {
                (i, None) => inverse_ft(i, tau),
                (i, Some(j)) => (inverse_ft(i, tau) + inverse_ft(j, tau)) * 0.5,
            };
        }
    }
    OperatorMatrix::dense(grid, entries, Provenance::new("schwartz_kernel"))
}

/// Construction route for localization operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocPath {
    /// Phase-space sum of rank-one projections.
    Direct,
    /// Weyl quantization of `a ∗ Wig(ψ, φ)`.
    ViaWeyl,
}

/// Localization operator `L f = ∫∫ a(x,ω)·V_φ f(x,ω)·μ_ω τ_x ψ dx dω`.
pub fn localization_matrix(a: &TfFunction, phi: &Signal, psi: &Signal, path: LocPath) -> Result<OperatorMatrix> {
    let grid = *a.grid();
    grid.ensure_same(phi.grid())?;
    grid.ensure_same(psi.grid())?;
    let m = match path {
        LocPath::Direct => localization_direct(a, phi, psi)?,
        LocPath::ViaWeyl => {
            let w = wigner(psi, phi)?;
            let b = tf_convolve(a, &w, ConvMode::Circular)?;
            weyl_matrix(&b)?
        }
    };
    let mut prov = Provenance::new("localization");
    prov.path = Some(match path {
        LocPath::Direct => "direct".into(),
        LocPath::ViaWeyl => "via_weyl".into(),
    });
    Ok(m.with_provenance(prov))
}

fn localization_direct(a: &TfFunction, phi: &Signal, psi: &Signal) -> Result<OperatorMatrix> {
    let grid = *a.grid();
    let n = grid.n;
    let s = grid.origin_index()?;
    let lags: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|m| lag_transform(&a.samples()[m * n..(m + 1) * n]))
        .collect();
    let (ph, ps) = (phi.samples(), psi.samples());
    let w = grid.dx * grid.domega();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|t| {
            let mut row = vec![ZERO; n];
            for (m, lag) in lags.iter().enumerate() {
                let pt = ps[(t + n + s - m) % n];
                if pt == ZERO {
                    continue;
                }
                for (u, out) in row.iter_mut().enumerate() {
                    let d = (t + n - u) % n;
                    *out += lag[d] * pt * ph[(u + n + s - m) % n].conj();
                }
            }
            row.iter().map(|z| z * w).collect()
        })
        .collect();
    OperatorMatrix::dense(grid, rows.concat(), Provenance::new("localization"))
}

/// Cohen operator `T_σ^a = W^{a ∗ conj(σ̃)}`.
pub fn cohen_op_matrix(a: &TfFunction, sigma: &CohenKernel) -> Result<OperatorMatrix> {
    let b = match sigma.sample(a.grid())? {
        None => a.clone(),
        Some(k) => tf_convolve(a, &k.reflect()?.conj(), ConvMode::Circular)?,
    };
    let mut prov = Provenance::new("cohen");
    prov.kernel = Some(sigma.to_string());
    Ok(weyl_matrix(&b)?.with_provenance(prov))
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value of the `L²` action.
///
/// Structured operators return `max |F|`. Dense ones use power iteration on
/// `A*A` with `A = M·dx`; if it stalls, dimensions up to
/// [`SVD_FALLBACK_DIM`] fall back to a full SVD.
pub fn operator_norm(m: &OperatorMatrix) -> Result<f64> {
    match &m.structure {
        Structure::Identity => return Ok(1.0),
        Structure::Multiplication(v) | Structure::FourierMultiplier(v) => {
            return Ok(v.iter().fold(0.0, |acc, z| acc.max(z.norm())))
        }
        Structure::Dense => {}
    }
    match power_iteration(m) {
        Ok(v) => Ok(v),
        Err(Error::NonConvergence { iterations }) if m.size() <= SVD_FALLBACK_DIM => {
            log::info!("power iteration stalled after {iterations} iterations; using SVD");
            operator_norm_svd(m)
        }
        Err(e) => Err(e),
    }
}

fn power_iteration(m: &OperatorMatrix) -> Result<f64> {
    let a = m.weighted();
    let ah = a.adjoint();
    let n = m.size();
    // seeded start: a constant vector is an eigenvector of every Fourier
    // multiplier and can miss the top singular direction entirely
    let mut rng = seeded_rng(0x0A0A);
    let mut v = nalgebra::DVector::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let nv = norm2(v.as_slice());
    v /= Complex64::new(nv, 0.0);
    let mut prev = 0.0;
    for it in 1..=POWER_MAX_ITER {
        let av = &a * &v;
        let sigma = norm2(av.as_slice());
        if sigma == 0.0 {
            return Ok(0.0);
        }
        let w = &ah * av;
        let nw = norm2(w.as_slice());
        if nw == 0.0 {
            return Ok(0.0);
        }
        v = w / Complex64::new(nw, 0.0);
        if it > 1 && (sigma - prev).abs() <= POWER_TOL * sigma {
            // one more product with the updated vector
            return Ok(norm2((&a * &v).as_slice()).max(sigma));
        }
        prev = sigma;
    }
    Err(Error::NonConvergence {
        iterations: POWER_MAX_ITER,
    })
}

/// Largest singular value of `M·dx` from a full SVD.
pub fn operator_norm_svd(m: &OperatorMatrix) -> Result<f64> {
    let sv = m.weighted().singular_values();
    Ok(sv.iter().cloned().fold(0.0, f64::max))
}
