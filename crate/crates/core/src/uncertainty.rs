//! ε-concentration, Donoho–Stark-type lower bounds for `|T|·|Ω|`, their
//! optimization over the free exponents, and the dilation scaling experiment.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::babenko;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fourier::{convolve_1d, physical_dft, ConvMode};
use crate::grid::{
    dilate, gaussian, gaussian_generator, weighted_lp_norm, GaussianKind, Grid, MeasurableSet, SetDomain, Signal,
};
use crate::operators::{apply, cohen_op_matrix, operator_norm, OperatorMatrix};
use crate::tf::TfFunction;
use crate::transforms::{wigner, CohenKernel};

/// Slack allowed on `‖F_j‖_∞ ≤ 1`, realness and nonnegativity.
pub const HYPOTHESIS_SLACK: f64 = 1e-9;
/// Default upper end of the `r` search for the optimized bound.
pub const DEFAULT_R_MAX: f64 = 1e3;
/// Points of the coarse logarithmic scan in [`ds_bound_optimize`].
pub const DS_SCAN_POINTS: usize = 200;
/// Largest grid on which operator norms are computed for hypothesis checks.
pub const REDUCED_N: usize = 128;

const GOLDEN_TOL: f64 = 1e-9;

/// `(∫_{U^c} |f|²)^{1/2} / ‖f‖₂`. Frequency sets are applied to `f̂`.
pub fn epsilon_concentration(f: &Signal, set: &MeasurableSet) -> Result<f64> {
    f.grid().ensure_same(set.grid())?;
    let values: Vec<Complex64> = match set.domain() {
        SetDomain::Time => f.samples().to_vec(),
        SetDomain::Frequency => {
            f.grid().ensure_dim1()?;
            physical_dft(f.grid(), f.samples())
        }
    };
    let total: f64 = values.iter().map(|z| z.norm_sqr()).sum();
    if total == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let outside: f64 = values
        .iter()
        .zip(set.mask())
        .filter(|(_, &m)| !m)
        .map(|(z, _)| z.norm_sqr())
        .sum();
    Ok((outside / total).sqrt())
}

fn check_time_frequency(grid: &Grid, t: &MeasurableSet, omega: &MeasurableSet) -> Result<()> {
    grid.ensure_dim1()?;
    grid.ensure_same(t.grid())?;
    grid.ensure_same(omega.grid())?;
    if t.domain() != SetDomain::Time || omega.domain() != SetDomain::Frequency {
        return Err(Error::InvalidArgument(
            "T must be a time set and Omega a frequency set".into(),
        ));
    }
    Ok(())
}

fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// `F₁ = χ_T ∗ φ_{2λ₁}` on the time axis and `F₂ = χ_Ω ∗ φ_{2/λ₂}` on the
/// frequency axis, by zero-padded convolution.
pub fn gaussian_multipliers(
    t: &MeasurableSet,
    omega: &MeasurableSet,
    lambda1: f64,
    lambda2: f64,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let grid = *t.grid();
    check_time_frequency(&grid, t, omega)?;
    for l in [lambda1, lambda2] {
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::InvalidArgument(format!("lambda must be positive, got {l}")));
        }
    }
    let s = grid.origin_index()?;
    let gx = gaussian_generator(GaussianKind::UnitL1, 2.0 * lambda1, 1);
    let gw = gaussian_generator(GaussianKind::UnitL1, 2.0 / lambda2, 1);
    let kx: Vec<Complex64> = grid
        .xs()
        .iter()
        .map(|&x| Complex64::new(gx.eval([x, 0.0]), 0.0))
        .collect();
    let kw: Vec<Complex64> = grid
        .omegas()
        .iter()
        .map(|&w| Complex64::new(gw.eval([w, 0.0]), 0.0))
        .collect();
    let f1 = convolve_1d(&to_complex(&t.indicator()), &kx, s, grid.dx, ConvMode::ZeroPadded);
    let f2 = convolve_1d(
        &to_complex(&omega.indicator()),
        &kw,
        grid.n / 2,
        grid.domega(),
        ConvMode::ZeroPadded,
    );
    Ok((f1, f2))
}

/// `sqrt(max(0, 1 - ‖Lf‖²/‖f‖²))`.
fn epsilon_of(op: &OperatorMatrix, f: &Signal) -> Result<f64> {
    let nf = f.l2_norm();
    if nf == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let nl = apply(op, f)?.l2_norm();
    Ok((1.0 - (nl / nf).powi(2)).max(0.0).sqrt())
}

/// Smallest `ε_T, ε_Ω` with `‖L_j f‖² ≥ (1 - ε_j²)‖f‖²`, where `L₁` multiplies
/// by `χ_T ∗ φ_{2λ₁}` and `L₂` is the Fourier multiplier `χ_Ω ∗ φ_{2/λ₂}`.
pub fn measured_epsilons(
    f: &Signal,
    t: &MeasurableSet,
    omega: &MeasurableSet,
    lambda1: f64,
    lambda2: f64,
) -> Result<(f64, f64)> {
    f.grid().ensure_same(t.grid())?;
    let (f1, f2) = gaussian_multipliers(t, omega, lambda1, lambda2)?;
    let l1 = OperatorMatrix::multiplication(*f.grid(), f1)?;
    let l2 = OperatorMatrix::fourier_multiplier(*f.grid(), f2)?;
    Ok((epsilon_of(&l1, f)?, epsilon_of(&l2, f)?))
}

fn check_eps(eps_t: f64, eps_omega: f64) -> Result<f64> {
    if !(eps_t >= 0.0) || !(eps_omega >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilons must be nonnegative, got {eps_t}, {eps_omega}"
        )));
    }
    let sum = eps_t + eps_omega;
    if sum > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!("eps_T + eps_Omega = {sum} exceeds 1")));
    }
    Ok(sum.min(1.0))
}

/// Classical bound `(1 - ε_T - ε_Ω)²`.
pub fn ds_classical_bound(eps_t: f64, eps_omega: f64) -> Result<f64> {
    let s = check_eps(eps_t, eps_omega)?;
    Ok((1.0 - s) * (1.0 - s))
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn ds_integrand(r: f64, base: f64, d: u32) -> f64 {
    if base <= 0.0 {
        return 0.0;
    }
    let d = d as f64;
    let shape = 0.5 * d * (xlnx(r + 1.0) - xlnx(r - 1.0)) - d * (2.0 * r).ln();
    base.powf(2.0 * r) * shape.exp()
}

/// `(1-ε)^{2r}·(2r)^{-d}·((r+1)^{r+1}/(r-1)^{r-1})^{d/2}` with `ε = ε_T + ε_Ω`
/// and `(r-1)^{r-1} = 1` at `r = 1`.
pub fn ds_bound_at(r: f64, eps_t: f64, eps_omega: f64, d: u32) -> Result<f64> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "r must be a finite number >= 1, got {r}"
        )));
    }
    let s = check_eps(eps_t, eps_omega)?;
    Ok(ds_integrand(r, 1.0 - s, d))
}

/// Result of maximizing [`ds_bound_at`] over `r ∈ [1, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DsOptimum {
    pub r_star: f64,
    pub bound: f64,
    /// Maximizer sits at `r_max`; the supremum may only be approached.
    pub at_boundary: bool,
    pub r_max: f64,
}

/// Golden-section maximization of a unimodal function on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        // ties keep the left part, i.e. favor smaller arguments
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Logarithmically spaced points on `[lo, hi]`, both ends included.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points <= 1 || hi <= lo {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| {
            if i == points - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

/// Maximizes [`ds_bound_at`] over `[1, r_max]`: a 200-point logarithmic scan
/// followed by golden-section refinement around the best point.
pub fn ds_bound_optimize(eps_t: f64, eps_omega: f64, d: u32, r_max: f64) -> Result<DsOptimum> {
    let s = check_eps(eps_t, eps_omega)?;
    if !(r_max >= 1.0) || !r_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "r_max must be finite and >= 1, got {r_max}"
        )));
    }
    let base = 1.0 - s;
    let f = |r: f64| ds_integrand(r, base, d);
    let grid = log_grid(1.0, r_max, DS_SCAN_POINTS);
    let mut best = 0;
    let mut best_val = f(grid[0]);
    for (i, &r) in grid.iter().enumerate().skip(1) {
        let v = f(r);
        if v > best_val {
            best = i;
            best_val = v;
        }
    }
    let (mut r_star, mut bound) = (grid[best], best_val);
    if grid.len() > 1 {
        let lo = grid[best.saturating_sub(1)];
        let hi = grid[(best + 1).min(grid.len() - 1)];
        let (r, v) = golden_max(f, lo, hi, GOLDEN_TOL);
        if v > bound {
            r_star = r;
            bound = v;
        }
        // the interval ends are candidates too
        for cand in [lo, hi] {
            let v = f(cand);
            if v > bound || (v == bound && cand < r_star) {
                r_star = cand;
                bound = v;
            }
        }
    }
    let at_boundary = r_max - r_star <= GOLDEN_TOL * r_max.max(1.0) && r_max > 1.0;
    Ok(DsOptimum {
        r_star,
        bound,
        at_boundary,
        r_max,
    })
}

/// Marginals of a Cohen kernel and the multipliers built from them.
#[derive(Debug, Clone, PartialEq)]
pub struct CohenMarginals {
    /// `G₁(t) = ∫ σ̄(-t, ω) dω`, on the time axis.
    pub g1: Vec<Complex64>,
    /// `G₂(ξ) = ∫ σ̄(x, -ξ) dx`, on the frequency axis (centered order).
    pub g2: Vec<Complex64>,
    /// `F₁ = χ_T ∗ G₁`.
    pub f1: Vec<Complex64>,
    /// `F₂ = χ_Ω ∗ G₂`.
    pub f2: Vec<Complex64>,
    /// Whether `σ` is the Dirac kernel, whose marginals are point masses.
    pub singular: bool,
}

/// Computes `G₁, G₂` by marginal quadrature of `σ̄` and `F_j` by zero-padded
/// convolution with the set indicators.
pub fn cohen_fg(sigma: &CohenKernel, t: &MeasurableSet, omega: &MeasurableSet) -> Result<CohenMarginals> {
    let grid = *t.grid();
    check_time_frequency(&grid, t, omega)?;
    let n = grid.n;
    let s = grid.origin_index()?;
    let chi_t = to_complex(&t.indicator());
    let chi_w = to_complex(&omega.indicator());
    let Some(k) = sigma.sample(&grid)? else {
        let mut g1 = vec![Complex64::new(0.0, 0.0); n];
        g1[s] = Complex64::new(1.0 / grid.dx, 0.0);
        let mut g2 = vec![Complex64::new(0.0, 0.0); n];
        g2[n / 2] = Complex64::new(1.0 / grid.domega(), 0.0);
        return Ok(CohenMarginals {
            g1,
            g2,
            f1: chi_t,
            f2: chi_w,
            singular: true,
        });
    };
    let (dx, dw) = (grid.dx, grid.domega());
    let g1: Vec<Complex64> = (0..n)
        .map(|i| {
            let row = (2 * s + n - i) % n;
            (0..n).map(|kc| k.get(row, kc).conj()).sum::<Complex64>() * dw
        })
        .collect();
    let g2: Vec<Complex64> = (0..n)
        .map(|kc| {
            let col = (n - kc) % n;
            (0..n).map(|j| k.get(j, col).conj()).sum::<Complex64>() * dx
        })
        .collect();
    let f1 = convolve_1d(&chi_t, &g1, s, dx, ConvMode::ZeroPadded);
    let f2 = convolve_1d(&chi_w, &g2, n / 2, dw, ConvMode::ZeroPadded);
    Ok(CohenMarginals {
        g1,
        g2,
        f1,
        f2,
        singular: false,
    })
}

/// Checks that a multiplier is real, nonnegative and bounded by one, up to
/// [`HYPOTHESIS_SLACK`].
pub fn multiplier_admissible(f: &[Complex64]) -> bool {
    f.iter()
        .all(|z| z.im.abs() <= HYPOTHESIS_SLACK && z.re >= -HYPOTHESIS_SLACK && z.re <= 1.0 + HYPOTHESIS_SLACK)
}

fn sup(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Grid with at most [`REDUCED_N`] points covering the same spatial window.
pub fn reduced_grid(grid: &Grid) -> Result<Grid> {
    if grid.n <= REDUCED_N {
        return Ok(*grid);
    }
    let dx = grid.period() / REDUCED_N as f64;
    Grid::new(1, REDUCED_N, dx, grid.x0)
}

/// Resamples a set onto another grid: a cell is kept when the source cell
/// containing its center is in the set. Centers outside the source window
/// are dropped.
pub fn resample_set(set: &MeasurableSet, target: &Grid) -> Result<MeasurableSet> {
    let src = set.grid();
    let (lo, step, tlo, tstep) = match set.domain() {
        SetDomain::Time => (src.x0 - 0.5 * src.dx, src.dx, target.x0, target.dx),
        SetDomain::Frequency => (
            src.omega(0) - 0.5 * src.domega(),
            src.domega(),
            target.omega(0),
            target.domega(),
        ),
    };
    let mask = (0..target.n)
        .map(|i| {
            let c = tlo + i as f64 * tstep;
            let j = ((c - lo) / step).floor();
            j >= 0.0 && (j as usize) < src.n && set.mask()[j as usize]
        })
        .collect();
    MeasurableSet::from_mask(*target, set.domain(), mask)
}

/// `min(‖T_σ^{χ_T}‖, ‖T_σ^{χ_Ω}‖)` and both norms, computed on a grid with at
/// most [`REDUCED_N`] points.
pub fn cohen_strip_norms(sigma: &CohenKernel, t: &MeasurableSet, omega: &MeasurableSet) -> Result<(f64, f64, usize)> {
    let grid = reduced_grid(t.grid())?;
    let sigma = match sigma {
        CohenKernel::Sampled(k) if k.grid() != &grid => {
            return Err(Error::Kernel(format!(
                "sampled kernels need a grid with at most {REDUCED_N} points for the norm check"
            )))
        }
        other => other.clone(),
    };
    let tr = resample_set(t, &grid)?;
    let wr = resample_set(omega, &grid)?;
    let n = grid.n;
    let (ct, cw) = (tr.indicator(), wr.indicator());
    let a_t = TfFunction::new(grid, (0..n * n).map(|i| Complex64::new(ct[i / n], 0.0)).collect())?;
    let a_w = TfFunction::new(grid, (0..n * n).map(|i| Complex64::new(cw[i % n], 0.0)).collect())?;
    let nt = operator_norm(&cohen_op_matrix(&a_t, &sigma)?)?;
    let nw = operator_norm(&cohen_op_matrix(&a_w, &sigma)?)?;
    Ok((nt, nw, n))
}

/// Hypotheses checked before a bound is applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    pub eps_sum_le_one: bool,
    /// `F₁`, `F₂` real, nonnegative and bounded by one.
    pub multipliers_admissible: bool,
    pub min_op_norm_le_one: bool,
    /// `G₁ ∈ L^{p₁}` and `G₂ ∈ L^{p₂}` (false for the Dirac kernel).
    pub kernel_integrable: bool,
}

impl HypothesisFlags {
    pub fn all(&self) -> bool {
        self.eps_sum_le_one && self.multipliers_admissible && self.min_op_norm_le_one && self.kernel_integrable
    }
}

/// Exponent lattice used by the Cohen-class bound search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchLattice {
    pub r_min: f64,
    pub r_max: f64,
    pub r_points: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub p_points: usize,
    pub refinement: String,
}

impl Default for SearchLattice {
    fn default() -> Self {
        SearchLattice {
            r_min: 1.0,
            r_max: 100.0,
            r_points: 60,
            p_min: 1.0,
            p_max: 20.0,
            p_points: 40,
            refinement: "golden-section in r".into(),
        }
    }
}

/// Outcome of the Cohen-class bound search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohenSearch {
    pub kernel: String,
    pub r: f64,
    pub p: f64,
    pub s: f64,
    pub bound: f64,
    pub norm_g1: f64,
    pub norm_g2: f64,
    pub op_norm_t: f64,
    pub op_norm_omega: f64,
    pub reduced_n: usize,
    pub lattice: SearchLattice,
    /// Points `(r, p₁, p₂)` of the unequal-exponent family that were checked
    /// against `|T|^{1/s₁}|Ω|^{1/s₂}`.
    pub general_checked: usize,
    pub general_violations: usize,
}

/// Report of one uncertainty check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub method: String,
    #[serde(rename = "eps_T")]
    pub eps_t: f64,
    #[serde(rename = "eps_Omega")]
    pub eps_omega: f64,
    #[serde(rename = "measure_T")]
    pub measure_t: f64,
    #[serde(rename = "measure_Omega")]
    pub measure_omega: f64,
    pub bound_classical: f64,
    pub bound_improved: f64,
    pub r_star: f64,
    pub r_star_at_boundary: bool,
    pub hypothesis_flags: HypothesisFlags,
    #[serde(rename = "product_TOmega")]
    pub product_t_omega: f64,
    pub applicable: bool,
    pub satisfied: bool,
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub f1_sup: f64,
    pub f2_sup: f64,
    pub ds_scan: Option<DsScan>,
    pub cohen: Option<CohenSearch>,
}

/// Lattice used by [`ds_bound_optimize`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DsScan {
    pub r_max: f64,
    pub points: usize,
    pub refinement: String,
}

fn finish(mut rep: ConcentrationReport) -> ConcentrationReport {
    rep.product_t_omega = rep.measure_t * rep.measure_omega;
    rep.applicable = rep.hypothesis_flags.all();
    let bound = rep.bound_classical.max(rep.bound_improved);
    rep.satisfied = rep.product_t_omega >= bound - 1e-12;
    rep
}

fn clamped_classical(eps_t: f64, eps_omega: f64) -> f64 {
    let b = (1.0 - eps_t - eps_omega).max(0.0);
    b * b
}

/// Bound with Gaussian windows `Φ_{λ₁}`, `Φ_{λ₂}`: measures the epsilons and
/// optimizes over `r ∈ [1, r_max]`.
pub fn opl_report(
    f: &Signal,
    t: &MeasurableSet,
    omega: &MeasurableSet,
    lambda1: f64,
    lambda2: f64,
    r_max: f64,
) -> Result<ConcentrationReport> {
    let (f1, f2) = gaussian_multipliers(t, omega, lambda1, lambda2)?;
    let l1 = OperatorMatrix::multiplication(*f.grid(), f1.clone())?;
    let l2 = OperatorMatrix::fourier_multiplier(*f.grid(), f2.clone())?;
    let (eps_t, eps_omega) = (epsilon_of(&l1, f)?, epsilon_of(&l2, f)?);
    let eps_ok = eps_t + eps_omega <= 1.0;
    let opt = if eps_ok {
        Some(ds_bound_optimize(eps_t, eps_omega, 1, r_max)?)
    } else {
        None
    };
    let flags = HypothesisFlags {
        eps_sum_le_one: eps_ok,
        multipliers_admissible: multiplier_admissible(&f1) && multiplier_admissible(&f2),
        min_op_norm_le_one: operator_norm(&l1)?.min(operator_norm(&l2)?) <= 1.0 + HYPOTHESIS_SLACK,
        kernel_integrable: true,
    };
    Ok(finish(ConcentrationReport {
        method: "gaussian-localization".into(),
        eps_t,
        eps_omega,
        measure_t: t.measure(),
        measure_omega: omega.measure(),
        bound_classical: clamped_classical(eps_t, eps_omega),
        bound_improved: opt.map_or(0.0, |o| o.bound),
        r_star: opt.map_or(1.0, |o| o.r_star),
        r_star_at_boundary: opt.is_some_and(|o| o.at_boundary),
        hypothesis_flags: flags,
        product_t_omega: 0.0,
        applicable: false,
        satisfied: false,
        lambda1: Some(lambda1),
        lambda2: Some(lambda2),
        f1_sup: sup(&f1),
        f2_sup: sup(&f2),
        ds_scan: Some(DsScan {
            r_max,
            points: DS_SCAN_POINTS,
            refinement: "golden-section".into(),
        }),
        cohen: None,
    }))
}

fn g_norm(g: &[Complex64], weight: f64, p: f64) -> f64 {
    weighted_lp_norm(g.iter().map(|z| z.norm()), weight, Exponent::Finite(p))
}

/// Cohen-class bound for given epsilons.
///
/// Scans `r` and a common `p₁ = p₂ = p` over [`SearchLattice`], with `s`
/// from `1/s + 1/p = 1 + 1/(2r)`, and maximizes
/// `((1-ε)/(K·‖G₁‖_p‖G₂‖_p))^s` where
/// `K = (A_s² A_p² A_{2r/(r+1)} A_{2r/(2r-1)}²)ᵈ`. The unequal-exponent family
/// `(r, p₁, p₂)` is checked against `|T|^{1/s₁}|Ω|^{1/s₂}` and violations
/// are counted.
pub fn cohen_up_bound(
    sigma: &CohenKernel,
    t: &MeasurableSet,
    omega: &MeasurableSet,
    eps_t: f64,
    eps_omega: f64,
    d: u32,
) -> Result<ConcentrationReport> {
    CohenSetup::new(sigma, t, omega)?.bound(eps_t, eps_omega, d)
}

/// Signal-independent part of a Cohen-class check: marginals, multipliers
/// and the strip operator norms for one `(σ, T, Ω)`.
#[derive(Debug, Clone)]
pub struct CohenSetup {
    sigma: CohenKernel,
    t: MeasurableSet,
    omega: MeasurableSet,
    marginals: CohenMarginals,
    op_norms: (f64, f64, usize),
}

impl CohenSetup {
    pub fn new(sigma: &CohenKernel, t: &MeasurableSet, omega: &MeasurableSet) -> Result<Self> {
        let marginals = cohen_fg(sigma, t, omega)?;
        let op_norms = if marginals.singular {
            (1.0, 1.0, 0)
        } else {
            cohen_strip_norms(sigma, t, omega)?
        };
        Ok(CohenSetup {
            sigma: sigma.clone(),
            t: t.clone(),
            omega: omega.clone(),
            marginals,
            op_norms,
        })
    }

    pub fn marginals(&self) -> &CohenMarginals {
        &self.marginals
    }

    /// [`cohen_up_bound`] for given epsilons.
    pub fn bound(&self, eps_t: f64, eps_omega: f64, d: u32) -> Result<ConcentrationReport> {
        cohen_report_from(
            &self.sigma,
            &self.marginals,
            self.op_norms,
            &self.t,
            &self.omega,
            eps_t,
            eps_omega,
            d,
        )
    }

    /// Measures `ε_T, ε_Ω` through `T_σ^{χ_T} f = F₁ f` and
    /// `T_σ^{χ_Ω} f = 𝓕⁻¹[F₂ f̂]`, then evaluates the bound.
    pub fn report(&self, f: &Signal) -> Result<ConcentrationReport> {
        f.grid().ensure_same(self.t.grid())?;
        let l1 = OperatorMatrix::multiplication(*f.grid(), self.marginals.f1.clone())?;
        let l2 = OperatorMatrix::fourier_multiplier(*f.grid(), self.marginals.f2.clone())?;
        self.bound(epsilon_of(&l1, f)?, epsilon_of(&l2, f)?, 1)
    }
}

#[allow(clippy::too_many_arguments)]
fn cohen_report_from(
    sigma: &CohenKernel,
    marg: &CohenMarginals,
    (nt, nw, reduced_n): (f64, f64, usize),
    t: &MeasurableSet,
    omega: &MeasurableSet,
    eps_t: f64,
    eps_omega: f64,
    d: u32,
) -> Result<ConcentrationReport> {
    let grid = *t.grid();
    let eps_ok = eps_t >= 0.0 && eps_omega >= 0.0 && eps_t + eps_omega <= 1.0;
    let flags = HypothesisFlags {
        eps_sum_le_one: eps_ok,
        multipliers_admissible: multiplier_admissible(&marg.f1) && multiplier_admissible(&marg.f2),
        min_op_norm_le_one: nt.min(nw) <= 1.0 + HYPOTHESIS_SLACK,
        kernel_integrable: !marg.singular,
    };
    let (mt, mw) = (t.measure(), omega.measure());
    let lattice = SearchLattice::default();
    let mut search = CohenSearch {
        kernel: sigma.to_string(),
        r: 1.0,
        p: 1.0,
        s: 2.0,
        bound: 0.0,
        norm_g1: f64::NAN,
        norm_g2: f64::NAN,
        op_norm_t: nt,
        op_norm_omega: nw,
        reduced_n,
        lattice: lattice.clone(),
        general_checked: 0,
        general_violations: 0,
    };
    if !marg.singular && eps_ok {
        let base = 1.0 - eps_t - eps_omega;
        let ps = log_grid(lattice.p_min, lattice.p_max, lattice.p_points);
        let n1: Vec<f64> = ps.iter().map(|&p| g_norm(&marg.g1, grid.dx, p)).collect();
        let n2: Vec<f64> = ps.iter().map(|&p| g_norm(&marg.g2, grid.domega(), p)).collect();
        let a = |x: f64| babenko(Exponent::Finite(x));
        let bound_at = |r: f64, p: f64, g: f64| -> Option<(f64, f64)> {
            let inv_s = 1.0 + 0.5 / r - 1.0 / p;
            if !(inv_s > 0.0 && inv_s <= 1.0 + 1e-12) {
                return None;
            }
            let s = 1.0 / inv_s.min(1.0);
            let k = (a(s).powi(2) * a(p).powi(2) * a(2.0 * r / (r + 1.0)) * a(2.0 * r / (2.0 * r - 1.0)).powi(2))
                .powi(d as i32);
            let v = if base <= 0.0 { 0.0 } else { (base / (k * g)).powf(s) };
            Some((v, s))
        };
        let rs = log_grid(lattice.r_min, lattice.r_max, lattice.r_points);
        let mut best: Option<(f64, usize, usize)> = None;
        for (ri, &r) in rs.iter().enumerate() {
            for (pi, &p) in ps.iter().enumerate() {
                if let Some((v, _)) = bound_at(r, p, n1[pi] * n2[pi]) {
                    if best.is_none_or(|(bv, _, _)| v > bv) {
                        best = Some((v, ri, pi));
                    }
                }
            }
        }
        if let Some((bv, ri, pi)) = best {
            let p = ps[pi];
            let g = n1[pi] * n2[pi];
            let mut r_best = rs[ri];
            let mut v_best = bv;
            let lo = rs[ri.saturating_sub(1)];
            let hi = rs[(ri + 1).min(rs.len() - 1)];
            let obj = |r: f64| bound_at(r, p, g).map_or(0.0, |(v, _)| v);
            let (r, v) = golden_max(obj, lo, hi, GOLDEN_TOL);
            if v > v_best {
                r_best = r;
                v_best = v;
            }
            search.r = r_best;
            search.p = p;
            search.s = bound_at(r_best, p, g).map_or(f64::NAN, |(_, s)| s);
            search.bound = v_best;
            search.norm_g1 = n1[pi];
            search.norm_g2 = n2[pi];
        }
        // unequal exponents: |T|^{1/s₁}|Ω|^{1/s₂} ≥ (1-ε)/(K ‖G₁‖_{p₁}‖G₂‖_{p₂})
        let counts: Vec<(usize, usize)> = rs
            .par_iter()
            .map(|&r| {
                let (mut checked, mut bad) = (0, 0);
                let ar = a(2.0 * r / (r + 1.0)) * a(2.0 * r / (2.0 * r - 1.0)).powi(2);
                for (i1, &p1) in ps.iter().enumerate() {
                    let s1i = 1.0 + 0.5 / r - 1.0 / p1;
                    if !(s1i > 0.0 && s1i <= 1.0) {
                        continue;
                    }
                    for (i2, &p2) in ps.iter().enumerate() {
                        let s2i = 1.0 + 0.5 / r - 1.0 / p2;
                        if !(s2i > 0.0 && s2i <= 1.0) {
                            continue;
                        }
                        let k = (a(1.0 / s1i) * a(1.0 / s2i) * a(p1) * a(p2) * ar).powi(d as i32);
                        let rhs = base / (k * n1[i1] * n2[i2]);
                        let lhs = mt.powf(s1i) * mw.powf(s2i);
                        checked += 1;
                        if lhs < rhs * (1.0 - 1e-12) {
                            bad += 1;
                        }
                    }
                }
                (checked, bad)
            })
            .collect();
        search.general_checked = counts.iter().map(|c| c.0).sum();
        search.general_violations = counts.iter().map(|c| c.1).sum();
    }
    Ok(finish(ConcentrationReport {
        method: "cohen".into(),
        eps_t,
        eps_omega,
        measure_t: mt,
        measure_omega: mw,
        bound_classical: clamped_classical(eps_t, eps_omega),
        bound_improved: search.bound,
        r_star: search.r,
        r_star_at_boundary: (search.r - lattice.r_max).abs() <= GOLDEN_TOL * lattice.r_max,
        hypothesis_flags: flags,
        product_t_omega: 0.0,
        applicable: false,
        satisfied: false,
        lambda1: None,
        lambda2: None,
        f1_sup: sup(&marg.f1),
        f2_sup: sup(&marg.f2),
        ds_scan: None,
        cohen: Some(search),
    }))
}

/// Cohen-class report for one signal; see [`CohenSetup::report`].
pub fn cohen_report(
    f: &Signal,
    sigma: &CohenKernel,
    t: &MeasurableSet,
    omega: &MeasurableSet,
) -> Result<ConcentrationReport> {
    CohenSetup::new(sigma, t, omega)?.report(f)
}

/// Outcome of the dilation experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingResult {
    pub q: Exponent,
    pub p: Exponent,
    pub lambdas: Vec<f64>,
    pub ratios: Vec<f64>,
    pub slope: f64,
    pub predicted_slope: f64,
    pub grid: Grid,
}

/// Grid resolving `Φ₁(λx)` for every `λ` in `[lmin, lmax]`: half-width
/// `5/lmin` in time and at least `5·lmax` in frequency.
pub fn scaling_grid(lmin: f64, lmax: f64) -> Result<Grid> {
    let xh = 5.0 / lmin;
    let wh = 5.0 * lmax;
    let n = ((4.0 * xh * wh).ceil() as usize).next_power_of_two().max(64);
    Grid::centered(1, n, 2.0 * xh / n as f64)
}

/// Least-squares slope of `log ρ(λ)` against `log λ`, where
/// `ρ(λ) = ‖Wig(u_λ)‖_p / ‖u_λ‖_q²` and `u_λ` is the `L²`-normalized dilation
/// `Φ₁(λ·)`.
pub fn scaling_experiment(q: Exponent, p: Exponent, lambdas: &[f64]) -> Result<ScalingResult> {
    if lambdas.len() < 2 || lambdas.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
        return Err(Error::InvalidArgument(
            "need at least two positive dilation factors".into(),
        ));
    }
    let lmin = lambdas.iter().cloned().fold(f64::INFINITY, f64::min);
    let lmax = lambdas.iter().cloned().fold(0.0, f64::max);
    if lmax / lmin < 1.0 + 1e-9 {
        return Err(Error::InvalidArgument("dilation factors must not all coincide".into()));
    }
    let grid = scaling_grid(lmin, lmax)?;
    let base = gaussian(GaussianKind::UnitL2, 1.0, &grid)?;
    let ratios = lambdas
        .iter()
        .map(|&l| {
            let u = dilate(&base, l)?.normalized()?;
            let w = wigner(&u, &u)?;
            Ok(w.lp_norm(p) / u.lp_norm(q).powi(2))
        })
        .collect::<Result<Vec<f64>>>()?;
    let xs: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
    let ys: Vec<f64> = ratios.iter().map(|r| r.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(ScalingResult {
        q,
        p,
        lambdas: lambdas.to_vec(),
        ratios,
        slope: sxy / sxx,
        predicted_slope: -2.0 * (0.5 - q.recip()),
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use proptest::prelude::*;

    fn default_grid() -> Grid {
        make_grid(256, 1.0 / 16.0, true).unwrap()
    }

    fn interval(g: Grid, dom: SetDomain, a: f64, b: f64) -> MeasurableSet {
        MeasurableSet::from_intervals(g, dom, &[[a, b]]).unwrap()
    }

    #[test]
    fn concentration_trivial_cases() {
        let g = default_grid();
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        assert_eq!(
            epsilon_concentration(&f, &MeasurableSet::full(g, SetDomain::Time)).unwrap(),
            0.0
        );
        let mut samples = vec![Complex64::new(0.0, 0.0); g.n];
        samples[120] = Complex64::new(1.0, 0.0);
        samples[130] = Complex64::new(0.0, 2.0);
        let spiky = Signal::new(g, samples).unwrap();
        let u = interval(g, SetDomain::Time, g.x(120), g.x(130));
        assert_eq!(epsilon_concentration(&spiky, &u).unwrap(), 0.0);
        assert!(matches!(
            epsilon_concentration(&Signal::zeros(g), &u),
            Err(Error::ZeroSignal)
        ));
    }

    #[test]
    fn concentration_matches_discrete_oracle() {
        let g = default_grid();
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        let u = interval(g, SetDomain::Time, -1.0, 1.0);
        let mut inside = 0.0;
        let mut total = 0.0;
        for j in 0..g.n {
            let x = g.x(j);
            let v = 2f64.sqrt() * (-2.0 * std::f64::consts::PI * x * x).exp();
            total += v;
            if (-1.0..=1.0).contains(&x) {
                inside += v;
            }
        }
        let oracle = ((total - inside) / total).sqrt();
        assert!((epsilon_concentration(&f, &u).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn concentration_matches_continuum_on_fine_grid() {
        // cells of width 1/512 tile [-1, 1] exactly
        let g = Grid::new(1, 8192, 1.0 / 512.0, -8.0 + 1.0 / 1024.0).unwrap();
        let f = Signal::from_generator(g, gaussian_generator(GaussianKind::UnitL2, 1.0, 1)).unwrap();
        let u = MeasurableSet::from_intervals(g, SetDomain::Time, &[[-1.0, 1.0]]).unwrap();
        assert_eq!(u.count(), 1024);
        // sqrt(erfc(sqrt(2π)))
        let oracle = 0.01981793602488145;
        let got = epsilon_concentration(&f, &u).unwrap();
        assert!((got - oracle).abs() < 1e-6, "{got}");
    }

    #[test]
    fn measured_epsilons_examples() {
        let g = default_grid();
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        let full_t = MeasurableSet::full(g, SetDomain::Time);
        let full_w = MeasurableSet::full(g, SetDomain::Frequency);
        let (et, ew) = measured_epsilons(&f, &full_t, &full_w, 1.0, 1.0).unwrap();
        assert!(et < 1e-6 && ew < 1e-6, "{et} {ew}");
        let (et, _) = measured_epsilons(&f, &MeasurableSet::empty(g, SetDomain::Time), &full_w, 1.0, 1.0).unwrap();
        assert_eq!(et, 1.0);
    }

    #[test]
    fn measured_epsilons_match_brute_force() {
        let g = default_grid();
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        let t = interval(g, SetDomain::Time, -2.0, 2.0);
        let w = interval(g, SetDomain::Frequency, -2.0, 2.0);
        let (et, ew) = measured_epsilons(&f, &t, &w, 1.0, 1.0).unwrap();
        let pi = std::f64::consts::PI;
        let phi2 = |x: f64| 2f64.sqrt() * (-2.0 * pi * x * x).exp();
        // direct O(n²) quadrature of χ ∗ φ₂ and of ‖F·u‖ on either axis
        let brute = |axis: &[f64], step: f64, mask: &[bool], u: &[f64]| {
            let mut num = 0.0;
            let mut den = 0.0;
            for (i, &xi) in axis.iter().enumerate() {
                let mut fi = 0.0;
                for (j, &xj) in axis.iter().enumerate() {
                    if mask[j] {
                        fi += phi2(xi - xj) * step;
                    }
                }
                num += (fi * u[i]).powi(2);
                den += u[i] * u[i];
            }
            (1.0 - num / den).max(0.0).sqrt()
        };
        let u: Vec<f64> = g.xs().iter().map(|&x| (-pi * x * x).exp()).collect();
        let uh: Vec<f64> = g.omegas().iter().map(|&w| (-pi * w * w).exp()).collect();
        let ot = brute(&g.xs(), g.dx, t.mask(), &u);
        let ow = brute(&g.omegas(), g.domega(), w.mask(), &uh);
        assert!((et - ot).abs() < 1e-6, "{et} vs {ot}");
        assert!((ew - ow).abs() < 1e-6, "{ew} vs {ow}");
    }

    #[test]
    fn classical_bound_examples() {
        assert_eq!(ds_classical_bound(0.0, 0.0).unwrap(), 1.0);
        assert!((ds_classical_bound(0.04, 0.06).unwrap() - 0.81).abs() < 1e-15);
        assert_eq!(ds_classical_bound(0.5, 0.5).unwrap(), 0.0);
        assert!(ds_classical_bound(0.6, 0.5).is_err());
    }

    #[test]
    fn bound_at_quoted_points() {
        assert!((ds_bound_at(1.34, 0.05, 0.05, 1).unwrap() - 0.9138).abs() < 5e-4);
        assert!((ds_bound_at(1.6, 0.05, 0.05, 2).unwrap() - 1.1358).abs() < 5e-4);
        // 30-digit evaluations
        assert!((ds_bound_at(1.34, 0.05, 0.05, 1).unwrap() - 0.9138318036836874).abs() < 1e-12);
        assert!((ds_bound_at(1.6, 0.05, 0.05, 2).unwrap() - 1.135837042623585).abs() < 1e-12);
        for d in 1..=3 {
            for (a, b) in [(0.0, 0.0), (0.03, 0.07), (0.2, 0.3)] {
                assert_eq!(ds_bound_at(1.0, a, b, d).unwrap(), ds_classical_bound(a, b).unwrap());
            }
        }
        assert!(ds_bound_at(0.9, 0.0, 0.0, 1).is_err());
    }

    #[test]
    fn optimizer_examples() {
        let e = std::f64::consts::E;
        for d in 1..=2u32 {
            let o = ds_bound_optimize(0.0, 0.0, d, 1e3).unwrap();
            assert!((o.bound - (e / 2.0).powi(d as i32)).abs() < 1e-3);
            assert!(o.at_boundary);
        }
        let o = ds_bound_optimize(0.05, 0.05, 1, 1e3).unwrap();
        assert!(o.bound >= 0.9138 && o.bound >= ds_bound_at(1.34, 0.05, 0.05, 1).unwrap());
        assert!(o.r_star > 1.0 && !o.at_boundary);
        assert!((o.r_star - 1.3509870944).abs() < 1e-6);
        assert!((o.bound - 0.9138690775946347).abs() < 1e-12);
        let o2 = ds_bound_optimize(0.05, 0.05, 2, 1e3).unwrap();
        assert!((o2.r_star - 1.6114260285).abs() < 1e-6);
        assert!((o2.bound - 1.1358732583176297).abs() < 1e-12);
        let o = ds_bound_optimize(0.5, 0.5, 1, 1e3).unwrap();
        assert_eq!(o.bound, 0.0);
        assert_eq!(o.r_star, 1.0);
    }

    #[test]
    fn gaussian_kernel_marginals() {
        let g = default_grid();
        let t = interval(g, SetDomain::Time, -2.0, 2.0);
        let w = interval(g, SetDomain::Frequency, -1.0, 1.5);
        for lambda in [0.5, 1.0, 2.0] {
            let m = cohen_fg(&CohenKernel::SeparableGaussianWigner(lambda), &t, &w).unwrap();
            let gx = gaussian(GaussianKind::UnitL1, 2.0 * lambda, &g).unwrap();
            for (a, b) in m.g1.iter().zip(gx.samples()) {
                assert!((a - b).norm() < 1e-8);
            }
            let gw = gaussian_generator(GaussianKind::UnitL1, 2.0 / lambda, 1);
            for (k, a) in m.g2.iter().enumerate() {
                assert!((a.re - gw.eval([g.omega(k), 0.0])).abs() < 1e-8);
            }
            let (f1, f2) = gaussian_multipliers(&t, &w, lambda, lambda).unwrap();
            for (a, b) in m.f1.iter().zip(&f1).chain(m.f2.iter().zip(&f2)) {
                assert!((a - b).norm() < 1e-8);
            }
            assert!(sup(&m.f1) <= 1.0 + HYPOTHESIS_SLACK);
            assert!(sup(&m.f2) <= 1.0 + HYPOTHESIS_SLACK);
            assert!(multiplier_admissible(&m.f1) && multiplier_admissible(&m.f2));
        }
        let m = cohen_fg(&CohenKernel::Dirac, &t, &w).unwrap();
        assert!(m.singular);
        assert_eq!(m.f1, to_complex(&t.indicator()));
    }

    #[test]
    fn marginal_identity_against_double_quadrature() {
        let g = make_grid(64, 0.125, true).unwrap();
        let mut rng = crate::random::seeded_rng(31);
        let k = crate::random::random_kernel(&g, &mut rng, false);
        let t = interval(g, SetDomain::Time, -1.0, 1.5);
        let w = interval(g, SetDomain::Frequency, -2.0, 1.0);
        let m = cohen_fg(&CohenKernel::Sampled(k.clone()), &t, &w).unwrap();
        let n = g.n as i64;
        let s = g.origin_index().unwrap() as i64;
        let cell = g.dx * g.domega();
        for ti in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for xi in 0..n {
                if !t.mask()[xi as usize] {
                    continue;
                }
                let idx = xi - ti + s;
                if (0..n).contains(&idx) {
                    for kc in 0..g.n {
                        acc += k.get(idx as usize, kc).conj() * cell;
                    }
                }
            }
            assert!((acc - m.f1[ti as usize]).norm() < 1e-8);
        }
        let h = n / 2;
        for wi in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for ei in 0..n {
                if !w.mask()[ei as usize] {
                    continue;
                }
                // η - ω on the centered axis
                let idx = ei - wi + h;
                if (0..n).contains(&idx) {
                    for xi in 0..g.n {
                        acc += k.get(xi, idx as usize).conj() * cell;
                    }
                }
            }
            assert!((acc - m.f2[wi as usize]).norm() < 1e-8);
        }
    }

    #[test]
    fn strip_operator_is_multiplication_by_f1() {
        let g = make_grid(128, 0.125, true).unwrap();
        let t = interval(g, SetDomain::Time, -1.0, 1.0);
        let w = interval(g, SetDomain::Frequency, -1.0, 1.0);
        let sigma = CohenKernel::SeparableGaussianWigner(1.0);
        let m = cohen_fg(&sigma, &t, &w).unwrap();
        let n = g.n;
        let chi = t.indicator();
        let a = TfFunction::new(g, (0..n * n).map(|i| Complex64::new(chi[i / n], 0.0)).collect()).unwrap();
        let op = cohen_op_matrix(&a, &sigma).unwrap();
        let mult = OperatorMatrix::multiplication(g, m.f1).unwrap();
        assert!(op.max_abs_diff(&mult).unwrap() * g.dx < 1e-6);
    }

    #[test]
    fn cohen_bound_reduces_to_gaussian_bound() {
        let g = default_grid();
        let t = interval(g, SetDomain::Time, -2.0, 2.0);
        let w = interval(g, SetDomain::Frequency, -2.0, 2.0);
        let rep = cohen_up_bound(&CohenKernel::SeparableGaussianWigner(1.0), &t, &w, 0.05, 0.05, 1).unwrap();
        assert!(rep.bound_improved >= 0.81, "{}", rep.bound_improved);
        assert!(rep.hypothesis_flags.all());
        let c = rep.cohen.as_ref().unwrap();
        assert_eq!(c.general_violations, 0);
        // p = 1 makes every Babenko factor cancel except A_{2r/(r+1)}
        let r = 1.7;
        let a = |x: f64| babenko(Exponent::Finite(x));
        let k = a(2.0 * r).powi(2) * a(2.0 * r / (r + 1.0)) * a(2.0 * r / (2.0 * r - 1.0)).powi(2);
        let v = (0.9 / k).powf(2.0 * r);
        assert!((v - ds_bound_at(r, 0.05, 0.05, 1).unwrap()).abs() < 1e-12);

        let dirac = cohen_up_bound(&CohenKernel::Dirac, &t, &w, 0.05, 0.05, 1).unwrap();
        assert!(!dirac.hypothesis_flags.kernel_integrable && !dirac.applicable);
    }

    #[test]
    fn gaussian_kernel_hypotheses_hold() {
        let g = default_grid();
        let t = interval(g, SetDomain::Time, -2.0, 2.0);
        let w = interval(g, SetDomain::Frequency, -2.0, 2.0);
        for lambda in [0.5, 1.0, 2.0] {
            let rep = cohen_up_bound(&CohenKernel::SeparableGaussianWigner(lambda), &t, &w, 0.1, 0.1, 1).unwrap();
            assert!(rep.hypothesis_flags.multipliers_admissible);
            assert!(rep.hypothesis_flags.min_op_norm_le_one);
        }
    }

    #[test]
    fn end_to_end_gaussian() {
        let g = default_grid();
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        let t = interval(g, SetDomain::Time, -2.0, 2.0);
        let w = interval(g, SetDomain::Frequency, -2.0, 2.0);
        let rep = opl_report(&f, &t, &w, 1.0, 1.0, DEFAULT_R_MAX).unwrap();
        assert!(rep.eps_t + rep.eps_omega <= 1.0);
        assert!(rep.applicable && rep.satisfied);
        assert!((rep.product_t_omega - 16.0).abs() <= 2.0 * 4.0 * g.dx + g.dx * g.dx);
        let c = cohen_report(&f, &CohenKernel::SeparableGaussianWigner(1.0), &t, &w).unwrap();
        assert!((c.eps_t - rep.eps_t).abs() < 1e-12);
        assert_eq!(c.satisfied, rep.satisfied);
    }

    #[test]
    fn scaling_slopes() {
        let lambdas = [1.0, 2.0, 4.0, 8.0];
        let two = Exponent::TWO;
        let s2 = scaling_experiment(two, two, &lambdas).unwrap();
        assert!(s2.slope.abs() < 0.02, "{}", s2.slope);
        let s4 = scaling_experiment(Exponent::Finite(4.0), two, &lambdas).unwrap();
        assert!((s4.slope + 0.5).abs() < 0.025, "{}", s4.slope);
        let s1 = scaling_experiment(Exponent::ONE, two, &lambdas).unwrap();
        assert!((s1.slope - 1.0).abs() < 0.05, "{}", s1.slope);
        assert!(scaling_experiment(two, two, &[2.0]).is_err());
    }

    #[test]
    fn resampled_sets_keep_their_measure() {
        let g = default_grid();
        let t = interval(g, SetDomain::Time, -2.0, 2.0);
        let r = resample_set(&t, &reduced_grid(&g).unwrap()).unwrap();
        assert!((r.measure() - 4.0).abs() <= 2.0 * r.grid().dx);
    }

    proptest! {
        #[test]
        fn optimizer_dominates_classical(a in 0.0..0.5f64, b in 0.0..0.5f64, d in 1u32..4) {
            let o = ds_bound_optimize(a, b, d, 1e3).unwrap();
            prop_assert!(o.bound >= ds_classical_bound(a, b).unwrap());
        }
    }
}
