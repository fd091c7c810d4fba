//! Short-time Fourier (Gabor), cross-Wigner and Cohen-class transforms.
//!
//! All transforms need a one-dimensional grid whose origin lies on the
//! lattice. Phases are referenced to physical coordinates.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{convolve_2d, fft, interp2x, ConvMode};
use crate::grid::{gaussian_generator, GaussianKind, Grid, Signal};
use crate::tf::TfFunction;

fn check_pair(f: &Signal, g: &Signal) -> Result<(Grid, usize)> {
    f.grid().ensure_same(g.grid())?;
    f.grid().ensure_dim1()?;
    let s = f.grid().origin_index()?;
    Ok((*f.grid(), s))
}

/// `e^{-2πi ω_k x0}·dx` for every centered frequency index.
fn output_phase(grid: &Grid) -> Vec<Complex64> {
    (0..grid.n)
        .map(|kc| Complex64::from_polar(grid.dx, -2.0 * PI * grid.omega(kc) * grid.x0))
        .collect()
}

/// Gabor transform `V_g f(x, ω) = ∫ f(t)·conj(g(t - x))·e^{-2πiωt} dt`.
pub fn gabor(f: &Signal, g: &Signal) -> Result<TfFunction> {
    let (grid, s) = check_pair(f, g)?;
    let n = grid.n;
    let phase = output_phase(&grid);
    let (fs, gs) = (f.samples(), g.samples());
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|m| {
            let mut p: Vec<Complex64> = (0..n).map(|j| fs[j] * gs[(j + n + s - m) % n].conj()).collect();
            fft(&mut p);
            (0..n).map(|kc| p[(kc + n / 2) % n] * phase[kc]).collect()
        })
        .collect();
    Ok(TfFunction::from_raw(grid, rows.concat()))
}

/// Cross-Wigner distribution `Wig(f, g)(x, ω) = ∫ f(x + t/2)·conj(g(x - t/2))·e^{-2πiωt} dt`.
///
/// Half-sample values come from band-limited interpolation. The lag sum runs
/// over `t ∈ [-n·dx/2, n·dx/2)` with the two ends averaged, which keeps
/// `Wig(f, f)` real and `Wig(g, f) = conj(Wig(f, g))` exactly.
pub fn wigner(f: &Signal, g: &Signal) -> Result<TfFunction> {
    let (grid, _) = check_pair(f, g)?;
    let n = grid.n;
    let n2 = 2 * n;
    let f2 = interp2x(f.samples());
    let g2 = interp2x(g.samples());
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut c = vec![Complex64::new(0.0, 0.0); n];
            let h = n as i64 / 2;
            for m in -h..h {
                let a = (2 * j as i64 + m).rem_euclid(n2 as i64) as usize;
                let b = (2 * j as i64 - m).rem_euclid(n2 as i64) as usize;
                c[m.rem_euclid(n as i64) as usize] = f2[a] * g2[b].conj();
            }
            let a = (2 * j + n / 2) % n2;
            let b = (2 * j + n2 - n / 2) % n2;
            let upper = f2[a] * g2[b].conj();
            c[n / 2] = (c[n / 2] + upper) * 0.5;
            fft(&mut c);
            (0..n).map(|kc| c[(kc + n / 2) % n] * grid.dx).collect()
        })
        .collect();
    Ok(TfFunction::from_raw(grid, rows.concat()))
}

/// Lattice points `(x_j, ω_k)` for which `(2x_j, 2ω_k)` is again a lattice
/// point, as `(j, kc)` pairs with `kc` the centered frequency index.
pub fn shared_lattice(grid: &Grid) -> Result<Vec<(usize, usize)>> {
    let n = grid.n;
    let s = grid.origin_index()?;
    let mut out = Vec::new();
    for j in 0..n {
        let m = 2 * j as i64 - s as i64;
        if m < 0 || m >= n as i64 {
            continue;
        }
        for kc in n / 4..n / 4 + n / 2 {
            out.push((j, kc));
        }
    }
    Ok(out)
}

/// `2·e^{4πixω}·V_{g̃} f(2x, 2ω)` on [`shared_lattice`], zero elsewhere.
pub fn wigner_via_gabor(f: &Signal, g: &Signal) -> Result<TfFunction> {
    let (grid, s) = check_pair(f, g)?;
    let n = grid.n;
    let v = gabor(f, &g.reflect()?)?;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, kc) in shared_lattice(&grid)? {
        let m = 2 * j - s;
        let k2 = 2 * kc - n / 2;
        let phase = Complex64::from_polar(2.0, 4.0 * PI * grid.x(j) * grid.omega(kc));
        out[j * n + kc] = phase * v.get(m, k2);
    }
    Ok(TfFunction::from_raw(grid, out))
}

/// Cohen kernels `σ`.
#[derive(Debug, Clone, PartialEq)]
pub enum CohenKernel {
    /// `σ = δ`, giving the Wigner distribution.
    Dirac,
    /// `σ(x, ω) = φ_{2λ}(x)·φ_{2/λ}(ω)`, the Wigner distribution of `Φ_λ`.
    SeparableGaussianWigner(f64),
    Sampled(TfFunction),
}

impl fmt::Display for CohenKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohenKernel::Dirac => write!(f, "dirac"),
            CohenKernel::SeparableGaussianWigner(l) => write!(f, "gausswig:{l}"),
            CohenKernel::Sampled(_) => write!(f, "sampled"),
        }
    }
}

impl CohenKernel {
    /// Samples of the kernel on the time-frequency lattice of `grid`, or
    /// `None` for the Dirac kernel.
    pub fn sample(&self, grid: &Grid) -> Result<Option<TfFunction>> {
        match self {
            CohenKernel::Dirac => Ok(None),
            CohenKernel::SeparableGaussianWigner(lambda) => {
                let lambda = *lambda;
                if !(lambda > 0.0) || !lambda.is_finite() {
                    return Err(Error::Kernel(format!("Gaussian kernel needs lambda > 0, got {lambda}")));
                }
                grid.ensure_dim1()?;
                let gx = gaussian_generator(GaussianKind::UnitL1, 2.0 * lambda, 1);
                let gw = gaussian_generator(GaussianKind::UnitL1, 2.0 / lambda, 1);
                Ok(Some(TfFunction::from_fn(*grid, |x, w| {
                    Complex64::new(gx.eval([x, 0.0]) * gw.eval([w, 0.0]), 0.0)
                })?))
            }
            CohenKernel::Sampled(tf) => {
                if tf.grid() != grid {
                    return Err(Error::Kernel(format!(
                        "sampled kernel lives on {}, target is {grid}",
                        tf.grid()
                    )));
                }
                Ok(Some(tf.clone()))
            }
        }
    }

    /// `σ̄`.
    pub fn conj(&self) -> CohenKernel {
        match self {
            CohenKernel::Sampled(tf) => CohenKernel::Sampled(tf.conj()),
            other => other.clone(),
        }
    }
}

/// Convolution of two functions on the time-frequency lattice, weight `dx·dω`.
pub fn tf_convolve(a: &TfFunction, b: &TfFunction, mode: ConvMode) -> Result<TfFunction> {
    a.grid().ensure_same(b.grid())?;
    let grid = *a.grid();
    let s = grid.origin_index()?;
    let out = convolve_2d(a.samples(), b.samples(), grid.n, (s, grid.n / 2), a.cell(), mode);
    Ok(TfFunction::from_raw(grid, out))
}

/// Cohen-class representation `Q_σ(f, g) = σ ∗ Wig(f, g)`, by zero-padded
/// convolution.
pub fn cohen_rep(sigma: &CohenKernel, f: &Signal, g: &Signal) -> Result<TfFunction> {
    let w = wigner(f, g)?;
    match sigma.sample(f.grid())? {
        None => Ok(w),
        Some(k) => tf_convolve(&k, &w, ConvMode::ZeroPadded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::grid::{gaussian, make_grid, tf_shift};
    use crate::random::{random_mixture, seeded_rng};
    use proptest::prelude::*;

    fn default_grid() -> Grid {
        make_grid(256, 1.0 / 16.0, true).unwrap()
    }

    fn phi(l: f64, x: f64) -> f64 {
        l.sqrt() * (-PI * l * x * x).exp()
    }

    #[test]
    fn gabor_at_origin_is_inner_product() {
        let g = default_grid();
        let mut rng = seeded_rng(1);
        let f = random_mixture(&g, &mut rng);
        let w = random_mixture(&g, &mut rng);
        let v = gabor(&f, &w).unwrap();
        let s = g.origin_index().unwrap();
        let ip = f.inner(&w).unwrap();
        assert!((v.get(s, g.n / 2) - ip).norm() < 1e-12);
    }

    #[test]
    fn moyal_for_gaussians() {
        let g = default_grid();
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        let w = gaussian(GaussianKind::UnitL2, 2.0, &g).unwrap();
        let v = gabor(&f, &w).unwrap();
        assert!((v.lp_norm(Exponent::TWO) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn wigner_of_gaussian_closed_form() {
        let g = default_grid();
        for lambda in [0.5, 1.0, 2.0] {
            let f = gaussian(GaussianKind::UnitL2, lambda, &g).unwrap();
            let w = wigner(&f, &f).unwrap();
            let exact = TfFunction::from_fn(g, |x, om| {
                Complex64::new(phi(2.0 * lambda, x) * phi(2.0 / lambda, om), 0.0)
            })
            .unwrap();
            assert!(w.max_abs_diff(&exact).unwrap() < 1e-6, "lambda {lambda}");
        }
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        let w = wigner(&f, &f).unwrap();
        assert!((w.get(g.n / 2, g.n / 2).re - 2.0).abs() < 1e-6);
    }

    #[test]
    fn wigner_self_term_is_real_and_conjugate_symmetric() {
        let g = default_grid();
        let mut rng = seeded_rng(2);
        let f = random_mixture(&g, &mut rng);
        let h = random_mixture(&g, &mut rng);
        let w = wigner(&f, &f).unwrap();
        let sup = w.sup_norm();
        assert!(w.samples().iter().all(|z| z.im.abs() <= 1e-10 * sup));
        let a = wigner(&f, &h).unwrap();
        let b = wigner(&h, &f).unwrap().conj();
        assert!(a.max_abs_diff(&b).unwrap() <= 1e-10 * a.sup_norm().max(1.0));
    }

    #[test]
    fn wigner_gabor_identity_on_shared_lattice() {
        let g = default_grid();
        let mut rng = seeded_rng(3);
        for _ in 0..3 {
            let f = random_mixture(&g, &mut rng);
            let h = random_mixture(&g, &mut rng);
            let w = wigner(&f, &h).unwrap();
            let v = wigner_via_gabor(&f, &h).unwrap();
            let mut err: f64 = 0.0;
            for (j, kc) in shared_lattice(&g).unwrap() {
                err = err.max((w.get(j, kc) - v.get(j, kc)).norm());
            }
            assert!(err < 1e-8, "err {err}");
        }
    }

    #[test]
    fn wigner_gabor_norm_relation() {
        let g = default_grid();
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        let h = gaussian(GaussianKind::UnitL2, 2.0, &g).unwrap();
        let w = wigner_via_gabor(&f, &h).unwrap();
        let v = gabor(&f, &h.reflect().unwrap()).unwrap();
        for p in [1.0, 2.0, 4.0] {
            let e = Exponent::new(p).unwrap();
            let lhs = w.lp_norm(e);
            let rhs = 2f64.powf((p - 2.0) / p) * v.lp_norm(e);
            assert!((lhs - rhs).abs() < 1e-8, "p {p}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn cohen_dirac_is_wigner() {
        let g = default_grid();
        let mut rng = seeded_rng(4);
        let f = random_mixture(&g, &mut rng);
        let q = cohen_rep(&CohenKernel::Dirac, &f, &f).unwrap();
        assert_eq!(q, wigner(&f, &f).unwrap());
    }

    #[test]
    fn gaussian_kernel_gives_spectrogram() {
        let g = default_grid();
        let mut rng = seeded_rng(5);
        for lambda in [1.0, 2.0] {
            let f = random_mixture(&g, &mut rng);
            let q = cohen_rep(&CohenKernel::SeparableGaussianWigner(lambda), &f, &f).unwrap();
            let win = gaussian(GaussianKind::UnitL2, lambda, &g).unwrap();
            let spec = gabor(&f, &win).unwrap().map(|z| Complex64::new(z.norm_sqr(), 0.0));
            let err = q.max_abs_diff(&spec).unwrap();
            assert!(err < 1e-6, "lambda {lambda}: {err}");
        }
    }

    #[test]
    fn cohen_covariance_under_lattice_shifts() {
        let g = default_grid();
        let mut rng = seeded_rng(6);
        let f = random_mixture(&g, &mut rng);
        for kernel in [CohenKernel::Dirac, CohenKernel::SeparableGaussianWigner(1.0)] {
            let q = cohen_rep(&kernel, &f, &f).unwrap();
            let (a, b) = (5_i64, -3_i64);
            let shifted = tf_shift(&f, &[a as f64 * g.dx], &[b as f64 * g.domega()]).unwrap();
            let qs = cohen_rep(&kernel, &shifted, &shifted).unwrap();
            let err = qs.max_abs_diff(&q.translate(a, b)).unwrap();
            assert!(err < 1e-8, "{kernel}: {err}");
        }
    }

    #[test]
    fn sampled_kernel_must_share_grid() {
        let g = default_grid();
        let other = make_grid(128, 1.0 / 16.0, true).unwrap();
        let k = CohenKernel::Sampled(TfFunction::zeros(other).unwrap());
        let f = gaussian(GaussianKind::UnitL2, 1.0, &g).unwrap();
        assert!(matches!(cohen_rep(&k, &f, &f), Err(Error::Kernel(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn transforms_are_sesquilinear(seed in 0u64..1000, ar in -2.0..2.0f64, ai in -2.0..2.0f64) {
            let g = make_grid(64, 1.0 / 8.0, true).unwrap();
            let mut rng = seeded_rng(seed);
            let f1 = random_mixture(&g, &mut rng);
            let f2 = random_mixture(&g, &mut rng);
            let h = random_mixture(&g, &mut rng);
            let alpha = Complex64::new(ar, ai);
            let one = Complex64::new(1.0, 0.0);
            let comb = f1.combine(alpha, &f2, one).unwrap();
            for t in [gabor, wigner] {
                let lhs = t(&comb, &h).unwrap();
                let (a, b) = (t(&f1, &h).unwrap(), t(&f2, &h).unwrap());
                for i in 0..lhs.samples().len() {
                    let e = alpha * a.samples()[i] + b.samples()[i];
                    prop_assert!((lhs.samples()[i] - e).norm() < 1e-10);
                }
                let rhs = t(&h, &comb).unwrap();
                let (a, b) = (t(&h, &f1).unwrap(), t(&h, &f2).unwrap());
                for i in 0..rhs.samples().len() {
                    let e = alpha.conj() * a.samples()[i] + b.samples()[i];
                    prop_assert!((rhs.samples()[i] - e).norm() < 1e-10);
                }
            }
        }
    }
}
