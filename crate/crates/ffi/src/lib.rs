//! C ABI over `cohenclass`.
//!
//! Every fallible entry point returns a [`CcStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`cc_last_error_message`]. Handles are opaque and owned by the
//! caller, who releases them with the matching `*_free` function.
//!
//! Exponents are passed as `double`; `INFINITY` selects `p = ∞`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use cohenclass::grid::{gaussian, GaussianKind};
use cohenclass::operators::{self, LocPath};
use cohenclass::uncertainty::{ds_bound_at, ds_bound_optimize, ds_classical_bound};
use cohenclass::{constants, io, transforms, Complex64, Error, Exponent, Grid, OperatorMatrix, Signal, TfFunction};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidExponent = 3,
    Inadmissible = 4,
    InvalidGrid = 5,
    GridMismatch = 6,
    Unsupported = 7,
    Numerical = 8,
    Io = 9,
    Format = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcGaussianKind {
    /// `exp(-πλ|x|²)`.
    Plain = 0,
    /// Unit L² norm.
    UnitL2 = 1,
    /// Unit L¹ norm.
    UnitL1 = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcLocPath {
    Direct = 0,
    ViaWeyl = 1,
}

/// Maximizer of the improved concentration bound.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcDsOptimum {
    pub r_star: f64,
    pub bound: f64,
    pub at_boundary: bool,
}

pub struct CcGrid(Grid);
pub struct CcSignal(Signal);
pub struct CcTf(TfFunction);
pub struct CcOperator(OperatorMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> CcStatus {
    match err {
        Error::InvalidArgument(_) | Error::ZeroSignal | Error::UnalignedShift(_) | Error::NoGenerator => {
            CcStatus::InvalidArgument
        }
        Error::InvalidExponent(_) => CcStatus::InvalidExponent,
        Error::Inadmissible(_) => CcStatus::Inadmissible,
        Error::InvalidGrid(_) | Error::InvalidSignal(_) => CcStatus::InvalidGrid,
        Error::GridMismatch(_) => CcStatus::GridMismatch,
        Error::UnsupportedDimension(_) | Error::Kernel(_) => CcStatus::Unsupported,
        Error::NonConvergence { .. } => CcStatus::Numerical,
        Error::Io(_) => CcStatus::Io,
        Error::Format(_) | Error::Json(_) => CcStatus::Format,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Outcome<()>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            CcStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            CcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Outcome<&'a T> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Outcome<()> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn boxed_out<T>(out: *mut *mut T, value: T) -> Outcome<()> {
    write_out(out, Box::into_raw(Box::new(value)), "out")
}

unsafe fn path_arg(path: *const c_char) -> Outcome<PathBuf> {
    let s = deref(path, "path").map(|p| CStr::from_ptr(p))?;
    let s = s
        .to_str()
        .map_err(|_| Error::InvalidArgument("path is not valid UTF-8".into()))?;
    Ok(PathBuf::from(s))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &'static str) -> Outcome<&'a str> {
    let s = deref(s, what).map(|p| CStr::from_ptr(p))?;
    Ok(s.to_str()
        .map_err(|_| Error::InvalidArgument(format!("{what} is not valid UTF-8")))?)
}

fn exponent(v: f64) -> Outcome<Exponent> {
    if v == f64::INFINITY {
        Ok(Exponent::INFINITY)
    } else {
        Ok(Exponent::new(v)?)
    }
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---- grids ----

/// One-dimensional grid `x_j = x0 + j·dx`, `j = 0..n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_grid_new(n: usize, dx: f64, x0: f64, out: *mut *mut CcGrid) -> CcStatus {
    guard(|| boxed_out(out, CcGrid(Grid::new(1, n, dx, x0)?)))
}

/// One-dimensional grid centered at the origin (`x0 = -n·dx/2`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_grid_centered(n: usize, dx: f64, out: *mut *mut CcGrid) -> CcStatus {
    guard(|| boxed_out(out, CcGrid(Grid::centered(1, n, dx)?)))
}

/// Number of samples, or 0 for NULL.
///
/// # Safety
/// `grid` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_grid_len(grid: *const CcGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.len())
}

/// # Safety
/// `grid` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_grid_free(grid: *mut CcGrid) {
    free(grid)
}

// ---- signals ----

/// Signal from separate real and imaginary arrays of length `len`; `im` may
/// be NULL for real data.
///
/// # Safety
/// `re` (and `im` when non-NULL) must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_new(
    grid: *const CcGrid,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut CcSignal,
) -> CcStatus {
    guard(|| {
        let g = deref(grid, "grid")?.0;
        let re = std::slice::from_raw_parts(deref(re, "re")?, len);
        let samples: Vec<Complex64> = if im.is_null() {
            re.iter().map(|&r| Complex64::new(r, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, len);
            re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect()
        };
        boxed_out(out, CcSignal(Signal::new(g, samples)?))
    })
}

/// Sampled Gaussian of the given family and dilation.
///
/// # Safety
/// `grid` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_gaussian(
    grid: *const CcGrid,
    kind: CcGaussianKind,
    lambda: f64,
    out: *mut *mut CcSignal,
) -> CcStatus {
    guard(|| {
        let kind = match kind {
            CcGaussianKind::Plain => GaussianKind::Plain,
            CcGaussianKind::UnitL2 => GaussianKind::UnitL2,
            CcGaussianKind::UnitL1 => GaussianKind::UnitL1,
        };
        boxed_out(out, CcSignal(gaussian(kind, lambda, &deref(grid, "grid")?.0)?))
    })
}

/// Number of samples, or 0 for NULL.
///
/// # Safety
/// `signal` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_len(signal: *const CcSignal) -> usize {
    signal.as_ref().map_or(0, |s| s.0.samples().len())
}

/// Copies the samples into `re` / `im`, each of capacity `len`.
///
/// # Safety
/// `re` and `im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_samples(
    signal: *const CcSignal,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> CcStatus {
    guard(|| {
        let s = deref(signal, "signal")?.0.samples();
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("re/im"));
        }
        if len != s.len() {
            return Err(Error::InvalidArgument(format!("buffer length {len}, signal has {}", s.len())).into());
        }
        for (j, z) in s.iter().enumerate() {
            re.add(j).write(z.re);
            im.add(j).write(z.im);
        }
        Ok(())
    })
}

/// Grid of a signal as a new handle.
///
/// # Safety
/// `signal` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_grid(signal: *const CcSignal, out: *mut *mut CcGrid) -> CcStatus {
    guard(|| boxed_out(out, CcGrid(*deref(signal, "signal")?.0.grid())))
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_read(path: *const c_char, out: *mut *mut CcSignal) -> CcStatus {
    guard(|| boxed_out(out, CcSignal(io::read_signal(&path_arg(path)?)?)))
}

/// # Safety
/// `signal` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_write(signal: *const CcSignal, path: *const c_char) -> CcStatus {
    guard(|| Ok(io::write_signal(&path_arg(path)?, &deref(signal, "signal")?.0)?))
}

/// # Safety
/// `signal` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_signal_free(signal: *mut CcSignal) {
    free(signal)
}

// ---- time-frequency functions ----

unsafe fn pair<'a>(f: *const CcSignal, g: *const CcSignal) -> Outcome<(&'a Signal, &'a Signal)> {
    Ok((&deref(f, "f")?.0, &deref(g, "g")?.0))
}

/// Gabor transform `V_g f`.
///
/// # Safety
/// `f`, `g` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_gabor(f: *const CcSignal, g: *const CcSignal, out: *mut *mut CcTf) -> CcStatus {
    guard(|| {
        let (f, g) = pair(f, g)?;
        boxed_out(out, CcTf(transforms::gabor(f, g)?))
    })
}

/// Cross-Wigner transform `Wig(f, g)`.
///
/// # Safety
/// `f`, `g` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_wigner(f: *const CcSignal, g: *const CcSignal, out: *mut *mut CcTf) -> CcStatus {
    guard(|| {
        let (f, g) = pair(f, g)?;
        boxed_out(out, CcTf(transforms::wigner(f, g)?))
    })
}

/// Cohen-class representation; `kernel` is `"dirac"`, `"gausswig:LAMBDA"`
/// or the path of a TF file.
///
/// # Safety
/// Handles must be live, `kernel` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cc_cohen(
    kernel: *const c_char,
    f: *const CcSignal,
    g: *const CcSignal,
    out: *mut *mut CcTf,
) -> CcStatus {
    guard(|| {
        let sigma = io::parse_kernel(str_arg(kernel, "kernel")?)?;
        let (f, g) = pair(f, g)?;
        boxed_out(out, CcTf(transforms::cohen_rep(&sigma, f, g)?))
    })
}

/// Side length `n` of the `n × n` sample array, or 0 for NULL.
///
/// # Safety
/// `tf` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_tf_n(tf: *const CcTf) -> usize {
    tf.as_ref().map_or(0, |t| t.0.n())
}

/// Sample at position index `xi` and centered frequency index `ki`.
///
/// # Safety
/// `tf` must be a live handle; `re`, `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_tf_get(tf: *const CcTf, xi: usize, ki: usize, re: *mut f64, im: *mut f64) -> CcStatus {
    guard(|| {
        let t = &deref(tf, "tf")?.0;
        if xi >= t.n() || ki >= t.n() {
            return Err(Error::InvalidArgument(format!("index ({xi}, {ki}) outside {0}×{0}", t.n())).into());
        }
        let z = t.get(xi, ki);
        write_out(re, z.re, "re")?;
        write_out(im, z.im, "im")
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_tf_read(path: *const c_char, out: *mut *mut CcTf) -> CcStatus {
    guard(|| boxed_out(out, CcTf(io::read_tf(&path_arg(path)?)?)))
}

/// # Safety
/// `tf` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cc_tf_write(tf: *const CcTf, path: *const c_char) -> CcStatus {
    guard(|| Ok(io::write_tf(&path_arg(path)?, &deref(tf, "tf")?.0)?))
}

/// Writes `|F|` as a 16-bit PGM.
///
/// # Safety
/// `tf` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cc_tf_render_pgm(tf: *const CcTf, path: *const c_char) -> CcStatus {
    guard(|| Ok(io::render_pgm(&deref(tf, "tf")?.0, &path_arg(path)?)?))
}

/// # Safety
/// `tf` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_tf_free(tf: *mut CcTf) {
    free(tf)
}

// ---- operators ----

/// Weyl quantization of the symbol `b`.
///
/// # Safety
/// `symbol` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_weyl_operator(symbol: *const CcTf, out: *mut *mut CcOperator) -> CcStatus {
    guard(|| boxed_out(out, CcOperator(operators::weyl_matrix(&deref(symbol, "symbol")?.0)?)))
}

/// Localization operator with symbol `a` and windows `phi`, `psi`.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cc_localization_operator(
    symbol: *const CcTf,
    phi: *const CcSignal,
    psi: *const CcSignal,
    path: CcLocPath,
    out: *mut *mut CcOperator,
) -> CcStatus {
    guard(|| {
        let path = match path {
            CcLocPath::Direct => LocPath::Direct,
            CcLocPath::ViaWeyl => LocPath::ViaWeyl,
        };
        let (phi, psi) = pair(phi, psi)?;
        let m = operators::localization_matrix(&deref(symbol, "symbol")?.0, phi, psi, path)?;
        boxed_out(out, CcOperator(m))
    })
}

/// Cohen operator with symbol `a` and kernel spec as in [`cc_cohen`].
///
/// # Safety
/// Handles must be live, `kernel` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cc_cohen_operator(
    symbol: *const CcTf,
    kernel: *const c_char,
    out: *mut *mut CcOperator,
) -> CcStatus {
    guard(|| {
        let sigma = io::parse_kernel(str_arg(kernel, "kernel")?)?;
        boxed_out(
            out,
            CcOperator(operators::cohen_op_matrix(&deref(symbol, "symbol")?.0, &sigma)?),
        )
    })
}

/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cc_operator_apply(
    op: *const CcOperator,
    signal: *const CcSignal,
    out: *mut *mut CcSignal,
) -> CcStatus {
    guard(|| {
        let m = &deref(op, "op")?.0;
        boxed_out(out, CcSignal(operators::apply(m, &deref(signal, "signal")?.0)?))
    })
}

/// L² operator norm.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_operator_norm(op: *const CcOperator, out: *mut f64) -> CcStatus {
    guard(|| write_out(out, operators::operator_norm(&deref(op, "op")?.0)?, "out"))
}

/// Matrix entry `(t, u)` of the discrete kernel.
///
/// # Safety
/// `op` must be a live handle; `re`, `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_operator_entry(
    op: *const CcOperator,
    t: usize,
    u: usize,
    re: *mut f64,
    im: *mut f64,
) -> CcStatus {
    guard(|| {
        let m = &deref(op, "op")?.0;
        if t >= m.size() || u >= m.size() {
            return Err(Error::InvalidArgument(format!("entry ({t}, {u}) outside {0}×{0}", m.size())).into());
        }
        let z = m.entry(t, u);
        write_out(re, z.re, "re")?;
        write_out(im, z.im, "im")
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_operator_read(path: *const c_char, out: *mut *mut CcOperator) -> CcStatus {
    guard(|| boxed_out(out, CcOperator(io::read_operator(&path_arg(path)?)?)))
}

/// # Safety
/// `op` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cc_operator_write(op: *const CcOperator, path: *const c_char) -> CcStatus {
    guard(|| Ok(io::write_operator(&path_arg(path)?, &deref(op, "op")?.0)?))
}

/// # Safety
/// `op` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_operator_free(op: *mut CcOperator) {
    free(op)
}

// ---- constants and bounds ----

/// Babenko-Beckner constant `A_p`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_babenko(p: f64, out: *mut f64) -> CcStatus {
    guard(|| write_out(out, constants::babenko(exponent(p)?), "out"))
}

/// Sharp Gabor constant `H(p, q)` in dimension `d`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_h_const(p: f64, q: f64, d: u32, out: *mut f64) -> CcStatus {
    guard(|| write_out(out, constants::h_const(exponent(p)?, exponent(q)?, d)?, "out"))
}

/// Wigner constant `C(p, q)` in dimension `d`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_c_const(p: f64, q: f64, d: u32, out: *mut f64) -> CcStatus {
    guard(|| write_out(out, constants::c_const(exponent(p)?, exponent(q)?, d)?, "out"))
}

/// Localization operator norm bound from window and symbol norms.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_loc_norm_bound(
    q: f64,
    d: u32,
    n_phi: f64,
    n_psi: f64,
    n_a: f64,
    out: *mut f64,
) -> CcStatus {
    guard(|| {
        write_out(
            out,
            constants::loc_norm_bound(exponent(q)?, d, n_phi, n_psi, n_a),
            "out",
        )
    })
}

/// Cohen operator norm constant for `(r, s, q, p)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_cohen_norm_bound(r: f64, s: f64, q: f64, p: f64, d: u32, out: *mut f64) -> CcStatus {
    guard(|| {
        let v = constants::cohen_norm_bound(exponent(r)?, exponent(s)?, exponent(q)?, exponent(p)?, d)?;
        write_out(out, v, "out")
    })
}

/// `(1 - ε_T - ε_Ω)²`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_ds_classical_bound(eps_t: f64, eps_omega: f64, out: *mut f64) -> CcStatus {
    guard(|| write_out(out, ds_classical_bound(eps_t, eps_omega)?, "out"))
}

/// Improved concentration bound at a fixed `r ≥ 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_ds_bound_at(r: f64, eps_t: f64, eps_omega: f64, d: u32, out: *mut f64) -> CcStatus {
    guard(|| write_out(out, ds_bound_at(r, eps_t, eps_omega, d)?, "out"))
}

/// Maximizes the improved bound over `r ∈ [1, r_max]`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_ds_bound_optimize(
    eps_t: f64,
    eps_omega: f64,
    d: u32,
    r_max: f64,
    out: *mut CcDsOptimum,
) -> CcStatus {
    guard(|| {
        let o = ds_bound_optimize(eps_t, eps_omega, d, r_max)?;
        write_out(
            out,
            CcDsOptimum {
                r_star: o.r_star,
                bound: o.bound,
                at_boundary: o.at_boundary,
            },
            "out",
        )
    })
}
