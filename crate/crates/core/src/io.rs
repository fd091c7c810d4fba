//! File formats: JSON signals and sets, JSON-header + CSV payloads for
//! time-frequency functions and operators, 16-bit PGM magnitude images.
//!
//! Floats in CSV payloads are written with 17 significant digits, JSON uses
//! shortest round-trip formatting; both read back bitwise.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GaussianGenerator, Grid, MeasurableSet, SetDomain, Signal};
use crate::operators::{OperatorMatrix, Provenance, Structure};
use crate::tf::{FreqAxis, TfFunction};
use crate::transforms::CohenKernel;

/// Writes through a temporary sibling file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let tmp: PathBuf = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Io(e)
    })
}

fn pairs(samples: &[Complex64]) -> Vec<[f64; 2]> {
    samples.iter().map(|z| [z.re, z.im]).collect()
}

fn complexes(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

#[derive(Serialize, Deserialize)]
struct SignalFile {
    grid: Grid,
    samples: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<GaussianGenerator>,
}

pub fn signal_to_json(f: &Signal) -> Result<String> {
    let file = SignalFile {
        grid: *f.grid(),
        samples: pairs(f.samples()),
        generator: f.generator(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn signal_from_json(text: &str) -> Result<Signal> {
    let file: SignalFile = serde_json::from_str(text)?;
    Ok(Signal::new(file.grid, complexes(&file.samples))?.with_generator(file.generator))
}

pub fn write_signal(path: &Path, f: &Signal) -> Result<()> {
    write_atomic(path, signal_to_json(f)?.as_bytes())
}

pub fn read_signal(path: &Path) -> Result<Signal> {
    signal_from_json(&fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize)]
struct SetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grid: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<SetDomain>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mask: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    intervals: Option<Vec<[f64; 2]>>,
}

pub fn set_to_json(set: &MeasurableSet) -> Result<String> {
    let file = SetFile {
        grid: Some(*set.grid()),
        domain: Some(set.domain()),
        mask: Some(set.mask().iter().map(|&b| b as u8).collect()),
        intervals: None,
    };
    Ok(serde_json::to_string(&file)?)
}

/// Parses a set file. `grid` is used when the file has none; `domain` when
/// the file does not name one. A file naming a different domain is rejected.
pub fn set_from_json(text: &str, grid: Option<Grid>, domain: SetDomain) -> Result<MeasurableSet> {
    let file: SetFile = serde_json::from_str(text)?;
    let grid = file
        .grid
        .or(grid)
        .ok_or_else(|| Error::Format("set file has no grid and none was supplied".into()))?;
    if let Some(d) = file.domain {
        if d != domain {
            return Err(Error::Format(format!(
                "expected a {domain:?} set, file holds a {d:?} set"
            )));
        }
    }
    match (file.mask, file.intervals) {
        (Some(mask), None) => {
            if mask.iter().any(|&m| m > 1) {
                return Err(Error::Format("mask entries must be 0 or 1".into()));
            }
            MeasurableSet::from_mask(grid, domain, mask.into_iter().map(|m| m == 1).collect())
        }
        (None, Some(iv)) => MeasurableSet::from_intervals(grid, domain, &iv),
        _ => Err(Error::Format(
            "set file needs exactly one of `mask` and `intervals`".into(),
        )),
    }
}

pub fn write_set(path: &Path, set: &MeasurableSet) -> Result<()> {
    write_atomic(path, set_to_json(set)?.as_bytes())
}

pub fn read_set(path: &Path, grid: Option<Grid>, domain: SetDomain) -> Result<MeasurableSet> {
    set_from_json(&fs::read_to_string(path)?, grid, domain)
}

#[derive(Serialize, Deserialize)]
struct TfHeader {
    grid: Grid,
    fgrid: FreqAxis,
}

fn csv_line(out: &mut String, a: usize, b: usize, z: Complex64) {
    use std::fmt::Write as _;
    let _ = writeln!(out, "{a},{b},{:.16e},{:.16e}", z.re, z.im);
}

/// Parses `a,b,re,im` rows into an `n × n` buffer; every cell must appear
/// exactly once.
fn parse_rows<'a>(lines: impl Iterator<Item = &'a str>, n: usize) -> Result<Vec<Complex64>> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    let mut seen = vec![false; n * n];
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || Error::Format(format!("payload row {}: `{line}`", lineno + 1));
        if fields.len() != 4 {
            return Err(bad());
        }
        let a: usize = fields[0].parse().map_err(|_| bad())?;
        let b: usize = fields[1].parse().map_err(|_| bad())?;
        let re: f64 = fields[2].parse().map_err(|_| bad())?;
        let im: f64 = fields[3].parse().map_err(|_| bad())?;
        if a >= n || b >= n || seen[a * n + b] {
            return Err(bad());
        }
        seen[a * n + b] = true;
        out[a * n + b] = Complex64::new(re, im);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Format(format!(
            "payload misses cell ({}, {})",
            missing / n,
            missing % n
        )));
    }
    Ok(out)
}

fn split_header(text: &str) -> Result<(&str, &str)> {
    let (head, body) = text.split_once('\n').unwrap_or((text, ""));
    if head.trim().is_empty() {
        return Err(Error::Format("missing JSON header line".into()));
    }
    Ok((head, body))
}

pub fn tf_to_string(f: &TfFunction) -> Result<String> {
    let n = f.n();
    let mut out = serde_json::to_string(&TfHeader {
        grid: *f.grid(),
        fgrid: f.fgrid(),
    })?;
    out.push('\n');
    for xi in 0..n {
        for ki in 0..n {
            csv_line(&mut out, xi, ki, f.get(xi, ki));
        }
    }
    Ok(out)
}

pub fn tf_from_str(text: &str) -> Result<TfFunction> {
    let (head, body) = split_header(text)?;
    let header: TfHeader = serde_json::from_str(head)?;
    if header.fgrid != FreqAxis::of(&header.grid) {
        return Err(Error::Format("fgrid does not match the grid's dual axis".into()));
    }
    let samples = parse_rows(body.lines(), header.grid.n)?;
    TfFunction::new(header.grid, samples)
}

pub fn write_tf(path: &Path, f: &TfFunction) -> Result<()> {
    write_atomic(path, tf_to_string(f)?.as_bytes())
}

pub fn read_tf(path: &Path) -> Result<TfFunction> {
    tf_from_str(&fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize)]
struct OpHeader {
    grid: Grid,
    provenance: Provenance,
    structure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symbol: Option<Vec<[f64; 2]>>,
}

pub fn operator_to_string(m: &OperatorMatrix) -> Result<String> {
    let symbol = match m.structure() {
        Structure::Multiplication(v) | Structure::FourierMultiplier(v) => Some(pairs(v)),
        _ => None,
    };
    let header = OpHeader {
        grid: *m.grid(),
        provenance: m.provenance().clone(),
        structure: m.structure().name().into(),
        symbol,
    };
    let mut out = serde_json::to_string(&header)?;
    out.push('\n');
    let n = m.size();
    for t in 0..n {
        for u in 0..n {
            csv_line(&mut out, t, u, m.entry(t, u));
        }
    }
    Ok(out)
}

pub fn operator_from_str(text: &str) -> Result<OperatorMatrix> {
    let (head, body) = split_header(text)?;
    let header: OpHeader = serde_json::from_str(head)?;
    let n = header.grid.n;
    let symbol = || -> Result<Vec<Complex64>> {
        let s = header
            .symbol
            .as_ref()
            .ok_or_else(|| Error::Format("structured operator without symbol".into()))?;
        if s.len() != n {
            return Err(Error::Format(format!("symbol has {} values, expected {n}", s.len())));
        }
        Ok(complexes(s))
    };
    let structure = match header.structure.as_str() {
        "dense" => Structure::Dense,
        "identity" => Structure::Identity,
        "multiplication" => Structure::Multiplication(symbol()?),
        "fourier_multiplier" => Structure::FourierMultiplier(symbol()?),
        other => return Err(Error::Format(format!("unknown operator structure `{other}`"))),
    };
    let entries = parse_rows(body.lines(), n)?;
    OperatorMatrix::from_parts(header.grid, entries, structure, header.provenance)
}

pub fn write_operator(path: &Path, m: &OperatorMatrix) -> Result<()> {
    write_atomic(path, operator_to_string(m)?.as_bytes())
}

pub fn read_operator(path: &Path) -> Result<OperatorMatrix> {
    operator_from_str(&fs::read_to_string(path)?)
}

/// Binary 16-bit PGM of `|F|`: columns are `x`, rows are `ω` with the highest
/// frequency on top, pixels `round(65535·|F|/max|F|)`.
pub fn pgm_bytes(f: &TfFunction) -> Vec<u8> {
    let n = f.n();
    let max = f.sup_norm();
    let mut out = format!("P5\n{n} {n}\n65535\n").into_bytes();
    out.reserve(2 * n * n);
    for row in 0..n {
        let ki = n - 1 - row;
        for xi in 0..n {
            let v = if max > 0.0 {
                (65535.0 * f.get(xi, ki).norm() / max).round().min(65535.0) as u16
            } else {
                0
            };
            out.extend_from_slice(&v.to_be_bytes());
        }
    }
    out
}

pub fn render_pgm(f: &TfFunction, path: &Path) -> Result<()> {
    write_atomic(path, &pgm_bytes(f))
}

/// Parses `dirac`, `gausswig:λ` or a path to a TF file holding kernel samples.
pub fn parse_kernel(spec: &str) -> Result<CohenKernel> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("dirac") {
        return Ok(CohenKernel::Dirac);
    }
    if let Some(rest) = spec.strip_prefix("gausswig:") {
        let lambda: f64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Kernel(format!("cannot parse lambda in `{spec}`")))?;
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Kernel(format!("Gaussian kernel needs lambda > 0, got {lambda}")));
        }
        return Ok(CohenKernel::SeparableGaussianWigner(lambda));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Kernel(format!(
            "`{spec}` is neither a kernel name nor a readable file"
        )));
    }
    Ok(CohenKernel::Sampled(read_tf(path)?))
}
