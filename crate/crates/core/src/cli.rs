//! Command-line interface. Exit codes: 0 success, 1 computation or
//! hypothesis failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constants::{babenko, c_const, cohen_norm_bound, h_const, loc_norm_bound, wigner_bounded};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::grid::SetDomain;
use crate::grid::{gaussian, GaussianKind};
use crate::io;
use crate::operators::{apply, cohen_op_matrix, localization_matrix, operator_norm, weyl_matrix, LocPath, Provenance};
use crate::transforms::{cohen_rep, gabor, wigner};
use crate::uncertainty::{
    ds_bound_at, ds_bound_optimize, ds_classical_bound, opl_report, scaling_experiment, CohenSetup,
};
use crate::verify::{run_verify, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cohenclass", version, about = "Cohen-class time-frequency toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gabor transform V_g f.
    Stft(PairArgs),
    /// Cross-Wigner transform Wig(f, g).
    Wigner(PairArgs),
    /// Cohen-class representation sigma * Wig(f, g).
    Cohen {
        #[command(flatten)]
        pair: PairArgs,
        /// `dirac`, `gausswig:LAMBDA` or a TF file with kernel samples.
        #[arg(long)]
        kernel: String,
    },
    /// Sharp constants and bounds.
    #[command(subcommand)]
    Constants(ConstantsCommand),
    /// Operator construction and analysis.
    #[command(subcommand)]
    Op(OpCommand),
    /// Uncertainty principles.
    #[command(subcommand)]
    Up(UpCommand),
    /// Renders |F| of a TF file as a 16-bit PGM.
    Render {
        #[arg(long)]
        tf: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs a bundled verification suite.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    f: PathBuf,
    #[arg(long)]
    g: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Optional magnitude image.
    #[arg(long)]
    pgm: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    All,
    Constants,
    Transforms,
    Operators,
    Uncertainty,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Constants => Suite::Constants,
            SuiteArg::Transforms => Suite::Transforms,
            SuiteArg::Operators => Suite::Operators,
            SuiteArg::Uncertainty => Suite::Uncertainty,
        }
    }
}

#[derive(Subcommand, Debug)]
enum ConstantsCommand {
    /// Evaluates one constant and prints {"name", "args", "value"}.
    Eval(ConstArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum ConstName {
    /// Babenko-Beckner A_p.
    #[value(name = "A")]
    A,
    /// Gabor constant H(p, q).
    #[value(name = "H")]
    H,
    /// Wigner constant C(p, q).
    #[value(name = "C")]
    C,
    /// Localization operator bound.
    #[value(name = "loc")]
    Loc,
    /// Cohen operator bound.
    #[value(name = "cohen")]
    Cohen,
    /// Wigner boundedness predicate for (r, s, p).
    #[value(name = "wigner_bounded")]
    WignerBounded,
    /// Classical Donoho-Stark bound.
    #[value(name = "ds_classical")]
    DsClassical,
    /// Improved bound at a given r.
    #[value(name = "ds")]
    Ds,
}

#[derive(Args, Debug)]
struct ConstArgs {
    #[arg(long, value_enum)]
    name: ConstName,
    #[arg(long)]
    p: Option<Exponent>,
    #[arg(long)]
    q: Option<Exponent>,
    #[arg(long)]
    r: Option<Exponent>,
    #[arg(long)]
    s: Option<Exponent>,
    #[arg(long, default_value_t = 1)]
    d: u32,
    #[arg(long)]
    eps_t: Option<f64>,
    #[arg(long)]
    eps_omega: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    n_phi: f64,
    #[arg(long, default_value_t = 1.0)]
    n_psi: f64,
    #[arg(long, default_value_t = 1.0)]
    n_a: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OpType {
    Weyl,
    Loc,
    Cohen,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PathArg {
    Direct,
    ViaWeyl,
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    /// Builds an operator matrix from a symbol.
    Build {
        #[arg(long = "type", value_enum)]
        kind: OpType,
        /// TF file holding the symbol.
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long)]
        kernel: Option<String>,
        /// Analysis window (default Phi_1).
        #[arg(long)]
        win_phi: Option<PathBuf>,
        /// Synthesis window (default Phi_1).
        #[arg(long)]
        win_psi: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "via-weyl")]
        path: PathArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Applies an operator to a signal.
    Apply {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Prints the L2 operator norm.
    Norm {
        #[arg(long)]
        op: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum UpCommand {
    /// Measures concentration and checks |T||Omega| against the bounds.
    Check {
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        set_t: PathBuf,
        #[arg(long)]
        set_omega: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        lambda1: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda2: f64,
        /// Use the Cohen-class bound with this kernel.
        #[arg(long)]
        kernel: Option<String>,
        #[arg(long, default_value_t = crate::uncertainty::DEFAULT_R_MAX)]
        r_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimizes the improved bound over r.
    Bound {
        #[arg(long)]
        eps_t: f64,
        #[arg(long)]
        eps_omega: f64,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = crate::uncertainty::DEFAULT_R_MAX)]
        r_max: f64,
    },
    /// Dilation experiment for the Wigner Lp ratio.
    Scaling {
        #[arg(long)]
        q: Exponent,
        #[arg(long, default_value = "2")]
        p: Exponent,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        lambdas: Vec<f64>,
    },
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::InvalidExponent(_) | Error::Inadmissible(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str, name: ConstName) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required for {name:?}")))
}

fn eval_constant(a: &ConstArgs) -> Result<Value> {
    let n = a.name;
    let ex = |e: Option<Exponent>| e.map(|x| x.to_string());
    let args = json!({
        "p": ex(a.p), "q": ex(a.q), "r": ex(a.r), "s": ex(a.s), "d": a.d,
        "eps_t": a.eps_t, "eps_omega": a.eps_omega,
    });
    let value = match n {
        ConstName::A => json!(babenko(need(a.p, "p", n)?)),
        ConstName::H => json!(h_const(need(a.p, "p", n)?, need(a.q, "q", n)?, a.d)?),
        ConstName::C => json!(c_const(need(a.p, "p", n)?, need(a.q, "q", n)?, a.d)?),
        ConstName::Loc => json!(loc_norm_bound(need(a.q, "q", n)?, a.d, a.n_phi, a.n_psi, a.n_a)),
        ConstName::Cohen => json!(cohen_norm_bound(
            need(a.r, "r", n)?,
            need(a.s, "s", n)?,
            need(a.q, "q", n)?,
            need(a.p, "p", n)?,
            a.d
        )?),
        ConstName::WignerBounded => {
            json!(wigner_bounded(
                need(a.r, "r", n)?,
                need(a.s, "s", n)?,
                need(a.p, "p", n)?
            ))
        }
        ConstName::DsClassical => json!(ds_classical_bound(
            need(a.eps_t, "eps-t", n)?,
            need(a.eps_omega, "eps-omega", n)?
        )?),
        ConstName::Ds => {
            let r = need(a.r, "r", n)?;
            if r.is_infinite() {
                return Err(usage("r must be finite"));
            }
            json!(ds_bound_at(
                r.value(),
                need(a.eps_t, "eps-t", n)?,
                need(a.eps_omega, "eps-omega", n)?,
                a.d
            )?)
        }
    };
    let name = clap::ValueEnum::to_possible_value(&n)
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Ok(json!({ "name": name, "args": args, "value": value }))
}

fn write_tf_outputs(tf: &crate::tf::TfFunction, pair: &PairArgs) -> Result<()> {
    io::write_tf(&pair.out, tf)?;
    if let Some(p) = &pair.pgm {
        io::render_pgm(tf, p)?;
    }
    Ok(())
}

fn read_pair(pair: &PairArgs) -> Result<(crate::grid::Signal, crate::grid::Signal)> {
    Ok((io::read_signal(&pair.f)?, io::read_signal(&pair.g)?))
}

fn path_label(p: &Path) -> String {
    p.display().to_string()
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Stft(pair) => {
            let (f, g) = read_pair(&pair)?;
            write_tf_outputs(&gabor(&f, &g)?, &pair)?;
        }
        Command::Wigner(pair) => {
            let (f, g) = read_pair(&pair)?;
            write_tf_outputs(&wigner(&f, &g)?, &pair)?;
        }
        Command::Cohen { pair, kernel } => {
            let (f, g) = read_pair(&pair)?;
            let sigma = io::parse_kernel(&kernel)?;
            write_tf_outputs(&cohen_rep(&sigma, &f, &g)?, &pair)?;
        }
        Command::Constants(ConstantsCommand::Eval(args)) => emit(out, &eval_constant(&args)?)?,
        Command::Op(OpCommand::Build {
            kind,
            symbol,
            kernel,
            win_phi,
            win_psi,
            path,
            out: dest,
        }) => {
            let a = io::read_tf(&symbol)?;
            let grid = *a.grid();
            let mut prov = Provenance::new(match kind {
                OpType::Weyl => "weyl",
                OpType::Loc => "localization",
                OpType::Cohen => "cohen",
            });
            prov.symbol = Some(path_label(&symbol));
            let m = match kind {
                OpType::Weyl => weyl_matrix(&a)?,
                OpType::Loc => {
                    let window = |p: &Option<PathBuf>| match p {
                        Some(p) => io::read_signal(p),
                        None => gaussian(GaussianKind::UnitL2, 1.0, &grid),
                    };
                    let (phi, psi) = (window(&win_phi)?, window(&win_psi)?);
                    prov.window_phi = Some(win_phi.as_deref().map_or("Phi_1".into(), path_label));
                    prov.window_psi = Some(win_psi.as_deref().map_or("Phi_1".into(), path_label));
                    let lp = match path {
                        PathArg::Direct => LocPath::Direct,
                        PathArg::ViaWeyl => LocPath::ViaWeyl,
                    };
                    prov.path = Some(format!("{lp:?}"));
                    localization_matrix(&a, &phi, &psi, lp)?
                }
                OpType::Cohen => {
                    let spec = kernel.ok_or_else(|| usage("--kernel is required for --type cohen"))?;
                    let sigma = io::parse_kernel(&spec)?;
                    prov.kernel = Some(spec);
                    cohen_op_matrix(&a, &sigma)?
                }
            };
            io::write_operator(&dest, &m.with_provenance(prov))?;
        }
        Command::Op(OpCommand::Apply { op, signal, out: dest }) => {
            let m = io::read_operator(&op)?;
            io::write_signal(&dest, &apply(&m, &io::read_signal(&signal)?)?)?;
        }
        Command::Op(OpCommand::Norm { op }) => {
            let m = io::read_operator(&op)?;
            emit(
                out,
                &json!({ "norm": operator_norm(&m)?, "structure": m.structure().name() }),
            )?;
        }
        Command::Up(UpCommand::Check {
            signal,
            set_t,
            set_omega,
            lambda1,
            lambda2,
            kernel,
            r_max,
            out: dest,
        }) => {
            let f = io::read_signal(&signal)?;
            let grid = Some(*f.grid());
            let t = io::read_set(&set_t, grid, SetDomain::Time)?;
            let w = io::read_set(&set_omega, grid, SetDomain::Frequency)?;
            let report = match kernel {
                None => opl_report(&f, &t, &w, lambda1, lambda2, r_max)?,
                Some(spec) => CohenSetup::new(&io::parse_kernel(&spec)?, &t, &w)?.report(&f)?,
            };
            let text = serde_json::to_string_pretty(&report)?;
            match dest {
                Some(p) => io::write_atomic(&p, text.as_bytes())?,
                None => writeln!(out, "{text}")?,
            }
            if !(report.applicable && report.satisfied) {
                log::warn!(
                    "hypotheses hold: {}, bound satisfied: {}",
                    report.applicable,
                    report.satisfied
                );
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Up(UpCommand::Bound {
            eps_t,
            eps_omega,
            d,
            r_max,
        }) => {
            let o = ds_bound_optimize(eps_t, eps_omega, d, r_max)?;
            emit(
                out,
                &json!({
                    "eps_T": eps_t, "eps_Omega": eps_omega, "d": d,
                    "bound_classical": ds_classical_bound(eps_t, eps_omega)?,
                    "bound_improved": o.bound, "r_star": o.r_star,
                    "r_star_at_boundary": o.at_boundary, "r_max": o.r_max,
                }),
            )?;
        }
        Command::Up(UpCommand::Scaling { q, p, lambdas }) => {
            emit(out, &serde_json::to_value(scaling_experiment(q, p, &lambdas)?)?)?;
        }
        Command::Render { tf, out: dest } => io::render_pgm(&io::read_tf(&tf)?, &dest)?,
        Command::Verify { suite, out: dest } => {
            let report = run_verify(suite.into());
            let text = serde_json::to_string_pretty(&report)?;
            if let Some(p) = dest {
                io::write_atomic(&p, text.as_bytes())?;
            }
            for c in &report.cases {
                writeln!(
                    out,
                    "{:4} {:<36} measured {:.6e} expected {:.6e}",
                    if c.passed() { "ok" } else { "FAIL" },
                    c.id,
                    c.measured,
                    c.expected
                )?;
            }
            writeln!(
                out,
                "{} cases, overall {}",
                report.cases.len(),
                if report.overall { "pass" } else { "fail" }
            )?;
            if !report.overall {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
