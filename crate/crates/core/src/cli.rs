//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification record, 2 invalid input,
//! 3 internal or numerical failure, 4 minimizing sweep violates its law,
//! 5 quotient falls below its constant.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::problem::{build_modes, parse_modes, AngularSpec, ProblemFile, WeightRole};
use crate::quotient::{hardy_quotient, hardy_rellich_quotient, RATIO_SLACK};
use crate::radial::MinimizingBranch;
use crate::verify::{minimizing_sweep, run_suite, Suite, DEFAULT_EPSILONS};

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_SWEEP_LAW: i32 = 4;
pub const EXIT_QUOTIENT_VIOLATION: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "hardy-rellich", version, about = "Sharp Hardy, Hardy-Rellich and Rellich constants")]
struct Cli {
    /// Emit JSON instead of CSV or text.
    #[arg(long, global = true)]
    json: bool,
    /// RNG seed for the verification suites (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_parser = parse_seed, default_value = "0x5EED")]
    seed: u64,
    /// Relative slack of inequality checks.
    #[arg(long, global = true, default_value_t = RATIO_SLACK)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the sharp constant of a problem as JSON.
    Constant(ProblemArgs),
    /// Tabulate the constant along one parameter as CSV.
    Sweep {
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Evaluate the minimizing sequence along a grid of epsilons.
    Minimize {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Strictly decreasing values in (0, 1/2).
        #[arg(long, value_delimiter = ',')]
        epsilons: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t = BranchArg::Auto)]
        branch: BranchArg,
    },
    /// Evaluate the Rayleigh quotient of a mode-decomposed test function.
    Quotient {
        #[command(flatten)]
        problem: ProblemArgs,
        /// JSON array of {"index", "profile", "scale"?} entries.
        #[arg(long)]
        modes: PathBuf,
    },
    /// Run a verification suite: full, constants, spectra, quotients or sweeps.
    Verify {
        suite: String,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    Alpha,
    Flux,
    A,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Auto,
    Power,
    RadialLog,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AngularKind {
    Free,
    ElectricConst,
    ElectricProfile,
    Ab,
    Monopole,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RoleArg {
    HardyRellich,
    Hardy,
    RellichProduct,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Problem file; inline flags override its fields.
    #[arg(long)]
    problem: Option<PathBuf>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, value_enum)]
    angular: Option<AngularKind>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    flux: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Potential samples on a uniform circle grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    samples: Option<Vec<f64>>,
    /// Resample the potential to this many points.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    exclude: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    role: Option<RoleArg>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) | Error::Domain(_) | Error::DegenerateInput(_) | Error::Resolution { .. } => {
                EXIT_INVALID
            }
            Error::Quadrature { .. } | Error::Eigensolver { .. } | Error::Consistency { .. } => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: format!("i/o error: {e}"),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

impl ProblemArgs {
    fn resolve(&self) -> Result<ProblemFile, Failure> {
        self.resolve_swept(None)
    }

    /// Like `resolve`, but the parameter carried by `axis` may be omitted;
    /// the sweep supplies it.
    fn resolve_swept(&self, axis: Option<Axis>) -> Result<ProblemFile, Failure> {
        let mut p = match &self.problem {
            Some(path) => ProblemFile::from_json(&read_file(path)?)?,
            None => ProblemFile {
                d: self.d.ok_or_else(|| invalid("either --problem or --d is required"))?,
                alpha: 0.0,
                angular: AngularSpec::Free,
                exclude: Vec::new(),
                weight_role: WeightRole::HardyRellich,
            },
        };
        if let Some(d) = self.d {
            p.d = d;
        }
        if let Some(alpha) = self.alpha {
            p.alpha = alpha;
        }
        if let Some(kind) = self.angular {
            let need = |v: Option<f64>, flag: &str, swept: Axis| match (v, axis) {
                (Some(v), _) => Ok(v),
                (None, Some(a)) if a == swept => Ok(0.0),
                _ => Err(invalid(format!("--angular needs --{flag}"))),
            };
            p.angular = match kind {
                AngularKind::Free => AngularSpec::Free,
                AngularKind::ElectricConst => AngularSpec::ElectricConst { a: need(self.a, "a", Axis::A)? },
                AngularKind::Ab => AngularSpec::Ab { flux: need(self.flux, "flux", Axis::Flux)? },
                AngularKind::Monopole => AngularSpec::Monopole { g: need(self.g, "g", Axis::G)? },
                AngularKind::ElectricProfile => AngularSpec::ElectricProfile {
                    samples: self.samples.clone().ok_or_else(|| invalid("--angular needs --samples"))?,
                    grid: self.grid,
                },
            };
        } else if self.a.is_some() || self.flux.is_some() || self.g.is_some() || self.samples.is_some() {
            return Err(invalid("operator parameters need --angular"));
        }
        if let Some(ex) = &self.exclude {
            p.exclude = ex.clone();
        }
        if let Some(role) = self.role {
            p.weight_role = match role {
                RoleArg::HardyRellich => WeightRole::HardyRellich,
                RoleArg::Hardy => WeightRole::Hardy,
                RoleArg::RellichProduct => WeightRole::RellichProduct,
            };
        }
        Ok(p)
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return Err(invalid("--tol must be a finite non-negative number"));
    }
    match &cli.command {
        Command::Constant(args) => {
            let r = args.resolve()?.constant()?;
            writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))?;
            Ok(0)
        }
        Command::Sweep {
            axis,
            from,
            to,
            steps,
            problem,
        } => sweep(cli, *axis, *from, *to, *steps, problem, out),
        Command::Minimize {
            problem,
            epsilons,
            branch,
        } => {
            let p = problem.resolve()?;
            if p.weight_role != WeightRole::HardyRellich {
                return Err(invalid("minimizing sequences are defined for the Hardy-Rellich role"));
            }
            let eps = epsilons.clone().unwrap_or_else(|| DEFAULT_EPSILONS.to_vec());
            let branch = match branch {
                BranchArg::Auto => None,
                BranchArg::Power => Some(MinimizingBranch::Power),
                BranchArg::RadialLog => Some(MinimizingBranch::RadialLog),
            };
            let s = minimizing_sweep(&p.spec()?, &eps, branch)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&s).expect("serializable"))?;
            } else {
                writeln!(out, "epsilon,ratio,constant,gap,gap_times_log")?;
                for r in &s.rows {
                    writeln!(out, "{},{},{},{},{}", r.epsilon, r.ratio, r.constant, r.gap, r.gap_times_log)?;
                }
            }
            if s.passes() {
                Ok(0)
            } else {
                writeln!(
                    err,
                    "sweep law violated: monotone = {}, spread of gap*|ln 4eps^2| = {}",
                    s.monotone, s.log_law_spread
                )?;
                Ok(EXIT_SWEEP_LAW)
            }
        }
        Command::Quotient { problem, modes } => {
            let p = problem.resolve()?;
            let spec = p.spec()?;
            let modes = build_modes(&spec, &parse_modes(&read_file(modes)?)?)?;
            let eigenvalues: Vec<f64> = modes.iter().map(|m| m.eigenvalue).collect();
            let (report, constant) = match p.weight_role {
                WeightRole::HardyRellich => {
                    let c = crate::constants::constant_of_eigenvalues(&eigenvalues, p.d, p.alpha)?.value;
                    (hardy_rellich_quotient(&modes, p.d, p.alpha)?, c)
                }
                WeightRole::Hardy => {
                    let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
                    let c = min + ((p.d as f64 - p.alpha - 2.0) / 2.0).powi(2);
                    (hardy_quotient(&modes, p.d, p.alpha)?, c)
                }
                WeightRole::RellichProduct => {
                    return Err(invalid("quotients are available for the hardy-rellich and hardy roles"))
                }
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
            if report.satisfies(constant, cli.tol) {
                Ok(0)
            } else {
                writeln!(err, "ratio {} is below the constant {}", report.ratio, constant)?;
                Ok(EXIT_QUOTIENT_VIOLATION)
            }
        }
        Command::Verify { suite, report } => {
            let suite: Suite = suite.parse()?;
            let r = run_suite(suite, cli.seed);
            let json = r.to_json();
            let path = report
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("hardy-rellich-{}.json", suite.as_str())));
            std::fs::write(&path, format!("{json}\n"))?;
            if cli.json {
                writeln!(out, "{json}")?;
            } else {
                write!(out, "{r}")?;
            }
            writeln!(err, "wall time {:.3} s, report written to {}", r.wall_time.as_secs_f64(), path.display())?;
            Ok(if r.pass { 0 } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn sweep(
    cli: &Cli,
    axis: Axis,
    from: f64,
    to: f64,
    steps: usize,
    problem: &ProblemArgs,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if steps < 2 {
        return Err(invalid("--steps must be at least 2"));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(invalid("sweep range must be finite"));
    }
    let base = problem.resolve_swept(Some(axis))?;
    match (axis, &base.angular) {
        (Axis::Alpha, _)
        | (Axis::Flux, AngularSpec::Ab { .. })
        | (Axis::A, AngularSpec::ElectricConst { .. })
        | (Axis::G, AngularSpec::Monopole { .. }) => {}
        _ => return Err(invalid("the sweep axis does not match the angular operator")),
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = from + (to - from) * i as f64 / (steps - 1) as f64;
        let mut p = base.clone();
        match axis {
            Axis::Alpha => p.alpha = t,
            Axis::Flux => p.angular = AngularSpec::Ab { flux: t },
            Axis::A => p.angular = AngularSpec::ElectricConst { a: t },
            Axis::G => p.angular = AngularSpec::Monopole { g: t },
        }
        let r = p.constant().map_err(|e| Failure {
            code: EXIT_INTERNAL,
            message: format!("row {i} ({t}): {e}"),
        })?;
        rows.push((t, r));
    }
    if cli.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(t, r)| serde_json::json!({"param": t, "result": r}))
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
    } else {
        writeln!(out, "param,value,argmin_index,branch")?;
        for (t, r) in rows {
            let idx = r.argmin_index.map(|i| i.to_string()).unwrap_or_default();
            writeln!(out, "{t},{},{idx},{}", r.value, r.branch.as_str())?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["hardy-rellich"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn constant_command() {
        let (code, out, _) = call(&["constant", "--d", "3", "--alpha", "0", "--angular", "free"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"value\":0.6944444444444444"), "{out}");
        let (code, out, _) = call(&["constant", "--d", "1", "--alpha", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"value\":2.25"));
        let (code, _, err) = call(&["constant", "--d", "3", "--flux", "0.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("--angular"));
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0x5EED"), Ok(crate::verify::DEFAULT_SEED));
        assert_eq!(parse_seed("24301"), Ok(24301));
        assert!(parse_seed("zz").is_err());
    }

    #[test]
    fn alpha_sweep_marks_degenerate_row() {
        let (code, out, _) = call(&["sweep", "--axis", "alpha", "--from", "-1", "--to", "2", "--steps", "4", "--d", "5"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "param,value,argmin_index,branch");
        assert!(lines[3].starts_with("1,") && lines[3].ends_with(",degenerate"), "{out}");
        assert!(lines[1].ends_with(",generic"));
    }
}
