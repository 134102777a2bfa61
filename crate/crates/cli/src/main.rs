use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use yangian::claims::{
    calibrate_or_fallback, check_range, final_entanglement_sweep, initial_entanglement_sweep, run_verify,
    CalibrationOutcome, ClaimSelection, FinalForm, SweepGrid, SweepMode, VerifyOptions, DEFAULT_GRID, DEFAULT_SEED,
    DEFAULT_TOLERANCE, DEFAULT_TRIALS,
};
use yangian::expr::parse_operator_expr;
use yangian::format::sig12;
use yangian::meson::decompose;
use yangian::pair_state::{
    entanglement_degree, entanglement_degree_closed_form, initial_state, schmidt_coefficients_raw, weight_entropy,
    MixingAmplitudes, PairState,
};
use yangian::yangian::{apply, realize, SiteConvention, YangianParams, ZERO_STATE_THRESHOLD};
use yangian::Error;

/// Normalization slack for hand-typed mixing amplitudes.
const ALPHA_INPUT_TOLERANCE: f64 = 1e-6;

/// Meson coefficients below this magnitude are not printed.
const PRINT_THRESHOLD: f64 = 1e-12;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ZERO_STATE: u8 = 3;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(
    name = "yangian",
    version,
    about = "Entanglement of quark-antiquark flavor states under Yangian transitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement degree of the initial meson mixture.
    Entropy {
        /// a1,a2,a3 with a1^2 + a2^2 + a3^2 = 1
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Apply a ladder-operator expression and decompose the final state.
    Evolve {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// e.g. "V+ + V-" or "0.5*I3 - I8"
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// antiquark-site representation; defaults to the calibrated one
        #[arg(long)]
        convention: Option<SiteConvention>,
        /// normalize the final state before printing
        #[arg(long)]
        normalize: bool,
        #[arg(long, value_enum, default_value_t = EvolveMode::Physical)]
        mode: EvolveMode,
    },
    /// Check the worked examples and print JSON reports.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_claim)]
        claim: ClaimSelection,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
        tol: f64,
        #[arg(long)]
        convention: Option<SiteConvention>,
        /// write the JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate an entanglement surface as CSV.
    Sweep {
        #[arg(long, value_parser = ["1", "3", "5"])]
        figure: String,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, allow_hyphen_values = true)]
        range_nu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        range_lambda: Option<String>,
        /// final-state surfaces only
        #[arg(long, value_enum, default_value_t = SweepKind::Paper)]
        mode: SweepKind,
        /// used by --mode physical; defaults to the calibrated one
        #[arg(long)]
        convention: Option<SiteConvention>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvolveMode {
    /// entropy of the normalized final state
    Physical,
    /// -sum s^2 log3 s^2 over the Schmidt coefficients of the unnormalized state
    Paper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    Paper,
    Physical,
}

fn parse_claim(s: &str) -> Result<ClaimSelection, String> {
    s.parse()
        .map_err(|_| format!("expected one of {}", ClaimSelection::NAMES.join("|")))
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err("tolerance must be a positive number".into()),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type CliResult = Result<u8, Failure>;

/// Standard output and error, swappable for buffers.
struct Streams<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Streams<'_> {
    fn line(&mut self, text: impl std::fmt::Display) -> Result<(), Failure> {
        writeln!(self.out, "{text}").map_err(|e| Failure::new(EXIT_IO, format!("cannot write output: {e}")))
    }

    fn note(&mut self, text: impl std::fmt::Display) {
        // diagnostics only; a closed stderr is not an error
        let _ = writeln!(self.err, "{text}");
    }
}

fn parse_list(text: &str, expected: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if v.len() == expected && v.iter().all(|x| x.is_finite()) => Ok(v),
        _ => Err(Failure::new(
            EXIT_USAGE,
            format!("{what} must be {expected} comma-separated finite numbers, got {text:?}"),
        )),
    }
}

fn parse_alpha(text: &str) -> Result<MixingAmplitudes, Failure> {
    let v = parse_list(text, 3, "--alpha")?;
    MixingAmplitudes::renormalized(v[0], v[1], v[2], ALPHA_INPUT_TOLERANCE).map_err(|e| {
        Failure::new(
            EXIT_USAGE,
            format!("--alpha must satisfy a1^2 + a2^2 + a3^2 = 1 within {ALPHA_INPUT_TOLERANCE:e}: {e}"),
        )
    })
}

fn parse_range(text: Option<&str>, name: &str) -> Result<Option<(f64, f64)>, Failure> {
    let Some(text) = text else { return Ok(None) };
    let v = parse_list(text, 2, name)?;
    check_range(name, (v[0], v[1])).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    Ok(Some((v[0], v[1])))
}

/// The calibrated convention, announced on stderr.
fn default_convention(io: &mut Streams) -> SiteConvention {
    let cal = calibrate_or_fallback(DEFAULT_TRIALS, DEFAULT_SEED, DEFAULT_TOLERANCE);
    let how = match cal.outcome {
        CalibrationOutcome::Pass => "calibrated",
        CalibrationOutcome::Fallback => "calibration-fallback",
        CalibrationOutcome::Failed => "calibration failed, smallest span leakage",
    };
    io.note(format!("convention: {} ({how})", cal.convention));
    cal.convention
}

fn cmd_entropy(io: &mut Streams, alpha: &str) -> CliResult {
    let alpha = parse_alpha(alpha)?;
    io.line(sig12(entanglement_degree_closed_form(&alpha)))?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_evolve(
    io: &mut Streams,
    alpha: &str,
    op: &str,
    mu: f64,
    nu: f64,
    lambda: f64,
    convention: Option<SiteConvention>,
    normalize: bool,
    mode: EvolveMode,
) -> CliResult {
    let alpha = parse_alpha(alpha)?;
    let expr = parse_operator_expr(op).map_err(|e| Failure::new(EXIT_USAGE, format!("--op: {e}")))?;
    let params = YangianParams::new(mu, nu, lambda).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let convention = match convention {
        Some(c) => c,
        None => default_convention(io),
    };
    let operator = realize(&expr, &params, convention);
    let out = match apply(&operator, &initial_state(&alpha), normalize) {
        Ok(s) => s,
        Err(e @ Error::ZeroFinalState { .. }) => return Err(Failure::new(EXIT_ZERO_STATE, e.to_string())),
        Err(e) => return Err(Failure::new(EXIT_FAIL, e.to_string())),
    };
    for (label, c) in decompose(&out) {
        if c.norm() > PRINT_THRESHOLD {
            io.line(format_args!("{label} {} {}", sig12(c.re), sig12(c.im)))?;
        }
    }
    let c = match mode {
        EvolveMode::Physical => physical_entanglement(&out)?,
        EvolveMode::Paper => {
            let s = schmidt_coefficients_raw(&out);
            weight_entropy(&s.map(|x| x * x))
        }
    };
    io.line(format_args!("C {}", sig12(c)))?;
    Ok(0)
}

fn physical_entanglement(state: &PairState) -> Result<f64, Failure> {
    let n = state.norm();
    if n < ZERO_STATE_THRESHOLD {
        return Ok(0.0);
    }
    entanglement_degree(&(*state * (1.0 / n))).map_err(|e| Failure::new(EXIT_FAIL, e.to_string()))
}

fn write_output(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn cmd_verify(io: &mut Streams, opts: VerifyOptions, out: Option<&Path>) -> CliResult {
    let outcome = run_verify(&opts);
    let json = outcome.to_json();
    match out {
        Some(path) => write_output(path, &json)?,
        None => io
            .out
            .write_all(json.as_bytes())
            .map_err(|e| Failure::new(EXIT_IO, format!("cannot write output: {e}")))?,
    }
    Ok(outcome.exit_code() as u8)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    io: &mut Streams,
    figure: &str,
    grid: usize,
    range_nu: Option<&str>,
    range_lambda: Option<&str>,
    mode: SweepKind,
    convention: Option<SiteConvention>,
    out: &Path,
) -> CliResult {
    let nu = parse_range(range_nu, "--range-nu")?;
    let lambda = parse_range(range_lambda, "--range-lambda")?;
    if grid < 2 {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("--grid must be at least 2, got {grid}"),
        ));
    }
    let usage = |e: Error| Failure::new(EXIT_USAGE, e.to_string());
    let table: SweepGrid = if figure == "1" {
        if nu.is_some() || lambda.is_some() {
            return Err(Failure::new(
                EXIT_USAGE,
                "figure 1 spans alpha1, alpha2 in [-1, 1] and takes no ranges",
            ));
        }
        initial_entanglement_sweep(grid).map_err(usage)?
    } else {
        let form = if figure == "3" {
            FinalForm::VPair
        } else {
            FinalForm::Hypercharge
        };
        let mode = match mode {
            SweepKind::Paper => {
                io.note("paper mode (inferred): closed form with free prefactor nu + lambda/2");
                SweepMode::ClosedForm
            }
            SweepKind::Physical => SweepMode::Physical(match convention {
                Some(c) => c,
                None => default_convention(io),
            }),
        };
        let window = yangian::claims::PARAM_RANGE;
        final_entanglement_sweep(form, grid, nu.unwrap_or(window), lambda.unwrap_or(window), mode).map_err(usage)?
    };
    write_output(out, &table.to_csv())?;
    Ok(0)
}

fn dispatch(io: &mut Streams, cli: Cli) -> CliResult {
    match cli.command {
        Command::Entropy { alpha } => cmd_entropy(io, &alpha),
        Command::Evolve {
            alpha,
            op,
            mu,
            nu,
            lambda,
            convention,
            normalize,
            mode,
        } => cmd_evolve(io, &alpha, &op, mu, nu, lambda, convention, normalize, mode),
        Command::Verify {
            claim,
            trials,
            seed,
            tol,
            convention,
            out,
        } => cmd_verify(
            io,
            VerifyOptions {
                selection: claim,
                trials,
                seed,
                tolerance: tol,
                convention,
            },
            out.as_deref(),
        ),
        Command::Sweep {
            figure,
            grid,
            range_nu,
            range_lambda,
            mode,
            convention,
            out,
        } => cmd_sweep(
            io,
            &figure,
            grid,
            range_nu.as_deref(),
            range_lambda.as_deref(),
            mode,
            convention,
            &out,
        ),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Streams { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let rendered = e.render().to_string();
            if e.use_stderr() {
                io.note(rendered.trim_end());
            } else {
                let _ = io.line(rendered.trim_end());
            }
            return code;
        }
    };
    match dispatch(&mut io, cli) {
        Ok(code) => code,
        Err(f) => {
            io.note(format!("error: {}", f.message));
            f.code
        }
    }
}

fn main() -> ExitCode {
    let (stdout, stderr) = (io::stdout(), io::stderr());
    ExitCode::from(run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock()))
}
