//! `monogamy`: worked examples, figure data, verification campaigns and
//! ad-hoc reports for the k-parameterized monogamy/polygamy ladders.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 data (including failed checks).

mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use monogamy_core::inequalities::{KindRule, LadderSpec, MonogamyReport, Split};
use monogamy_core::measures::{
    concurrence_pure, concurrence_two_qubit, entropy_pure, eof_two_qubit, measure_value_2q, negativity_pure,
    renyi_pure, tsallis_pure, MeasureKind,
};
use monogamy_core::qstate::{example_state, reduce_pure, Bipartition, PureState, EXAMPLE_ORDER};
use monogamy_core::verify::{figure_rows, find_applicable_order, run_campaign, CampaignConfig, Suite};
use monogamy_core::Error;

use input::{amplitudes_from_file, parse_k, parse_kind, schmidt_from_arg};
use output::{open_target, sig17};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Data(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Data(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[derive(Parser)]
#[command(name = "monogamy", version, about = "Entanglement monogamy and polygamy ladders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute a worked example on the canonical three-qubit state.
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
    },
    /// Emit the data behind a figure.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long, default_value_t = 6.0)]
        beta_max: f64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        beta_steps: u64,
    },
    /// Run a seeded verification campaign.
    Verify {
        #[arg(value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
        suite: Suite,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Comma-separated k values in (0, 1].
        #[arg(long, value_parser = parse_k, value_delimiter = ',')]
        k: Option<Vec<f64>>,
        /// Comma-separated β values.
        #[arg(long, value_delimiter = ',')]
        beta: Option<Vec<f64>>,
        #[arg(long, conflicts_with = "alpha")]
        q: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Print the full report for one state.
    #[command(group = clap::ArgGroup::new("state").required(true).args(["schmidt", "amplitudes"]))]
    Report {
        /// `L0,L1,L2,L3,L4[,PHI]`
        #[arg(long)]
        schmidt: Option<String>,
        /// Text file with one `re im` amplitude per line.
        #[arg(long)]
        amplitudes: Option<PathBuf>,
        /// Measure, optionally with its order: `concurrence`, `eof`, `cren`,
        /// `tsallis:Q`, `renyi:A` or an `-assist` variant.
        #[arg(long, value_parser = parse_kind)]
        kind: MeasureKind,
        #[arg(long, value_parser = parse_k)]
        k: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        focus: usize,
        /// Comma-separated qubit order; scanned for an applicable one when omitted.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
}

struct Expected {
    name: &'static str,
    got: f64,
    want: f64,
}

fn example_values(n: u8) -> Result<(f64, Vec<Expected>), CliError> {
    let psi = example_state();
    let a = Bipartition::single(0);
    let ab = reduce_pure(&psi, &Bipartition::new(vec![0, EXAMPLE_ORDER[0]]))?;
    let ac = reduce_pure(&psi, &Bipartition::new(vec![0, EXAMPLE_ORDER[1]]))?;
    let e = |name, got, want| Expected { name, got, want };
    let half_sqrt3 = 3f64.sqrt() / 2.0;
    let half_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    Ok(match n {
        1 => (
            1e-12,
            vec![
                e("C_A|BC", concurrence_pure(&psi, &a)?, half_sqrt3),
                e("C_AB", concurrence_two_qubit(&ab)?, half_sqrt2),
                e("C_AC", concurrence_two_qubit(&ac)?, 0.5),
            ],
        ),
        2 => (
            1e-5,
            vec![
                e("E_A|BC", entropy_pure(&psi, &a)?, 0.811278),
                e("E_AB", eof_two_qubit(&ab)?, 0.600876),
                e("E_AC", eof_two_qubit(&ac)?, 0.354579),
            ],
        ),
        3 => (
            1e-12,
            vec![
                e("N_A|BC", negativity_pure(&psi, &a)?, half_sqrt3),
                e("N_AB", measure_value_2q(MeasureKind::Cren, &ab)?, half_sqrt2),
                e("N_AC", measure_value_2q(MeasureKind::Cren, &ac)?, 0.5),
            ],
        ),
        4 => (
            1e-12,
            vec![
                e("T2_A|BC", tsallis_pure(2.0, &psi, &a)?, 0.375),
                e("T2_AB", measure_value_2q(MeasureKind::Tsallis(2.0), &ab)?, 0.25),
                e("T2_AC", measure_value_2q(MeasureKind::Tsallis(2.0), &ac)?, 0.125),
            ],
        ),
        5 => (
            1e-5,
            vec![
                e("E2_A|BC", renyi_pure(2.0, &psi, &a)?, 0.678072),
                e("E2_AB", measure_value_2q(MeasureKind::Renyi(2.0), &ab)?, 0.415037),
                e("E2_AC", measure_value_2q(MeasureKind::Renyi(2.0), &ac)?, 0.192645),
            ],
        ),
        _ => return Err(CliError::Usage(format!("example number must be 1..=5, got {n}"))),
    })
}

fn cmd_example(n: u8) -> Result<(), CliError> {
    let (tol, values) = example_values(n)?;
    let mut out = open_target(None).map_err(io_error)?;
    writeln!(out, "example {n}: lambda0 = lambda3 = 1/2, lambda2 = sqrt(2)/2, tolerance {tol:e}").map_err(io_error)?;
    let mut all_ok = true;
    for v in &values {
        let diff = (v.got - v.want).abs();
        let ok = diff <= tol;
        all_ok &= ok;
        writeln!(
            out,
            "{:<8} = {}  expected {}  |diff| = {diff:.1e}  {}",
            v.name,
            sig17(v.got),
            sig17(v.want),
            if ok { "ok" } else { "MISMATCH" }
        )
        .map_err(io_error)?;
    }
    out.flush().map_err(io_error)?;
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Data(format!("example {n} does not reproduce the expected values")))
    }
}

fn cmd_figure(
    n: u8,
    out: Option<PathBuf>,
    format: TableFormat,
    beta_max: f64,
    beta_steps: u64,
) -> Result<(), CliError> {
    let rows = figure_rows(n, beta_max, beta_steps as usize)?;
    let mut w = open_target(out.as_deref()).map_err(io_error)?;
    match format {
        TableFormat::Csv => {
            writeln!(w, "beta,k,our_rhs,baseline_rhs,lhs").map_err(io_error)?;
            for r in &rows {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    sig17(r.beta),
                    sig17(r.k),
                    sig17(r.our_rhs),
                    sig17(r.baseline_rhs),
                    sig17(r.lhs)
                )
                .map_err(io_error)?;
            }
        }
        TableFormat::Text => {
            writeln!(w, "{:>10} {:>5} {:>22} {:>22} {:>22}", "beta", "k", "our_rhs", "baseline_rhs", "lhs")
                .map_err(io_error)?;
            for r in &rows {
                writeln!(
                    w,
                    "{:>10.6} {:>5} {:>22.15} {:>22.15} {:>22.15}",
                    r.beta, r.k, r.our_rhs, r.baseline_rhs, r.lhs
                )
                .map_err(io_error)?;
            }
        }
    }
    w.flush().map_err(io_error)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: Suite,
    trials: u64,
    seed: u64,
    n: usize,
    k: Option<Vec<f64>>,
    beta: Option<Vec<f64>>,
    param: Option<f64>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    format: ReportFormat,
) -> Result<(), CliError> {
    let mut cfg = CampaignConfig::new(suite, trials, seed).with_qubits(n);
    if let Some(k) = k {
        cfg.k_grid = k;
    }
    if let Some(beta) = beta {
        cfg.beta_grid = beta;
    }
    if let Some(tol) = tol {
        cfg.tolerance = tol;
    }
    cfg.q_or_alpha = param;
    let result = run_campaign(&cfg)?;
    let mut w = open_target(out.as_deref()).map_err(io_error)?;
    match format {
        ReportFormat::Text => {
            writeln!(w, "{}", result.summary()).map_err(io_error)?;
            if let Some(worst) = result.worst_case.as_ref().filter(|_| result.violations > 0) {
                writeln!(w, "worst case: {}", serde_json::to_string(worst).expect("worst case serializes"))
                    .map_err(io_error)?;
            }
        }
        ReportFormat::JsonLines => {
            writeln!(w, "{}", serde_json::to_string(&result).expect("campaign result serializes")).map_err(io_error)?;
        }
    }
    w.flush().map_err(io_error)?;
    if result.passed() {
        Ok(())
    } else {
        Err(CliError::Data(result.summary()))
    }
}

fn write_report_text(w: &mut dyn Write, r: &MonogamyReport) -> std::io::Result<()> {
    writeln!(w, "measure    {} ({:?})", r.kind.label(), r.direction)?;
    writeln!(w, "focus      {}  order {:?}", r.focus, r.order)?;
    writeln!(w, "k = {}  beta = {}  exponent p = {}", r.k, r.beta, r.exponent)?;
    writeln!(w, "pattern    {:?}", r.pattern)?;
    writeln!(w, "applicable {}", r.applicable)?;
    writeln!(w, "conditions")?;
    for c in &r.conditions {
        writeln!(
            w,
            "  i={} {:?}: {} vs {}  {}",
            c.index,
            c.kind,
            sig17(c.lhs_value),
            sig17(c.rhs_value),
            if c.satisfied { "holds" } else { "fails" }
        )?;
    }
    writeln!(w, "terms")?;
    for t in &r.terms {
        writeln!(
            w,
            "  i={} value={} coefficient={} contribution={}",
            t.index,
            sig17(t.value),
            sig17(t.coefficient),
            sig17(t.contribution)
        )?;
    }
    writeln!(w, "lhs        {}", sig17(r.lhs))?;
    writeln!(w, "rhs        {}", sig17(r.rhs))?;
    writeln!(w, "slack      {}", sig17(r.slack))
}

#[allow(clippy::too_many_arguments)]
fn cmd_report(
    schmidt: Option<String>,
    amplitudes: Option<PathBuf>,
    kind: MeasureKind,
    k: f64,
    beta: f64,
    focus: usize,
    order: Option<Vec<usize>>,
    format: ReportFormat,
) -> Result<(), CliError> {
    let psi: PureState = match (schmidt, amplitudes) {
        (Some(s), _) => schmidt_from_arg(&s)?,
        (None, Some(path)) => amplitudes_from_file(&path)?,
        (None, None) => return Err(CliError::Usage("give --schmidt or --amplitudes".into())),
    };
    let rule = KindRule::for_kind(kind)?;
    let spec = LadderSpec::new(k, beta, rule.power, Split::Auto, rule.direction)?;
    let profile_report = |order: &[usize]| -> Result<MonogamyReport, CliError> {
        Ok(monogamy_core::inequalities::profile(&psi, focus, order, kind)?.report(&spec)?)
    };
    let report = match order {
        Some(order) => profile_report(&order)?,
        None => match find_applicable_order(&psi, focus, kind, &spec)? {
            Some(r) => r,
            None => {
                let natural: Vec<usize> = (0..psi.n_qubits()).filter(|&q| q != focus).collect();
                profile_report(&natural)?
            }
        },
    };
    let mut w = open_target(None).map_err(io_error)?;
    match format {
        ReportFormat::Text => write_report_text(&mut w, &report).map_err(io_error)?,
        ReportFormat::JsonLines => {
            writeln!(w, "{}", serde_json::to_string(&report).expect("report serializes")).map_err(io_error)?
        }
    }
    w.flush().map_err(io_error)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Example { n } => cmd_example(n),
        Command::Figure { n, out, format, beta_max, beta_steps } => cmd_figure(n, out, format, beta_max, beta_steps),
        Command::Verify { suite, trials, seed, n, k, beta, q, alpha, tol, out, format } => {
            cmd_verify(suite, trials, seed, n, k, beta, q.or(alpha), tol, out, format)
        }
        Command::Report { schmidt, amplitudes, kind, k, beta, focus, order, format } => {
            cmd_report(schmidt, amplitudes, kind, k, beta, focus, order, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
