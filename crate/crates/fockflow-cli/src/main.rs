//! Command-line front end for the interferometer simulator: single-photon
//! fringes, braced-network coincidences, batch coincidence sweeps, and the
//! built-in self-check table.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on usage errors, 3 when a
//! self-check fails.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fockflow::{
    duality, sweep_p46, uniform_phase_grid, unit_interval_grid, verify, BracedMzi64, Detector,
    ExperimentParams64, FockBasisState, InputKind, StateVector64, WheelerMzi64,
};

#[derive(Parser)]
#[command(name = "fockflow", version, about = "Few-photon interferometer simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-photon fringe of the plain balanced interferometer
    Mzi(MziArgs),
    /// Two-photon coincidence rates of the braced network
    Braced(BracedArgs),
    /// Batch D4-D6 coincidence sweep over the (φ, ε) grid
    Sweep(BracedArgs),
    /// Run the built-in self-checks and print the deviation table
    Verify,
}

#[derive(Args)]
struct MziArgs {
    #[command(flatten)]
    phase: PhaseGrid,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BracedArgs {
    #[command(flatten)]
    phase: PhaseGrid,
    #[command(flatten)]
    leak: LeakGrid,
    /// Input preparation fed to the two inner ports
    #[arg(long, value_enum, default_value_t = KindArg::Pair)]
    kind: KindArg,
    /// Pair weight α for --kind superposed; ignored otherwise
    #[arg(long, value_parser = parse_unit_interval, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    alpha: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PhaseGrid {
    /// Internal delay φ in radians
    #[arg(long, value_parser = parse_finite, default_value_t = 0.0, conflicts_with = "phi_steps")]
    phi: f64,
    /// Sample φ at N uniform points covering [0, 2π)
    #[arg(long, value_name = "N", value_parser = parse_steps)]
    phi_steps: Option<usize>,
}

impl PhaseGrid {
    fn values(&self) -> Vec<f64> {
        match self.phi_steps {
            Some(n) => uniform_phase_grid(n),
            None => vec![self.phi],
        }
    }
}

#[derive(Args)]
struct LeakGrid {
    /// Outer recombiner transmission ε
    #[arg(long, value_parser = parse_unit_interval, default_value_t = 0.0, conflicts_with = "epsilon_steps")]
    epsilon: f64,
    /// Sample ε at M uniform points covering [0, 1]
    #[arg(long, value_name = "M", value_parser = parse_steps)]
    epsilon_steps: Option<usize>,
}

impl LeakGrid {
    fn values(&self) -> Vec<f64> {
        match self.epsilon_steps {
            Some(m) => unit_interval_grid(m),
            None => vec![self.epsilon],
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pair,
    Antibunched,
    Superposed,
}

impl From<KindArg> for InputKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Pair => InputKind::Pair,
            KindArg::Antibunched => InputKind::Antibunched,
            KindArg::Superposed => InputKind::Superposed,
        }
    }
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err("must be finite".into())
    }
}

fn parse_unit_interval(s: &str) -> Result<f64, String> {
    let value = parse_finite(s)?;
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err("must lie in [0, 1]".into())
    }
}

fn parse_steps(s: &str) -> Result<usize, String> {
    let value: usize = s.parse().map_err(|e| format!("{e}"))?;
    if value >= 1 {
        Ok(value)
    } else {
        Err("must be at least 1".into())
    }
}

/// Twelve significant digits, compact exponent form.
fn sig(value: f64) -> String {
    format!("{value:.11e}")
}

trait CsvRow: Serialize {
    const HEADER: &'static str;
    fn fields(&self) -> Vec<f64>;
}

#[derive(Serialize)]
struct MziRow {
    phi: f64,
    p4: f64,
    p5: f64,
}

impl CsvRow for MziRow {
    const HEADER: &'static str = "phi,p4,p5";
    fn fields(&self) -> Vec<f64> {
        vec![self.phi, self.p4, self.p5]
    }
}

#[derive(Serialize)]
struct BracedRow {
    phi: f64,
    epsilon: f64,
    alpha: f64,
    p46: f64,
    p47: f64,
    p56: f64,
    p57: f64,
    k: f64,
    v: f64,
}

impl CsvRow for BracedRow {
    const HEADER: &'static str = "phi,epsilon,alpha,p46,p47,p56,p57,k,v";
    fn fields(&self) -> Vec<f64> {
        vec![
            self.phi, self.epsilon, self.alpha, self.p46, self.p47, self.p56, self.p57, self.k,
            self.v,
        ]
    }
}

#[derive(Serialize)]
struct SweepRow {
    phi: f64,
    epsilon: f64,
    epsilon_sq: f64,
    alpha: f64,
    p46: f64,
}

impl CsvRow for SweepRow {
    const HEADER: &'static str = "phi,epsilon,epsilon_sq,alpha,p46";
    fn fields(&self) -> Vec<f64> {
        vec![self.phi, self.epsilon, self.epsilon_sq, self.alpha, self.p46]
    }
}

fn write_output<R: CsvRow>(rows: &[R], output: &OutputArgs) -> anyhow::Result<()> {
    let body = match output.format {
        FormatArg::Csv => {
            let mut text = String::from(R::HEADER);
            text.push('\n');
            for row in rows {
                let line: Vec<String> = row.fields().into_iter().map(sig).collect();
                text.push_str(&line.join(","));
                text.push('\n');
            }
            text
        }
        FormatArg::Json => {
            let mut text = serde_json::to_string_pretty(rows)?;
            text.push('\n');
            text
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn run_mzi(args: &MziArgs) -> anyhow::Result<()> {
    let fed = StateVector64::basis(FockBasisState::new(vec![1, 0])?);
    let d4 = FockBasisState::new(vec![1, 0])?;
    let d5 = FockBasisState::new(vec![0, 1])?;
    let mut rows = Vec::new();
    for phi in args.phase.values() {
        let out = WheelerMzi64::balanced(phi).output(&fed)?;
        rows.push(MziRow {
            phi,
            p4: out.projection_probability(&d4)?,
            p5: out.projection_probability(&d5)?,
        });
    }
    write_output(&rows, &args.output)
}

fn coincidence_pattern(a: Detector, b: Detector) -> anyhow::Result<FockBasisState> {
    let mut occupations = vec![0u32; 4];
    occupations[a.position()] = 1;
    occupations[b.position()] = 1;
    Ok(FockBasisState::new(occupations)?)
}

fn run_braced(args: &BracedArgs) -> anyhow::Result<()> {
    let kind = InputKind::from(args.kind);
    let alpha = kind.effective_alpha(args.alpha);
    let p46 = coincidence_pattern(Detector::D4, Detector::D6)?;
    let p47 = coincidence_pattern(Detector::D4, Detector::D7)?;
    let p56 = coincidence_pattern(Detector::D5, Detector::D6)?;
    let p57 = coincidence_pattern(Detector::D5, Detector::D7)?;
    let mut rows = Vec::new();
    for phi in args.phase.values() {
        for epsilon in args.leak.values() {
            let braced = BracedMzi64::new(ExperimentParams64::new(phi, epsilon, alpha)?);
            let state = braced.output_state(kind)?;
            let metrics = duality(epsilon, alpha)?;
            rows.push(BracedRow {
                phi,
                epsilon,
                alpha,
                p46: state.projection_probability(&p46)?,
                p47: state.projection_probability(&p47)?,
                p56: state.projection_probability(&p56)?,
                p57: state.projection_probability(&p57)?,
                k: metrics.which_path,
                v: metrics.visibility,
            });
        }
    }
    write_output(&rows, &args.output)
}

fn run_sweep(args: &BracedArgs) -> anyhow::Result<()> {
    let phi_values = args.phase.values();
    let epsilon_values = args.leak.values();
    let grid = sweep_p46(
        &phi_values,
        &epsilon_values,
        args.alpha,
        InputKind::from(args.kind),
    )?;
    let mut rows = Vec::new();
    for (i, &phi) in phi_values.iter().enumerate() {
        for (j, &epsilon) in epsilon_values.iter().enumerate() {
            rows.push(SweepRow {
                phi,
                epsilon,
                epsilon_sq: epsilon * epsilon,
                alpha: grid.alpha(),
                p46: grid.probability(i, j),
            });
        }
    }
    write_output(&rows, &args.output)
}

fn run_verify() -> ExitCode {
    let results = verify::run_all();
    print!("{}", verify::render_table(&results));
    if results.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Mzi(args) => run_mzi(args),
        Command::Braced(args) => run_braced(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Verify => return run_verify(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
