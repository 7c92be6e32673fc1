use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gausslip_core::report::render_report;
use gausslip_core::{run_suite, write_report, FractionalKind, ReportFormat, Representation, RunConfig, Suite};

/// Runs the verification suites of the Gaussian operator library and writes a
/// report. Exits with 0 iff no row failed.
#[derive(Debug, Parser)]
#[command(name = "gausslip", version)]
struct Args {
    /// eigen | kernel-bound | forward-diff | fractional | lipschitz | boundedness | all
    #[arg(long, default_value = "all")]
    suite: Suite,

    /// Catalog function (repeatable), e.g. cos:1, const:2.5, gauss-bump,
    /// erf-step:0.5, hermite:2,1, expansion:path.json
    #[arg(long = "f", value_name = "CATALOG-NAME")]
    functions: Vec<String>,

    #[arg(long)]
    alpha: Option<f64>,

    #[arg(long)]
    beta: Option<f64>,

    /// Fractional operator to tabulate in addition to the fixed checks
    #[arg(long)]
    kind: Option<FractionalKind>,

    /// spectral | integral
    #[arg(long)]
    representation: Option<Representation>,

    #[arg(long)]
    t_min: Option<f64>,

    #[arg(long)]
    t_max: Option<f64>,

    #[arg(long)]
    t_count: Option<usize>,

    #[arg(long)]
    x_radius: Option<f64>,

    #[arg(long)]
    x_count: Option<usize>,

    #[arg(long)]
    degree_cap: Option<usize>,

    /// Gauss-Hermite nodes for projections
    #[arg(long)]
    nodes: Option<usize>,

    #[arg(long)]
    tol: Option<f64>,

    /// json | csv
    #[arg(long, default_value = "json")]
    format: ReportFormat,

    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed for the randomised polynomial checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Args {
    fn config(&self) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            functions: if self.functions.is_empty() { d.functions.clone() } else { self.functions.clone() },
            alpha: self.alpha.unwrap_or(d.alpha),
            beta: self.beta.unwrap_or(d.beta),
            kind: self.kind,
            representation: self.representation,
            t_min: self.t_min.unwrap_or(d.t_min),
            t_max: self.t_max.unwrap_or(d.t_max),
            t_count: self.t_count.unwrap_or(d.t_count),
            x_radius: self.x_radius.unwrap_or(d.x_radius),
            x_count: self.x_count.unwrap_or(d.x_count),
            degree_cap: self.degree_cap.unwrap_or(d.degree_cap),
            nodes: self.nodes.unwrap_or(d.nodes),
            tol: self.tol.unwrap_or(d.tol),
            seed: self.seed,
            ..d
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = args.config();
    let report = match run_suite(args.suite, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &args.out {
        Some(path) => write_report(&report, args.format, path),
        None => render_report(&report, args.format).map(|text| print!("{text}")),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let s = report.summary;
    eprintln!(
        "{}: {} rows, {} passed, {} failed, {} flagged",
        report.suite, s.total, s.passed, s.failed, s.flagged
    );
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
