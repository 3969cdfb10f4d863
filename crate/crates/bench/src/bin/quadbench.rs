//! `quadbench`: convergence tables for the boundary-reduced quadrature.
//!
//! Exit codes: 0 success, 1 bad arguments or I/O, 2 solver failure,
//! 3 golden tolerance regression (with `--check`).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use quadbench::output::{write_csv, write_markdown};
use quadbench::{run_experiment, BenchError, Experiment, ExperimentSpec, Manifest};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "quadbench", version, about = "Convergence tables for boundary-reduced quadrature")]
struct Args {
    /// area, square-basis, square-bubble, pacman or puzzle
    #[arg(long)]
    experiment: Experiment,
    /// Quadrature points per edge, increasing
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32,64")]
    n: Vec<usize>,
    /// Grading exponent of the Kress map
    #[arg(long, default_value_t = 7)]
    sigma: u32,
    /// Cell description replacing the built-in cells (area only)
    #[arg(long)]
    cell_file: Option<PathBuf>,
    /// Relative GMRES residual target
    #[arg(long, default_value_t = 1e-13)]
    gmres_tol: f64,
    /// GMRES iteration limit per solve
    #[arg(long, default_value_t = 300)]
    gmres_max_iter: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare against the golden tolerance manifest
    #[arg(long)]
    check: bool,
    /// Manifest used by --check instead of the built-in one
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Write zero in the runtime column so reruns are byte-identical
    #[arg(long)]
    no_timing: bool,
}

fn run(args: Args) -> Result<ExitCode, BenchError> {
    let spec = ExperimentSpec {
        experiment: args.experiment,
        n_values: args.n,
        sigma: args.sigma,
        gmres_tol: args.gmres_tol,
        gmres_max_iter: args.gmres_max_iter,
        cell_file: args.cell_file,
    };
    let out = run_experiment(&spec)?;

    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match args.format {
        Format::Csv => write_csv(sink, &out.rows, !args.no_timing)?,
        Format::Md => {
            let mut sink = sink;
            write_markdown(&mut sink, &out.rows)?;
            sink.flush()?;
        }
    }

    for h in &out.health {
        eprintln!(
            "{} n={}: {} solves, max {} iterations, max residual {:.2e}",
            h.cell, h.n, h.solves, h.max_iterations, h.max_residual
        );
    }
    let mut failed = false;
    for r in out.failures() {
        failed = true;
        eprintln!("solver failure: {} {} {} n={}: {}", r.cell, r.pair, r.product.name(), r.n, r.failure.as_deref().unwrap_or(""));
    }
    if failed {
        return Ok(ExitCode::from(2));
    }
    if args.check {
        let manifest = match &args.golden {
            Some(path) => Manifest::load(path)?,
            None => Manifest::builtin(),
        };
        let violations = manifest.verify(spec.experiment, &out);
        for v in &violations {
            eprintln!("regression: {v}");
        }
        if !violations.is_empty() {
            return Ok(ExitCode::from(3));
        }
        eprintln!("golden check passed ({} checks)", manifest.for_experiment(spec.experiment).count());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("quadbench: {e}");
            ExitCode::from(1)
        }
    }
}
