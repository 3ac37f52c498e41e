//! Command-line front end: analyze state files, query generic bound tables,
//! compute Schmidt ranks, run experiments, and build the product-spanned
//! subspace.
//!
//! Exit codes: 0 on success, 2 on invalid input, 1 on internal failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use schmidt_locus::bounds::{
    self, analyze_levels, generic_case_bounds, optimal_generic_bound, BoundReport, Route,
};
use schmidt_locus::experiments::{
    export_summary_csv, export_summary_json, product_spanned_subspace, run_generic_experiment,
    ExperimentSummary, SubspaceChecks,
};
use schmidt_locus::locus::ProbeConfig;
use schmidt_locus::statefile::parse_state_file;
use schmidt_locus::states::PureState;
use schmidt_locus::{Error, RankPolicy};

#[derive(Parser)]
#[command(
    name = "schmidt-locus",
    version,
    about = "Schmidt-number certification for bipartite mixed states via rank degeneracy loci"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a Schmidt-number lower bound for the state in FILE.
    Analyze {
        /// JSON state file (ensemble or density-matrix form).
        file: PathBuf,
        /// Probe only this level t of the ladder (the exact t=m entry always runs).
        #[arg(long)]
        t: Option<usize>,
        /// Random directions sampled per emptiness test.
        #[arg(long)]
        samples: Option<usize>,
        /// Descent restarts per emptiness test.
        #[arg(long)]
        restarts: Option<usize>,
        /// Master seed for all probing.
        #[arg(long)]
        seed: Option<u64>,
        /// Emit the full report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the generic Schmidt-number predictions for dimensions (m, r).
    Generic {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Schmidt rank of the pure state in FILE (single-member ensemble or rank-1 density matrix).
    Schmidt {
        /// JSON state file describing a pure state.
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Analyze many random rank-r states on C^m (x) C^m and report how often a target bound is certified.
    Experiment {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        trials: usize,
        /// Success means certifying at least this Schmidt-number bound.
        #[arg(long, default_value_t = 2)]
        target: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-trial records here; the extension picks the format (.csv or .json).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the full summary as JSON on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Span the complement of a|11>+b|12>+c|21>+d|22> by three product vectors.
    Example3 {
        /// Complex parameter, written as RE or RE,IM.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (e.g. piped into `head`), like
    // other Unix tools; Rust's default of ignoring SIGPIPE would turn the
    // resulting write error into a panic.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Internal(_) => ExitCode::FAILURE,
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Analyze {
            file,
            t,
            samples,
            restarts,
            seed,
            json,
        } => {
            let state = load_state(&file)?;
            let mut cfg = ProbeConfig::default();
            if let Some(samples) = samples {
                cfg.samples = samples;
            }
            if let Some(restarts) = restarts {
                cfg.restarts = restarts;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let report = analyze_levels(&state, &cfg, &RankPolicy::default(), t)?;
            if json {
                println!("{}", to_json(&report)?);
            } else {
                print_report(&report);
            }
            Ok(())
        }
        Command::Generic { m, r, json } => {
            let report = GenericReport {
                m,
                r,
                optimal: optimal_generic_bound(m, r)?,
                cases: generic_case_bounds(m, r)?,
            };
            if json {
                println!("{}", to_json(&report)?);
            } else {
                print_generic(&report);
            }
            Ok(())
        }
        Command::Schmidt { file, json } => {
            let state = load_state(&file)?;
            if state.members().len() != 1 {
                return Err(Error::InvalidInput(format!(
                    "schmidt expects a pure state (single-member ensemble or rank-1 \
                     density matrix); this state has rank {}",
                    state.rank()
                )));
            }
            let pure = &state.members()[0].1;
            let info = pure.schmidt(&RankPolicy::default());
            if json {
                let report = SchmidtReport {
                    m: pure.m(),
                    n: pure.n(),
                    rank: info.rank,
                    singular_values: info.singular_values.clone(),
                };
                println!("{}", to_json(&report)?);
            } else {
                println!("Schmidt rank: {}", info.rank);
                let values: Vec<String> = info
                    .singular_values
                    .iter()
                    .map(|v| format!("{v:.6}"))
                    .collect();
                println!("singular values: [{}]", values.join(", "));
            }
            Ok(())
        }
        Command::Experiment {
            m,
            r,
            trials,
            target,
            seed,
            out,
            json,
        } => {
            let summary =
                run_generic_experiment(m, r, trials, target, &ProbeConfig::default(), seed)?;
            if let Some(path) = &out {
                write_summary(&summary, path)?;
            }
            if json {
                println!("{}", export_summary_json(&summary)?);
            } else {
                print_experiment(&summary, out.as_deref());
            }
            Ok(())
        }
        Command::Example3 { a, b, c, d, json } => {
            let a = parse_complex("a", &a)?;
            let b = parse_complex("b", &b)?;
            let c = parse_complex("c", &c)?;
            let d = parse_complex("d", &d)?;
            let (v1, v2, v3, checks) = product_spanned_subspace(a, b, c, d)?;
            if json {
                let report = SubspaceReport {
                    vectors: [&v1, &v2, &v3].map(coefficient_rows),
                    checks,
                    all_pass: checks.all_pass(),
                };
                println!("{}", to_json(&report)?);
            } else {
                print_subspace(&v1, &v2, &v3, &checks);
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct GenericReport {
    m: usize,
    r: usize,
    optimal: bounds::GenericBound,
    cases: Vec<bounds::CaseBound>,
}

#[derive(Serialize)]
struct SchmidtReport {
    m: usize,
    n: usize,
    rank: usize,
    singular_values: Vec<f64>,
}

#[derive(Serialize)]
struct SubspaceReport {
    /// Three 2x2 coefficient matrices as [re, im] pairs.
    vectors: [Vec<Vec<[f64; 2]>>; 3],
    checks: SubspaceChecks,
    all_pass: bool,
}

fn load_state(path: &Path) -> Result<schmidt_locus::EnsembleState, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_state_file(&text, &RankPolicy::default()).map_err(|e| match e {
        // prefix the file name so the JSON path has a carrier
        Error::Parse { path: json_path, message } => Error::Parse {
            path: format!("{}: {json_path}", path.display()),
            message,
        },
        other => other,
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(format!("json output: {e}")))
}

fn parse_complex(name: &str, text: &str) -> Result<Complex64, Error> {
    let mut parts = text.splitn(2, ',');
    let re = parts.next().unwrap_or_default().trim();
    let im = parts.next().map(str::trim);
    let parse = |what: &str, s: &str| -> Result<f64, Error> {
        s.parse::<f64>().map_err(|_| {
            Error::InvalidInput(format!(
                "parameter --{name}: cannot parse {what} part of {text:?} (expected RE or RE,IM)"
            ))
        })
    };
    Ok(Complex64::new(
        parse("real", re)?,
        im.map(|s| parse("imaginary", s)).transpose()?.unwrap_or(0.0),
    ))
}

fn coefficient_rows(v: &PureState) -> Vec<Vec<[f64; 2]>> {
    let coeff = v.coefficient_matrix();
    (0..v.m())
        .map(|i| (0..v.n()).map(|j| [coeff[(i, j)].re, coeff[(i, j)].im]).collect())
        .collect()
}

fn print_report(report: &BoundReport) {
    println!(
        "state: m={} n={} rank={}",
        report.m, report.n, report.r
    );
    println!("certified bound: {}", report.certified_bound);
    println!("  exact-route bound: {}", report.exact_bound);
    match report.t_star {
        Some(t) => println!(
            "generic prediction for these dimensions: {} (t* = {t})",
            report.generic_bound
        ),
        None => println!(
            "generic prediction for these dimensions: {}",
            report.generic_bound
        ),
    }
    println!("chain:");
    for entry in &report.chain {
        let route = match entry.route {
            Route::Exact => "exact ",
            Route::Probed => "probed",
        };
        let bound = match entry.bound {
            Some(b) => format!("bound {b}"),
            None => "no contribution".to_string(),
        };
        println!(
            "  t={} k={} {route} {:?} evidence {:.3e}  {bound}",
            entry.t, entry.k, entry.verdict, entry.evidence
        );
    }
}

fn print_generic(report: &GenericReport) {
    println!("m={} r={}", report.m, report.r);
    match report.optimal.t_star {
        Some(t) => println!("optimal scan: t* = {t}, bound {}", report.optimal.bound),
        None => println!("optimal scan: no qualifying level, bound 1"),
    }
    println!("case table:");
    for case in &report.cases {
        match case.bound {
            Some(b) => println!("  case {}: applicable, bound {b}", case.case),
            None => println!("  case {}: not applicable", case.case),
        }
    }
}

fn print_experiment(summary: &ExperimentSummary, out: Option<&Path>) {
    println!(
        "experiment: m={} r={} trials={} target bound {}",
        summary.m, summary.r, summary.trials, summary.target_bound
    );
    let successes = summary
        .records
        .iter()
        .filter(|rec| rec.certified_bound >= summary.target_bound)
        .count();
    println!(
        "success fraction: {:.4} ({successes}/{} trials reached the target)",
        summary.success_fraction, summary.trials
    );
    if let Some(path) = out {
        println!("records written to {}", path.display());
    }
}

fn print_subspace(v1: &PureState, v2: &PureState, v3: &PureState, checks: &SubspaceChecks) {
    for (name, v) in [("v1", v1), ("v2", v2), ("v3", v3)] {
        let amps = v.amplitudes();
        let terms: Vec<String> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let z = amps[i * 2 + j];
                if z.norm() < 1e-14 {
                    None
                } else {
                    Some(format!("({:+.4}{:+.4}i)|{}{}>", z.re, z.im, i + 1, j + 1))
                }
            })
            .collect();
        println!("{name} = {}", terms.join(" + "));
    }
    println!(
        "checks: schmidt ranks {:?}, span rank {}, orthogonality residuals {:?}",
        checks.schmidt_ranks, checks.span_rank, checks.orthogonality_residuals
    );
    println!(
        "all checks passed: {}",
        if checks.all_pass() { "yes" } else { "no" }
    );
}

fn write_summary(summary: &ExperimentSummary, path: &Path) -> Result<(), Error> {
    let rendered = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => export_summary_csv(summary)?,
        Some("json") => export_summary_json(summary)?,
        other => {
            return Err(Error::InvalidInput(format!(
                "output extension must be .csv or .json, got {:?}",
                other.unwrap_or("none")
            )))
        }
    };
    std::fs::write(path, rendered).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
