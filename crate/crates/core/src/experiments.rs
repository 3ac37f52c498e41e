//! Desk-scale experiments over random states, the product-spanned subspace
//! construction, and tabular export of trial records.
//!
//! [`run_generic_experiment`] quantifies, at small dimensions, the claim that
//! random rank-`r` states carry certifiable Schmidt numbers: it draws
//! independent random states, runs the full bound analysis on each, and
//! reports the fraction of trials reaching a target bound. Every trial derives
//! its own seed from the master seed, so summaries are reproducible and
//! independent of execution order.
//!
//! [`product_spanned_subspace`] builds the classical counterpoint: a
//! 3-dimensional subspace of the 2x2 system spanned entirely by product
//! vectors (the orthogonal complement of one generic vector), demonstrating
//! why range-based certification must fail generically at high rank.

use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{analyze, Route};
use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, substream, CMatrix, RankPolicy};
use crate::locus::ProbeConfig;
use crate::states::{random_rank_r_state, PureState};

/// Outcome of one experiment trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    /// Derived seed: reproduces both the trial's state and its probing.
    pub seed: u64,
    pub certified_bound: usize,
    /// Levels probed by the probabilistic ladder, in order.
    pub probed_t: Vec<usize>,
    /// Smallest pencil rank observed while probing each level, aligned with
    /// `probed_t`.
    pub min_rank_found: Vec<usize>,
    pub elapsed_ms: f64,
}

/// Aggregate of an experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub m: usize,
    pub r: usize,
    pub trials: usize,
    pub target_bound: usize,
    pub master_seed: u64,
    pub records: Vec<TrialRecord>,
    /// Fraction of trials with `certified_bound >= target_bound`.
    pub success_fraction: f64,
}

impl ExperimentSummary {
    /// Equality of everything reproducible, ignoring wall-clock noise.
    pub fn same_results(&self, other: &Self) -> bool {
        self.m == other.m
            && self.r == other.r
            && self.trials == other.trials
            && self.target_bound == other.target_bound
            && self.master_seed == other.master_seed
            && self.success_fraction == other.success_fraction
            && self.records.len() == other.records.len()
            && self
                .records
                .iter()
                .zip(&other.records)
                .all(|(a, b)| {
                    a.trial_index == b.trial_index
                        && a.seed == b.seed
                        && a.certified_bound == b.certified_bound
                        && a.probed_t == b.probed_t
                        && a.min_rank_found == b.min_rank_found
                })
    }
}

/// Seed for trial `index`, mixed out of the master seed so trials are
/// independent and order-insensitive.
fn trial_seed(master: u64, index: usize) -> u64 {
    use rand::Rng;
    substream(master, index as u64).random()
}

/// Draw `trials` random rank-`r` states on `C^m (x) C^m`, analyze each, and
/// aggregate. `cfg` supplies the probing budget; its seed field is replaced
/// by each trial's derived seed.
pub fn run_generic_experiment(
    m: usize,
    r: usize,
    trials: usize,
    target_bound: usize,
    cfg: &ProbeConfig,
    seed: u64,
) -> Result<ExperimentSummary> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("need m >= 2, got {m}")));
    }
    if r == 0 || r > 2 * m - 3 {
        return Err(Error::InvalidInput(format!(
            "rank must satisfy 1 <= r <= 2m - 3 = {}, got {r}",
            2 * m - 3
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    if target_bound == 0 {
        return Err(Error::InvalidInput("target bound must be positive".into()));
    }
    cfg.validate()?;
    let policy = RankPolicy::default();
    let mut records = Vec::with_capacity(trials);
    let mut successes = 0usize;
    for trial_index in 0..trials {
        let derived = trial_seed(seed, trial_index);
        let start = Instant::now();
        let state = random_rank_r_state(m, m, r, derived, &policy)?;
        let trial_cfg = ProbeConfig {
            seed: derived,
            ..*cfg
        };
        let report = analyze(&state, &trial_cfg, &policy)?;
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut probed_t = Vec::new();
        let mut min_rank_found = Vec::new();
        for entry in report.chain.iter().filter(|c| c.route == Route::Probed) {
            probed_t.push(entry.t);
            min_rank_found.push(entry.min_rank_seen.unwrap_or(entry.k + 1));
        }
        if report.certified_bound >= target_bound {
            successes += 1;
        }
        records.push(TrialRecord {
            trial_index,
            seed: derived,
            certified_bound: report.certified_bound,
            probed_t,
            min_rank_found,
            elapsed_ms,
        });
    }
    Ok(ExperimentSummary {
        m,
        r,
        trials,
        target_bound,
        master_seed: seed,
        records,
        success_fraction: successes as f64 / trials as f64,
    })
}

fn join_semicolon(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn split_semicolon(cell: &str) -> Result<Vec<usize>> {
    if cell.is_empty() {
        return Ok(Vec::new());
    }
    cell.split(';')
        .map(|part| {
            part.parse::<usize>()
                .map_err(|e| Error::InvalidInput(format!("bad list cell {cell:?}: {e}")))
        })
        .collect()
}

/// Render the per-trial records as CSV. List-valued columns are
/// semicolon-joined inside one cell; an empty record list yields just the
/// header row.
pub fn export_summary_csv(summary: &ExperimentSummary) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "trial_index",
            "seed",
            "certified_bound",
            "probed_t",
            "min_rank_found",
            "elapsed_ms",
        ])
        .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    for record in &summary.records {
        writer
            .write_record([
                record.trial_index.to_string(),
                record.seed.to_string(),
                record.certified_bound.to_string(),
                join_semicolon(&record.probed_t),
                join_semicolon(&record.min_rank_found),
                format!("{}", record.elapsed_ms),
            ])
            .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv not utf-8: {e}")))
}

/// Parse records written by [`export_summary_csv`].
pub fn import_records_csv(text: &str) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::InvalidInput(format!("bad csv row: {e}")))?;
        if row.len() != 6 {
            return Err(Error::InvalidInput(format!(
                "expected 6 csv columns, got {}",
                row.len()
            )));
        }
        let field = |i: usize| row.get(i).unwrap_or_default();
        let parse_err =
            |name: &str, e: &dyn std::fmt::Display| Error::InvalidInput(format!("bad {name}: {e}"));
        records.push(TrialRecord {
            trial_index: field(0)
                .parse()
                .map_err(|e| parse_err("trial_index", &e))?,
            seed: field(1).parse().map_err(|e| parse_err("seed", &e))?,
            certified_bound: field(2)
                .parse()
                .map_err(|e| parse_err("certified_bound", &e))?,
            probed_t: split_semicolon(field(3))?,
            min_rank_found: split_semicolon(field(4))?,
            elapsed_ms: field(5).parse().map_err(|e| parse_err("elapsed_ms", &e))?,
        });
    }
    Ok(records)
}

/// Serialize the full summary as JSON.
pub fn export_summary_json(summary: &ExperimentSummary) -> Result<String> {
    serde_json::to_string_pretty(summary)
        .map_err(|e| Error::Internal(format!("json export failed: {e}")))
}

/// Parse a summary written by [`export_summary_json`].
pub fn import_summary_json(text: &str) -> Result<ExperimentSummary> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad summary json: {e}")))
}

/// Diagnostics for the product-spanned subspace construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubspaceChecks {
    /// Schmidt rank of each spanning vector (all 1 for a valid construction).
    pub schmidt_ranks: [usize; 3],
    /// |det| of each 2x2 coefficient matrix (0 up to roundoff).
    pub determinant_magnitudes: [f64; 3],
    /// Dimension of the span of the three vectors (3 when independent).
    pub span_rank: usize,
    /// |sum_i n_i v_i| / |n| against the defining normal vector.
    pub orthogonality_residuals: [f64; 3],
}

impl SubspaceChecks {
    pub fn all_pass(&self) -> bool {
        self.schmidt_ranks == [1, 1, 1]
            && self.determinant_magnitudes.iter().all(|&d| d < 1e-12)
            && self.span_rank == 3
            && self.orthogonality_residuals.iter().all(|&r| r < 1e-10)
    }
}

/// Span the orthogonal complement of `a|11> + b|12> + c|21> + d|22>` in the
/// 2x2 system by three product vectors:
///
/// * `v1 = -c|11> + a|21>`
/// * `v2 = -d|12> + b|22>`
/// * `v3 = -(c+d)|11> - (c+d)|12> + (a+b)|21> + (a+b)|22>`
///
/// Orthogonality is the bilinear pairing `sum_i n_i v_i` (no conjugation),
/// which each vector satisfies identically. Requires `d != 0` and
/// `ad != bc` (each within 1e-12); those two conditions also rule out every
/// degenerate corner where a vector would vanish or the span would collapse.
/// Vectors are returned normalized, with the construction checks evaluated on
/// the normalized states.
pub fn product_spanned_subspace(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<(PureState, PureState, PureState, SubspaceChecks)> {
    for (name, z) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite {
                location: format!("parameter {name}"),
            });
        }
    }
    if d.norm() <= 1e-12 {
        return Err(Error::InvalidInput(
            "degenerate parameters: d = 0 (the construction divides the complement by d)".into(),
        ));
    }
    if (a * d - b * c).norm() <= 1e-12 {
        return Err(Error::InvalidInput(
            "degenerate parameters: ad = bc (the normal vector is itself a product vector)".into(),
        ));
    }
    let zero = Complex64::new(0.0, 0.0);
    let policy = RankPolicy::default();
    let build = |flat: [Complex64; 4]| -> Result<PureState> {
        PureState::normalized(2, 2, crate::linalg::CVector::from_row_slice(&flat))
    };
    let v1 = build([-c, zero, a, zero])?;
    let v2 = build([zero, -d, zero, b])?;
    let v3 = build([-(c + d), -(c + d), a + b, a + b])?;

    let normal = [a, b, c, d];
    let normal_norm = normal.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let residual = |v: &PureState| -> f64 {
        let amps = v.amplitudes();
        let pairing: Complex64 = (0..4).map(|i| normal[i] * amps[i]).sum();
        pairing.norm() / normal_norm
    };
    let det = |v: &PureState| -> f64 {
        let amp = v.amplitudes();
        (amp[0] * amp[3] - amp[1] * amp[2]).norm()
    };
    let span = CMatrix::from_fn(4, 3, |i, l| {
        [&v1, &v2, &v3][l].amplitudes()[i]
    });
    let checks = SubspaceChecks {
        schmidt_ranks: [
            v1.schmidt(&policy).rank,
            v2.schmidt(&policy).rank,
            v3.schmidt(&policy).rank,
        ],
        determinant_magnitudes: [det(&v1), det(&v2), det(&v3)],
        span_rank: numerical_rank(&span, &policy),
        orthogonality_residuals: [residual(&v1), residual(&v2), residual(&v3)],
    };
    Ok((v1, v2, v3, checks))
}
