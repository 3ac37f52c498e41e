//! JSON state files: the on-disk interchange format for bipartite states.
//!
//! A state file carries the local dimensions and exactly one of two payloads:
//!
//! * `"ensemble"`: a list of `{weight, coefficients}` members, each
//!   coefficient matrix an `m x n` array of `[re, im]` pairs;
//! * `"rho"`: a dense `(m*n) x (m*n)` density matrix of `[re, im]` pairs,
//!   which is eigendecomposed into an ensemble on load.
//!
//! Complex numbers are always two-element `[re, im]` arrays — no string
//! forms — so files are bit-exact and locale-free. Validation errors name
//! the JSON path of the offending element.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, RankPolicy};
use crate::states::{from_density, EnsembleState, PureState};

/// Accepted band for the sum of ensemble weights before normalization.
pub const WEIGHT_SUM_BAND: (f64, f64) = (0.999, 1.001);
/// Accepted deviation of a member's norm from 1 before renormalization.
pub const MEMBER_NORM_TOL: f64 = 1e-6;

/// One ensemble member as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberFile {
    pub weight: f64,
    /// `m x n` array of `[re, im]` pairs.
    pub coefficients: Vec<Vec<[f64; 2]>>,
}

/// On-disk description of a bipartite state.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub m: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<Vec<MemberFile>>,
    /// `(m*n) x (m*n)` array of `[re, im]` pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<[f64; 2]>>>,
}

fn parse_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

fn complex_entry(pair: [f64; 2], path: &str) -> Result<Complex64> {
    if !pair[0].is_finite() || !pair[1].is_finite() {
        return Err(parse_error(path, "entries must be finite"));
    }
    Ok(Complex64::new(pair[0], pair[1]))
}

/// Parse and validate a JSON state file into an ensemble.
///
/// Member vectors may deviate from unit norm by [`MEMBER_NORM_TOL`] and are
/// renormalized; weights must be positive and sum into [`WEIGHT_SUM_BAND`],
/// after which they are normalized to 1. Density-matrix payloads go through
/// the spectral decomposition with its Hermiticity/positivity/trace checks.
pub fn parse_state_file(text: &str, policy: &RankPolicy) -> Result<EnsembleState> {
    let file: StateFile = serde_json::from_str(text)
        .map_err(|e| parse_error("$", format!("not a valid state file: {e}")))?;
    ensemble_from_state_file(&file, policy)
}

/// Validate an already-deserialized [`StateFile`].
pub fn ensemble_from_state_file(file: &StateFile, policy: &RankPolicy) -> Result<EnsembleState> {
    let (m, n) = (file.m, file.n);
    if m == 0 {
        return Err(parse_error("$.m", "local dimension must be positive"));
    }
    if n == 0 {
        return Err(parse_error("$.n", "local dimension must be positive"));
    }
    match (&file.ensemble, &file.rho) {
        (Some(_), Some(_)) => Err(parse_error(
            "$",
            "exactly one of \"ensemble\" and \"rho\" must be present, found both",
        )),
        (None, None) => Err(parse_error(
            "$",
            "exactly one of \"ensemble\" and \"rho\" must be present, found neither",
        )),
        (Some(members), None) => ensemble_from_members(m, n, members, policy),
        (None, Some(rho)) => ensemble_from_rho(m, n, rho, policy),
    }
}

fn ensemble_from_members(
    m: usize,
    n: usize,
    members: &[MemberFile],
    policy: &RankPolicy,
) -> Result<EnsembleState> {
    if members.is_empty() {
        return Err(parse_error("$.ensemble", "ensemble must be nonempty"));
    }
    let mut weighted = Vec::with_capacity(members.len());
    let mut weight_sum = 0.0;
    for (i, member) in members.iter().enumerate() {
        let weight_path = format!("$.ensemble[{i}].weight");
        if !member.weight.is_finite() || member.weight <= 0.0 {
            return Err(parse_error(
                weight_path,
                format!("weight must be positive, got {}", member.weight),
            ));
        }
        weight_sum += member.weight;
        let coeff_path = format!("$.ensemble[{i}].coefficients");
        if member.coefficients.len() != m {
            return Err(parse_error(
                coeff_path,
                format!("expected {m} rows, got {}", member.coefficients.len()),
            ));
        }
        let mut amplitudes = CVector::zeros(m * n);
        for (row_idx, row) in member.coefficients.iter().enumerate() {
            let row_path = format!("{coeff_path}[{row_idx}]");
            if row.len() != n {
                return Err(parse_error(
                    row_path,
                    format!("expected {n} columns, got {}", row.len()),
                ));
            }
            for (col_idx, &pair) in row.iter().enumerate() {
                amplitudes[row_idx * n + col_idx] =
                    complex_entry(pair, &format!("{row_path}[{col_idx}]"))?;
            }
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > MEMBER_NORM_TOL {
            return Err(parse_error(
                coeff_path,
                format!("member must have unit norm within {MEMBER_NORM_TOL:e}, got {norm}"),
            ));
        }
        let state = PureState::normalized(m, n, amplitudes)
            .map_err(|e| parse_error(format!("$.ensemble[{i}]"), e.to_string()))?;
        weighted.push((member.weight, state));
    }
    if weight_sum < WEIGHT_SUM_BAND.0 || weight_sum > WEIGHT_SUM_BAND.1 {
        return Err(parse_error(
            "$.ensemble",
            format!(
                "weights must sum into [{}, {}], got {weight_sum}",
                WEIGHT_SUM_BAND.0, WEIGHT_SUM_BAND.1
            ),
        ));
    }
    EnsembleState::from_weighted(weighted, policy)
        .map_err(|e| parse_error("$.ensemble", e.to_string()))
}

fn ensemble_from_rho(
    m: usize,
    n: usize,
    rho: &[Vec<[f64; 2]>],
    policy: &RankPolicy,
) -> Result<EnsembleState> {
    let dim = m * n;
    if rho.len() != dim {
        return Err(parse_error(
            "$.rho",
            format!("expected {dim} rows (= m*n), got {}", rho.len()),
        ));
    }
    let mut matrix = CMatrix::zeros(dim, dim);
    for (i, row) in rho.iter().enumerate() {
        if row.len() != dim {
            return Err(parse_error(
                format!("$.rho[{i}]"),
                format!("expected {dim} columns, got {}", row.len()),
            ));
        }
        for (j, &pair) in row.iter().enumerate() {
            matrix[(i, j)] = complex_entry(pair, &format!("$.rho[{i}][{j}]"))?;
        }
    }
    from_density(&matrix, m, n, policy).map_err(|e| parse_error("$.rho", e.to_string()))
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Render an ensemble in the on-disk format.
pub fn state_file_from_ensemble(e: &EnsembleState) -> StateFile {
    let members = e
        .members()
        .iter()
        .map(|(weight, state)| {
            let coeff = state.coefficient_matrix();
            MemberFile {
                weight: *weight,
                coefficients: (0..e.m())
                    .map(|i| (0..e.n()).map(|j| pair(coeff[(i, j)])).collect())
                    .collect(),
            }
        })
        .collect();
    StateFile {
        m: e.m(),
        n: e.n(),
        ensemble: Some(members),
        rho: None,
    }
}

/// Render a density matrix in the on-disk format.
pub fn state_file_from_density(rho: &CMatrix, m: usize, n: usize) -> StateFile {
    StateFile {
        m,
        n,
        ensemble: None,
        rho: Some(
            (0..rho.nrows())
                .map(|i| (0..rho.ncols()).map(|j| pair(rho[(i, j)])).collect())
                .collect(),
        ),
    }
}

/// Pretty-printed JSON for a state file.
pub fn to_json(file: &StateFile) -> Result<String> {
    serde_json::to_string_pretty(file)
        .map_err(|e| Error::Internal(format!("state file serialization failed: {e}")))
}
