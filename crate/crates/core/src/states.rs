//! Pure states, ensembles, and their coefficient-matrix views.
//!
//! A pure state on `C^m ⊗ C^n` is stored as a flat amplitude vector over the
//! product basis `|ij>` with flat index `i*n + j` (both indices 0-based). The
//! `m×n` coefficient matrix view has entry `(i, j)` equal to that amplitude;
//! its singular values are the Schmidt coefficients. The block construction in
//! [`crate::locus`] depends on this layout, so it is fixed, not configurable.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    self, hermitian_eig, numerical_rank, sample_unit_vector, substream, CMatrix, CVector,
    RankPolicy,
};

/// Tolerance for the norm of a pure state's amplitude vector.
pub const UNIT_NORM_TOL: f64 = 1e-9;
/// Tolerance for ensemble weights summing to 1.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;
/// Tolerance for the trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-9;
/// A density matrix may not have an eigenvalue below `-PSD_TOL`.
pub const PSD_TOL: f64 = 1e-10;
/// Required fidelity of the eigen-ensemble reconstruction of a density matrix.
pub const DENSITY_RECONSTRUCT_TOL: f64 = 1e-8;

/// Unit vector in `C^m ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    m: usize,
    n: usize,
    amplitudes: CVector,
}

/// Schmidt data of a pure state: the rank and the descending singular values
/// of its coefficient matrix.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SchmidtInfo {
    pub rank: usize,
    pub singular_values: Vec<f64>,
}

impl PureState {
    /// Build from a flat amplitude vector of length `m*n`, which must be unit
    /// norm within [`UNIT_NORM_TOL`].
    pub fn new(m: usize, n: usize, amplitudes: CVector) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!(
                "state dimensions must be positive, got {m}x{n}"
            )));
        }
        if amplitudes.len() != m * n {
            return Err(Error::ShapeMismatch {
                expected: format!("{} amplitudes for a {m}x{n} state", m * n),
                got: format!("{}", amplitudes.len()),
            });
        }
        for (idx, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    location: format!("amplitudes[{idx}]"),
                });
            }
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "amplitude vector must be unit norm, got {norm}"
            )));
        }
        Ok(PureState { m, n, amplitudes })
    }

    /// Build from an `m×n` coefficient matrix.
    pub fn from_coefficients(coefficients: &CMatrix) -> Result<Self> {
        let (m, n) = (coefficients.nrows(), coefficients.ncols());
        let amplitudes = CVector::from_fn(m * n, |idx, _| coefficients[(idx / n, idx % n)]);
        PureState::new(m, n, amplitudes)
    }

    /// Normalize an arbitrary nonzero vector into a state.
    pub fn normalized(m: usize, n: usize, vector: CVector) -> Result<Self> {
        let norm = vector.norm();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(Error::InvalidInput(
                "cannot normalize a (near-)zero vector into a state".into(),
            ));
        }
        PureState::new(m, n, vector.unscale(norm))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Amplitude of `|ij>` (0-based), i.e. flat entry `i*n + j`.
    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.m && j < self.n, "index out of range");
        self.amplitudes[i * self.n + j]
    }

    /// The `m×n` matrix with entry `(i, j)` equal to the amplitude of `|ij>`.
    pub fn coefficient_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.m, self.n, |i, j| self.amplitudes[i * self.n + j])
    }

    /// Schmidt rank and coefficients under `policy`.
    pub fn schmidt(&self, policy: &RankPolicy) -> SchmidtInfo {
        let a = self.coefficient_matrix();
        let singular_values = linalg::singular_values(&a);
        let rank = linalg::rank_from_singular_values(&singular_values, self.m, self.n, policy);
        SchmidtInfo {
            rank,
            singular_values,
        }
    }
}

/// Finite ensemble of pure states with positive weights summing to 1.
#[derive(Debug, Clone)]
pub struct EnsembleState {
    m: usize,
    n: usize,
    members: Vec<(f64, PureState)>,
    rank: usize,
}

impl EnsembleState {
    /// Strict constructor: weights must already sum to 1 within [`WEIGHT_SUM_TOL`].
    pub fn new(members: Vec<(f64, PureState)>, policy: &RankPolicy) -> Result<Self> {
        let sum = Self::check_members(&members)?;
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidInput(format!(
                "ensemble weights must sum to 1, got {sum}"
            )));
        }
        Ok(Self::build(members, policy))
    }

    /// Constructor for convex data given up to overall scale: any positive
    /// weights are accepted and normalized to sum exactly 1.
    pub fn from_weighted(members: Vec<(f64, PureState)>, policy: &RankPolicy) -> Result<Self> {
        let sum = Self::check_members(&members)?;
        let members = members
            .into_iter()
            .map(|(w, v)| (w / sum, v))
            .collect::<Vec<_>>();
        Ok(Self::build(members, policy))
    }

    fn check_members(members: &[(f64, PureState)]) -> Result<f64> {
        let Some((_, first)) = members.first() else {
            return Err(Error::InvalidInput("ensemble must have at least one member".into()));
        };
        let (m, n) = (first.m(), first.n());
        let mut sum = 0.0;
        for (idx, (w, v)) in members.iter().enumerate() {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "ensemble weight {idx} must be positive and finite, got {w}"
                )));
            }
            if v.m() != m || v.n() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{m}x{n} members"),
                    got: format!("{}x{} at member {idx}", v.m(), v.n()),
                });
            }
            sum += w;
        }
        Ok(sum)
    }

    fn build(members: Vec<(f64, PureState)>, policy: &RankPolicy) -> Self {
        let (m, n) = (members[0].1.m(), members[0].1.n());
        let stack = CMatrix::from_fn(m * n, members.len(), |r, c| members[c].1.amplitudes()[r]);
        let rank = numerical_rank(&stack, policy);
        EnsembleState {
            m,
            n,
            members,
            rank,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the span of the member amplitude vectors; equals the rank
    /// of the density matrix.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    /// The `(m*n) x (m*n)` density matrix `sum_l p_l v_l v_l^H`.
    pub fn density_matrix(&self) -> CMatrix {
        let d = self.m * self.n;
        let mut rho = CMatrix::zeros(d, d);
        for (w, v) in &self.members {
            let a = v.amplitudes();
            for r in 0..d {
                for c in 0..d {
                    rho[(r, c)] += a[r] * a[c].conj() * Complex64::new(*w, 0.0);
                }
            }
        }
        rho
    }

    /// A maximal linearly independent sublist of the members, greedy in member
    /// order. Its size equals `self.rank()`.
    pub fn range_basis(&self, policy: &RankPolicy) -> Vec<PureState> {
        let vectors: Vec<CVector> = self
            .members
            .iter()
            .map(|(_, v)| v.amplitudes().clone())
            .collect();
        let kept = column_space_basis_infallible(&vectors, policy);
        kept.into_iter()
            .map(|i| self.members[i].1.clone())
            .collect()
    }

    /// Transform every member by `ua ⊗ ub` (coefficient matrices map to
    /// `ua * A * ub^T`). Weights are unchanged.
    pub fn apply_local_unitary(&self, ua: &CMatrix, ub: &CMatrix) -> Result<Self> {
        if ua.nrows() != self.m || ua.ncols() != self.m {
            return Err(Error::ShapeMismatch {
                expected: format!("{0}x{0} left unitary", self.m),
                got: format!("{}x{}", ua.nrows(), ua.ncols()),
            });
        }
        if ub.nrows() != self.n || ub.ncols() != self.n {
            return Err(Error::ShapeMismatch {
                expected: format!("{0}x{0} right unitary", self.n),
                got: format!("{}x{}", ub.nrows(), ub.ncols()),
            });
        }
        let members = self
            .members
            .iter()
            .map(|(w, v)| {
                let a = ua * v.coefficient_matrix() * ub.transpose();
                PureState::from_coefficients(&a).map(|s| (*w, s))
            })
            .collect::<Result<Vec<_>>>()?;
        EnsembleState::new(members, &RankPolicy::default())
    }
}

fn column_space_basis_infallible(vectors: &[CVector], policy: &RankPolicy) -> Vec<usize> {
    // members of one ensemble share a dimension, so the only error path is dead
    linalg::column_space_basis(vectors, policy).expect("ensemble members share a dimension")
}

/// Reconstruct an ensemble from a density matrix via its spectral decomposition.
///
/// `rho` must be `(m*n) x (m*n)`, Hermitian within [`linalg::HERMITIAN_TOL`],
/// positive semidefinite within [`PSD_TOL`], and unit trace within [`TRACE_TOL`].
/// Eigenvalues below `policy.relative_threshold` times the largest are dropped;
/// the surviving eigenpairs become the ensemble, which reconstructs `rho`
/// within [`DENSITY_RECONSTRUCT_TOL`].
pub fn from_density(rho: &CMatrix, m: usize, n: usize, policy: &RankPolicy) -> Result<EnsembleState> {
    policy.validate()?;
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!(
            "state dimensions must be positive, got {m}x{n}"
        )));
    }
    let d = m * n;
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::ShapeMismatch {
            expected: format!("{d}x{d} density matrix for a {m}x{n} system"),
            got: format!("{}x{}", rho.nrows(), rho.ncols()),
        });
    }
    let eig = hermitian_eig(rho)?;
    let min_eigenvalue = *eig
        .eigenvalues
        .last()
        .expect("square matrix has eigenvalues");
    if min_eigenvalue < -PSD_TOL {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    let trace: f64 = eig.eigenvalues.iter().sum();
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    let lambda_max = eig.eigenvalues[0];
    let cutoff = policy.relative_threshold * lambda_max;
    let mut members = Vec::new();
    for (idx, &w) in eig.eigenvalues.iter().enumerate() {
        if w > cutoff {
            let v = PureState::normalized(m, n, eig.eigenvectors.column(idx).into_owned())?;
            members.push((w, v));
        }
    }
    if members.is_empty() {
        return Err(Error::InvalidInput(
            "density matrix has no eigenvalue above the cutoff".into(),
        ));
    }
    let ensemble = EnsembleState::from_weighted(members, policy)?;
    let rebuilt = ensemble.density_matrix();
    let err = linalg::max_abs_entry(&(rebuilt - rho));
    if err > DENSITY_RECONSTRUCT_TOL {
        return Err(Error::Internal(format!(
            "eigen-ensemble reconstruction error {err:.3e} exceeds {DENSITY_RECONSTRUCT_TOL:.1e}"
        )));
    }
    Ok(ensemble)
}

/// Random ensemble of `r` independent Haar-uniform members with uniform-simplex
/// weights. Deterministic in `seed`; members and weights use substreams, so the
/// result does not depend on evaluation order.
///
/// The sampled ensemble is rejected and resampled (at most 3 retries, shifted
/// substreams) in the measure-zero event that its rank falls below `r`.
pub fn random_rank_r_state(
    m: usize,
    n: usize,
    r: usize,
    seed: u64,
    policy: &RankPolicy,
) -> Result<EnsembleState> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!(
            "state dimensions must be positive, got {m}x{n}"
        )));
    }
    if r == 0 || r > m * n {
        return Err(Error::InvalidInput(format!(
            "rank must satisfy 1 <= r <= m*n = {}, got {r}",
            m * n
        )));
    }
    for attempt in 0..4u64 {
        let offset = attempt * (r as u64 + 1);
        let members: Vec<(f64, PureState)> = (0..r)
            .map(|l| {
                let v = sample_unit_vector(m * n, &mut substream(seed, offset + l as u64));
                PureState::new(m, n, v).map(|s| (1.0, s))
            })
            .collect::<Result<_>>()?;
        let mut wrng = substream(seed, offset + r as u64);
        let weights: Vec<f64> = (0..r)
            .map(|_| {
                let u: f64 = wrng.sample(rand_distr::Exp1);
                u.max(f64::MIN_POSITIVE)
            })
            .collect();
        let members: Vec<(f64, PureState)> = members
            .into_iter()
            .zip(&weights)
            .map(|((_, v), &w)| (w, v))
            .collect();
        let ensemble = EnsembleState::from_weighted(members, policy)?;
        if ensemble.rank() == r {
            return Ok(ensemble);
        }
    }
    Err(Error::Internal(format!(
        "random ensemble of rank {r} on {m}x{n} stayed degenerate after 3 retries"
    )))
}

/// Ready-made states used throughout the tests and documentation.
pub mod gallery {
    use super::*;

    /// Rank-2 state on `C^5 ⊗ C^5`: a Bell pair on the first two levels mixed
    /// with a Schmidt-rank-3 vector spread over the last three levels.
    ///
    /// `v1 = (|00> + |11>)/sqrt(2)`, `v2 = (|22> + |33> + |44> + |34>)/2`,
    /// mixed with weights `l1 : l2` (positive, normalized internally).
    pub fn rank2_5x5(l1: f64, l2: f64) -> Result<EnsembleState> {
        let mut a1 = CMatrix::zeros(5, 5);
        a1[(0, 0)] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        a1[(1, 1)] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut a2 = CMatrix::zeros(5, 5);
        for (i, j) in [(2, 2), (3, 3), (4, 4), (3, 4)] {
            a2[(i, j)] = Complex64::new(0.5, 0.0);
        }
        let v1 = PureState::from_coefficients(&a1)?;
        let v2 = PureState::from_coefficients(&a2)?;
        EnsembleState::from_weighted(vec![(l1, v1), (l2, v2)], &RankPolicy::default())
    }

    /// Rank-3 state on `C^7 ⊗ C^7`: the maximally entangled vector mixed with
    /// two Haar-random pure states drawn from `seed`.
    pub fn rank3_7x7(l1: f64, l2: f64, l3: f64, seed: u64) -> Result<EnsembleState> {
        let v1 = max_entangled(7)?;
        let v2 = PureState::new(7, 7, sample_unit_vector(49, &mut substream(seed, 0)))?;
        let v3 = PureState::new(7, 7, sample_unit_vector(49, &mut substream(seed, 1)))?;
        EnsembleState::from_weighted(
            vec![(l1, v1), (l2, v2), (l3, v3)],
            &RankPolicy::default(),
        )
    }

    /// `(1/sqrt(m)) sum_i |ii>` on `C^m ⊗ C^m`.
    pub fn max_entangled(m: usize) -> Result<PureState> {
        if m == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let scale = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
        let mut a = CMatrix::zeros(m, m);
        for i in 0..m {
            a[(i, i)] = scale;
        }
        PureState::from_coefficients(&a)
    }

    /// Product state `a ⊗ b` (inputs are normalized first).
    pub fn product_state(a: &CVector, b: &CVector) -> Result<PureState> {
        let coeff = CMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j]);
        PureState::normalized(a.len(), b.len(), CVector::from_fn(a.len() * b.len(), |idx, _| {
            coeff[(idx / b.len(), idx % b.len())]
        }))
    }
}
