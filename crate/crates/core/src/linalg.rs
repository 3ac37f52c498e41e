//! Dense complex linear algebra: numerical rank, Hermitian eigendecomposition,
//! and reproducible random sampling.
//!
//! Everything downstream funnels its rank questions through [`numerical_rank`]
//! so that a single [`RankPolicy`] governs when a singular value counts as zero.
//! Random sampling is organised around [`substream`]: each unit of work derives
//! its own generator from `(seed, index)`, which keeps results independent of
//! evaluation order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance for accepting a matrix as Hermitian (max entry of `M - M^H`).
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Thresholding rule that decides when a singular value counts as zero.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RankPolicy {
    /// Singular values below `relative_threshold * sigma_max * max(rows, cols)` are zero.
    pub relative_threshold: f64,
    /// Singular values below this absolute value are zero regardless of scale.
    pub absolute_floor: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            relative_threshold: 1e-12,
            absolute_floor: 0.0,
        }
    }
}

impl RankPolicy {
    /// Same relative rule with the absolute floor raised to `floor`.
    pub fn with_floor(self, floor: f64) -> Self {
        RankPolicy {
            absolute_floor: self.absolute_floor.max(floor),
            ..self
        }
    }

    /// The cutoff below which a singular value of a `rows x cols` matrix
    /// with largest singular value `sigma_max` counts as zero.
    pub fn cutoff(&self, sigma_max: f64, rows: usize, cols: usize) -> f64 {
        let dim = rows.max(cols) as f64;
        (self.relative_threshold * sigma_max * dim).max(self.absolute_floor)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.relative_threshold.is_finite() || self.relative_threshold < 0.0 {
            return Err(Error::InvalidInput(format!(
                "rank policy relative_threshold must be finite and nonnegative, got {}",
                self.relative_threshold
            )));
        }
        if !self.absolute_floor.is_finite() || self.absolute_floor < 0.0 {
            return Err(Error::InvalidInput(format!(
                "rank policy absolute_floor must be finite and nonnegative, got {}",
                self.absolute_floor
            )));
        }
        Ok(())
    }
}

/// Singular values of `m` in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    sv
}

/// Number of singular values above the policy cutoff, given `sv` descending.
pub fn rank_from_singular_values(sv: &[f64], rows: usize, cols: usize, policy: &RankPolicy) -> usize {
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let cutoff = policy.cutoff(sigma_max, rows, cols);
    sv.iter().take_while(|&&s| s > cutoff).count()
}

/// Numerical rank of `m` under `policy`.
pub fn numerical_rank(m: &CMatrix, policy: &RankPolicy) -> usize {
    let sv = singular_values(m);
    rank_from_singular_values(&sv, m.nrows(), m.ncols(), policy)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the unit eigenvector for `eigenvalues[i]`.
    pub eigenvectors: CMatrix,
}

/// Maximum absolute entry of `m - m^H`; zero for square Hermitian matrices.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let adj = m.adjoint();
    (m - adj).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry magnitude of `m`.
pub fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn ensure_finite(m: &CMatrix, what: &str) -> Result<()> {
    for (idx, z) in m.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            let (r, c) = (idx % m.nrows(), idx / m.nrows());
            return Err(Error::NonFinite {
                location: format!("{what}[{r}][{c}]"),
            });
        }
    }
    Ok(())
}

/// Eigendecomposition of a matrix that must be Hermitian within [`HERMITIAN_TOL`].
///
/// The input is symmetrized as `(M + M^H)/2` before decomposition so that the
/// reconstruction `U diag(w) U^H` matches the input to the same accuracy as the
/// eigensolver itself.
pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEig> {
    if m.nrows() != m.ncols() {
        return Err(Error::ShapeMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    ensure_finite(m, "matrix")?;
    let deviation = hermitian_deviation(m);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: HERMITIAN_TOL,
        });
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Indices of a maximal linearly independent sublist of `vectors`, greedy in
/// input order: a vector is kept iff it raises the rank of the kept set.
pub fn column_space_basis(vectors: &[CVector], policy: &RankPolicy) -> Result<Vec<usize>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let dim = first.len();
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::ShapeMismatch {
                expected: format!("all vectors of dimension {dim}"),
                got: format!("dimension {} at position {i}", v.len()),
            });
        }
    }
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..vectors.len() {
        let cols = kept.len() + 1;
        let m = CMatrix::from_fn(dim, cols, |r, c| {
            if c < kept.len() {
                vectors[kept[c]][r]
            } else {
                vectors[i][r]
            }
        });
        if numerical_rank(&m, policy) > kept.len() {
            kept.push(i);
        }
    }
    Ok(kept)
}

/// Generator for work unit `index` under master seed `seed`.
///
/// Distinct indices give statistically independent streams, and the mapping is
/// pure: the same `(seed, index)` always yields the same generator state.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Complex standard Gaussian (re and im each `N(0,1)`).
pub fn sample_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniform random unit vector in `C^dim` (normalized complex Gaussian).
pub fn sample_unit_vector(dim: usize, rng: &mut impl Rng) -> CVector {
    assert!(dim > 0, "dimension must be positive");
    loop {
        let v = CVector::from_fn(dim, |_, _| sample_gaussian(rng));
        let norm = v.norm();
        // norm ~ 0 is a measure-zero event; resample rather than divide by it
        if norm > 1e-8 {
            return v.unscale(norm);
        }
    }
}

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// standard phase correction on the diagonal of R.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    assert!(dim > 0, "dimension must be positive");
    let g = CMatrix::from_fn(dim, dim, |_, _| sample_gaussian(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d.unscale(d.norm())
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}
