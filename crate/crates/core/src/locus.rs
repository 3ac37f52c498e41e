//! Rank degeneracy loci of the pencil attached to a state's range basis.
//!
//! Given a range basis `v_1, …, v_s` of a state on `C^m ⊗ C^n`, stack the
//! basis amplitudes into an `(m*n) x s` matrix and slice it into `m` row
//! blocks `B_0, …, B_{m-1}`, one per A-side level, each `n x s`. A direction
//! `r` in `CP^{m-1}` evaluates the pencil `M(r) = sum_w r_w B_w`; column `l`
//! of `M(r)` is `(A^l)^T r` for the coefficient matrix `A^l` of `v_l`. The
//! locus at level `k` is the set of directions with `rank M(r) <= k`. Because
//! the pencil is unchanged under rescaling of `r` and its rank ignores global
//! phase, directions live on the unit sphere.
//!
//! Emptiness of a locus is decided two ways:
//!
//! * level 0 has an exact linear-algebra route ([`level0_certificate`]): a
//!   direction kills every block iff it lies in the null space of the stacked
//!   transposed coefficient matrices;
//! * every level has a probabilistic route ([`locus_certificate`]): seeded
//!   random directions plus multistart coordinate descent push the relevant
//!   singular value down, and a locus is declared empty only when the smallest
//!   relative value seen stays above a configured gap.
//!
//! Certificates carry the policy actually used for rank decisions. Pencil
//! values at true locus points are inexact zeros, so rank checks raise the
//! absolute floor to `relative_threshold * max(n, s) * scale`, where `scale`
//! is the largest singular value of the stacked basis matrix; without that
//! floor no inexact zero matrix could ever certify as rank 0.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    numerical_rank, rank_from_singular_values, sample_unit_vector, singular_values, substream,
    CMatrix, CVector, RankPolicy,
};
use crate::states::{EnsembleState, PureState};

/// The `m` row blocks of a stacked range basis, ready for pencil evaluation.
#[derive(Debug, Clone)]
pub struct BlockFamily {
    m: usize,
    n: usize,
    s: usize,
    blocks: Vec<CMatrix>,
    scale: f64,
}

impl BlockFamily {
    /// Slice a linearly independent basis into row blocks.
    ///
    /// The basis must be nonempty with consistent dimensions; linear
    /// independence is the caller's contract (it holds for any
    /// [`EnsembleState::range_basis`] output).
    pub fn from_basis(basis: &[PureState]) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::InvalidInput("basis must be nonempty".into()));
        };
        let (m, n) = (first.m(), first.n());
        for (l, v) in basis.iter().enumerate() {
            if v.m() != m || v.n() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{m}x{n} basis vectors"),
                    got: format!("{}x{} at position {l}", v.m(), v.n()),
                });
            }
        }
        let s = basis.len();
        let blocks: Vec<CMatrix> = (0..m)
            .map(|w| CMatrix::from_fn(n, s, |j, l| basis[l].amplitude(w, j)))
            .collect();
        let stacked = CMatrix::from_fn(m * n, s, |row, l| basis[l].amplitudes()[row]);
        let scale = singular_values(&stacked).first().copied().unwrap_or(0.0);
        debug_assert_eq!(
            numerical_rank(&stacked, &RankPolicy::default()),
            s,
            "basis must be linearly independent"
        );
        Ok(BlockFamily {
            m,
            n,
            s,
            blocks,
            scale,
        })
    }

    /// Blocks of a range basis of `e`.
    pub fn from_state(e: &EnsembleState, policy: &RankPolicy) -> Self {
        let basis = e.range_basis(policy);
        Self::from_basis(&basis).expect("a range basis is a valid block basis")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of basis vectors (= columns of each block).
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// Largest singular value of the stacked basis matrix.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `policy` with the absolute floor every pencil rank decision needs.
    pub fn effective_policy(&self, policy: &RankPolicy) -> RankPolicy {
        policy.with_floor(policy.relative_threshold * self.n.max(self.s) as f64 * self.scale)
    }

    /// Evaluate the pencil `sum_w r_w B_w` at a nonzero direction of length `m`.
    pub fn pencil(&self, direction: &CVector) -> Result<CMatrix> {
        if direction.len() != self.m {
            return Err(Error::ShapeMismatch {
                expected: format!("direction of length {}", self.m),
                got: format!("{}", direction.len()),
            });
        }
        for (idx, z) in direction.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    location: format!("direction[{idx}]"),
                });
            }
        }
        if direction.norm() == 0.0 {
            return Err(Error::InvalidInput(
                "pencil direction must be nonzero".into(),
            ));
        }
        Ok(self.pencil_unchecked(direction))
    }

    fn pencil_unchecked(&self, direction: &CVector) -> CMatrix {
        let mut acc = CMatrix::zeros(self.n, self.s);
        for (w, block) in self.blocks.iter().enumerate() {
            let r = direction[w];
            if r != Complex64::new(0.0, 0.0) {
                acc.zip_apply(block, |a, b| *a += r * b);
            }
        }
        acc
    }

    /// Pencil rank at a direction, under the effective policy for this family.
    pub fn rank_at(&self, direction: &CVector, policy: &RankPolicy) -> Result<usize> {
        let p = self.pencil(direction)?;
        Ok(numerical_rank(&p, &self.effective_policy(policy)))
    }
}

/// Budget and thresholds for probabilistic locus probing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Random unit directions evaluated before any descent.
    pub samples: usize,
    /// Independent descent starts.
    pub restarts: usize,
    /// Maximum coordinate sweeps per descent.
    pub descent_steps: usize,
    /// Descent stops when the adaptive step shrinks below this.
    pub step_tolerance: f64,
    /// A locus counts as empty only if every probed relative singular value
    /// stays above this gap.
    pub emptiness_gap: f64,
    /// Master seed; every sample and restart derives its own substream.
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            samples: 2000,
            restarts: 20,
            descent_steps: 200,
            step_tolerance: 1e-10,
            emptiness_gap: 1e-6,
            seed: 0,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.restarts == 0 || self.descent_steps == 0 {
            return Err(Error::InvalidInput(
                "probe samples, restarts, and descent_steps must be positive".into(),
            ));
        }
        if !self.step_tolerance.is_finite() || self.step_tolerance <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "step_tolerance must be positive, got {}",
                self.step_tolerance
            )));
        }
        if !self.emptiness_gap.is_finite() || self.emptiness_gap <= 0.0 || self.emptiness_gap >= 1.0 {
            return Err(Error::InvalidInput(format!(
                "emptiness_gap must lie in (0, 1), got {}",
                self.emptiness_gap
            )));
        }
        Ok(())
    }
}

/// Outcome of an emptiness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Empty, decided by exact linear algebra (level 0 only).
    EmptyExact,
    /// Empty up to the configured gap: no probe came close to a rank drop.
    EmptyProbabilistic,
    /// A concrete direction achieves rank <= k.
    Nonempty,
    /// Probing got below the gap without reaching a verifiable witness.
    Undecided,
}

impl Verdict {
    pub fn is_empty(self) -> bool {
        matches!(self, Verdict::EmptyExact | Verdict::EmptyProbabilistic)
    }
}

/// Result of an emptiness test at one level, with the evidence that backs it.
#[derive(Debug, Clone)]
pub struct EmptinessCertificate {
    /// Locus level: the test concerns directions with pencil rank <= k.
    pub k: usize,
    pub verdict: Verdict,
    /// Verified direction with pencil rank <= k; present iff `Nonempty`.
    pub witness: Option<CVector>,
    /// Smallest relative (k+1)-th singular value seen over all probes; for the
    /// exact route, the relative rank margin of the stacked matrix.
    pub evidence: f64,
    /// Probe budget used; `None` for the exact route.
    pub config: Option<ProbeConfig>,
    /// Policy (including derived floor) under which ranks were decided.
    pub policy: RankPolicy,
    /// Smallest pencil rank observed across all probes; `None` for the exact
    /// route, which never evaluates the pencil away from a witness.
    pub min_rank_seen: Option<usize>,
}

/// Stack of the transposed coefficient matrices of a range basis of `e`:
/// row `l*n + j` holds column `j` of `A^l`. A direction annihilates every
/// basis matrix iff it lies in the null space of this stack.
fn transposed_stack(basis: &[PureState]) -> CMatrix {
    let (m, n, s) = (basis[0].m(), basis[0].n(), basis.len());
    CMatrix::from_fn(s * n, m, |row, w| basis[row / n].amplitude(w, row % n))
}

/// Rank of the stacked transposed coefficient matrices of a range basis.
///
/// Equal to `m` exactly when no nonzero direction annihilates all basis
/// matrices simultaneously, i.e. when the level-0 locus is empty.
pub fn stacked_rank(e: &EnsembleState, policy: &RankPolicy) -> usize {
    let basis = e.range_basis(policy);
    numerical_rank(&transposed_stack(&basis), policy)
}

/// Exact emptiness test for the level-0 locus.
///
/// `EmptyExact` iff the stacked transposed basis matrices have full column
/// rank `m`; otherwise a null vector of the stack is returned as a witness,
/// verified to give pencil rank 0 under the family's effective policy.
pub fn level0_certificate(e: &EnsembleState, policy: &RankPolicy) -> EmptinessCertificate {
    let basis = e.range_basis(policy);
    let family = BlockFamily::from_basis(&basis).expect("range basis is valid");
    let eff = family.effective_policy(policy);
    let stack = transposed_stack(&basis);
    let svd = stack.clone().svd(false, true);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    let rank = rank_from_singular_values(&sv, stack.nrows(), stack.ncols(), policy);
    let m = family.m();
    if rank == m {
        let margin = sv[m - 1] / sv[0];
        return EmptinessCertificate {
            k: 0,
            verdict: Verdict::EmptyExact,
            witness: None,
            evidence: margin,
            config: None,
            policy: eff,
            min_rank_seen: None,
        };
    }
    // null direction: right singular vector of the smallest singular value
    let v_t = svd.v_t.expect("svd computed with v");
    let idx = (0..v_t.nrows())
        .min_by(|&a, &b| {
            svd.singular_values[a]
                .partial_cmp(&svd.singular_values[b])
                .expect("finite singular values")
        })
        .expect("stack has rows");
    let witness: CVector = v_t.row(idx).adjoint();
    let verified = family
        .rank_at(&witness, policy)
        .map(|r| r == 0)
        .unwrap_or(false);
    if verified {
        EmptinessCertificate {
            k: 0,
            verdict: Verdict::Nonempty,
            witness: Some(witness),
            evidence: 0.0,
            config: None,
            policy: eff,
            min_rank_seen: None,
        }
    } else {
        // the stack is rank deficient only marginally: refuse to certify
        EmptinessCertificate {
            k: 0,
            verdict: Verdict::Undecided,
            witness: None,
            evidence: sv[m - 1] / sv[0],
            config: None,
            policy: eff,
            min_rank_seen: None,
        }
    }
}

/// Running state of one probing campaign at a fixed level `k`.
struct Probe<'a> {
    family: &'a BlockFamily,
    k: usize,
    eff: RankPolicy,
    /// Smallest relative (k+1)-th singular value seen.
    best_rel: f64,
    /// Smallest absolute (k+1)-th singular value seen and where.
    best_abs: f64,
    best_abs_dir: Option<CVector>,
    /// First direction observed with rank <= k.
    witness: Option<CVector>,
    /// Smallest pencil rank observed at any probed direction.
    min_rank_seen: usize,
}

impl<'a> Probe<'a> {
    fn new(family: &'a BlockFamily, k: usize, eff: RankPolicy) -> Self {
        Probe {
            family,
            k,
            eff,
            best_rel: f64::INFINITY,
            best_abs: f64::INFINITY,
            best_abs_dir: None,
            witness: None,
            min_rank_seen: usize::MAX,
        }
    }

    /// Absolute floor below which a singular value counts as zero.
    fn floor(&self) -> f64 {
        self.eff.absolute_floor
    }

    /// Evaluate one unit direction; returns the absolute (k+1)-th singular
    /// value, the descent objective.
    fn eval(&mut self, dir: &CVector) -> f64 {
        let p = self.family.pencil_unchecked(dir);
        let sv = singular_values(&p);
        let s0 = sv.first().copied().unwrap_or(0.0);
        let abs = sv.get(self.k).copied().unwrap_or(0.0);
        let rel = if s0 <= self.floor() { 0.0 } else { abs / s0 };
        if rel < self.best_rel {
            self.best_rel = rel;
        }
        if abs < self.best_abs {
            self.best_abs = abs;
            self.best_abs_dir = Some(dir.clone());
        }
        let rank = rank_from_singular_values(&sv, p.nrows(), p.ncols(), &self.eff);
        if rank < self.min_rank_seen {
            self.min_rank_seen = rank;
        }
        if self.witness.is_none() && rank <= self.k {
            self.witness = Some(dir.clone());
        }
        abs
    }
}

fn to_direction(x: &[f64]) -> CVector {
    let m = x.len() / 2;
    CVector::from_fn(m, |i, _| Complex64::new(x[i], x[m + i]))
}

/// Normalize in place; false if the vector is numerically zero.
fn normalize_reals(x: &mut [f64]) -> bool {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return false;
    }
    for v in x.iter_mut() {
        *v /= norm;
    }
    true
}

/// Coordinate-wise descent with adaptive step halving over the 2m real
/// parameters of a unit direction, followed by a quadratic polish when a zero
/// looks reachable. All evaluations are recorded in `probe`.
fn descend(probe: &mut Probe, start: &CVector, cfg: &ProbeConfig) {
    let m = start.len();
    let mut x = vec![0.0f64; 2 * m];
    for i in 0..m {
        x[i] = start[i].re;
        x[m + i] = start[i].im;
    }
    if !normalize_reals(&mut x) {
        return;
    }
    let mut best = probe.eval(&to_direction(&x));
    let converged = |p: &Probe, b: f64| b <= 0.01 * p.floor();
    let mut step = 0.25f64;
    for _ in 0..cfg.descent_steps {
        if converged(probe, best) {
            break;
        }
        let mut improved = false;
        for c in 0..2 * m {
            for sgn in [1.0f64, -1.0] {
                let mut y = x.clone();
                y[c] += sgn * step;
                if !normalize_reals(&mut y) {
                    continue;
                }
                let v = probe.eval(&to_direction(&y));
                if v < best {
                    x = y;
                    best = v;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < cfg.step_tolerance {
                break;
            }
            // A minimum well clear of zero cannot turn into a rank drop, and
            // refining it further would only sharpen evidence that is already
            // far above any emptiness gap; stop early.
            if step < 1e-4 && best > 0.02 * probe.family.scale() {
                break;
            }
        }
    }
    // Quadratic polish: coordinate descent alone stalls around sigma ~ step
    // size, far above the rank floor. Near a transversal zero the squared
    // singular value is smooth, so a parabola fit through three points per
    // coordinate converges the remaining distance.
    if best < 0.01 * probe.family.scale() && !converged(probe, best) {
        polish(probe, &mut x, best);
    }
}

fn polish(probe: &mut Probe, x: &mut Vec<f64>, mut best: f64) {
    let twom = x.len();
    let mut h = 1e-4f64;
    for _ in 0..12 {
        if best <= 0.01 * probe.floor() {
            break;
        }
        let mut improved_any = false;
        for c in 0..twom {
            let try_at = |probe: &mut Probe, t: f64| -> Option<(Vec<f64>, f64)> {
                let mut y = x.clone();
                y[c] += t;
                if !normalize_reals(&mut y) {
                    return None;
                }
                let v = probe.eval(&to_direction(&y));
                Some((y, v))
            };
            let plus = try_at(probe, h);
            let minus = try_at(probe, -h);
            let (Some((yp, fp)), Some((ym, fm))) = (plus, minus) else {
                continue;
            };
            // parabola through the squared values at -h, 0, +h
            let (q0, qp, qm) = (best * best, fp * fp, fm * fm);
            let a = (qp + qm - 2.0 * q0) / (2.0 * h * h);
            let b = (qp - qm) / (2.0 * h);
            let mut candidates: Vec<(Vec<f64>, f64)> = vec![(yp, fp), (ym, fm)];
            if a > 0.0 {
                let t = (-b / (2.0 * a)).clamp(-8.0 * h, 8.0 * h);
                if let Some(hit) = try_at(probe, t) {
                    candidates.push(hit);
                }
            }
            if let Some((y, v)) = candidates
                .into_iter()
                .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"))
            {
                if v < best {
                    *x = y;
                    best = v;
                    improved_any = true;
                }
            }
        }
        if !improved_any {
            h /= 10.0;
            if h < 1e-9 {
                break;
            }
        } else {
            h = (h / 3.0).max(1e-9);
        }
    }
}

/// Probabilistic emptiness test for the level-`k` locus of a block family.
///
/// Seeded random directions plus multistart descent minimize the (k+1)-th
/// singular value of the pencil. A verified rank drop yields `Nonempty`; if
/// every probe keeps the relative (k+1)-th singular value above
/// `cfg.emptiness_gap`, the locus is declared empty up to that gap. The rare
/// in-between (a probe got below the gap but never down to a certifiable
/// rank drop) is reported as `Undecided`.
pub fn locus_certificate(
    family: &BlockFamily,
    k: usize,
    cfg: &ProbeConfig,
    policy: &RankPolicy,
) -> Result<EmptinessCertificate> {
    cfg.validate()?;
    policy.validate()?;
    let max_rank = family.n().min(family.s());
    if k > max_rank {
        return Err(Error::InvalidInput(format!(
            "locus level k must satisfy 0 <= k <= min(n, s) = {max_rank}, got {k}"
        )));
    }
    let eff = family.effective_policy(policy);
    if k == max_rank {
        // the pencil rank never exceeds min(n, s): every direction qualifies
        let mut e1 = CVector::zeros(family.m());
        e1[0] = Complex64::new(1.0, 0.0);
        let rank = family.rank_at(&e1, policy)?;
        return Ok(EmptinessCertificate {
            k,
            verdict: Verdict::Nonempty,
            witness: Some(e1),
            evidence: 0.0,
            config: Some(*cfg),
            policy: eff,
            min_rank_seen: Some(rank),
        });
    }
    let mut probe = Probe::new(family, k, eff);
    for i in 0..cfg.samples {
        let dir = sample_unit_vector(family.m(), &mut substream(cfg.seed, i as u64));
        probe.eval(&dir);
    }
    if probe.witness.is_none() {
        let from_samples = probe
            .best_abs_dir
            .clone()
            .expect("at least one sample was evaluated");
        for d in 0..cfg.restarts {
            if probe.witness.is_some() {
                break;
            }
            let start = if d == 0 {
                from_samples.clone()
            } else {
                sample_unit_vector(
                    family.m(),
                    &mut substream(cfg.seed, (cfg.samples + d) as u64),
                )
            };
            descend(&mut probe, &start, cfg);
        }
    }
    let evidence = probe.best_rel;
    let min_rank_seen = Some(probe.min_rank_seen);
    if let Some(witness) = probe.witness {
        let rank = family.rank_at(&witness, policy)?;
        if rank > k {
            return Err(Error::Internal(format!(
                "witness re-verification failed: rank {rank} > {k}"
            )));
        }
        return Ok(EmptinessCertificate {
            k,
            verdict: Verdict::Nonempty,
            witness: Some(witness),
            evidence,
            config: Some(*cfg),
            policy: eff,
            min_rank_seen,
        });
    }
    let verdict = if evidence > cfg.emptiness_gap {
        Verdict::EmptyProbabilistic
    } else {
        Verdict::Undecided
    };
    Ok(EmptinessCertificate {
        k,
        verdict,
        witness: None,
        evidence,
        config: Some(*cfg),
        policy: eff,
        min_rank_seen,
    })
}

/// Emptiness test for the level-`k` locus of a state: level 0 takes the exact
/// route, higher levels the probabilistic one.
pub fn locus_certificate_for_state(
    e: &EnsembleState,
    k: usize,
    cfg: &ProbeConfig,
    policy: &RankPolicy,
) -> Result<EmptinessCertificate> {
    if k == 0 {
        return Ok(level0_certificate(e, policy));
    }
    let family = BlockFamily::from_state(e, policy);
    locus_certificate(&family, k, cfg, policy)
}

/// Smallest pencil rank found over a probing campaign.
#[derive(Debug, Clone)]
pub struct MinRankResult {
    pub min_rank: usize,
    /// Unit direction achieving `min_rank`.
    pub direction: CVector,
    /// Singular values at `direction`, divided by the largest (all zeros if
    /// the pencil vanishes there).
    pub relative_singular_values: Vec<f64>,
    /// Policy (including derived floor) under which ranks were decided.
    pub policy: RankPolicy,
}

/// Minimize pencil rank over directions: evaluate `cfg.samples` random
/// directions, then run descents that try to push the smallest surviving
/// singular value of the best direction to zero, retargeting every time the
/// rank drops.
pub fn min_pencil_rank(
    family: &BlockFamily,
    cfg: &ProbeConfig,
    policy: &RankPolicy,
) -> Result<MinRankResult> {
    cfg.validate()?;
    policy.validate()?;
    let eff = family.effective_policy(policy);
    let rank_and_sv = |dir: &CVector| -> (usize, Vec<f64>) {
        let p = family.pencil_unchecked(dir);
        let sv = singular_values(&p);
        let rank = rank_from_singular_values(&sv, p.nrows(), p.ncols(), &eff);
        (rank, sv)
    };
    // tie-break by the relative size of the singular value that would have to
    // vanish next; smaller means closer to the next rank drop
    let drop_key = |rank: usize, sv: &[f64]| -> f64 {
        if rank == 0 {
            0.0
        } else {
            let s0 = sv[0].max(f64::MIN_POSITIVE);
            sv[rank - 1] / s0
        }
    };
    let mut best_dir = {
        let mut first = CVector::zeros(family.m());
        first[0] = Complex64::new(1.0, 0.0);
        first
    };
    let (mut best_rank, mut best_sv) = rank_and_sv(&best_dir);
    let mut best_key = drop_key(best_rank, &best_sv);
    for i in 0..cfg.samples {
        let dir = sample_unit_vector(family.m(), &mut substream(cfg.seed, i as u64));
        let (rank, sv) = rank_and_sv(&dir);
        let key = drop_key(rank, &sv);
        if rank < best_rank || (rank == best_rank && key < best_key) {
            best_dir = dir;
            best_rank = rank;
            best_sv = sv;
            best_key = key;
        }
    }
    let mut retargeted = true;
    let mut d = 0usize;
    while d < cfg.restarts && best_rank > 0 {
        let k = best_rank - 1;
        let mut probe = Probe::new(family, k, eff);
        let start = if retargeted {
            best_dir.clone()
        } else {
            sample_unit_vector(
                family.m(),
                &mut substream(cfg.seed, (cfg.samples + d) as u64),
            )
        };
        retargeted = false;
        descend(&mut probe, &start, cfg);
        d += 1;
        if let Some(w) = probe.witness {
            let (rank, sv) = rank_and_sv(&w);
            if rank < best_rank {
                best_dir = w;
                best_rank = rank;
                best_sv = sv;
                best_key = drop_key(best_rank, &best_sv);
                retargeted = true;
            }
        }
    }
    let _ = best_key;
    let s0 = best_sv.first().copied().unwrap_or(0.0);
    let relative_singular_values = if s0 <= eff.absolute_floor {
        vec![0.0; best_sv.len()]
    } else {
        best_sv.iter().map(|s| s / s0).collect()
    };
    Ok(MinRankResult {
        min_rank: best_rank,
        direction: best_dir,
        relative_singular_values,
        policy: eff,
    })
}
