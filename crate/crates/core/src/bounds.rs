//! Schmidt-number lower bounds from empty degeneracy loci.
//!
//! The engine rests on one counting fact: if the level-`(m - t)` locus of a
//! state's block family is empty, every pure state in the range has a
//! coefficient matrix whose rank resists being pushed below `m - t + 1` by
//! directions on the A side, and a decomposition of the state into pure
//! states of Schmidt rank `< m / (r - m + t)` would provide such a direction.
//! Hence emptiness at level `m - t` forces the Schmidt number up to
//! `ceil(m / (r - m + t))` ([`empty_locus_bound`]; the ceiling is ours — the
//! Schmidt number is an integer, so a real-valued lower bound rounds up).
//!
//! For *generic* states of rank `r`, a dimension count predicts which loci
//! are empty: the level-`(m - t)` locus has expected codimension
//! `t * (r - m + t)` in projective direction space, so it is empty for
//! states outside a measure-zero set whenever that codimension exceeds
//! `m - 1`, i.e. `t * (r - m + t) >= m` ([`codimension_condition`]). Scanning
//! `t` gives the best bound the counting argument can promise
//! ([`optimal_generic_bound`]) alongside four closed-form special cases
//! ([`generic_case_bounds`]).
//!
//! [`analyze`] runs the machinery on an actual state: an exact emptiness
//! test at level 0 (`t = m`), then probabilistic tests along the ladder
//! `t = t_star, …, m - 1`, assembling every verdict into a [`BoundReport`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RankPolicy;
use crate::locus::{self, BlockFamily, ProbeConfig, Verdict};
use crate::states::EnsembleState;

/// Schmidt-number lower bound granted by an empty level-`(m - t)` locus:
/// `ceil(m / (r - m + t))`.
///
/// Requires `1 <= t <= m` and `r - m + t >= 1`; outside that range the
/// counting argument behind the bound breaks down, so the call is rejected
/// rather than given a guessed convention.
pub fn empty_locus_bound(m: usize, r: usize, t: usize) -> Result<usize> {
    if m == 0 || r == 0 {
        return Err(Error::InvalidInput(format!(
            "m and r must be positive, got m = {m}, r = {r}"
        )));
    }
    if t == 0 || t > m {
        return Err(Error::InvalidInput(format!(
            "t must satisfy 1 <= t <= m = {m}, got {t}"
        )));
    }
    let denom = (r + t).saturating_sub(m);
    if denom == 0 {
        return Err(Error::InvalidInput(format!(
            "emptiness at level m - t bounds the Schmidt number only when \
             r - m + t >= 1; got r = {r}, m = {m}, t = {t}"
        )));
    }
    Ok(m.div_ceil(denom))
}

/// Does the expected codimension `t * (r - m + t)` of the level-`(m - t)`
/// locus reach `m`, so that the locus is empty for generic rank-`r` states?
pub fn codimension_condition(m: usize, r: usize, t: usize) -> bool {
    let excess = r as i64 + t as i64 - m as i64;
    (t as i64) * excess >= m as i64
}

/// Best generic prediction for given dimensions: the level to test and the
/// bound it would grant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericBound {
    /// Smallest admissible `t` whose locus is generically empty; `None` only
    /// if no `t <= m` qualifies (which the scan never produces, since `t = m`
    /// always does).
    pub t_star: Option<usize>,
    /// `ceil(m / (r - m + t_star))`, or 1 when no level qualifies.
    pub bound: usize,
}

/// Scan `t` upward from the smallest value with `r - m + t >= 1` and return
/// the first level satisfying [`codimension_condition`], together with the
/// Schmidt-number bound an empty locus at that level grants to generic
/// rank-`r` states.
pub fn optimal_generic_bound(m: usize, r: usize) -> Result<GenericBound> {
    if m == 0 || r == 0 {
        return Err(Error::InvalidInput(format!(
            "m and r must be positive, got m = {m}, r = {r}"
        )));
    }
    let lo = if r < m { m - r + 1 } else { 1 };
    for t in lo..=m {
        if codimension_condition(m, r, t) {
            return Ok(GenericBound {
                t_star: Some(t),
                bound: empty_locus_bound(m, r, t)?,
            });
        }
    }
    Ok(GenericBound {
        t_star: None,
        bound: 1,
    })
}

/// One closed-form generic bound with its applicability predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseBound {
    /// Case number, 1 through 4.
    pub case: u8,
    pub applicable: bool,
    /// The case's bound; present exactly when applicable.
    pub bound: Option<usize>,
}

/// The four closed-form Schmidt-number bounds for generic rank-`r` states on
/// `C^m (x) C^m`:
///
/// 1. `isqrt(m) - 1` if `r <= m`;
/// 2. `ceil(m / (r - m + isqrt(m) + 1))` if `r > m` (ceiling ours, as the
///    Schmidt number is integral);
/// 3. `3` if `m >= 169` and `m < r <= 3m/2 - 5`;
/// 4. `2` if `r <= 2m - 3`.
///
/// Each predicate is evaluated verbatim; case 3's `m >= 169` hypothesis is
/// not extrapolated downward.
pub fn generic_case_bounds(m: usize, r: usize) -> Result<Vec<CaseBound>> {
    if m < 2 || r == 0 {
        return Err(Error::InvalidInput(format!(
            "need m >= 2 and r >= 1, got m = {m}, r = {r}"
        )));
    }
    let root = m.isqrt();
    let case1 = r <= m;
    let case2 = r > m;
    // r <= 3m/2 - 5 without integer-division loss: 2r <= 3m - 10
    let case3 = m >= 169 && r > m && 2 * r <= 3 * m - 10;
    let case4 = r <= 2 * m - 3;
    Ok(vec![
        CaseBound {
            case: 1,
            applicable: case1,
            bound: case1.then(|| root - 1),
        },
        CaseBound {
            case: 2,
            applicable: case2,
            bound: case2.then(|| m.div_ceil(r - m + root + 1)),
        },
        CaseBound {
            case: 3,
            applicable: case3,
            bound: case3.then_some(3),
        },
        CaseBound {
            case: 4,
            applicable: case4,
            bound: case4.then_some(2),
        },
    ])
}

/// How a chain entry's emptiness test was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// Exact linear algebra (level 0 / `t = m` only).
    Exact,
    /// Seeded probing up to the configured emptiness gap.
    Probed,
}

/// One emptiness test in a bound analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry {
    /// Level parameter; the test concerns the level-`k` locus with `k = m - t`.
    pub t: usize,
    pub k: usize,
    pub route: Route,
    pub verdict: Verdict,
    /// Smallest relative (k+1)-th singular value over all probes, or the
    /// exact rank margin for the exact route.
    pub evidence: f64,
    /// `ceil(m / (r - m + t))`, present exactly when the verdict is empty.
    pub bound: Option<usize>,
    /// Smallest pencil rank observed while probing; absent on the exact route.
    pub min_rank_seen: Option<usize>,
}

/// Certified Schmidt-number lower bound with the evidence chain behind it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    /// Rank of the analyzed state.
    pub r: usize,
    /// Largest bound granted by any empty-verdict chain entry, exact or
    /// probabilistic; 1 means no entanglement was certified.
    pub certified_bound: usize,
    /// Largest bound granted by exact-route entries alone; never relies on
    /// sampling.
    pub exact_bound: usize,
    /// What the generic counting argument predicts for these dimensions.
    pub generic_bound: usize,
    /// Level realizing the generic prediction.
    pub t_star: Option<usize>,
    pub chain: Vec<ChainEntry>,
    pub config: ProbeConfig,
    pub policy: RankPolicy,
}

/// Run the full bound analysis on a state with equal local dimensions:
/// the exact level-0 test, then probabilistic tests at
/// `t = t_star, …, m - 1`.
pub fn analyze(e: &EnsembleState, cfg: &ProbeConfig, policy: &RankPolicy) -> Result<BoundReport> {
    analyze_levels(e, cfg, policy, None)
}

/// [`analyze`], with the probabilistic ladder optionally restricted to a
/// single level `t` (the exact `t = m` entry always runs). The level must
/// satisfy `1 <= t <= m` and `r - m + t >= 1`.
pub fn analyze_levels(
    e: &EnsembleState,
    cfg: &ProbeConfig,
    policy: &RankPolicy,
    only_t: Option<usize>,
) -> Result<BoundReport> {
    cfg.validate()?;
    policy.validate()?;
    let (m, n, r) = (e.m(), e.n(), e.rank());
    if m != n {
        return Err(Error::Unsupported(format!(
            "bound analysis requires equal local dimensions, got {m} x {n}"
        )));
    }
    if let Some(t) = only_t {
        if t == 0 || t > m || r + t <= m {
            return Err(Error::InvalidInput(format!(
                "level restriction must satisfy 1 <= t <= m and r - m + t >= 1; \
                 got t = {t} with m = {m}, r = {r}"
            )));
        }
    }
    let generic = optimal_generic_bound(m, r)?;

    let mut chain = Vec::new();
    let exact = locus::level0_certificate(e, policy);
    chain.push(ChainEntry {
        t: m,
        k: 0,
        route: Route::Exact,
        verdict: exact.verdict,
        evidence: exact.evidence,
        bound: if exact.verdict == Verdict::EmptyExact {
            Some(m.div_ceil(r))
        } else {
            None
        },
        min_rank_seen: exact.min_rank_seen,
    });

    let ladder: Vec<usize> = match only_t {
        Some(t) if t < m => vec![t],
        Some(_) => Vec::new(),
        None => (generic.t_star.unwrap_or(m)..m).collect(),
    };
    if !ladder.is_empty() {
        let family = BlockFamily::from_state(e, policy);
        for t in ladder {
            let k = m - t;
            let cert = locus::locus_certificate(&family, k, cfg, policy)?;
            let bound = if cert.verdict.is_empty() {
                Some(empty_locus_bound(m, r, t)?)
            } else {
                None
            };
            chain.push(ChainEntry {
                t,
                k,
                route: Route::Probed,
                verdict: cert.verdict,
                evidence: cert.evidence,
                bound,
                min_rank_seen: cert.min_rank_seen,
            });
        }
    }

    let certified_bound = chain.iter().filter_map(|c| c.bound).max().unwrap_or(1).max(1);
    let exact_bound = chain
        .iter()
        .filter(|c| c.route == Route::Exact)
        .filter_map(|c| c.bound)
        .max()
        .unwrap_or(1);
    Ok(BoundReport {
        m,
        n,
        r,
        certified_bound,
        exact_bound,
        generic_bound: generic.bound,
        t_star: generic.t_star,
        chain,
        config: *cfg,
        policy: *policy,
    })
}
