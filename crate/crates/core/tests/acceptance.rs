//! Release gates: one test per headline guarantee, each printing a PASS line
//! (visible under `--nocapture`) and enforcing its own wall-clock budget.
//! The gates serialize on a global lock so the timing measurements are not
//! distorted by concurrent tests.

mod common;

use std::sync::{Mutex, PoisonError};
use std::time::{Duration, Instant};

use common::{grid_min_rank, integer_rank};
use schmidt_locus::bounds::{analyze, generic_case_bounds, optimal_generic_bound, Route};
use schmidt_locus::experiments::{product_spanned_subspace, run_generic_experiment};
use schmidt_locus::linalg::{random_unitary, sample_gaussian, sample_unit_vector, substream};
use schmidt_locus::locus::{level0_certificate, min_pencil_rank, stacked_rank, BlockFamily};
use schmidt_locus::states::{gallery, random_rank_r_state, PureState};
use schmidt_locus::{EnsembleState, ProbeConfig, RankPolicy, Verdict};

static LOCK: Mutex<()> = Mutex::new(());

fn serialized() -> std::sync::MutexGuard<'static, ()> {
    LOCK.lock().unwrap_or_else(PoisonError::into_inner)
}

fn budget(elapsed: Duration, limit: Duration, what: &str) {
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:.2?}, budget {limit:.2?}"
    );
}

fn isqrt(m: usize) -> usize {
    let mut k = (m as f64).sqrt() as usize;
    while (k + 1) * (k + 1) <= m {
        k += 1;
    }
    while k * k > m {
        k -= 1;
    }
    k
}

/// The exact stacked-rank route must certify a bound of at least 3 for the
/// two-member diagonal 5x5 state, inside one second.
#[test]
fn accept_01_diagonal_rank2_state_certified_by_exact_route() {
    let _guard = serialized();
    let start = Instant::now();

    let state = gallery::rank2_5x5(1.0, 1.0).unwrap();
    let report = analyze(&state, &ProbeConfig::default(), &RankPolicy::default()).unwrap();
    assert!(report.certified_bound >= 3, "{report:?}");
    let exact = report
        .chain
        .iter()
        .find(|e| e.route == Route::Exact)
        .expect("exact entry always present");
    assert_eq!(exact.t, 5);
    assert_eq!(exact.verdict, Verdict::EmptyExact);
    assert_eq!(exact.bound, Some(3));

    budget(start.elapsed(), Duration::from_secs(1), "exact-route analysis");
    println!("ACCEPT #01 PASS certified {} via exact entry", report.certified_bound);
}

/// Mixtures of the 7x7 maximally entangled vector with two random pure states
/// have rank 3, and the exact route certifies ceil(7/3) = 3 for ten seeds in
/// under five seconds total.
#[test]
fn accept_02_rank3_mixtures_certify_ceiling_of_m_over_r() {
    let _guard = serialized();
    let start = Instant::now();

    for seed in 0..10u64 {
        let state = gallery::rank3_7x7(1.0, 1.0, 1.0, seed).unwrap();
        let report = analyze(&state, &ProbeConfig::default(), &RankPolicy::default()).unwrap();
        assert_eq!(
            report.exact_bound, 3,
            "seed {seed}: exact route must give ceil(7/3): {report:?}"
        );
        assert!(report.certified_bound >= 3, "seed {seed}: {report:?}");
    }

    budget(start.elapsed(), Duration::from_secs(5), "ten rank-3 analyses");
    println!("ACCEPT #02 PASS ten seeds certified 3 by the exact route");
}

/// The four published dimension pairs hit their stated case formulas.
#[test]
fn accept_03_case_table_matches_stated_formulas() {
    let _guard = serialized();

    let case_value = |m: usize, r: usize, case: u8| -> Option<usize> {
        generic_case_bounds(m, r)
            .unwrap()
            .into_iter()
            .find(|c| c.case == case)
            .and_then(|c| c.bound)
    };

    // case 1 at (16,16): floor(sqrt(m)) - 1
    assert_eq!(case_value(16, 16, 1), Some(isqrt(16) - 1));
    assert_eq!(case_value(16, 16, 1), Some(3));
    // case 2 at (16,20): ceil(m / (r - m + floor(sqrt(m)) + 1))
    assert_eq!(
        case_value(16, 20, 2),
        Some(16usize.div_ceil(20 - 16 + isqrt(16) + 1))
    );
    assert_eq!(case_value(16, 20, 2), Some(2));
    // case 3 at (169,200): constant 3 on its strip
    assert_eq!(case_value(169, 200, 3), Some(3));
    // case 4 at (10,17): constant 2 whenever r <= 2m - 3
    assert_eq!(case_value(10, 17, 4), Some(2));

    println!("ACCEPT #03 PASS case table matches the stated formulas");
}

/// The optimal level scan can never fall below any applicable case value.
#[test]
fn accept_04_optimal_scan_dominates_case_table() {
    let _guard = serialized();
    let start = Instant::now();

    for m in 2..=200usize {
        for r in 1..=(2 * m - 3) {
            let opt = optimal_generic_bound(m, r).unwrap().bound;
            for case in generic_case_bounds(m, r).unwrap() {
                if let Some(b) = case.bound {
                    assert!(
                        opt >= b,
                        "optimal {opt} below case {} value {b} at m={m} r={r}",
                        case.case
                    );
                }
            }
        }
    }

    budget(start.elapsed(), Duration::from_secs(10), "dominance scan");
    println!("ACCEPT #04 PASS optimal scan dominates all cases up to m=200");
}

/// Random rank-r states at the published desk-scale dimensions certify the
/// target bound in at least 95% of trials with the default probe budget.
#[test]
fn accept_05_generic_experiments_reach_target_bound() {
    let _guard = serialized();

    for (m, r) in [(5usize, 7usize), (6, 6)] {
        let start = Instant::now();
        let summary =
            run_generic_experiment(m, r, 50, 2, &ProbeConfig::default(), 0).unwrap();
        assert!(
            summary.success_fraction >= 0.95,
            "(m={m}, r={r}) success fraction {}",
            summary.success_fraction
        );
        budget(
            start.elapsed(),
            Duration::from_secs(120),
            &format!("experiment (m={m}, r={r})"),
        );
    }

    println!("ACCEPT #05 PASS both desk-scale experiments reach the target");
}

/// On two-block families the probed minimum pencil rank agrees exactly with a
/// brute-force grid over the projective line, for 100 random instances.
#[test]
fn accept_06_probed_min_rank_matches_grid_oracle() {
    let _guard = serialized();
    let start = Instant::now();

    let policy = RankPolicy::default();
    let cfg = ProbeConfig::default();
    for i in 0..100u64 {
        let state = random_rank_r_state(2, 3, 2, 3000 + i, &policy).unwrap();
        let family = BlockFamily::from_state(&state, &policy);
        let probed = min_pencil_rank(&family, &cfg, &policy).unwrap();
        let grid = grid_min_rank(&family, &policy);
        assert_eq!(probed.min_rank, grid, "disagreement at instance {i}");
    }

    budget(start.elapsed(), Duration::from_secs(30), "grid oracle sweep");
    println!("ACCEPT #06 PASS probed minimum rank matches the grid oracle 100/100");
}

/// Mixtures of product states are separable, so certification must stay sane:
/// never above m, and exactly 1 for a single product pure state.
#[test]
fn accept_07_product_mixtures_stay_sound() {
    let _guard = serialized();
    let policy = RankPolicy::default();
    let cfg = ProbeConfig::default();

    let product = |rng: &mut rand_chacha::ChaCha8Rng| {
        let a = sample_unit_vector(4, rng);
        let b = sample_unit_vector(4, rng);
        gallery::product_state(&a, &b).unwrap()
    };

    for i in 0..50u64 {
        let mut rng = substream(777, i);
        let count = 1 + (i as usize % 4);
        let members: Vec<(f64, PureState)> =
            (0..count).map(|_| (1.0, product(&mut rng))).collect();
        let state = EnsembleState::from_weighted(members, &policy).unwrap();
        let report = analyze(&state, &cfg, &policy).unwrap();
        assert!(
            report.certified_bound <= 4,
            "mixture {i} of {count} product states: {report:?}"
        );
    }

    for i in 0..5u64 {
        let mut rng = substream(778, i);
        let state = EnsembleState::from_weighted(vec![(1.0, product(&mut rng))], &policy).unwrap();
        let report = analyze(&state, &cfg, &policy).unwrap();
        assert_eq!(report.certified_bound, 1, "single product state {i}: {report:?}");
    }

    println!("ACCEPT #07 PASS separable mixtures never over-certify");
}

/// Schmidt-rank ground truth: maximal entanglement, product states, and the
/// triangular member of the diagonal 5x5 state against integer elimination.
#[test]
fn accept_08_schmidt_rank_facts() {
    let _guard = serialized();
    let policy = RankPolicy::default();

    assert_eq!(gallery::max_entangled(7).unwrap().schmidt(&policy).rank, 7);

    for i in 0..100u64 {
        let mut rng = substream(888, i);
        let a = sample_unit_vector(3, &mut rng);
        let b = sample_unit_vector(5, &mut rng);
        let v = gallery::product_state(&a, &b).unwrap();
        assert_eq!(v.schmidt(&policy).rank, 1, "product draw {i}");
    }

    // Doubling the second member's coefficient matrix yields an integer
    // matrix of the same rank; exact elimination pins it at 3.
    let state = gallery::rank2_5x5(1.0, 1.0).unwrap();
    let v2 = &state.members()[1].1;
    let mut doubled = vec![vec![0i128; 5]; 5];
    for (i, j) in [(2usize, 2usize), (3, 3), (4, 4), (3, 4)] {
        doubled[i][j] = 1;
    }
    let oracle = integer_rank(doubled);
    assert_eq!(oracle, 3);
    assert_eq!(v2.schmidt(&policy).rank, oracle);

    println!("ACCEPT #08 PASS Schmidt ranks match ground truth");
}

/// The product-vector spanning construction passes its three checks on 20
/// random admissible parameter draws and rejects both degenerate conditions
/// by name, inside five seconds.
#[test]
fn accept_09_product_subspace_construction() {
    let _guard = serialized();
    let start = Instant::now();

    let mut rng = substream(999, 0);
    let mut accepted = 0u32;
    while accepted < 20 {
        let (a, b, c, d) = (
            sample_gaussian(&mut rng),
            sample_gaussian(&mut rng),
            sample_gaussian(&mut rng),
            sample_gaussian(&mut rng),
        );
        if d.norm() <= 1e-9 || (a * d - b * c).norm() <= 1e-9 {
            continue;
        }
        let (_, _, _, checks) = product_spanned_subspace(a, b, c, d).unwrap();
        assert_eq!(checks.schmidt_ranks, [1, 1, 1]);
        assert_eq!(checks.span_rank, 3);
        for residual in checks.orthogonality_residuals {
            assert!(residual < 1e-10, "residual {residual:e}");
        }
        for det in checks.determinant_magnitudes {
            assert!(det < 1e-12, "determinant magnitude {det:e}");
        }
        assert!(checks.all_pass());
        accepted += 1;
    }

    let one = num_complex::Complex64::new(1.0, 0.0);
    let err = product_spanned_subspace(one, one, one, one).unwrap_err();
    assert!(err.to_string().contains("ad = bc"), "{err}");
    let err = product_spanned_subspace(one, 2.0 * one, 3.0 * one, 0.0 * one).unwrap_err();
    assert!(err.to_string().contains("d = 0"), "{err}");

    budget(start.elapsed(), Duration::from_secs(5), "subspace checks");
    println!("ACCEPT #09 PASS spanning construction verified on 20 draws");
}

/// Local unitaries cannot change the stacked rank or the exact level-0
/// verdict: both are invariant for 20 random transforms of the diagonal
/// 5x5 state's ensemble.
#[test]
fn accept_10_local_unitary_invariance() {
    let _guard = serialized();
    let policy = RankPolicy::default();

    let base = gallery::rank2_5x5(1.0, 1.0).unwrap();
    let base_rank = stacked_rank(&base, &policy);
    let base_verdict = level0_certificate(&base, &policy).verdict;
    assert_eq!(base_rank, 5);
    assert_eq!(base_verdict, Verdict::EmptyExact);

    for i in 0..20u64 {
        let u = random_unitary(5, &mut substream(4242, 2 * i));
        let v = random_unitary(5, &mut substream(4242, 2 * i + 1));
        let members: Vec<(f64, PureState)> = base
            .members()
            .iter()
            .map(|(w, member)| {
                let transformed = &u * member.coefficient_matrix() * v.transpose();
                let flat = schmidt_locus::linalg::CVector::from_fn(25, |idx, _| {
                    transformed[(idx / 5, idx % 5)]
                });
                (*w, PureState::normalized(5, 5, flat).unwrap())
            })
            .collect();
        let state = EnsembleState::from_weighted(members, &policy).unwrap();
        assert_eq!(stacked_rank(&state, &policy), base_rank, "transform {i}");
        assert_eq!(
            level0_certificate(&state, &policy).verdict,
            base_verdict,
            "transform {i}"
        );
    }

    println!("ACCEPT #10 PASS stacked rank and level-0 verdict are invariant");
}
