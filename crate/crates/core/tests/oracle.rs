//! Cross-checks of the numerical rank decisions against oracles that take a
//! different route entirely: exact integer elimination and brute-force grid
//! search over the projective line.

mod common;

use common::{grid_min_rank, integer_rank};
use num_complex::Complex64;
use schmidt_locus::linalg::CMatrix;
use schmidt_locus::locus::{min_pencil_rank, stacked_rank, BlockFamily};
use schmidt_locus::states::{gallery, random_rank_r_state, PureState};
use schmidt_locus::{ProbeConfig, RankPolicy};

#[test]
fn integer_rank_agrees_with_known_ranks() {
    assert_eq!(integer_rank(vec![vec![0; 3]; 2]), 0);
    assert_eq!(integer_rank(vec![vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(integer_rank(vec![vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
    // Pascal matrix: determinant 1, so full rank.
    let pascal: Vec<Vec<i128>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    // C(i+j, j), built so each intermediate division is exact
                    let mut binom = 1i128;
                    for k in 0..j {
                        binom = binom * (i + j - k) as i128 / (k + 1) as i128;
                    }
                    binom
                })
                .collect()
        })
        .collect();
    assert_eq!(integer_rank(pascal), 4);
}

/// The two-member diagonal 5x5 state has exactly-representable coefficients
/// once each member is scaled by a constant, so the emptiness of its level-0
/// locus reduces to an integer rank computation.
#[test]
fn stacked_rank_of_diagonal_state_matches_exact_elimination() {
    let state = gallery::rank2_5x5(1.0, 1.0).unwrap();
    let policy = RankPolicy::default();

    // Verify the coefficient entries featured in the integer model. Member 1
    // carries 1/sqrt(2) on the first two diagonal slots; member 2 carries 1/2
    // on a lower-right triangle block. Row scaling preserves rank.
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let v1 = &state.members()[0].1;
    let v2 = &state.members()[1].1;
    for (i, j) in [(0usize, 0usize), (1, 1)] {
        assert!((v1.amplitude(i, j) - Complex64::new(inv_sqrt2, 0.0)).norm() < 1e-15);
    }
    assert!(v1.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0 < 1e-12);
    for (i, j) in [(2usize, 2usize), (3, 3), (4, 4), (3, 4)] {
        assert!((v2.amplitude(i, j) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    // Integer model of the transposed stack: row l*n + j, column w holds
    // A^l[w, j], with member 1 scaled by sqrt(2) and member 2 by 2.
    let mut stack = vec![vec![0i128; 5]; 10];
    stack[0][0] = 1; // member 1, column 0 of A^1
    stack[1][1] = 1; // member 1, column 1 of A^1
    stack[5 + 2][2] = 1; // member 2, column 2 of A^2
    stack[5 + 3][3] = 1; // member 2, column 3 of A^2
    stack[5 + 4][3] = 1; // member 2, column 4 of A^2 touches rows 3 and 4
    stack[5 + 4][4] = 1;
    assert_eq!(integer_rank(stack), 5);

    assert_eq!(stacked_rank(&state, &policy), 5);
}

#[test]
fn second_member_schmidt_rank_matches_exact_elimination() {
    let state = gallery::rank2_5x5(1.0, 1.0).unwrap();
    let v2 = &state.members()[1].1;

    // Doubling the coefficient matrix gives an integer matrix of equal rank.
    let mut doubled = vec![vec![0i128; 5]; 5];
    for (i, j) in [(2usize, 2usize), (3, 3), (4, 4), (3, 4)] {
        doubled[i][j] = 1;
    }
    assert_eq!(integer_rank(doubled), 3);

    let info = v2.schmidt(&RankPolicy::default());
    assert_eq!(info.rank, 3);
}

/// A family whose blocks share a one-dimensional row support drops to rank 0
/// along a single projective direction; both the grid search and the probed
/// minimum must find it.
#[test]
fn grid_and_probe_agree_on_shared_kernel_family() {
    let a1 = CMatrix::from_fn(2, 3, |i, j| {
        Complex64::new(if i == 0 && j == 0 { 1.0 } else { 0.0 }, 0.0)
    });
    let a2 = CMatrix::from_fn(2, 3, |i, j| {
        Complex64::new(if i == 0 && j == 1 { 1.0 } else { 0.0 }, 0.0)
    });
    let basis = [
        PureState::from_coefficients(&a1).unwrap(),
        PureState::from_coefficients(&a2).unwrap(),
    ];
    let family = BlockFamily::from_basis(&basis).unwrap();
    let policy = RankPolicy::default();

    assert_eq!(grid_min_rank(&family, &policy), 0);
    let probed = min_pencil_rank(&family, &ProbeConfig::default(), &policy).unwrap();
    assert_eq!(probed.min_rank, 0);
}

#[test]
fn grid_and_probe_agree_on_random_families() {
    let policy = RankPolicy::default();
    let cfg = ProbeConfig::default();
    for seed in 0..5u64 {
        let state = random_rank_r_state(2, 3, 2, 1000 + seed, &policy).unwrap();
        let family = BlockFamily::from_state(&state, &policy);
        let grid = grid_min_rank(&family, &policy);
        let probed = min_pencil_rank(&family, &cfg, &policy).unwrap();
        assert_eq!(
            probed.min_rank, grid,
            "probe and grid disagree at seed {seed}"
        );
    }
}
