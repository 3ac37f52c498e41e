//! Schmidt-number lower bounds for bipartite mixed states.
//!
//! A mixed state on `C^m ⊗ C^n` with range basis `v_1, …, v_s` determines a
//! matrix pencil: each basis vector has an `m×n` coefficient matrix, and every
//! direction `r` in `CP^{m-1}` yields the `n×s` matrix whose column `l` is
//! `(A^l)^T r`. The set of directions where the pencil rank drops to `k` or
//! below is the rank-`k` degeneracy locus of the state. Certified emptiness of
//! such a locus converts into a lower bound on the Schmidt number, i.e. a
//! dimension witness for the entanglement needed to assemble the state.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] — rank decisions, Hermitian eigendecomposition, seeded sampling;
//! * [`states`] — pure/ensemble states, coefficient matrices, Schmidt data;
//! * [`locus`] — block families, pencil evaluation, emptiness certificates;
//! * [`bounds`] — certified and generic Schmidt-number bounds;
//! * [`experiments`] — randomized trials and a product-vector subspace construction;
//! * [`statefile`] — the JSON interchange format consumed by the CLI.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod locus;
pub mod states;
pub mod statefile;

pub use error::{Error, Result};
pub use linalg::RankPolicy;
pub use locus::{BlockFamily, EmptinessCertificate, ProbeConfig, Verdict};
pub use states::{EnsembleState, PureState, SchmidtInfo};

