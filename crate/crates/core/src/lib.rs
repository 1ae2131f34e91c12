//! Tournament score sequences.
//!
//! A score sequence is the nondecreasing list of out-degrees of a
//! tournament. This crate checks Landau's conditions, splits sequences into
//! strong summands, works with the zero-sum multisets `EGZ_n` (size-`n`
//! multisets over `Z_n` summing to `n(n-1)/2 mod n`), implements the
//! bijection between pointed score sequences and pairs
//! `(EGZ_k multiset, score sequence of length n-k)`, and counts score
//! sequences three independent ways:
//!
//! - the quadratic recursion `n |S_n| = sum_k |S_{n-k}| |EGZ_k|`,
//! - a sum over integer partitions of `n`,
//! - an average over the symmetric group.
//!
//! Everything is cross-checked against the brute-force enumerators in
//! [`oracle`].

pub mod bijection;
pub mod counting;
pub mod egz;
mod error;
pub mod oracle;
pub mod poly;
pub mod score;
mod strategy;
pub mod text;

pub use bijection::{f_inverse, f_map, mu_minus, phi, phi_inverse, PhiImage};
pub use counting::{CountTable, OpStats};
pub use egz::{is_egz, EgzMultiset, DEFAULT_ENUMERATION_CAP};
pub use error::{Error, LandauViolation, Result};
pub use poly::IntPolynomial;
pub use score::{is_score_sequence, PointedScoreSequence, ScoreSequence, StrongDecomposition};
pub use strategy::Strategy;

/// `k choose 2`.
#[inline]
pub(crate) fn choose2(k: usize) -> i64 {
    let k = k as i64;
    k * (k - 1) / 2
}
