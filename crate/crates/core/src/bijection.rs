//! The bijection `Φ` from pointed score sequences of length `n` onto
//! `⋃_{k=1..n} EGZ_k × S_{n-k}`, and its building block
//! `f(s, i) = mu(s - i)` on sequences pointed inside their last strong
//! summand.
//!
//! Both inverses are computed constructively and check at runtime that the
//! preimage they find is unique.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::egz::EgzMultiset;
use crate::error::{Error, Result};
use crate::score::{shift_residues, PointedScoreSequence, ScoreSequence};

/// `mu(s - i)`: the multiset `{(s_x - i) mod n}`. Subtracting a constant
/// changes the sum by a multiple of `n`, so the result is always in `EGZ_n`.
pub fn mu_minus(s: &ScoreSequence, i: usize) -> Result<EgzMultiset> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    if i >= s.len() {
        return Err(Error::PointOutOfRange {
            point: i,
            len: s.len(),
        });
    }
    Ok(EgzMultiset::from_sorted_unchecked(shift_residues(
        s.values(),
        s.len(),
        -(i as i64),
    )))
}

/// `f(s, i) = mu(s - i)`, defined when `i` lies in the last strong summand.
/// The number of zeros in the image equals the number of `i`s in `s`.
pub fn f_map(p: &PointedScoreSequence) -> Result<EgzMultiset> {
    let window = p.seq().last_summand_window()?;
    if !window.contains(&p.point()) {
        return Err(Error::NotInLastSummand {
            point: p.point(),
            window_start: window.start,
            len: p.len(),
        });
    }
    mu_minus(p.seq(), p.point())
}

/// The unique `(s, i)` pointed in its last strong summand with
/// `f(s, i) = m`.
///
/// Starts from the smallest realization `mu(s + j) = m` and tries every
/// rotation of the strong summands of `s`; rotating by `r` moves the point
/// by `r`. Exactly one candidate must land in its last-summand window.
pub fn f_inverse(m: &EgzMultiset) -> Result<PointedScoreSequence> {
    let n = m.n();
    let (s, j) = m.realize();
    let base_point = (n - j) % n;
    let mut found = None;
    for r in s.rotation_shifts()? {
        let rotated = ScoreSequence::from_vec_unchecked(s.shift(r as i64)?);
        let candidate = PointedScoreSequence::new(rotated, (base_point + r) % n)?;
        if candidate.in_last_summand() {
            if found.is_some() {
                return Err(Error::Inconsistent(format!(
                    "{m} has more than one preimage under f"
                )));
            }
            found = Some(candidate);
        }
    }
    found.ok_or_else(|| Error::Inconsistent(format!("{m} has no preimage under f")))
}

/// `(M, v)` with `M ∈ EGZ_k` and `v ∈ S_{n-k}`, `1 <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PhiImageRepr", into = "PhiImageRepr")]
pub struct PhiImage {
    egz: EgzMultiset,
    rest: ScoreSequence,
}

/// Wire form: `{"egz": [...], "rest": [...], "n": n, "k": k}`.
#[derive(Serialize, Deserialize)]
struct PhiImageRepr {
    egz: EgzMultiset,
    rest: ScoreSequence,
    n: usize,
    k: usize,
}

impl PhiImage {
    pub fn new(egz: EgzMultiset, rest: ScoreSequence) -> Self {
        PhiImage { egz, rest }
    }

    pub fn egz(&self) -> &EgzMultiset {
        &self.egz
    }

    pub fn rest(&self) -> &ScoreSequence {
        &self.rest
    }

    pub fn k(&self) -> usize {
        self.egz.n()
    }

    pub fn n(&self) -> usize {
        self.egz.n() + self.rest.len()
    }
}

impl TryFrom<PhiImageRepr> for PhiImage {
    type Error = Error;

    fn try_from(r: PhiImageRepr) -> Result<Self> {
        if r.k != r.egz.n() || r.n != r.k + r.rest.len() {
            return Err(Error::NotEgz(format!(
                "declared n = {}, k = {} do not match egz size {} and rest length {}",
                r.n,
                r.k,
                r.egz.n(),
                r.rest.len()
            )));
        }
        Ok(PhiImage::new(r.egz, r.rest))
    }
}

impl From<PhiImage> for PhiImageRepr {
    fn from(img: PhiImage) -> Self {
        PhiImageRepr {
            n: img.n(),
            k: img.k(),
            egz: img.egz,
            rest: img.rest,
        }
    }
}

impl fmt::Display for PhiImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.egz, self.rest)
    }
}

/// `Φ(s, i) = (mu(u - i), v)` where `s = u ⊕ v` and `u` is the shortest
/// prefix of whole strong summands that contains position `i`.
pub fn phi(p: &PointedScoreSequence) -> PhiImage {
    let s = p.seq();
    let i = p.point();
    let split = s
        .cut_points()
        .into_iter()
        .find(|&c| i < c)
        .unwrap_or(s.len());
    let (head, tail) = s.values().split_at(split);
    let u = ScoreSequence::from_vec_unchecked(head.to_vec());
    let v = ScoreSequence::from_vec_unchecked(tail.iter().map(|&x| x - split).collect());
    let egz = mu_minus(&u, i).expect("point lies inside u by construction");
    PhiImage::new(egz, v)
}

/// `Φ^{-1}(M, v) = (u ⊕ v, i)` with `(u, i) = f^{-1}(M)`.
pub fn phi_inverse(img: &PhiImage) -> Result<PointedScoreSequence> {
    let (u, i) = f_inverse(img.egz())?.into_parts();
    PointedScoreSequence::new(u.direct_sum(img.rest()), i)
}
