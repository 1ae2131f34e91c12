//! Score sequences, Landau's conditions, strong summands and cyclic shifts.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::choose2;
use crate::error::{Error, LandauViolation, Result};
use crate::text::SeqDisplay;

/// Returns the first Landau condition `values` violates, or `None` if it is a
/// score sequence. Conditions are checked in order: range and monotonicity
/// (scanning left to right), prefix sums, then the total.
pub fn landau_violation(values: &[i64]) -> Option<LandauViolation> {
    let n = values.len();
    let max = n as i64 - 1;
    for (index, &value) in values.iter().enumerate() {
        if value < 0 || value > max {
            return Some(LandauViolation::OutOfRange { index, value, max });
        }
        if index > 0 && value < values[index - 1] {
            return Some(LandauViolation::Decreasing { index });
        }
    }
    let mut sum = 0i64;
    for k in 1..n {
        sum += values[k - 1];
        if sum < choose2(k) {
            return Some(LandauViolation::PrefixTooSmall {
                k,
                sum,
                required: choose2(k),
            });
        }
    }
    let total: i64 = values.iter().sum();
    if total != choose2(n) {
        return Some(LandauViolation::WrongTotal {
            sum: total,
            required: choose2(n),
        });
    }
    None
}

/// Landau's theorem. The empty list is a score sequence.
pub fn is_score_sequence(values: &[i64]) -> bool {
    landau_violation(values).is_none()
}

/// `sorted((v + j) mod n)` for every `v` in `values`.
pub fn shift_residues(values: &[usize], n: usize, j: i64) -> Vec<usize> {
    debug_assert!(n > 0);
    let j = j.rem_euclid(n as i64) as usize;
    let mut out: Vec<usize> = values.iter().map(|&v| (v + j) % n).collect();
    out.sort_unstable();
    out
}

/// A sequence satisfying Landau's conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<usize>")]
pub struct ScoreSequence(Vec<usize>);

impl ScoreSequence {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let ints: Vec<i64> = values
            .iter()
            .map(|&v| v.min(i64::MAX as usize) as i64)
            .collect();
        match landau_violation(&ints) {
            None => Ok(ScoreSequence(values)),
            Some(v) => Err(Error::NotAScoreSequence(v)),
        }
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        match landau_violation(values) {
            None => Ok(ScoreSequence(values.iter().map(|&v| v as usize).collect())),
            Some(v) => Err(Error::NotAScoreSequence(v)),
        }
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(
            is_score_sequence(&values.iter().map(|&v| v as i64).collect::<Vec<_>>()),
            "{values:?}"
        );
        ScoreSequence(values)
    }

    pub fn empty() -> Self {
        ScoreSequence(Vec::new())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every proper prefix sum exceeds `k choose 2`. The empty sequence is
    /// not strong.
    pub fn is_strong(&self) -> bool {
        !self.is_empty() && self.cut_points().is_empty()
    }

    /// Lengths `k` in `[1, n)` whose prefix sum is exactly `k choose 2`; the
    /// boundaries between consecutive strong summands.
    pub fn cut_points(&self) -> Vec<usize> {
        let mut cuts = Vec::new();
        let mut sum = 0i64;
        for k in 1..self.len() {
            sum += self.0[k - 1] as i64;
            if sum == choose2(k) {
                cuts.push(k);
            }
        }
        cuts
    }

    /// `self ⊕ other`: `other` shifted up by `self.len()` and appended.
    pub fn direct_sum(&self, other: &ScoreSequence) -> ScoreSequence {
        let k = self.len();
        let mut values = Vec::with_capacity(k + other.len());
        values.extend_from_slice(&self.0);
        values.extend(other.0.iter().map(|&v| v + k));
        ScoreSequence(values)
    }

    /// The unique decomposition into nonempty strong summands.
    pub fn strong_summands(&self) -> Result<StrongDecomposition> {
        if self.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut bounds = vec![0];
        bounds.extend(self.cut_points());
        bounds.push(self.len());
        let summands = bounds
            .windows(2)
            .map(|w| ScoreSequence(self.0[w[0]..w[1]].iter().map(|&v| v - w[0]).collect()))
            .collect();
        Ok(StrongDecomposition { summands })
    }

    /// Positions of the last strong summand.
    pub fn last_summand_window(&self) -> Result<Range<usize>> {
        if self.is_empty() {
            return Err(Error::EmptySequence);
        }
        let start = self.cut_points().last().copied().unwrap_or(0);
        Ok(start..self.len())
    }

    /// `s + j`: add `j` to every score, reduce mod `n`, sort. The result is
    /// generally not a score sequence.
    pub fn shift(&self, j: i64) -> Result<Vec<usize>> {
        if self.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(shift_residues(&self.0, self.len(), j))
    }

    /// All `j` in `[0, n)` for which `s + j` is again a score sequence,
    /// ascending: `0` and every suffix length of the strong decomposition.
    pub fn rotation_shifts(&self) -> Result<Vec<usize>> {
        if self.is_empty() {
            return Err(Error::EmptySequence);
        }
        let n = self.len();
        let mut shifts: Vec<usize> = std::iter::once(0)
            .chain(self.cut_points().into_iter().map(|c| n - c))
            .collect();
        shifts.sort_unstable();
        Ok(shifts)
    }

    /// Number of positions holding the value `i`.
    pub fn fiber_count(&self, i: usize) -> Result<usize> {
        if i >= self.len() {
            return Err(Error::PointOutOfRange {
                point: i,
                len: self.len(),
            });
        }
        Ok(self.0.iter().filter(|&&v| v == i).count())
    }
}

impl TryFrom<Vec<i64>> for ScoreSequence {
    type Error = Error;

    fn try_from(values: Vec<i64>) -> Result<Self> {
        ScoreSequence::from_ints(&values)
    }
}

impl From<ScoreSequence> for Vec<usize> {
    fn from(s: ScoreSequence) -> Self {
        s.0
    }
}

impl fmt::Display for ScoreSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SeqDisplay(&self.0).fmt(f)
    }
}

/// `t_1 ⊕ t_2 ⊕ … ⊕ t_k` with every `t_i` nonempty and strong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongDecomposition {
    summands: Vec<ScoreSequence>,
}

impl StrongDecomposition {
    pub fn summands(&self) -> &[ScoreSequence] {
        &self.summands
    }

    pub fn into_summands(self) -> Vec<ScoreSequence> {
        self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.summands.iter().map(ScoreSequence::len).collect()
    }

    /// Direct sum of the summands in order.
    pub fn recompose(&self) -> ScoreSequence {
        direct_sum_all(&self.summands)
    }

    /// `t_start ⊕ … ⊕ t_k ⊕ t_1 ⊕ … ⊕ t_{start-1}` (0-based `start`).
    pub fn rotated(&self, start: usize) -> ScoreSequence {
        let (head, tail) = self.summands.split_at(start);
        direct_sum_all(tail.iter().chain(head))
    }
}

impl fmt::Display for StrongDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, t) in self.summands.iter().enumerate() {
            if idx > 0 {
                f.write_str(" | ")?;
            }
            t.fmt(f)?;
        }
        Ok(())
    }
}

/// Left-to-right direct sum; the empty sum is the empty sequence.
pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a ScoreSequence>) -> ScoreSequence {
    parts
        .into_iter()
        .fold(ScoreSequence::empty(), |acc, t| acc.direct_sum(t))
}

/// A score sequence with a distinguished position `point` in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PointedRepr", into = "PointedRepr")]
pub struct PointedScoreSequence {
    seq: ScoreSequence,
    point: usize,
}

#[derive(Serialize, Deserialize)]
struct PointedRepr {
    seq: ScoreSequence,
    point: usize,
}

impl PointedScoreSequence {
    pub fn new(seq: ScoreSequence, point: usize) -> Result<Self> {
        if point >= seq.len() {
            return Err(Error::PointOutOfRange {
                point,
                len: seq.len(),
            });
        }
        Ok(PointedScoreSequence { seq, point })
    }

    pub fn seq(&self) -> &ScoreSequence {
        &self.seq
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|s^{-1}(i)|`, reading the point as a value.
    pub fn fiber_size(&self) -> usize {
        self.seq.0.iter().filter(|&&v| v == self.point).count()
    }

    /// Whether the point lies in the last strong summand.
    pub fn in_last_summand(&self) -> bool {
        self.seq
            .last_summand_window()
            .is_ok_and(|w| w.contains(&self.point))
    }

    pub fn into_parts(self) -> (ScoreSequence, usize) {
        (self.seq, self.point)
    }
}

impl TryFrom<PointedRepr> for PointedScoreSequence {
    type Error = Error;

    fn try_from(r: PointedRepr) -> Result<Self> {
        PointedScoreSequence::new(r.seq, r.point)
    }
}

impl From<PointedScoreSequence> for PointedRepr {
    fn from(p: PointedScoreSequence) -> Self {
        PointedRepr {
            seq: p.seq,
            point: p.point,
        }
    }
}

impl fmt::Display for PointedScoreSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.seq, self.point)
    }
}
