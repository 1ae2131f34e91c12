//! Multisets of size `n` over `Z_n` whose elements sum to `n choose 2`
//! modulo `n`.
//!
//! A multiset is stored canonically as its sorted residue list, so equality,
//! ordering and hashing are those of the list.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::score::{is_score_sequence, shift_residues, ScoreSequence};
use crate::text::SetDisplay;

/// Largest `n` the enumerators accept unless told otherwise. `|EGZ_n|` and
/// `|S_n|` both grow roughly like `4^n`.
pub const DEFAULT_ENUMERATION_CAP: usize = 14;

fn target(n: usize) -> usize {
    (n * (n - 1) / 2) % n
}

/// Whether `values`, read as elements of `Z_n`, form a member of `EGZ_n`.
pub fn is_egz(values: &[i64], n: usize) -> bool {
    EgzMultiset::new(values, n).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<usize>")]
pub struct EgzMultiset {
    residues: Vec<usize>,
}

impl EgzMultiset {
    /// Reduces every value mod `n`, sorts, and checks the size and the sum.
    pub fn new(values: &[i64], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotEgz("n must be at least 1".into()));
        }
        if values.len() != n {
            return Err(Error::NotEgz(format!(
                "has {} elements, expected {n}",
                values.len()
            )));
        }
        let mut residues: Vec<usize> = values
            .iter()
            .map(|&v| v.rem_euclid(n as i64) as usize)
            .collect();
        residues.sort_unstable();
        let sum = residues.iter().sum::<usize>() % n;
        if sum != target(n) {
            return Err(Error::NotEgz(format!(
                "sum is {sum} mod {n}, expected {}",
                target(n)
            )));
        }
        Ok(EgzMultiset { residues })
    }

    /// Size taken from the list length.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        EgzMultiset::new(values, values.len())
    }

    pub(crate) fn from_sorted_unchecked(residues: Vec<usize>) -> Self {
        debug_assert!(residues.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(
            residues.is_empty()
                || residues.iter().sum::<usize>() % residues.len() == target(residues.len())
        );
        EgzMultiset { residues }
    }

    pub fn n(&self) -> usize {
        self.residues.len()
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    /// `|M|_r`.
    pub fn multiplicity(&self, r: usize) -> usize {
        self.residues.iter().filter(|&&x| x == r).count()
    }

    pub fn zeros(&self) -> usize {
        self.multiplicity(0)
    }

    /// `{b_1 + 1, …, b_n + n}` for the sorted residues `b_1 <= … <= b_n`: an
    /// `n`-subset of `[1, 2n-1]` whose sum is a multiple of `n`. Ascending.
    pub fn to_subset(&self) -> Vec<usize> {
        self.residues
            .iter()
            .enumerate()
            .map(|(idx, &b)| b + idx + 1)
            .collect()
    }

    /// Inverse of [`to_subset`](Self::to_subset). `subset` may be in any order.
    pub fn from_subset(subset: &[usize], n: usize) -> Result<Self> {
        if subset.len() != n || n == 0 {
            return Err(Error::SubsetSize {
                expected: n,
                found: subset.len(),
            });
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        let max = 2 * n - 1;
        if let Some(&value) = sorted.iter().find(|&&a| a < 1 || a > max) {
            return Err(Error::SubsetRange { value, max });
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::SubsetDuplicate { value: w[0] });
        }
        let sum: usize = sorted.iter().sum();
        if !sum.is_multiple_of(n) {
            return Err(Error::SubsetSum { sum, n });
        }
        // strictly increasing a_i in [1, 2n-1] keeps b_i = a_i - i in [0, n-1]
        // and nondecreasing
        let residues = sorted
            .iter()
            .enumerate()
            .map(|(idx, &a)| a - (idx + 1))
            .collect();
        Ok(EgzMultiset::from_sorted_unchecked(residues))
    }

    /// Every `j` in `[0, n)` such that `M - j` (sorted) is a score sequence,
    /// i.e. `mu(s + j) = M` for that score sequence `s`. Ascending.
    pub fn realizing_shifts(&self) -> Vec<usize> {
        let n = self.n();
        (0..n)
            .filter(|&j| {
                is_score_sequence(&as_ints(&shift_residues(&self.residues, n, -(j as i64))))
            })
            .collect()
    }

    /// The score sequence `s` and the smallest `j` in `[0, n)` with
    /// `mu(s + j) = M`.
    ///
    /// Every member of `EGZ_n` has such a realization, so failing to find one
    /// is a bug and panics.
    pub fn realize(&self) -> (ScoreSequence, usize) {
        let n = self.n();
        for j in 0..n {
            let candidate = shift_residues(&self.residues, n, -(j as i64));
            if is_score_sequence(&as_ints(&candidate)) {
                return (ScoreSequence::from_vec_unchecked(candidate), j);
            }
        }
        panic!("{self} has no realization as a shifted score sequence");
    }
}

fn as_ints(values: &[usize]) -> Vec<i64> {
    values.iter().map(|&v| v as i64).collect()
}

impl TryFrom<Vec<i64>> for EgzMultiset {
    type Error = Error;

    fn try_from(values: Vec<i64>) -> Result<Self> {
        EgzMultiset::from_values(&values)
    }
}

impl From<EgzMultiset> for Vec<usize> {
    fn from(m: EgzMultiset) -> Self {
        m.residues
    }
}

impl fmt::Display for EgzMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SetDisplay(&self.residues).fmt(f)
    }
}

/// All of `EGZ_n` in lexicographic order of the sorted residue lists.
///
/// The first `n - 1` residues run over nondecreasing tuples; the last one is
/// then forced by the sum condition and kept only if it does not break the
/// ordering.
#[derive(Debug, Clone)]
pub struct EgzIter {
    n: usize,
    prefix: Vec<usize>,
    started: bool,
    done: bool,
}

impl EgzIter {
    fn advance(&mut self) -> bool {
        let top = self.n - 1;
        match self.prefix.iter().rposition(|&v| v < top) {
            Some(idx) => {
                let v = self.prefix[idx] + 1;
                self.prefix[idx..].fill(v);
                true
            }
            None => false,
        }
    }
}

impl Iterator for EgzIter {
    type Item = EgzMultiset;

    fn next(&mut self) -> Option<EgzMultiset> {
        while !self.done {
            if !self.started {
                self.started = true;
            } else if !self.advance() {
                self.done = true;
                break;
            }
            let n = self.n;
            let partial = self.prefix.iter().sum::<usize>() % n;
            let last = (target(n) + n - partial) % n;
            if self.prefix.last().is_none_or(|&prev| prev <= last) {
                let mut residues = Vec::with_capacity(n);
                residues.extend_from_slice(&self.prefix);
                residues.push(last);
                return Some(EgzMultiset { residues });
            }
        }
        None
    }
}

/// Streams `EGZ_n`. `n = 0` yields nothing.
pub fn enumerate_egz(n: usize, cap: usize) -> Result<EgzIter> {
    if n > cap {
        return Err(Error::AboveCap { n, cap });
    }
    Ok(EgzIter {
        n,
        prefix: vec![0; n.saturating_sub(1)],
        started: false,
        done: n == 0,
    })
}

/// `EGZ_n(t)`: the coefficient of `t^m` counts members with exactly `m` zeros.
pub fn egz_zero_poly(n: usize, cap: usize) -> Result<IntPolynomial> {
    let mut counts = vec![0u64; n + 1];
    for m in enumerate_egz(n, cap)? {
        counts[m.zeros()] += 1;
    }
    Ok(IntPolynomial::from_coeffs(counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(values: &[i64]) -> EgzMultiset {
        EgzMultiset::from_values(values).unwrap()
    }

    #[test]
    fn membership() {
        assert!(is_egz(&[0, 1, 2], 3));
        assert!(!is_egz(&[0, 0, 1], 3));
        assert!(is_egz(&[0, 0, 2, 4, 4], 5));
        assert!(is_egz(&[4, 0, 2, 0, 4], 5));
        assert!(!is_egz(&[0, 1], 3));
        assert!(!is_egz(&[], 0));
        // residues are read mod n
        assert!(is_egz(&[-1, 2, 5], 3));
        assert_eq!(
            EgzMultiset::new(&[-1, 2, 5], 3).unwrap().residues(),
            &[2, 2, 2]
        );
    }

    #[test]
    fn enumerate_small() {
        let all: Vec<_> = enumerate_egz(3, 14)
            .unwrap()
            .map(|m| m.residues().to_vec())
            .collect();
        assert_eq!(
            all,
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]
        );
        let one: Vec<_> = enumerate_egz(1, 14).unwrap().collect();
        assert_eq!(one, vec![m(&[0])]);
        assert_eq!(enumerate_egz(0, 14).unwrap().count(), 0);
        assert_eq!(
            enumerate_egz(15, 14).unwrap_err(),
            Error::AboveCap { n: 15, cap: 14 }
        );
    }

    #[test]
    fn enumerate_matches_brute_force() {
        // brute force: every sorted n-tuple over [0, n), keep the right sums
        fn brute(n: usize) -> Vec<Vec<usize>> {
            fn rec(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == n {
                    if cur.iter().sum::<usize>() % n == (n * (n - 1) / 2) % n {
                        out.push(cur.clone());
                    }
                    return;
                }
                for v in min..n {
                    cur.push(v);
                    rec(n, v, cur, out);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            rec(n, 0, &mut Vec::new(), &mut out);
            out
        }
        for n in 1..=7 {
            let got: Vec<_> = enumerate_egz(n, 14)
                .unwrap()
                .map(|m| m.residues().to_vec())
                .collect();
            assert_eq!(got, brute(n), "n = {n}");
        }
        assert_eq!(enumerate_egz(4, 14).unwrap().count(), 9);
    }

    #[test]
    fn zero_polynomials() {
        assert_eq!(
            egz_zero_poly(3, 14).unwrap(),
            IntPolynomial::from_coeffs([2, 1, 0, 1])
        );
        assert_eq!(
            egz_zero_poly(1, 14).unwrap(),
            IntPolynomial::from_coeffs([0, 1])
        );
        // frozen from an independent brute force
        assert_eq!(
            egz_zero_poly(5, 14).unwrap(),
            IntPolynomial::from_coeffs([12, 7, 4, 2, 0, 1])
        );
        assert_eq!(egz_zero_poly(5, 14).unwrap().eval(&1.into()), 26.into());
    }

    #[test]
    fn subsets() {
        assert_eq!(m(&[0, 1, 2]).to_subset(), vec![1, 3, 5]);
        assert_eq!(m(&[0, 0, 0]).to_subset(), vec![1, 2, 3]);
        assert_eq!(m(&[1, 1, 1]).to_subset(), vec![2, 3, 4]);
        assert_eq!(
            EgzMultiset::from_subset(&[5, 1, 3], 3).unwrap(),
            m(&[0, 1, 2])
        );
        assert_eq!(
            EgzMultiset::from_subset(&[1, 2, 3], 3).unwrap(),
            m(&[0, 0, 0])
        );
        assert_eq!(
            EgzMultiset::from_subset(&[2, 3, 4], 3).unwrap(),
            m(&[1, 1, 1])
        );
    }

    #[test]
    fn subset_errors() {
        assert_eq!(
            EgzMultiset::from_subset(&[1, 2], 3),
            Err(Error::SubsetSize {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            EgzMultiset::from_subset(&[1, 2, 6], 3),
            Err(Error::SubsetRange { value: 6, max: 5 })
        );
        assert_eq!(
            EgzMultiset::from_subset(&[0, 2, 4], 3),
            Err(Error::SubsetRange { value: 0, max: 5 })
        );
        assert_eq!(
            EgzMultiset::from_subset(&[2, 2, 5], 3),
            Err(Error::SubsetDuplicate { value: 2 })
        );
        assert_eq!(
            EgzMultiset::from_subset(&[1, 2, 4], 3),
            Err(Error::SubsetSum { sum: 7, n: 3 })
        );
    }

    #[test]
    fn realizations() {
        let (s, j) = m(&[0, 0, 0]).realize();
        assert_eq!((s.values(), j), (&[1, 1, 1][..], 2));
        let (s, j) = m(&[0, 1, 2]).realize();
        assert_eq!((s.values(), j), (&[0, 1, 2][..], 0));
        let (s, j) = m(&[0, 0, 2, 4, 4]).realize();
        assert_eq!((s.values(), j), (&[0, 2, 2, 3, 3][..], 2));
        assert_eq!(m(&[0, 1, 2]).realizing_shifts(), vec![0, 1, 2]);
        assert_eq!(m(&[0, 0, 0]).realizing_shifts(), vec![2]);
    }
}
