//! Counting score sequences.
//!
//! `|S_n|` is computed by the recursion `n |S_n| = sum_{k=1..n} |S_{n-k}| |EGZ_k|`
//! with `|EGZ_k|` from the divisor sum
//! `(1/2k) sum_{d|k} (-1)^{k-d} phi(k/d) C(2d, d)`, and cross-checked by two
//! closed formulas: a sum over integer partitions and an average over all
//! permutations. Strong sequences follow from `S = 1 + S T`.
//!
//! Every division in these formulas is exact; a nonzero remainder is reported
//! as [`Error::Inconsistent`].

mod table_io;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::egz::egz_zero_poly;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::strategy::Strategy;

pub use table_io::{TableError, TABLE_FORMAT_TAG, TABLE_HEADER};

/// Literal permutation iteration is only used up to this size.
pub const PERMUTATION_CAP: usize = 8;

// convolutions shorter than this stay on one thread
const PAR_MIN_LEN: usize = 64;

fn exact_div(num: &BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(q)
}

/// `phi(1), …, phi(n)` by an Eratosthenes-style sieve.
pub fn totient_sieve(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi.remove(0);
    phi
}

/// `C(2d, d)` for `d = 0..=n`.
fn central_binomials(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    let mut b = BigUint::one();
    for d in 0..=n {
        out.push(b.clone());
        // C(2d+2, d+1) = C(2d, d) * 2(2d+1) / (d+1), exact at every step
        b = b * (2 * (2 * d as u64 + 1)) / (d as u64 + 1);
    }
    out
}

/// `|EGZ_n|` given `phi(1..=n)` and `C(2d, d)` for `d <= n`. Returns the
/// value and the number of divisor-sum terms evaluated.
fn egz_count_with(n: usize, totients: &[u64], binomials: &[BigUint]) -> Result<(BigUint, u64)> {
    if n == 0 {
        return Ok((BigUint::zero(), 0));
    }
    let mut sum = BigInt::zero();
    let mut terms = 0;
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let term = BigInt::from(binomials[d].clone()) * totients[n / d - 1];
        if (n - d).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        terms += 1;
    }
    let sum = sum
        .to_biguint()
        .ok_or_else(|| Error::Inconsistent(format!("divisor sum for |EGZ_{n}| is negative")))?;
    Ok((
        exact_div(&sum, &BigUint::from(2 * n), "|EGZ_n| divisor sum")?,
        terms,
    ))
}

/// `|EGZ_n|` by the divisor-sum formula. `|EGZ_0|` is taken to be 0.
pub fn egz_count(n: usize) -> Result<BigUint> {
    let totients = totient_sieve(n);
    let binomials = central_binomials(n);
    egz_count_with(n, &totients, &binomials).map(|(v, _)| v)
}

/// Operation counts in the unit-cost model: one big-integer multiply-add per
/// convolution term and one per divisor-sum term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpStats {
    pub convolution_mul_adds: u64,
    pub egz_terms: u64,
    pub strong_mul_adds: u64,
    /// Decimal digits of the largest intermediate convolution sum.
    pub peak_digits: usize,
}

impl OpStats {
    /// Work attributable to computing `|S_k|` for all `k <= n`.
    pub fn score_ops(&self) -> u64 {
        self.convolution_mul_adds + self.egz_terms
    }
}

/// `|S_k|`, `|T_k|` and `|EGZ_k|` for `k = 0..=max_n`.
///
/// Row 0 is `(1, 0, 0)`. Extending a table only computes the new rows.
#[derive(Debug, Clone)]
pub struct CountTable {
    scores: Vec<BigUint>,
    strong: Vec<BigUint>,
    egz: Vec<BigUint>,
    stats: OpStats,
    strategy: Strategy,
}

impl PartialEq for CountTable {
    fn eq(&self, other: &Self) -> bool {
        self.scores == other.scores && self.strong == other.strong && self.egz == other.egz
    }
}

impl Eq for CountTable {}

impl Default for CountTable {
    fn default() -> Self {
        CountTable::new()
    }
}

impl CountTable {
    pub fn new() -> Self {
        CountTable::with_strategy(Strategy::default())
    }

    pub fn with_strategy(strategy: Strategy) -> Self {
        CountTable {
            scores: vec![BigUint::one()],
            strong: vec![BigUint::zero()],
            egz: vec![BigUint::zero()],
            stats: OpStats::default(),
            strategy,
        }
    }

    /// Builds a table from raw columns without checking any identity; see
    /// [`first_violation`](Self::first_violation). Columns must have equal
    /// nonzero length.
    pub fn from_columns_unchecked(
        scores: Vec<BigUint>,
        strong: Vec<BigUint>,
        egz: Vec<BigUint>,
    ) -> Self {
        assert!(
            !scores.is_empty() && scores.len() == strong.len() && scores.len() == egz.len(),
            "count table columns must have equal nonzero length"
        );
        CountTable {
            scores,
            strong,
            egz,
            stats: OpStats::default(),
            strategy: Strategy::default(),
        }
    }

    pub fn max_n(&self) -> usize {
        self.scores.len() - 1
    }

    pub fn scores(&self) -> &[BigUint] {
        &self.scores
    }

    pub fn strong(&self) -> &[BigUint] {
        &self.strong
    }

    pub fn egz(&self) -> &[BigUint] {
        &self.egz
    }

    pub fn stats(&self) -> &OpStats {
        &self.stats
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn set_strategy(&mut self, strategy: Strategy) {
        self.strategy = strategy;
    }

    fn require(&self, n: usize) -> Result<()> {
        if n > self.max_n() {
            return Err(Error::TableTooShort {
                max_n: self.max_n(),
                needed: n,
            });
        }
        Ok(())
    }

    /// Fills rows `max_n + 1 ..= n`. Earlier rows are left untouched.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        let old = self.max_n();
        if n <= old {
            return Ok(());
        }
        let totients = totient_sieve(n);
        let binomials = central_binomials(n);
        let fresh = self
            .strategy
            .map_range(old + 1..n + 1, |m| egz_count_with(m, &totients, &binomials));
        for entry in fresh {
            let (value, terms) = entry?;
            self.egz.push(value);
            self.stats.egz_terms += terms;
        }

        let mut peak: Option<BigUint> = None;
        for m in old + 1..=n {
            let sum = self.convolution(m);
            self.stats.convolution_mul_adds += m as u64;
            let value = exact_div(&sum, &BigUint::from(m), "n |S_n| convolution")?;
            if peak.as_ref().is_none_or(|p| &sum > p) {
                peak = Some(sum);
            }
            self.scores.push(value);

            let t = strong_entry(&self.scores, &self.strong, m)?;
            self.stats.strong_mul_adds += m as u64 - 1;
            self.strong.push(t);
        }
        if let Some(p) = peak {
            self.stats.peak_digits = self.stats.peak_digits.max(p.to_string().len());
        }
        Ok(())
    }

    /// `sum_{k=1..m} |S_{m-k}| |EGZ_k|`, split into associative partial sums.
    fn convolution(&self, m: usize) -> BigUint {
        let scores = &self.scores;
        let egz = &self.egz;
        self.strategy.fold_range(
            1..m + 1,
            PAR_MIN_LEN,
            BigUint::zero,
            |acc, k| acc + &scores[m - k] * &egz[k],
            |a, b| a + b,
        )
    }

    /// First row (ascending) at which a defining identity fails:
    /// the base row, `n |S_n| = sum |S_{n-k}| |EGZ_k|`,
    /// `sum_{i=1..n} |T_i| |S_{n-i}| = |S_n|`, or the `|EGZ_n|` divisor sum.
    pub fn first_violation(&self) -> Option<(usize, String)> {
        if !self.scores[0].is_one() || !self.strong[0].is_zero() || !self.egz[0].is_zero() {
            return Some((0, "row 0 must be S=1, T=0, EGZ=0".into()));
        }
        let n = self.max_n();
        let totients = totient_sieve(n);
        let binomials = central_binomials(n);
        for m in 1..=n {
            match egz_count_with(m, &totients, &binomials) {
                Ok((e, _)) if e == self.egz[m] => {}
                _ => {
                    return Some((
                        m,
                        format!("|EGZ_{m}| does not match the divisor-sum formula"),
                    ))
                }
            }
            let conv: BigUint = (1..=m).map(|k| &self.scores[m - k] * &self.egz[k]).sum();
            if conv != &self.scores[m] * m {
                return Some((m, format!("{m} |S_{m}| != sum |S_{{{m}-k}}| |EGZ_k|")));
            }
            let series: BigUint = (1..=m).map(|i| &self.strong[i] * &self.scores[m - i]).sum();
            if series != self.scores[m] {
                return Some((m, format!("sum |T_i| |S_{{{m}-i}}| != |S_{m}|")));
            }
        }
        None
    }
}

/// `|T_m| = |S_m| - sum_{i=1..m-1} |T_i| |S_{m-i}|`.
fn strong_entry(scores: &[BigUint], strong: &[BigUint], m: usize) -> Result<BigUint> {
    let sub: BigUint = (1..m).map(|i| &strong[i] * &scores[m - i]).sum();
    if sub > scores[m] {
        return Err(Error::Inconsistent(format!("|T_{m}| would be negative")));
    }
    Ok(&scores[m] - sub)
}

/// Count table for `k <= n`, default strategy.
pub fn score_counts(n: usize) -> Result<CountTable> {
    score_counts_with(n, Strategy::default())
}

pub fn score_counts_with(n: usize, strategy: Strategy) -> Result<CountTable> {
    let mut table = CountTable::with_strategy(strategy);
    table.extend_to(n)?;
    Ok(table)
}

/// `|T_k|` for `k = 0..scores.len()` from `|S_k|` (with `scores[0] = 1`).
pub fn strong_counts(scores: &[BigUint]) -> Result<Vec<BigUint>> {
    let mut strong = vec![BigUint::zero()];
    for m in 1..scores.len() {
        let t = strong_entry(scores, &strong, m)?;
        strong.push(t);
    }
    Ok(strong)
}

/// Calls `f` with the multiplicity vector (`mult[k]` = number of parts equal
/// to `k`, index 0 unused) of every partition of `n`, largest parts first.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(rest: usize, max_part: usize, mult: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if rest == 0 {
            f(mult);
            return;
        }
        for part in (1..=rest.min(max_part)).rev() {
            mult[part] += 1;
            rec(rest - part, part, mult, f);
            mult[part] -= 1;
        }
    }
    let mut mult = vec![0; n + 1];
    rec(n, n, &mut mult, &mut f);
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

fn check_egz_len(n: usize, egz: &[BigUint]) -> Result<()> {
    if egz.len() <= n {
        return Err(Error::TableTooShort {
            max_n: egz.len().saturating_sub(1),
            needed: n,
        });
    }
    Ok(())
}

/// `|S_n| = sum over partitions 1 m_1 + … + n m_n = n of
/// prod |EGZ_k|^{m_k} / (k^{m_k} m_k!)`.
///
/// Terms are brought over the common denominator `n!`; each `n! / z` is a
/// conjugacy-class size and must divide exactly, as must the final sum.
/// `egz[k]` is `|EGZ_k|`; index 0 is ignored.
pub fn closed_formula_partitions(n: usize, egz: &[BigUint]) -> Result<BigUint> {
    check_egz_len(n, egz)?;
    let n_fact = factorial(n);
    let mut numerator = BigUint::zero();
    let mut failure = None;
    for_each_partition(n, |mult| {
        if failure.is_some() {
            return;
        }
        let mut z = BigUint::one();
        let mut product = BigUint::one();
        for (k, &m) in mult.iter().enumerate().skip(1).filter(|&(_, &m)| m > 0) {
            z *= BigUint::from(k).pow(m as u32) * factorial(m);
            product *= egz[k].pow(m as u32);
        }
        match exact_div(&n_fact, &z, "class size n!/z") {
            Ok(class_size) => numerator += class_size * product,
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    exact_div(&numerator, &n_fact, "partition formula")
}

/// Advances `perm` to the next permutation in lexicographic order.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// `|S_n| = (1/n!) sum over all permutations of prod over cycles of
/// |EGZ_{cycle length}|`, by literally visiting all `n!` permutations.
/// Only for `n <= PERMUTATION_CAP`.
pub fn closed_formula_permutations(n: usize, egz: &[BigUint]) -> Result<BigUint> {
    if n > PERMUTATION_CAP {
        return Err(Error::AboveCap {
            n,
            cap: PERMUTATION_CAP,
        });
    }
    check_egz_len(n, egz)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    let mut total = BigUint::zero();
    loop {
        seen.fill(false);
        let mut product = BigUint::one();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            product *= &egz[len];
        }
        total += product;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    exact_div(&total, &factorial(n), "permutation formula")
}

/// `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..n as u64 {
        // C_{i+1} = C_i * 2(2i+1) / (i+2)
        c = c * (2 * (2 * i + 1)) / (i + 2);
    }
    c
}

/// `|{(s, i) : i in Im(s)}|` for length `n`, as `sum_{k=1..n} C_{k-1} |S_{n-k}|`.
pub fn svpt_count(n: usize, table: &CountTable) -> Result<BigUint> {
    table.require(n)?;
    Ok((1..=n).map(|k| catalan(k - 1) * &table.scores[n - k]).sum())
}

/// `S^pt_n(t) = sum_{k=1..n} EGZ_k(t) |S_{n-k}|`, with `EGZ_k(t)` from
/// enumeration (so `n` is bounded by `cap`).
pub fn pointed_poly(n: usize, table: &CountTable, cap: usize) -> Result<IntPolynomial> {
    table.require(n)?;
    let mut out = IntPolynomial::zero();
    for k in 1..=n {
        let factor = BigInt::from(table.scores[n - k].clone());
        out += &egz_zero_poly(k, cap)?.scaled(&factor);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn naive_totient(n: u64) -> u64 {
        (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn totients() {
        assert_eq!(totient_sieve(6), vec![1, 1, 2, 2, 4, 2]);
        assert_eq!(totient_sieve(1), vec![1]);
        assert_eq!(totient_sieve(12)[11], 4);
        let sieve = totient_sieve(300);
        for n in 1..=300u64 {
            assert_eq!(sieve[n as usize - 1], naive_totient(n), "phi({n})");
        }
    }

    #[test]
    fn egz_counts() {
        // frozen from brute-force enumeration (A145855)
        let expected = [1u64, 1, 4, 9, 26, 76, 246, 809, 2704, 9226, 32066, 112716];
        for (idx, &e) in expected.iter().enumerate() {
            assert_eq!(egz_count(idx + 1).unwrap(), big(e), "n = {}", idx + 1);
        }
        assert_eq!(egz_count(0).unwrap(), big(0));
    }

    #[test]
    fn score_and_strong_counts() {
        let table = score_counts(12).unwrap();
        // frozen from exhaustive Landau enumeration
        let s = [1u64, 1, 1, 2, 4, 9, 22, 59, 167, 490, 1486, 4639, 14805];
        let t = [0u64, 1, 0, 1, 1, 3, 7, 21, 61, 184, 573, 1835, 5969];
        assert_eq!(table.scores(), s.map(big).as_slice());
        assert_eq!(table.strong(), t.map(big).as_slice());
        assert_eq!(strong_counts(table.scores()).unwrap(), table.strong());
        assert_eq!(table.first_violation(), None);
    }

    #[test]
    fn larger_counts() {
        let table = score_counts(40).unwrap();
        // frozen from an independent Python evaluation of the recursion
        assert_eq!(table.scores()[20], big(259_451_116));
        assert_eq!(table.scores()[30], big(96_478_910_768_821));
        assert_eq!(table.scores()[40], "48693706951772723123".parse().unwrap());
    }

    #[test]
    fn extension_is_resumable() {
        let mut table = score_counts(10).unwrap();
        table.extend_to(25).unwrap();
        assert_eq!(table, score_counts(25).unwrap());
        table.extend_to(5).unwrap();
        assert_eq!(table.max_n(), 25);
    }

    #[test]
    fn strategies_agree() {
        let seq = score_counts_with(300, Strategy::Sequential).unwrap();
        let par = score_counts_with(300, Strategy::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.stats(), par.stats());
    }

    #[test]
    fn op_counts() {
        let table = score_counts(1).unwrap();
        assert_eq!(table.stats().convolution_mul_adds, 1);
        assert_eq!(table.stats().egz_terms, 1);
        let table = score_counts(100).unwrap();
        assert_eq!(table.stats().convolution_mul_adds, 5050);
        assert_eq!(table.stats().strong_mul_adds, 4950);
    }

    #[test]
    fn corrupted_rows_are_found() {
        let table = score_counts(8).unwrap();
        let mut scores = table.scores().to_vec();
        scores[6] += 1u32;
        let bad = CountTable::from_columns_unchecked(
            scores,
            table.strong().to_vec(),
            table.egz().to_vec(),
        );
        assert_eq!(bad.first_violation().map(|(n, _)| n), Some(6));
    }

    #[test]
    fn partitions() {
        let mut all = Vec::new();
        for_each_partition(4, |m| all.push(m.to_vec()));
        // 4, 3+1, 2+2, 2+1+1, 1+1+1+1
        assert_eq!(
            all,
            vec![
                vec![0, 0, 0, 0, 1],
                vec![0, 1, 0, 1, 0],
                vec![0, 0, 2, 0, 0],
                vec![0, 2, 1, 0, 0],
                vec![0, 4, 0, 0, 0],
            ]
        );
        let mut count = 0;
        for_each_partition(40, |_| count += 1);
        assert_eq!(count, 37338);
    }

    #[test]
    fn closed_formulas() {
        let table = score_counts(40).unwrap();
        let egz = table.egz();
        assert_eq!(closed_formula_partitions(3, egz).unwrap(), big(2));
        assert_eq!(closed_formula_partitions(1, egz).unwrap(), big(1));
        assert_eq!(
            closed_formula_partitions(20, egz).unwrap(),
            table.scores()[20]
        );
        assert_eq!(closed_formula_permutations(3, egz).unwrap(), big(2));
        assert_eq!(closed_formula_permutations(1, egz).unwrap(), big(1));
        assert_eq!(
            closed_formula_permutations(7, egz).unwrap(),
            closed_formula_partitions(7, egz).unwrap()
        );
        assert_eq!(
            closed_formula_permutations(9, egz),
            Err(Error::AboveCap {
                n: 9,
                cap: PERMUTATION_CAP
            })
        );
        assert!(matches!(
            closed_formula_partitions(5, &egz[..3]),
            Err(Error::TableTooShort { .. })
        ));
    }

    #[test]
    fn non_integral_closed_form_is_reported() {
        // a fake |EGZ_1| = 2 with |EGZ_2| = 1 gives (4 + 1) / 2
        let egz = [big(0), big(2), big(1)];
        assert!(matches!(
            closed_formula_partitions(2, &egz),
            Err(Error::Inconsistent(_))
        ));
        assert!(matches!(
            closed_formula_permutations(2, &egz),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn catalans() {
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), big(c));
        }
    }

    #[test]
    fn pointed_and_svpt() {
        let table = score_counts(9).unwrap();
        assert_eq!(
            pointed_poly(3, &table, 14).unwrap(),
            IntPolynomial::from_coeffs([2, 3, 0, 1])
        );
        assert_eq!(
            pointed_poly(1, &table, 14).unwrap(),
            IntPolynomial::from_coeffs([0, 1])
        );
        // frozen from brute force over all pointed sequences of length 6
        assert_eq!(
            pointed_poly(6, &table, 14).unwrap(),
            IntPolynomial::from_coeffs([54, 46, 16, 12, 2, 2])
        );
        assert_eq!(svpt_count(3, &table).unwrap(), big(4));
        assert_eq!(svpt_count(1, &table).unwrap(), big(1));
        assert_eq!(svpt_count(8, &table).unwrap(), big(750));
        assert!(svpt_count(10, &table).is_err());
    }
}
