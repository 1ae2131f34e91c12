//! Brute-force references and the identity harness behind `verify`.
//!
//! The enumerators here do not use the counting formulas, and the formulas do
//! not use the enumerators; each identity compares one side against the
//! other.

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::bijection::{f_inverse, f_map, phi, phi_inverse, PhiImage};
use crate::counting::{
    catalan, closed_formula_partitions, closed_formula_permutations, pointed_poly, svpt_count,
    CountTable,
};
use crate::egz::{enumerate_egz, EgzMultiset};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::score::{is_score_sequence, shift_residues, PointedScoreSequence, ScoreSequence};
use crate::strategy::Strategy;

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

enum Fit {
    Ok,
    TooSmall,
    TooLarge,
}

/// All score sequences of length `n` in lexicographic order, by depth-first
/// search over nondecreasing values. A partial sequence is abandoned as soon
/// as its prefix sum falls below `k choose 2` or the remaining positions can
/// no longer reach, or must overshoot, the total `n choose 2`.
#[derive(Debug, Clone)]
pub struct ScoreIter {
    n: usize,
    cur: Vec<usize>,
    prefix: Vec<usize>,
    started: bool,
    done: bool,
}

impl ScoreIter {
    fn fit(&self, k: usize, w: usize) -> Fit {
        let n = self.n;
        let total = binom2(n);
        let p = self.prefix[k] + w;
        let rest = n - k - 1;
        if p + rest * w > total {
            return Fit::TooLarge;
        }
        if p + rest * (n - 1) < total || (k + 1 < n && p < binom2(k + 1)) {
            return Fit::TooSmall;
        }
        Fit::Ok
    }
}

impl Iterator for ScoreIter {
    type Item = ScoreSequence;

    fn next(&mut self) -> Option<ScoreSequence> {
        if self.done {
            return None;
        }
        let mut lo = 0;
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.done = true;
                return Some(ScoreSequence::empty());
            }
        } else {
            lo = self.cur.pop().map_or(0, |w| w + 1);
        }
        loop {
            let k = self.cur.len();
            let min = lo.max(self.cur.last().copied().unwrap_or(0));
            let mut placed = false;
            for w in min..self.n {
                match self.fit(k, w) {
                    Fit::Ok => {
                        self.cur.push(w);
                        self.prefix[k + 1] = self.prefix[k] + w;
                        placed = true;
                        break;
                    }
                    Fit::TooSmall => continue,
                    Fit::TooLarge => break,
                }
            }
            if placed {
                if self.cur.len() == self.n {
                    return Some(ScoreSequence::from_vec_unchecked(self.cur.clone()));
                }
                lo = 0;
                continue;
            }
            match self.cur.pop() {
                Some(w) => lo = w + 1,
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::AboveCap { n, cap });
    }
    Ok(())
}

/// Streams `S_n`. `n = 0` yields the empty sequence once.
pub fn enumerate_scores(n: usize, cap: usize) -> Result<ScoreIter> {
    check_cap(n, cap)?;
    Ok(ScoreIter {
        n,
        cur: Vec::with_capacity(n),
        prefix: vec![0; n + 1],
        started: false,
        done: false,
    })
}

// strict prefix inequalities, checked here rather than through ScoreSequence
fn strictly_strong(values: &[usize]) -> bool {
    let mut sum = 0;
    !values.is_empty()
        && (1..values.len()).all(|k| {
            sum += values[k - 1];
            sum > binom2(k)
        })
}

/// Streams the strong sequences of length `n`.
pub fn enumerate_strong(n: usize, cap: usize) -> Result<impl Iterator<Item = ScoreSequence>> {
    Ok(enumerate_scores(n, cap)?.filter(|s| strictly_strong(s.values())))
}

/// `S^pt_n(t)` by visiting every `(s, i)` and recording how often `i` occurs
/// in `s`.
pub fn pointed_poly_oracle(n: usize, cap: usize) -> Result<IntPolynomial> {
    let mut counts = vec![0u64; n + 1];
    for s in enumerate_scores(n, cap)? {
        for i in 0..n {
            counts[s.values().iter().filter(|&&v| v == i).count()] += 1;
        }
    }
    Ok(IntPolynomial::from_coeffs(counts))
}

/// Number of `(s, i)` with `i` a value attained by `s`.
pub fn svpt_count_oracle(n: usize, cap: usize) -> Result<u64> {
    let mut count = 0u64;
    for s in enumerate_scores(n, cap)? {
        let mut seen = vec![false; n];
        for &v in s.values() {
            seen[v] = true;
        }
        count += seen.iter().filter(|&&b| b).count() as u64;
    }
    Ok(count)
}

/// Outcome of one identity over a range of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub first_n: usize,
    pub last_n: usize,
    pub passed: bool,
    /// The first failing `n` and what went wrong.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub checks: Vec<IdentityCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            write!(
                f,
                "{verdict} {} (n = {}..={})",
                c.identity, c.first_n, c.last_n
            )?;
            if let Some(reason) = &c.failure {
                write!(f, ": {reason}")?;
            }
            writeln!(f)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "{} identities checked up to n = {}, {failed} failed",
            self.checks.len(),
            self.max_n
        )
    }
}

type CheckFn = fn(&Verifier, usize) -> std::result::Result<(), String>;

struct Identity {
    name: &'static str,
    /// Largest `n` this identity is ever run at.
    limit: Option<usize>,
    check: CheckFn,
}

const IDENTITIES: &[Identity] = &[
    Identity {
        name: "bijection.cardinality",
        limit: None,
        check: check_cardinality,
    },
    Identity {
        name: "bijection.f_bijective_on_last_summand",
        limit: None,
        check: check_f_bijection,
    },
    Identity {
        name: "bijection.phi_round_trip_and_image",
        limit: None,
        check: check_phi_bijection,
    },
    Identity {
        name: "bijection.phi_zero_statistic",
        limit: None,
        check: check_phi_statistic,
    },
    Identity {
        name: "core.decomposition_round_trip",
        limit: None,
        check: check_decomposition,
    },
    Identity {
        name: "core.distinct_shifts_of_strong",
        limit: None,
        check: check_distinct_shifts,
    },
    Identity {
        name: "core.shift_iff_rotation",
        limit: None,
        check: check_shift_rotation,
    },
    Identity {
        name: "counting.closed_partitions_vs_recursion",
        limit: None,
        check: check_closed_partitions,
    },
    Identity {
        name: "counting.closed_permutations_vs_partitions",
        limit: Some(7),
        check: check_closed_permutations,
    },
    Identity {
        name: "counting.egz_formula_vs_enumeration",
        limit: None,
        check: check_egz_counts,
    },
    Identity {
        name: "counting.pointed_poly_vs_oracle",
        limit: None,
        check: check_pointed_poly,
    },
    Identity {
        name: "counting.scores_recursion_vs_oracle",
        limit: None,
        check: check_score_counts,
    },
    Identity {
        name: "counting.strong_recursion_vs_oracle",
        limit: None,
        check: check_strong_counts,
    },
    Identity {
        name: "counting.svpt_catalan_vs_oracle",
        limit: None,
        check: check_svpt,
    },
    Identity {
        name: "counting.table_identities",
        limit: None,
        check: check_table,
    },
    Identity {
        name: "egz.realize",
        limit: None,
        check: check_realize,
    },
    Identity {
        name: "egz.subset_round_trip",
        limit: None,
        check: check_subsets,
    },
    Identity {
        name: "egz.zero_containing_is_catalan",
        limit: None,
        check: check_zero_catalan,
    },
    Identity {
        name: "oracle.enumeration_sorted_unique",
        limit: None,
        check: check_enumeration_order,
    },
];

/// Names of every identity [`verify_all`] runs, sorted.
pub fn identity_names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|i| i.name).collect()
}

/// Formula-side table plus oracle enumerations for every `n <= max_n`.
pub struct Verifier {
    max_n: usize,
    cap: usize,
    strategy: Strategy,
    table: CountTable,
    scores: Vec<Vec<ScoreSequence>>,
    egz: Vec<Vec<EgzMultiset>>,
}

impl Verifier {
    /// `table` supplies the formula side. It is extended (on a copy) if it
    /// stops short of `max_n`.
    pub fn new(max_n: usize, table: &CountTable, cap: usize, strategy: Strategy) -> Result<Self> {
        check_cap(max_n, cap)?;
        let mut table = table.clone();
        table.extend_to(max_n)?;
        let scores = strategy.map_range(0..max_n + 1, |n| {
            enumerate_scores(n, cap).map(Iterator::collect::<Vec<_>>)
        });
        let egz = strategy.map_range(0..max_n + 1, |n| {
            enumerate_egz(n, cap).map(Iterator::collect::<Vec<_>>)
        });
        Ok(Verifier {
            max_n,
            cap,
            strategy,
            table,
            scores: scores.into_iter().collect::<Result<_>>()?,
            egz: egz.into_iter().collect::<Result<_>>()?,
        })
    }

    /// Runs one identity over `range` (clipped to `max_n` and the identity's
    /// own limit), stopping at the first failing `n`.
    pub fn check(&self, name: &str, range: RangeInclusive<usize>) -> Option<IdentityCheck> {
        let identity = IDENTITIES.iter().find(|i| i.name == name)?;
        let last = (*range.end())
            .min(self.max_n)
            .min(identity.limit.unwrap_or(usize::MAX));
        let first = (*range.start()).max(1);
        if first > last {
            return None;
        }
        let failure = (first..=last).find_map(|n| {
            (identity.check)(self, n)
                .err()
                .map(|why| format!("n = {n}: {why}"))
        });
        Some(IdentityCheck {
            identity: name.to_string(),
            first_n: first,
            last_n: last,
            passed: failure.is_none(),
            failure,
        })
    }

    /// Every identity over `1..=max_n`, sorted by name.
    pub fn run_all(&self) -> VerifyReport {
        let mut checks: Vec<IdentityCheck> = self
            .strategy
            .map(IDENTITIES, |i| self.check(i.name, 1..=self.max_n))
            .into_iter()
            .flatten()
            .collect();
        checks.sort_by(|a, b| a.identity.cmp(&b.identity));
        VerifyReport {
            max_n: self.max_n,
            checks,
        }
    }

    fn pointed(&self, n: usize) -> impl Iterator<Item = PointedScoreSequence> + '_ {
        self.scores[n].iter().flat_map(move |s| {
            (0..n).map(move |i| PointedScoreSequence::new(s.clone(), i).expect("i < n"))
        })
    }
}

/// Runs every identity for `n = 1..=max_n` against `table`.
pub fn verify_all(
    max_n: usize,
    table: &CountTable,
    cap: usize,
    strategy: Strategy,
) -> Result<VerifyReport> {
    Ok(Verifier::new(max_n, table, cap, strategy)?.run_all())
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn as_ints(values: &[usize]) -> Vec<i64> {
    values.iter().map(|&v| v as i64).collect()
}

fn check_score_counts(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let oracle = v.scores[n].len();
    let formula = &v.table.scores()[n];
    ensure(*formula == BigUint::from(oracle), || {
        format!("recursion gives {formula}, enumeration {oracle}")
    })
}

fn check_strong_counts(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let oracle = v.scores[n]
        .iter()
        .filter(|s| strictly_strong(s.values()))
        .count();
    let formula = &v.table.strong()[n];
    ensure(*formula == BigUint::from(oracle), || {
        format!("recursion gives {formula}, enumeration {oracle}")
    })
}

fn check_egz_counts(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let oracle = v.egz[n].len();
    let formula = &v.table.egz()[n];
    ensure(*formula == BigUint::from(oracle), || {
        format!("formula gives {formula}, enumeration {oracle}")
    })
}

fn check_table(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let (s, t, e) = (v.table.scores(), v.table.strong(), v.table.egz());
    let conv: BigUint = (1..=n).map(|k| &s[n - k] * &e[k]).sum();
    ensure(conv == &s[n] * n, || {
        "n |S_n| != sum |S_{n-k}| |EGZ_k|".into()
    })?;
    let series: BigUint = (1..=n).map(|i| &t[i] * &s[n - i]).sum();
    ensure(series == s[n], || "sum |T_i| |S_{n-i}| != |S_n|".into())?;
    ensure(t[n] <= s[n], || "|T_n| > |S_n|".into())
}

fn check_cardinality(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let lhs = n * v.scores[n].len();
    let rhs: usize = (1..=n)
        .map(|k| v.egz[k].len() * v.scores[n - k].len())
        .sum();
    ensure(lhs == rhs, || {
        format!("n |S_n| = {lhs} but sum |EGZ_k| |S_(n-k)| = {rhs}")
    })
}

fn check_closed_partitions(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let closed = closed_formula_partitions(n, v.table.egz()).map_err(|e| e.to_string())?;
    let rec = &v.table.scores()[n];
    ensure(&closed == rec, || {
        format!("partition formula {closed}, recursion {rec}")
    })
}

fn check_closed_permutations(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let perm = closed_formula_permutations(n, v.table.egz()).map_err(|e| e.to_string())?;
    let part = closed_formula_partitions(n, v.table.egz()).map_err(|e| e.to_string())?;
    ensure(perm == part, || {
        format!("permutation formula {perm}, partition formula {part}")
    })
}

fn check_pointed_poly(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let formula = pointed_poly(n, &v.table, v.cap).map_err(|e| e.to_string())?;
    let oracle = pointed_poly_oracle(n, v.cap).map_err(|e| e.to_string())?;
    ensure(formula == oracle, || {
        format!("factorization gives {formula}, enumeration {oracle}")
    })?;
    let pointed = BigInt::from(n * v.scores[n].len());
    ensure(formula.eval(&1.into()) == pointed, || {
        "S^pt_n(1) != n |S_n|".into()
    })?;
    let svpt = svpt_count(n, &v.table).map_err(|e| e.to_string())?;
    ensure(
        formula.eval(&0.into()) == pointed - BigInt::from(svpt),
        || "S^pt_n(0) != n |S_n| - |S^v_n|".into(),
    )
}

fn check_svpt(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let formula = svpt_count(n, &v.table).map_err(|e| e.to_string())?;
    let oracle = svpt_count_oracle(n, v.cap).map_err(|e| e.to_string())?;
    ensure(formula == BigUint::from(oracle), || {
        format!("Catalan convolution {formula}, enumeration {oracle}")
    })
}

fn check_zero_catalan(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let with_zero = v.egz[n].iter().filter(|m| m.zeros() > 0).count();
    let c = catalan(n - 1);
    ensure(c == BigUint::from(with_zero), || {
        format!("{with_zero} multisets contain 0, C_(n-1) = {c}")
    })
}

fn check_subsets(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    for m in &v.egz[n] {
        let a = m.to_subset();
        let ok = a.len() == n
            && a.windows(2).all(|w| w[0] < w[1])
            && a.iter().all(|&x| (1..2 * n).contains(&x))
            && a.iter().sum::<usize>() % n == 0;
        ensure(ok, || format!("{m} maps to invalid subset {a:?}"))?;
        let back = EgzMultiset::from_subset(&a, n).map_err(|e| e.to_string())?;
        ensure(&back == m, || format!("{m} -> {a:?} -> {back}"))?;
    }
    Ok(())
}

fn check_realize(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    for m in &v.egz[n] {
        let (s, j) = m.realize();
        ensure(is_score_sequence(&as_ints(s.values())), || {
            format!("{m} realized by non-score {s}")
        })?;
        let shifted = s.shift(j as i64).map_err(|e| e.to_string())?;
        ensure(shifted == m.residues(), || format!("mu({s} + {j}) != {m}"))?;
        let shifts = m.realizing_shifts();
        let parts = s.strong_summands().map_err(|e| e.to_string())?.len();
        ensure(shifts.first() == Some(&j), || {
            format!("{m}: {j} is not the smallest shift")
        })?;
        ensure(shifts.len() == parts, || {
            format!(
                "{m}: {} realizing shifts but {parts} strong summands",
                shifts.len()
            )
        })?;
    }
    Ok(())
}

fn check_decomposition(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    for s in &v.scores[n] {
        let d = s.strong_summands().map_err(|e| e.to_string())?;
        ensure(&d.recompose() == s, || format!("{s} does not recompose"))?;
        ensure(
            d.summands().iter().all(|t| strictly_strong(t.values())),
            || format!("{s}: a summand is not strong"),
        )?;
        let mut sum = 0;
        let mut cuts = Vec::new();
        for k in 1..n {
            sum += s.values()[k - 1];
            if sum == binom2(k) {
                cuts.push(k);
            }
        }
        let mut boundaries: Vec<usize> = d
            .lengths()
            .iter()
            .scan(0, |acc, &l| {
                *acc += l;
                Some(*acc)
            })
            .collect();
        boundaries.pop();
        ensure(boundaries == cuts, || {
            format!("{s}: summand boundaries {boundaries:?}, tight prefixes {cuts:?}")
        })?;
    }
    Ok(())
}

fn check_shift_rotation(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    for s in &v.scores[n] {
        let rotations = s.rotation_shifts().map_err(|e| e.to_string())?;
        let d = s.strong_summands().map_err(|e| e.to_string())?;
        let lengths = d.lengths();
        for j in 0..n {
            let shifted = s.shift(j as i64).map_err(|e| e.to_string())?;
            let is_score = is_score_sequence(&as_ints(&shifted));
            ensure(is_score == rotations.contains(&j), || {
                format!("{s} + {j}: score = {is_score}, rotation shifts {rotations:?}")
            })?;
            if let Some(start) =
                (0..lengths.len()).find(|&l| lengths[l..].iter().sum::<usize>() % n == j)
            {
                let rotated = d.rotated(start);
                ensure(rotated.values() == shifted.as_slice(), || {
                    format!("{s} + {j} != rotated summands {rotated}")
                })?;
            }
            for k in 0..n {
                let twice = shift_residues(&shifted, n, k as i64);
                ensure(
                    twice == s.shift((j + k) as i64).map_err(|e| e.to_string())?,
                    || format!("({s} + {j}) + {k} != {s} + {}", j + k),
                )?;
            }
        }
    }
    Ok(())
}

fn check_distinct_shifts(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    for s in v.scores[n].iter().filter(|s| strictly_strong(s.values())) {
        let distinct: HashSet<Vec<usize>> = (0..n).map(|j| s.shift(j as i64).unwrap()).collect();
        ensure(distinct.len() == n, || {
            format!("{s}: only {} distinct shifts", distinct.len())
        })?;
    }
    Ok(())
}

fn check_f_bijection(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let mut images = HashSet::new();
    for p in v.pointed(n).filter(PointedScoreSequence::in_last_summand) {
        let m = f_map(&p).map_err(|e| format!("{p}: {e}"))?;
        ensure(m.zeros() == p.fiber_size(), || {
            format!("{p}: |M|_0 = {} but fiber {}", m.zeros(), p.fiber_size())
        })?;
        let back = f_inverse(&m).map_err(|e| format!("{m}: {e}"))?;
        ensure(back == p, || format!("f^-1(f({p})) = {back}"))?;
        ensure(images.insert(m), || format!("{p}: image already hit"))?;
    }
    ensure(images.len() == v.egz[n].len(), || {
        format!("|L_n| = {} but |EGZ_n| = {}", images.len(), v.egz[n].len())
    })?;
    ensure(v.egz[n].iter().all(|m| images.contains(m)), || {
        "f misses a multiset".into()
    })
}

fn check_phi_bijection(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    let pointed: Vec<PointedScoreSequence> = v.pointed(n).collect();
    let results = v
        .strategy
        .map(&pointed, |p| -> std::result::Result<PhiImage, String> {
            let img = phi(p);
            let back = phi_inverse(&img).map_err(|e| format!("{img}: {e}"))?;
            ensure(&back == p, || format!("phi^-1(phi({p})) = {back}"))?;
            let k = img.k();
            ensure((1..=n).contains(&k) && img.n() == n, || {
                format!("{p}: image {img} has wrong sizes")
            })?;
            ensure(v.egz[k].binary_search(img.egz()).is_ok(), || {
                format!("{p}: {} not in EGZ_{k}", img.egz())
            })?;
            ensure(v.scores[n - k].binary_search(img.rest()).is_ok(), || {
                format!("{p}: {} not in S_{}", img.rest(), n - k)
            })?;
            Ok(img)
        });
    let mut images = HashSet::new();
    for r in results {
        let img = r?;
        let shown = img.to_string();
        ensure(images.insert(img), || format!("image {shown} hit twice"))?;
    }
    let union: usize = (1..=n)
        .map(|k| v.egz[k].len() * v.scores[n - k].len())
        .sum();
    ensure(images.len() == union, || {
        format!("{} images but the target union has {union}", images.len())
    })
}

fn check_phi_statistic(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    for p in v.pointed(n) {
        let img = phi(&p);
        ensure(img.egz().zeros() == p.fiber_size(), || {
            format!(
                "{p}: |M|_0 = {} but |s^-1(i)| = {}",
                img.egz().zeros(),
                p.fiber_size()
            )
        })?;
    }
    Ok(())
}

fn check_enumeration_order(v: &Verifier, n: usize) -> std::result::Result<(), String> {
    ensure(v.scores[n].windows(2).all(|w| w[0] < w[1]), || {
        "score sequences not strictly increasing".into()
    })?;
    ensure(v.egz[n].windows(2).all(|w| w[0] < w[1]), || {
        "EGZ multisets not strictly increasing".into()
    })
}
