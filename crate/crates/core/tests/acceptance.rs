//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use scoreseq::counting::{
    closed_formula_partitions, egz_count, score_counts, score_counts_with, svpt_count,
};
use scoreseq::egz::{egz_zero_poly, enumerate_egz};
use scoreseq::oracle::Verifier;
use scoreseq::{
    phi, CountTable, EgzMultiset, IntPolynomial, PointedScoreSequence, ScoreSequence, Strategy,
    DEFAULT_ENUMERATION_CAP,
};

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn identity(&mut self, v: &Verifier, name: &str, last: usize) {
        match v.check(name, 1..=last) {
            None => self.failures.push(format!("{name}: not run")),
            Some(c) if c.last_n != last => self
                .failures
                .push(format!("{name}: only reached n = {}", c.last_n)),
            Some(c) => {
                if let Some(why) = c.failure {
                    self.failures.push(format!("{name}: {why}"));
                }
            }
        }
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn seq(v: &[usize]) -> ScoreSequence {
    ScoreSequence::new(v.to_vec()).unwrap()
}

fn verifier(max_n: usize) -> Verifier {
    let table = CountTable::new();
    Verifier::new(max_n, &table, DEFAULT_ENUMERATION_CAP, Strategy::default()).unwrap()
}

fn constants(o: &mut Outcome) {
    let table = score_counts(5).unwrap();
    o.expect(table.scores()[3] == big(2), "|S_3| = 2");
    o.expect(table.scores()[5] == big(9), "|S_5| = 9");
    o.expect(egz_count(3).unwrap() == big(4), "|EGZ_3| = 4");
    let t_poly = egz_zero_poly(3, DEFAULT_ENUMERATION_CAP).unwrap();
    o.expect(
        t_poly == IntPolynomial::from_coeffs([2, 1, 0, 1]),
        format!("EGZ_3(t) = {t_poly}"),
    );
    let pointed = scoreseq::counting::pointed_poly(3, &table, DEFAULT_ENUMERATION_CAP).unwrap();
    o.expect(
        pointed == IntPolynomial::from_coeffs([2, 3, 0, 1]),
        format!("S^pt_3(t) = {pointed}"),
    );
    o.expect(svpt_count(3, &table).unwrap() == big(4), "|S^v_3| = 4");

    let p = PointedScoreSequence::new(seq(&[0, 2, 2, 3, 3, 5, 7, 7, 7]), 3).unwrap();
    let img = phi(&p);
    o.expect(
        img.egz() == &EgzMultiset::new(&[0, 0, 2, 4, 4], 5).unwrap()
            && img.rest() == &seq(&[0, 2, 2, 2]),
        format!("phi(p) = {img}"),
    );

    let s = seq(&[1, 1, 2, 2, 4, 6, 7, 7, 7, 8]);
    let shifted = s.shift(5).unwrap();
    o.expect(shifted == vec![1, 2, 2, 2, 3, 6, 6, 7, 7, 9], "s + 5");
    let parts = s.strong_summands().unwrap();
    o.expect(
        parts.summands() == [seq(&[1, 1, 2, 2]), seq(&[0]), seq(&[1, 2, 2, 2, 3])],
        format!("summands of s: {parts}"),
    );
    let parts = seq(&shifted).strong_summands().unwrap();
    o.expect(
        parts.summands() == [seq(&[1, 2, 2, 2, 3]), seq(&[1, 1, 2, 2]), seq(&[0])],
        format!("summands of s + 5: {parts}"),
    );
    let first = seq(&[0, 2, 2, 3, 3, 5, 7, 7, 7]).strong_summands().unwrap();
    o.expect(
        first.summands() == [seq(&[0]), seq(&[1, 1, 2, 2]), seq(&[0]), seq(&[1, 1, 1])],
        format!("summands: {first}"),
    );
}

fn oracle_equivalence(o: &mut Outcome) {
    let v = verifier(12);
    for name in [
        "counting.scores_recursion_vs_oracle",
        "counting.strong_recursion_vs_oracle",
        "counting.egz_formula_vs_enumeration",
    ] {
        o.identity(&v, name, 12);
    }
    // values frozen from an independent brute-force enumeration
    let scores = [1u64, 1, 1, 2, 4, 9, 22, 59, 167, 490, 1486, 4639, 14805];
    let strong = [0u64, 1, 0, 1, 1, 3, 7, 21, 61, 184, 573, 1835, 5969];
    let egz = [
        0u64, 1, 1, 4, 9, 26, 76, 246, 809, 2704, 9226, 32066, 112716,
    ];
    let table = score_counts(12).unwrap();
    for n in 0..=12 {
        o.expect(table.scores()[n] == big(scores[n]), format!("frozen S_{n}"));
        o.expect(table.strong()[n] == big(strong[n]), format!("frozen T_{n}"));
        o.expect(table.egz()[n] == big(egz[n]), format!("frozen EGZ_{n}"));
        if n >= 1 {
            let counted = enumerate_egz(n, DEFAULT_ENUMERATION_CAP).unwrap().count() as u64;
            o.expect(counted == egz[n], format!("enumerated EGZ_{n} = {counted}"));
        }
    }
}

fn bijection_suite(o: &mut Outcome) {
    let v = verifier(9);
    for name in [
        "bijection.phi_round_trip_and_image",
        "bijection.phi_zero_statistic",
        "bijection.cardinality",
    ] {
        o.identity(&v, name, 9);
    }
}

fn formula_cross_validation(o: &mut Outcome) {
    let table = score_counts(40).unwrap();
    for n in 1..=40 {
        match closed_formula_partitions(n, table.egz()) {
            Ok(value) => o.expect(
                value == table.scores()[n],
                format!("partition formula at n = {n}"),
            ),
            Err(e) => o.expect(false, format!("partition formula at n = {n}: {e}")),
        }
    }
    o.expect(
        table.scores()[40] == "48693706951772723123".parse::<BigUint>().unwrap(),
        "S_40",
    );
    let v = verifier(10);
    o.identity(&v, "counting.closed_permutations_vs_partitions", 7);
    o.identity(&v, "counting.svpt_catalan_vs_oracle", 9);
    o.identity(&v, "egz.zero_containing_is_catalan", 10);
}

fn shift_properties(o: &mut Outcome) {
    let v = verifier(10);
    o.identity(&v, "core.distinct_shifts_of_strong", 8);
    o.identity(&v, "core.shift_iff_rotation", 8);
    o.identity(&v, "egz.realize", 10);
}

fn performance(o: &mut Outcome) -> String {
    let mut ops = Vec::new();
    for n in [500usize, 1000, 2000] {
        let start = Instant::now();
        let table = score_counts_with(n, Strategy::default()).unwrap();
        let wall = start.elapsed();
        let count = table.stats().score_ops();
        o.expect(
            count <= 2 * (n * n) as u64,
            format!("n = {n}: {count} ops > 2n^2"),
        );
        if n == 1000 {
            o.expect(
                wall < Duration::from_secs(60),
                format!("n = 1000 took {wall:?}"),
            );
        }
        ops.push((n, count, wall));
    }
    let ratio = ops[2].1 as f64 / ops[1].1 as f64;
    o.expect((3.5..=4.5).contains(&ratio), format!("ratio {ratio:.3}"));
    let shown: Vec<String> = ops
        .iter()
        .map(|(n, c, w)| {
            format!(
                "n={n}: {c} ops ({:.2} n^2, {:.2}s)",
                *c as f64 / (n * n) as f64,
                w.as_secs_f64()
            )
        })
        .collect();
    format!("{}; ratio {ratio:.3}", shown.join(", "))
}

fn main() -> ExitCode {
    // `cargo test` passes filter arguments through; honour `--list` so test
    // discovery tools see a single entry.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    type Runner = fn(&mut Outcome) -> Option<String>;
    let criteria: [(&str, Option<Duration>, Runner); 6] = [
        ("published constants", Some(Duration::from_secs(1)), |o| {
            constants(o);
            None
        }),
        (
            "recursions and formula match enumeration, n <= 12",
            Some(Duration::from_secs(300)),
            |o| {
                oracle_equivalence(o);
                None
            },
        ),
        (
            "bijection round trip, image and statistic, n <= 9",
            Some(Duration::from_secs(120)),
            |o| {
                bijection_suite(o);
                None
            },
        ),
        ("closed forms, Catalan identities", None, |o| {
            formula_cross_validation(o);
            None
        }),
        ("distinct shifts, shift iff rotation, realize", None, |o| {
            shift_properties(o);
            None
        }),
        ("quadratic operation count", None, |o| Some(performance(o))),
    ];
    let mut failed = 0;
    for (idx, (title, limit, run)) in criteria.iter().enumerate() {
        let mut outcome = Outcome::new();
        let start = Instant::now();
        let detail = run(&mut outcome);
        let wall = start.elapsed();
        if let Some(limit) = limit {
            outcome.expect(wall <= *limit, format!("took {wall:?}, limit {limit:?}"));
        }
        let verdict = if outcome.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        print!(
            "criterion {} {verdict} {title} ({:.2}s)",
            idx + 1,
            wall.as_secs_f64()
        );
        if let Some(d) = detail {
            print!(" [{d}]");
        }
        println!();
        for f in &outcome.failures {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of 6 criteria passed", 6 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
