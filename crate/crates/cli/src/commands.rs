use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use scoreseq::counting::score_counts_with;
use scoreseq::egz::enumerate_egz;
use scoreseq::oracle::{enumerate_scores, enumerate_strong, Verifier};
use scoreseq::score::landau_violation;
use scoreseq::text::{parse_multiset, parse_sequence, SeqDisplay};
use scoreseq::{
    phi, phi_inverse as phi_inv, CountTable, EgzMultiset, PhiImage, PointedScoreSequence,
    ScoreSequence, Strategy,
};

use crate::{cache, Config, Failure, Format, Kind};

type CmdResult = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("output serializes");
    out.push('\n');
    out
}

fn csv_line(values: &[usize]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_score_sequence(text: &str) -> Result<ScoreSequence, Failure> {
    let values = parse_sequence(text).map_err(usage)?;
    ScoreSequence::from_ints(&values).map_err(usage)
}

fn table_for(config: &Config, n: usize, strategy: Strategy) -> Result<CountTable, Failure> {
    match &config.table_cache_path {
        Some(path) => cache::load_extended(path, n, strategy),
        None => score_counts_with(n, strategy).map_err(Failure::from),
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Scores => "scores",
        Kind::Strong => "strong",
        Kind::Egz => "egz",
    }
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub kind: String,
    pub n: usize,
    pub value: String,
}

pub fn count(config: &Config, kind: Kind, n: usize, all: bool) -> CmdResult {
    let table = table_for(config, n, Strategy::default())?;
    if all {
        return Ok(match config.output_format {
            Format::Json => json(&table.to_json()),
            Format::Csv => table.to_csv_string(),
            Format::Text => {
                let mut out = String::new();
                writeln!(out, "{:>4}  {:>24}  {:>24}  {:>24}", "n", "S", "T", "EGZ").unwrap();
                for k in 0..=n {
                    writeln!(
                        out,
                        "{k:>4}  {:>24}  {:>24}  {:>24}",
                        table.scores()[k],
                        table.strong()[k],
                        table.egz()[k]
                    )
                    .unwrap();
                }
                out
            }
        });
    }
    let value: &BigUint = match kind {
        Kind::Scores => &table.scores()[n],
        Kind::Strong => &table.strong()[n],
        Kind::Egz => &table.egz()[n],
    };
    Ok(match config.output_format {
        Format::Text => format!("{value}\n"),
        Format::Csv => format!("n,{}\n{n},{value}\n", kind_name(kind)),
        Format::Json => json(&CountReport {
            kind: kind_name(kind).into(),
            n,
            value: value.to_string(),
        }),
    })
}

pub fn enumerate(config: &Config, kind: Kind, n: usize) -> CmdResult {
    let cap = config.enumeration_cap;
    let items: Vec<(Vec<usize>, String)> = match kind {
        Kind::Scores => enumerate_scores(n, cap)
            .map_err(usage)?
            .map(|s| (s.values().to_vec(), s.to_string()))
            .collect(),
        Kind::Strong => enumerate_strong(n, cap)
            .map_err(usage)?
            .map(|s| (s.values().to_vec(), s.to_string()))
            .collect(),
        Kind::Egz => enumerate_egz(n, cap)
            .map_err(usage)?
            .map(|m| (m.residues().to_vec(), m.to_string()))
            .collect(),
    };
    Ok(match config.output_format {
        Format::Json => json(&items.iter().map(|(v, _)| v).collect::<Vec<_>>()),
        Format::Csv => items.iter().map(|(v, _)| csv_line(v) + "\n").collect(),
        Format::Text => items
            .iter()
            .map(|(_, shown)| format!("{shown}\n"))
            .collect(),
    })
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub input: Vec<i64>,
    pub score: bool,
    /// Only meaningful for score sequences.
    pub strong: Option<bool>,
    pub violation: Option<String>,
}

pub fn check(config: &Config, text: &str) -> CmdResult {
    let values = parse_sequence(text).map_err(usage)?;
    let violation = landau_violation(&values);
    let strong = match violation {
        None => Some(
            ScoreSequence::from_ints(&values)
                .map_err(usage)?
                .is_strong(),
        ),
        Some(_) => None,
    };
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    Ok(match config.output_format {
        Format::Json => json(&CheckReport {
            input: values,
            score: violation.is_none(),
            strong,
            violation: violation.map(|v| v.to_string()),
        }),
        Format::Csv => format!(
            "score,strong,violation\n{},{},{}\n",
            yes_no(violation.is_none()),
            strong.map_or("", yes_no),
            violation.map(|v| v.to_string()).unwrap_or_default()
        ),
        Format::Text => match (violation, strong) {
            (Some(v), _) => format!("score: no ({v})\n"),
            (None, s) => format!("score: yes\nstrong: {}\n", yes_no(s.unwrap_or(false))),
        },
    })
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub summands: Vec<ScoreSequence>,
}

pub fn decompose(config: &Config, text: &str) -> CmdResult {
    let s = parse_score_sequence(text)?;
    let d = s.strong_summands().map_err(usage)?;
    Ok(match config.output_format {
        Format::Text => format!("{d}\n"),
        Format::Csv => d
            .summands()
            .iter()
            .map(|t| csv_line(t.values()) + "\n")
            .collect(),
        Format::Json => json(&DecomposeReport {
            summands: d.into_summands(),
        }),
    })
}

pub fn phi_forward(config: &Config, seq: Option<&str>, point: Option<usize>) -> CmdResult {
    let seq = seq.ok_or_else(|| usage("phi needs a sequence (or --inverse)"))?;
    let point = point.ok_or_else(|| usage("phi needs --point"))?;
    let p = PointedScoreSequence::new(parse_score_sequence(seq)?, point).map_err(usage)?;
    let img = phi(&p);
    // the round trip is cheap; a mismatch is an internal failure
    if phi_inv(&img)? != p {
        return Err(Failure::Internal(format!("phi^-1(phi({p})) != {p}")));
    }
    Ok(match config.output_format {
        Format::Json => json(&img),
        Format::Csv => format!(
            "egz,rest\n\"{}\",\"{}\"\n",
            csv_line(img.egz().residues()),
            csv_line(img.rest().values())
        ),
        Format::Text => format!("{img}\n"),
    })
}

pub fn phi_inverse(config: &Config, egz: Option<&str>, rest: &str) -> CmdResult {
    let egz = egz.ok_or_else(|| usage("phi --inverse needs --egz"))?;
    let values = parse_multiset(egz).map_err(usage)?;
    let m = EgzMultiset::from_values(&values).map_err(usage)?;
    let rest = parse_score_sequence(rest)?;
    let img = PhiImage::new(m, rest);
    let p = phi_inv(&img)?;
    if phi(&p) != img {
        return Err(Failure::Internal(format!("phi(phi^-1({img})) != {img}")));
    }
    Ok(match config.output_format {
        Format::Json => json(&p),
        Format::Csv => format!(
            "seq,point\n\"{}\",{}\n",
            csv_line(p.seq().values()),
            p.point()
        ),
        Format::Text => format!("({}, {})\n", SeqDisplay(p.seq().values()), p.point()),
    })
}

pub fn verify(config: &Config, max_n: usize, strategy: Strategy) -> CmdResult {
    let table = table_for(config, max_n, strategy)?;
    let verifier =
        Verifier::new(max_n, &table, config.enumeration_cap, strategy).map_err(Failure::from)?;
    let report = verifier.run_all();
    let out = match config.output_format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("identity,first_n,last_n,passed,failure\n");
            for c in &report.checks {
                writeln!(
                    out,
                    "{},{},{},{},\"{}\"",
                    c.identity,
                    c.first_n,
                    c.last_n,
                    c.passed,
                    c.failure.as_deref().unwrap_or("").replace('"', "\"\"")
                )
                .unwrap();
            }
            out
        }
        Format::Text => format!("{report}\n"),
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::VerifyFailed(out))
    }
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub strategy: String,
    pub wall_seconds: f64,
    pub convolution_mul_adds: u64,
    pub egz_terms: u64,
    /// `convolution_mul_adds + egz_terms`.
    pub score_ops: u64,
    pub score_ops_per_n_squared: f64,
    pub strong_mul_adds: u64,
    pub peak_digits: usize,
}

pub fn bench(config: &Config, n: usize, strategy: Strategy) -> CmdResult {
    let start = Instant::now();
    let table = score_counts_with(n, strategy)?;
    let wall = start.elapsed().as_secs_f64();
    let stats = table.stats();
    let report = BenchReport {
        n,
        strategy: if strategy.is_parallel() {
            "parallel"
        } else {
            "sequential"
        }
        .into(),
        wall_seconds: wall,
        convolution_mul_adds: stats.convolution_mul_adds,
        egz_terms: stats.egz_terms,
        score_ops: stats.score_ops(),
        score_ops_per_n_squared: stats.score_ops() as f64 / (n * n) as f64,
        strong_mul_adds: stats.strong_mul_adds,
        peak_digits: stats.peak_digits,
    };
    Ok(match config.output_format {
        Format::Json => json(&report),
        Format::Csv => format!(
            "n,strategy,wall_seconds,convolution_mul_adds,egz_terms,score_ops,strong_mul_adds,peak_digits\n{},{},{:.6},{},{},{},{},{}\n",
            report.n,
            report.strategy,
            report.wall_seconds,
            report.convolution_mul_adds,
            report.egz_terms,
            report.score_ops,
            report.strong_mul_adds,
            report.peak_digits
        ),
        Format::Text => format!(
            "n                     {}\n\
             strategy              {}\n\
             wall time             {:.3} s\n\
             convolution mul-adds  {}\n\
             divisor-sum terms     {}\n\
             score ops             {} ({:.3} n^2)\n\
             strong mul-adds       {}\n\
             peak digits           {}\n",
            report.n,
            report.strategy,
            report.wall_seconds,
            report.convolution_mul_adds,
            report.egz_terms,
            report.score_ops,
            report.score_ops_per_n_squared,
            report.strong_mul_adds,
            report.peak_digits
        ),
    })
}
