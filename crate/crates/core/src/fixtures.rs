//! The three worked examples with their published iteration tables, and a
//! checker that reruns them and diffs every printed entry.

use thiserror::Error;

use crate::ingest::{parse_problem, ProblemError, ProblemSpec};
use crate::numeric::{PrecisionConfig, Scalar};
use crate::solver::{solve, SolveReport, SolverError};

/// Significant digits of each published entry that take part in the diff.
pub const COMPARED_DIGITS: usize = 18;
/// Allowed absolute discrepancy per published entry.
pub const ENTRY_TOLERANCE: &str = "1e-14";
/// Allowed distance of the final vector from the true roots.
pub const FINAL_TOLERANCE: &str = "1e-18";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub table: u8,
    /// Problem file, in the format `parse_problem` reads.
    pub problem: &'static str,
    /// Published table: a header line, then `k` and one column per root,
    /// tab-separated, digits exactly as printed.
    pub golden: &'static str,
}

pub const FIXTURES: [Fixture; 3] = [
    Fixture {
        table: 1,
        problem: include_str!("../fixtures/example1.json"),
        golden: include_str!("../fixtures/table1.tsv"),
    },
    Fixture {
        table: 2,
        problem: include_str!("../fixtures/example2.json"),
        golden: include_str!("../fixtures/table2.tsv"),
    },
    Fixture {
        table: 3,
        problem: include_str!("../fixtures/example3.json"),
        golden: include_str!("../fixtures/table3.tsv"),
    },
];

pub fn fixture(table: u8) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.table == table)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixtureError {
    #[error("no table {0}; choose 1, 2 or 3")]
    UnknownTable(u8),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("golden table row {row}: {message}")]
    Golden { row: usize, message: String },
}

impl Fixture {
    /// The problem at `digits` (the file's own precision when `None`).
    pub fn spec<T: Scalar>(&self, digits: Option<u32>) -> Result<ProblemSpec<T>, ProblemError> {
        parse_problem(self.problem.as_bytes(), digits, PrecisionConfig::DEFAULT_DIGITS)
    }

    /// Rows of published strings, indexed by `k`.
    pub fn golden_rows(&self) -> Vec<Vec<&'static str>> {
        self.golden
            .lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split('\t').skip(1).collect())
            .collect()
    }
}

/// Keeps the first `n` significant digits of a decimal numeral and zeroes
/// the rest, leaving sign, point and magnitude alone.
pub fn truncate_significant(text: &str, n: usize) -> String {
    let mut seen = 0;
    let mut started = false;
    text.chars()
        .map(|c| {
            if !c.is_ascii_digit() {
                return c;
            }
            if c != '0' {
                started = true;
            }
            if !started {
                return c;
            }
            seen += 1;
            if seen > n {
                '0'
            } else {
                c
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryCheck<T> {
    pub k: usize,
    /// 1-based root index.
    pub index: usize,
    pub printed: String,
    pub compared: String,
    pub computed: T,
    pub discrepancy: T,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reproduction<T> {
    pub table: u8,
    pub report: SolveReport<T>,
    pub entries: Vec<EntryCheck<T>>,
    pub max_discrepancy: T,
    pub entry_tolerance: T,
    /// `max_i |x_i - r_i|` over the final vector.
    pub final_error: T,
    pub final_tolerance: T,
    pub entries_pass: bool,
    pub final_pass: bool,
}

impl<T: Scalar> Reproduction<T> {
    pub fn pass(&self) -> bool {
        self.entries_pass && self.final_pass
    }
}

/// Reruns a fixture for exactly as many iterations as its table has rows
/// and compares each published entry on its first [`COMPARED_DIGITS`]
/// significant digits.
pub fn reproduce<T: Scalar>(table: u8, digits: Option<u32>) -> Result<Reproduction<T>, FixtureError> {
    let fx = fixture(table).ok_or(FixtureError::UnknownTable(table))?;
    let spec: ProblemSpec<T> = fx.spec(digits)?;
    let golden = fx.golden_rows();
    let mut cfg = spec.config.clone();
    cfg.max_iters = golden.len() - 1;
    // One row per table line: keep iterating however small the steps get.
    cfg.step_tolerance = spec.init.x[0].pow10_like(-4 * spec.precision.digits as i64);
    let report = solve(&spec.polynomial(), &spec.profile, spec.init.clone(), &cfg)?;
    if let Some(e) = &report.failure {
        return Err(FixtureError::Solver(e.clone()));
    }
    let cfgp = spec.precision;
    let parse = |s: &str, row: usize| {
        T::parse_decimal(s, &cfgp).map_err(|e| FixtureError::Golden {
            row,
            message: e.to_string(),
        })
    };
    let entry_tolerance = parse(ENTRY_TOLERANCE, 0)?;
    let final_tolerance = parse(FINAL_TOLERANCE, 0)?;

    let mut entries = Vec::new();
    for (k, row) in golden.iter().enumerate() {
        let snap = report.trace.snapshots.get(k).ok_or_else(|| FixtureError::Golden {
            row: k,
            message: "solver produced fewer rows than the table".to_string(),
        })?;
        if row.len() != snap.x.len() {
            return Err(FixtureError::Golden {
                row: k,
                message: format!("{} columns for {} roots", row.len(), snap.x.len()),
            });
        }
        for (i, (printed, x)) in row.iter().zip(&snap.x).enumerate() {
            let compared = truncate_significant(printed, COMPARED_DIGITS);
            let discrepancy = (parse(&compared, k)? - x.clone()).abs();
            entries.push(EntryCheck {
                k,
                index: i + 1,
                printed: printed.to_string(),
                compared,
                computed: x.clone(),
                within: discrepancy <= entry_tolerance,
                discrepancy,
            });
        }
    }
    let max_discrepancy = entries
        .iter()
        .fold(T::zero(), |acc, e| if e.discrepancy > acc { e.discrepancy.clone() } else { acc });
    let roots = spec.known_roots().expect("fixtures are factored").to_vec();
    let final_error = report
        .trace
        .last()
        .x
        .iter()
        .zip(&roots)
        .fold(T::zero(), |acc, (x, r)| {
            let e = (x.clone() - r.clone()).abs();
            if e > acc {
                e
            } else {
                acc
            }
        });
    let mut report = report;
    report.trace.attach_true_roots(&roots)?;
    Ok(Reproduction {
        table,
        entries_pass: entries.iter().all(|e| e.within),
        final_pass: final_error <= final_tolerance,
        report,
        entries,
        max_discrepancy,
        entry_tolerance,
        final_error,
        final_tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Real;

    #[test]
    fn truncation() {
        assert_eq!(truncate_significant("-2.0000000000000256950", 18), "-2.0000000000000256900");
        assert_eq!(truncate_significant("0.999943864177073621", 18), "0.999943864177073621");
        assert_eq!(truncate_significant("0.00012345", 3), "0.00012300");
        assert_eq!(truncate_significant("1234.5", 2), "1200.0");
    }

    #[test]
    fn golden_shapes() {
        let shapes: Vec<(usize, usize)> = FIXTURES
            .iter()
            .map(|f| {
                let rows = f.golden_rows();
                (rows.len(), rows[0].len())
            })
            .collect();
        assert_eq!(shapes, [(5, 3), (6, 3), (5, 2)]);
    }

    #[test]
    fn table3_reproduces() {
        let rep = reproduce::<Real>(3, None).unwrap();
        assert_eq!(rep.entries.len(), 10);
        assert!(rep.pass(), "max discrepancy {}", rep.max_discrepancy);
    }

    #[test]
    fn tables_1_and_2_differ_only_in_known_entries() {
        for (table, k, index) in [(1u8, 3usize, 1usize), (2, 4, 2)] {
            let rep = reproduce::<Real>(table, None).unwrap();
            let off: Vec<(usize, usize)> = rep.entries.iter().filter(|e| !e.within).map(|e| (e.k, e.index)).collect();
            assert_eq!(off, [(k, index)]);
            assert!(rep.final_pass);
            // Every other entry agrees far inside the tolerance.
            let tight = Real::parse("1e-17", PrecisionConfig::default()).unwrap();
            assert!(rep.entries.iter().filter(|e| e.within).all(|e| e.discrepancy < tight));
        }
    }
}
