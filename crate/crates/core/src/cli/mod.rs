//! Command-line front end. `main.rs` only parses arguments and calls [`run`].

pub mod checks;
pub mod document;
pub mod gold;
pub mod table;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::families::Curve;
use crate::groups::{custom_group_with_budget, Conjugation, Mat2, SubgroupSpec, DEFAULT_BUDGET};
use crate::modring::RingCtx;
use crate::xicore::build_xi;

pub use document::GraphDocument;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const INVARIANT: i32 = 4;
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Precondition(_) | Error::Guard(_) => exit::USAGE,
        Error::Budget { .. } => exit::BUDGET,
        Error::Valence { .. } | Error::Invariant(_) => exit::INVARIANT,
    }
}

#[derive(Parser, Debug)]
#[command(name = "xigraph", version, about = "Real components of modular curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Full,
    Gamma,
    GammaMinus,
    Gamma1,
    Gamma0,
    Split,
    Custom,
}

impl FamilyArg {
    fn curve(self) -> Option<Curve> {
        Some(match self {
            FamilyArg::Full => Curve::Full,
            FamilyArg::Gamma => Curve::Gamma,
            FamilyArg::GammaMinus => Curve::GammaMinus,
            FamilyArg::Gamma1 => Curve::Gamma1,
            FamilyArg::Gamma0 => Curve::Gamma0,
            FamilyArg::Split => Curve::Split,
            FamilyArg::Custom => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConjArg {
    Std,
    Inv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the graph of real components for one group.
    Compute {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Level N. Optional with --group-file, which carries its own level.
        #[arg(long)]
        level: Option<u32>,
        /// Defaults to the family's usual conjugation (inv for gamma-minus).
        #[arg(long, value_enum)]
        conjugation: Option<ConjArg>,
        /// JSON group description, for --family custom.
        #[arg(long)]
        group_file: Option<PathBuf>,
        /// Maximum closure size for custom groups.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
    },
    /// Print an invariant table for a range of levels.
    Table {
        /// gamma (X+ and X-), gamma0, gamma1 or split.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        min: u32,
        #[arg(long)]
        max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Recompute the published tables and report every differing cell.
    Verify {
        /// gamma, gamma0, gamma1, split or all.
        #[arg(long, default_value = "all")]
        family: String,
        /// Only check rows with level at most this.
        #[arg(long)]
        max: Option<u32>,
        /// Compare against this CSV instead of the embedded table.
        #[arg(long)]
        gold: Option<PathBuf>,
    },
    /// Run internal consistency suites and print a JSON summary.
    Check {
        /// rho, cycles, odd-regular, oracle, crt, preimage, shortcut,
        /// count-identity or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max: Option<u32>,
    },
}

/// Output of a command: what to print and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: exit::OK,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ConjSpec {
    Named(String),
    Matrix([[i64; 2]; 2]),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    level: u32,
    #[serde(default)]
    conjugation: Option<ConjSpec>,
    generators: Vec<[[i64; 2]; 2]>,
}

/// A custom group read from JSON of the form
/// `{"level": N, "conjugation": "std" | "inv" | [[a,b],[c,d]], "generators": [[[a,b],[c,d]], ...]}`.
/// Entries are reduced mod N. `conj_override` replaces the file's conjugation.
pub fn parse_group_json(
    json: &str,
    conj_override: Option<ConjArg>,
    budget: usize,
) -> Result<(SubgroupSpec, Conjugation)> {
    let file: GroupFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("group file: {e}")))?;
    let n = file.level;
    let ring = RingCtx::new(n)?;
    let conj = match (conj_override, file.conjugation) {
        (Some(ConjArg::Std), _) | (None, None) => Conjugation::std(n),
        (Some(ConjArg::Inv), _) => Conjugation::inv(n),
        (None, Some(ConjSpec::Named(s))) => match s.as_str() {
            "std" => Conjugation::std(n),
            "inv" => Conjugation::inv(n),
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown conjugation '{other}'"
                )))
            }
        },
        (None, Some(ConjSpec::Matrix([[a, b], [c, d]]))) => {
            Conjugation::new(Mat2::new(a, b, c, d, n))?
        }
    };
    let gens = file
        .generators
        .iter()
        .map(|&[[a, b], [c, d]]| Mat2::sl2(a, b, c, d, n))
        .collect::<Result<Vec<_>>>()?;
    let spec = custom_group_with_budget(&ring, &gens, conj, budget)?;
    Ok((spec, conj))
}

fn compute(
    family: FamilyArg,
    level: Option<u32>,
    conjugation: Option<ConjArg>,
    group_file: Option<PathBuf>,
    budget: usize,
    format: GraphFormat,
) -> Result<Outcome> {
    let (spec, conj) = match (family.curve(), group_file) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidInput(
                "--group-file needs --family custom".into(),
            ))
        }
        (None, None) => {
            return Err(Error::InvalidInput(
                "--family custom needs --group-file".into(),
            ))
        }
        (None, Some(path)) => {
            let json = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            let (spec, conj) = parse_group_json(&json, conjugation, budget)?;
            if let Some(l) = level.filter(|&l| l != spec.level()) {
                return Err(Error::InvalidInput(format!(
                    "--level {l} disagrees with the group file's level {}",
                    spec.level()
                )));
            }
            (spec, conj)
        }
        (Some(curve), None) => {
            let n = level.ok_or_else(|| Error::InvalidInput("--level is required".into()))?;
            let spec = curve.group(&RingCtx::new(n)?);
            let conj = match conjugation {
                None => curve.conjugation(n),
                Some(ConjArg::Std) => Conjugation::std(n),
                Some(ConjArg::Inv) => Conjugation::inv(n),
            };
            (spec, conj)
        }
    };
    let xi = build_xi(&spec, conj)?;
    let doc = GraphDocument::from_xi(&xi, &spec, conj)?;
    Ok(Outcome::ok(match format {
        GraphFormat::Text => doc.to_text(),
        GraphFormat::Json => doc.to_json() + "\n",
        GraphFormat::Dot => doc.to_dot(),
    }))
}

fn run_verify(family: &str, max: Option<u32>, gold: Option<PathBuf>) -> Result<Outcome> {
    let kinds: Vec<table::TableKind> = if family == "all" {
        if gold.is_some() {
            return Err(Error::InvalidInput("--gold needs a single --family".into()));
        }
        table::TableKind::ALL.to_vec()
    } else {
        vec![table::TableKind::from_tag(family)?]
    };
    let mut stdout = String::new();
    let mut failed = false;
    for kind in kinds {
        let table = match &gold {
            Some(path) => {
                let csv = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                gold::Table::parse(&csv)?
            }
            None => gold::embedded(kind.tag())?,
        };
        let report = verify::verify_table(kind, &table, max)?;
        for m in &report.mismatches {
            stdout.push_str(&format!("{m}\n"));
        }
        stdout.push_str(&format!(
            "{}: {} rows, {} cells, {} mismatches\n",
            kind.tag(),
            report.rows_checked,
            report.cells_checked,
            report.mismatches.len()
        ));
        failed |= !report.mismatches.is_empty();
    }
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if failed { exit::MISMATCH } else { exit::OK },
    })
}

fn run_checks(suite: &str, max: Option<u32>) -> Result<Outcome> {
    let suites = if suite == "all" {
        checks::Suite::ALL.to_vec()
    } else {
        vec![checks::Suite::from_tag(suite)?]
    };
    let reports = suites
        .into_iter()
        .map(|s| checks::run_suite(s, max))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let summary = serde_json::json!({ "passed": passed, "suites": reports });
    Ok(Outcome {
        stdout: serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        stderr: String::new(),
        code: if passed { exit::OK } else { exit::MISMATCH },
    })
}

/// Execute a parsed command line. Library errors become an error message
/// and the matching exit code.
pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Compute {
            family,
            level,
            conjugation,
            group_file,
            budget,
            format,
        } => compute(family, level, conjugation, group_file, budget, format),
        Command::Table {
            family,
            min,
            max,
            format,
        } => table::TableKind::from_tag(&family)
            .and_then(|k| table::compute_table(k, min, max))
            .map(|t| {
                Outcome::ok(match format {
                    TableFormat::Csv => t.to_csv(),
                    TableFormat::Md => t.to_markdown(),
                })
            }),
        Command::Verify { family, max, gold } => run_verify(&family, max, gold),
        Command::Check { suite, max } => run_checks(&suite, max),
    };
    result.unwrap_or_else(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: exit_code(&e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut full = vec!["xigraph"];
        full.extend_from_slice(args);
        run(Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn group_json_reduces_entries() {
        let json = r#"{"level": 5, "conjugation": "inv", "generators": [[[6, 7], [0, 1]]]}"#;
        let (spec, conj) = parse_group_json(json, None, DEFAULT_BUDGET).unwrap();
        assert!(conj.is_inv());
        assert!(spec
            .generators()
            .unwrap()
            .contains(&Mat2::new(1, 2, 0, 1, 5)));
        let json = r#"{"level": 5, "conjugation": [[1, 0], [0, -1]], "generators": []}"#;
        assert!(parse_group_json(json, None, DEFAULT_BUDGET)
            .unwrap()
            .1
            .is_std());
    }

    #[test]
    fn group_json_errors() {
        for bad in [
            "{",
            r#"{"level": 5, "generators": [[[2, 0], [0, 1]]]}"#,
            r#"{"level": 0, "generators": []}"#,
            r#"{"level": 5, "conjugation": "sideways", "generators": []}"#,
            r#"{"level": 5, "generators": [], "extra": 1}"#,
        ] {
            assert!(matches!(
                parse_group_json(bad, None, DEFAULT_BUDGET),
                Err(Error::InvalidInput(_))
            ));
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_args(&["compute", "--family", "gamma1", "--level", "4"]).code,
            0
        );
        assert_eq!(
            run_args(&["compute", "--family", "gamma1", "--level", "0"]).code,
            2
        );
        let o = run_args(&[
            "compute",
            "--family",
            "gamma1",
            "--level",
            "5",
            "--conjugation",
            "inv",
        ]);
        assert_eq!(o.code, 2, "{o:?}");
        assert_eq!(
            run_args(&["compute", "--family", "custom", "--level", "5"]).code,
            2
        );
        assert_eq!(
            run_args(&["table", "--family", "full", "--max", "3"]).code,
            2
        );
        assert_eq!(run_args(&["check", "--suite", "rho", "--max", "4"]).code, 0);
    }
}
