//! Comparing recomputed tables against the published ones.

use std::fmt;

use rayon::prelude::*;

use super::gold::Table;
use super::table::{compute_row, TableKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub family: String,
    pub level: u32,
    pub column: String,
    pub expected: u64,
    pub got: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MISMATCH family={} N={} column={} expected={} got={}",
            self.family, self.level, self.column, self.expected, self.got
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub rows_checked: usize,
    pub cells_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Recompute every row of `gold` with level at most `max` and compare the
/// non-blank cells.
pub fn verify_table(kind: TableKind, gold: &Table, max: Option<u32>) -> Result<Report> {
    if gold.columns != kind.columns() {
        return Err(Error::InvalidInput(format!(
            "table columns {:?} do not match the {} schema",
            gold.columns,
            kind.tag()
        )));
    }
    let rows: Vec<_> = gold
        .rows
        .iter()
        .filter(|r| max.is_none_or(|m| r.level <= m))
        .collect();
    let computed = rows
        .par_iter()
        .map(|r| compute_row(kind, r.level))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report {
        rows_checked: rows.len(),
        ..Report::default()
    };
    for (g, c) in rows.iter().zip(&computed) {
        for (i, col) in gold.columns.iter().enumerate() {
            let (Some(expected), Some(got)) = (g.cells[i], c.cells[i]) else {
                continue;
            };
            report.cells_checked += 1;
            if expected != got {
                report.mismatches.push(Mismatch {
                    family: kind.tag().to_string(),
                    level: g.level,
                    column: col.clone(),
                    expected,
                    got,
                });
            }
        }
    }
    Ok(report)
}
