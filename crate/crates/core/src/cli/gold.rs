//! Published invariant tables, embedded at build time.

use crate::error::{Error, Result};

pub const X0_CSV: &str = include_str!("../../data/x0.csv");
pub const X1_CSV: &str = include_str!("../../data/x1.csv");
pub const XPM_CSV: &str = include_str!("../../data/xpm.csv");
pub const XSPLIT_CSV: &str = include_str!("../../data/xsplit.csv");

/// One row: the level and one cell per value column. Blank cells are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub level: u32,
    pub cells: Vec<Option<u64>>,
}

/// A table with header `family,N,<columns...>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub family: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn parse(csv: &str) -> Result<Table> {
        let bad = |line: usize, what: &str| {
            Error::InvalidInput(format!("gold table line {line}: {what}"))
        };
        let mut lines = csv
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty table"))?;
        let head: Vec<&str> = header.split(',').map(str::trim).collect();
        if head.len() < 3 || head[0] != "family" || head[1] != "N" {
            return Err(bad(1, "header must start with family,N"));
        }
        let columns: Vec<String> = head[2..].iter().map(|s| s.to_string()).collect();
        let mut family = None::<String>;
        let mut rows = Vec::new();
        for (i, line) in lines {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != head.len() {
                return Err(bad(i + 1, "wrong number of fields"));
            }
            match &family {
                None => family = Some(f[0].to_string()),
                Some(fam) if fam != f[0] => return Err(bad(i + 1, "mixed families")),
                _ => {}
            }
            let level = f[1]
                .parse()
                .map_err(|_| bad(i + 1, "level is not a number"))?;
            let cells = f[2..]
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        Ok(None)
                    } else {
                        c.parse()
                            .map(Some)
                            .map_err(|_| bad(i + 1, "cell is not a number"))
                    }
                })
                .collect::<Result<_>>()?;
            rows.push(Row { level, cells });
        }
        Ok(Table {
            family: family.ok_or_else(|| bad(2, "no rows"))?,
            columns,
            rows,
        })
    }

    pub fn header(&self) -> String {
        format!("family,N,{}", self.columns.join(","))
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{}", self.family, r.level));
            for c in &r.cells {
                out.push(',');
                if let Some(v) = c {
                    out.push_str(&v.to_string());
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut head = vec!["N".to_string()];
        head.extend(self.columns.iter().cloned());
        let mut out = format!("| {} |\n", head.join(" | "));
        out.push_str(&format!("|{}\n", "---:|".repeat(head.len())));
        for r in &self.rows {
            let mut cells = vec![r.level.to_string()];
            cells.extend(
                r.cells
                    .iter()
                    .map(|c| c.map(|v| v.to_string()).unwrap_or_default()),
            );
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }
}

/// The embedded table for a family tag (`gamma0`, `gamma1`, `gamma`, `split`).
pub fn embedded(family: &str) -> Result<Table> {
    let csv = match family {
        "gamma0" => X0_CSV,
        "gamma1" => X1_CSV,
        "gamma" | "gamma-minus" => XPM_CSV,
        "split" => XSPLIT_CSV,
        other => {
            return Err(Error::InvalidInput(format!(
                "no published table for '{other}'"
            )))
        }
    };
    Table::parse(csv)
}
