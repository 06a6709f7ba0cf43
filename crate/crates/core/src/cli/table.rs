//! Recomputing the invariant tables.

use rayon::prelude::*;

use super::gold::{Row, Table};
use crate::error::{Error, Result};
use crate::families::{genus, Curve};
use crate::groups::Conjugation;
use crate::modring::RingCtx;
use crate::xicore::build_xi;

/// Which published table a family tag refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Gamma0,
    Gamma1,
    /// `X^+(N)` and `X^-(N)` side by side.
    PlusMinus,
    Split,
}

impl TableKind {
    pub const ALL: [TableKind; 4] = [
        TableKind::PlusMinus,
        TableKind::Gamma0,
        TableKind::Gamma1,
        TableKind::Split,
    ];

    pub fn from_tag(tag: &str) -> Result<TableKind> {
        Ok(match tag {
            "gamma0" => TableKind::Gamma0,
            "gamma1" => TableKind::Gamma1,
            "gamma" | "gamma-minus" => TableKind::PlusMinus,
            "split" => TableKind::Split,
            other => {
                return Err(Error::InvalidInput(format!(
                    "no table for '{other}' (expected gamma, gamma0, gamma1 or split)"
                )))
            }
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            TableKind::Gamma0 => "gamma0",
            TableKind::Gamma1 => "gamma1",
            TableKind::PlusMinus => "gamma",
            TableKind::Split => "split",
        }
    }

    pub fn columns(self) -> Vec<String> {
        let cols: &[&str] = match self {
            TableKind::PlusMinus => &["g", "pi0", "p_plus", "p_minus"],
            _ => &["g", "pi0", "p", "e"],
        };
        cols.iter().map(|s| s.to_string()).collect()
    }

    fn curve(self) -> Curve {
        match self {
            TableKind::Gamma0 => Curve::Gamma0,
            TableKind::Gamma1 => Curve::Gamma1,
            TableKind::PlusMinus => Curve::Gamma,
            TableKind::Split => Curve::Split,
        }
    }
}

/// The cells of one row, in [`TableKind::columns`] order.
pub fn compute_row(kind: TableKind, n: u32) -> Result<Row> {
    let ring = RingCtx::new(n)?;
    let spec = kind.curve().group(&ring);
    let g = genus(&spec)?.genus;
    let plus = build_xi(&spec, Conjugation::std(n))?.graph;
    let pi0 = plus.component_stats()?.len() as u64;
    let p = plus.parabolic_count() as u64;
    let cells = match kind {
        TableKind::PlusMinus => {
            let minus = build_xi(&spec, Conjugation::inv(n))?.graph;
            let pi0_minus = minus.component_stats()?.len() as u64;
            if pi0_minus != pi0 {
                return Err(Error::Invariant(format!(
                    "X+({n}) and X-({n}) have {pi0} and {pi0_minus} real components"
                )));
            }
            vec![g, pi0, p, minus.parabolic_count() as u64]
        }
        _ => vec![g, pi0, p, plus.elliptic_count() as u64],
    };
    Ok(Row {
        level: n,
        cells: cells.into_iter().map(Some).collect(),
    })
}

/// Rows for `min..=max`, computed in parallel and returned in level order.
pub fn compute_table(kind: TableKind, min: u32, max: u32) -> Result<Table> {
    if min == 0 || min > max {
        return Err(Error::InvalidInput(format!(
            "bad level range {min}..={max}"
        )));
    }
    let rows = (min..=max)
        .into_par_iter()
        .map(|n| compute_row(kind, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        family: kind.tag().to_string(),
        columns: kind.columns(),
        rows,
    })
}
