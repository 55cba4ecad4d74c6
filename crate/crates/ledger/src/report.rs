use std::collections::BTreeMap;

use ramcoh_valuation::Result;
use serde::{Deserialize, Serialize};

use crate::cert::TorsionCert;
use crate::expr::{LinExpr, Symbol};
use crate::pipeline::{Parity, PipelineResult};

/// Values used for the numeric column.
pub fn default_values() -> BTreeMap<Symbol, u64> {
    [
        (Symbol::N, 0),
        (Symbol::R, 1),
        (Symbol::Vj, 0),
        (Symbol::D, 1),
        (Symbol::M, 2),
        (Symbol::Nn, 1),
        (Symbol::Delta, 1),
        (Symbol::Ap, 0),
        (Symbol::Cd, 1),
    ]
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub theorem: String,
    pub window: String,
    pub exponent: LinExpr,
    pub stated: Option<LinExpr>,
    pub numeric: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// One row per degree window of the derived certificate.
pub fn rows(result: &PipelineResult, values: &BTreeMap<Symbol, u64>) -> Result<Vec<LedgerRow>> {
    let mut values = values.clone();
    values.insert(Symbol::Ap, u64::from(result.params.parity == Parity::Two));
    let label = if result.params.tame { format!("{} (tame)", result.id) } else { result.id.clone() };
    let mut out = Vec::new();
    for (window, exponent) in result.derived.rows() {
        let stated = stated_for(&result.paper_stated, &window);
        let numeric = exponent.eval(&values)?;
        out.push(LedgerRow {
            theorem: label.clone(),
            window,
            exponent,
            stated,
            numeric,
            matches: result.matches,
        });
    }
    Ok(out)
}

fn stated_for(stated: &TorsionCert, window: &str) -> Option<LinExpr> {
    if let Ok(i) = window.parse::<i64>() {
        return stated.get(i);
    }
    let from = window.strip_prefix("i≥")?.parse::<i64>().ok()?;
    stated.get(from)
}

/// Fixed-width text table.
pub fn text_table(rows: &[LedgerRow], numeric_label: &str) -> String {
    let header = ["theorem", "degree window", "exponent", numeric_label, "match"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.theorem.clone(),
                r.window.clone(),
                r.exponent.to_string(),
                r.numeric.to_string(),
                if r.matches { "yes".into() } else { "NO".into() },
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for c in &cells {
        for (w, s) in widths.iter_mut().zip(c.iter()) {
            *w = (*w).max(s.chars().count());
        }
    }
    let line = |c: &[String]| {
        c.iter()
            .zip(widths.iter())
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&header.map(String::from));
    out.push('\n');
    for c in &cells {
        out.push_str(&line(c));
        out.push('\n');
    }
    out
}
