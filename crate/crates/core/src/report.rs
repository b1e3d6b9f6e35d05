//! Side-by-side comparison tables for evaluation reports.

use std::fmt::Write as _;

use crate::eval::EvalReport;

/// Column layout of a comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableShape {
    /// EM and fertility.
    Compact,
    /// EM, recall, precision, F1 and fertility.
    Extended,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub name: String,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub gold_name: String,
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn new(gold_name: impl Into<String>) -> Self {
        Self { gold_name: gold_name.into(), rows: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, report: EvalReport) {
        self.rows.push(ComparisonRow { name: name.into(), report });
    }

    /// Percentages with two decimals; the header documents aggregation.
    pub fn to_table(&self, shape: TableShape) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# gold: {}", self.gold_name);
        if let Some(first) = self.rows.first() {
            let r = &first.report;
            let _ = writeln!(
                out,
                "# mode: {}, items: {}, gold fertility: {:.4}",
                r.mode, r.n_words, r.gold_fertility
            );
            let _ = writeln!(
                out,
                "# EM averaged over unique items; {} P/R/F1 micro-pooled",
                r.overlap.as_str()
            );
        }
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0).max("tokenizer".len());
        let cols: &[&str] = match shape {
            TableShape::Compact => &["EM", "Fert."],
            TableShape::Extended => &["EM", "Recall", "Precision", "F1", "Fertility"],
        };
        let _ = write!(out, "{:<width$}", "tokenizer");
        for c in cols {
            let _ = write!(out, "  {c:>9}");
        }
        out.push('\n');
        for row in &self.rows {
            let r = &row.report;
            let values: Vec<String> = match shape {
                TableShape::Compact => vec![format!("{:.2}", 100.0 * r.exact_match), format!("{:.2}", r.fertility)],
                TableShape::Extended => vec![
                    format!("{:.2}", 100.0 * r.exact_match),
                    format!("{:.2}", 100.0 * r.recall),
                    format!("{:.2}", 100.0 * r.precision),
                    format!("{:.2}", 100.0 * r.f1),
                    format!("{:.4}", r.fertility),
                ],
            };
            let _ = write!(out, "{:<width$}", row.name);
            for v in values {
                let _ = write!(out, "  {v:>9}");
            }
            out.push('\n');
        }
        out
    }

    /// `name.key=value` lines, one per metric.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gold={}", self.gold_name);
        for row in &self.rows {
            for (k, v) in row.report.to_kv() {
                let _ = writeln!(out, "{}.{k}={v}", row.name);
            }
        }
        out
    }
}
