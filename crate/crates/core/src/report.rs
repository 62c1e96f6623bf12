//! Text, CSV and JSON renderings of the command-line results.
//!
//! CSV is long-form with header `n,k,count`. JSON writes every integer as a
//! decimal string; the report types deserialize back from that form.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::eco::CountMatrix;
use crate::exact::Exact;
use crate::oracle::RefinedDistribution;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected text, csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub patterns: String,
    pub n: usize,
    pub oracle: Exact,
    pub closed_form: Option<Exact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionReport {
    pub patterns: String,
    #[serde(flatten)]
    pub distribution: RefinedDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub rule: String,
    pub shifted: bool,
    #[serde(flatten)]
    pub matrix: CountMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub k: usize,
    pub order: usize,
    pub series: TruncatedSeries,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Right-aligned triangle: `n | c_1 c_2 ...`.
fn table<'a, I>(rows: I) -> String
where
    I: IntoIterator<Item = (usize, &'a [BigUint])>,
{
    let rows: Vec<_> = rows.into_iter().collect();
    let width = rows
        .iter()
        .flat_map(|(_, r)| r.iter().map(|c| c.to_string().len()))
        .max()
        .unwrap_or(1);
    let n_width = rows
        .iter()
        .map(|(n, _)| n.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (n, row) in rows {
        let _ = write!(out, "{n:>n_width$} |");
        for c in row {
            let _ = write!(out, " {:>width$}", c.to_string());
        }
        out.push('\n');
    }
    out
}

fn long_csv<'a, I>(rows: I) -> String
where
    I: IntoIterator<Item = (usize, &'a [BigUint])>,
{
    let mut out = String::from("n,k,count\n");
    for (n, row) in rows {
        for (k, c) in row.iter().enumerate() {
            let _ = writeln!(out, "{n},{},{c}", k + 1);
        }
    }
    out
}

pub fn render_count(r: &CountReport, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", r.oracle.0),
        Format::Csv => format!(
            "patterns,n,oracle,closed_form\n\"{}\",{},{},{}\n",
            r.patterns,
            r.n,
            r.oracle.0,
            r.closed_form
                .as_ref()
                .map(|c| c.0.to_string())
                .unwrap_or_default()
        ),
        Format::Json => json(r),
    }
}

pub fn render_distribution(r: &DistributionReport, format: Format) -> String {
    match format {
        Format::Text => table(r.distribution.rows()),
        Format::Csv => long_csv(r.distribution.rows()),
        Format::Json => json(r),
    }
}

pub fn render_matrix(r: &MatrixReport, format: Format) -> String {
    match format {
        Format::Text => table(r.matrix.rows()),
        Format::Csv => long_csv(r.matrix.rows()),
        Format::Json => json(r),
    }
}

pub fn render_series(r: &SeriesReport, format: Format) -> String {
    let coeffs = r.series.coeffs();
    match format {
        Format::Text => {
            let mut s = coeffs
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "{i},{c}");
            }
            out
        }
        Format::Json => json(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Statistic;

    fn dist() -> RefinedDistribution {
        let rows = vec![vec![1u32], vec![1, 1], vec![2, 2, 1]]
            .into_iter()
            .map(|r| r.into_iter().map(BigUint::from).collect())
            .collect();
        RefinedDistribution::from_rows(Statistic::Last, rows)
    }

    #[test]
    fn text_table_is_aligned() {
        let r = DistributionReport {
            patterns: "1-23".into(),
            distribution: dist(),
        };
        assert_eq!(
            render_distribution(&r, Format::Text),
            "1 | 1\n2 | 1 1\n3 | 2 2 1\n"
        );
    }

    #[test]
    fn csv_is_long_form() {
        let r = DistributionReport {
            patterns: "1-23".into(),
            distribution: dist(),
        };
        let csv = render_distribution(&r, Format::Csv);
        assert!(csv.starts_with("n,k,count\n1,1,1\n2,1,1\n"));
        assert_eq!(csv.lines().count(), 1 + 6);
    }

    #[test]
    fn json_round_trips() {
        let r = DistributionReport {
            patterns: "1-23".into(),
            distribution: dist(),
        };
        let text = render_distribution(&r, Format::Json);
        assert!(text.contains(r#""statistic": "last""#));
        let back: DistributionReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
