//! Aggregate CSV format.
//!
//! ```text
//! generation,best_fitness_mean,best_fitness_sd,avg_fitness_mean,avg_fitness_sd,avg_size_mean,avg_size_sd,avg_duration_mean
//! ```
//!
//! The combined sweep file prepends a `groups` column. SDs are sample
//! (n - 1) standard deviations across runs. Numbers use the shortest decimal
//! form that round-trips, lines end in `\n`.

use std::fmt::Write as _;

use crate::engine::AggregateRow;

pub const HEADER: &str = "generation,best_fitness_mean,best_fitness_sd,avg_fitness_mean,avg_fitness_sd,avg_size_mean,avg_size_sd,avg_duration_mean";
pub const COMBINED_HEADER: &str = "groups,generation,best_fitness_mean,best_fitness_sd,avg_fitness_mean,avg_fitness_sd,avg_size_mean,avg_size_sd,avg_duration_mean";

fn write_fields(out: &mut String, r: &AggregateRow) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{}",
        r.generation,
        r.best_fitness_mean,
        r.best_fitness_sd,
        r.avg_fitness_mean,
        r.avg_fitness_sd,
        r.avg_size_mean,
        r.avg_size_sd,
        r.avg_duration_mean
    );
}

pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        write_fields(&mut out, r);
    }
    out
}

/// Long-format CSV over several group settings.
pub fn combined_csv(sets: &[(usize, Vec<AggregateRow>)]) -> String {
    let mut out = String::new();
    out.push_str(COMBINED_HEADER);
    out.push('\n');
    for (groups, rows) in sets {
        for r in rows {
            let _ = write!(out, "{groups},");
            write_fields(&mut out, r);
        }
    }
    out
}

/// A metric column read back from an aggregate CSV, keyed by group count.
/// Plain (non-combined) files yield a single series with `groups = None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub groups: Option<usize>,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CsvError {
    #[error("empty CSV")]
    Empty,
    #[error("unrecognised header `{0}`")]
    Header(String),
    #[error("no data rows")]
    NoRows,
    #[error("line {line}: {message}")]
    Row { line: usize, message: String },
}

/// Reads the `column` series (e.g. `avg_size_mean`) from CSV text written by
/// [`aggregate_csv`] or [`combined_csv`]. Series keep first-seen group order.
pub fn read_series(text: &str, column: &str) -> Result<Vec<Series>, CsvError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(CsvError::Empty)?.trim_end_matches('\r');
    let combined = match header {
        HEADER => false,
        COMBINED_HEADER => true,
        other => return Err(CsvError::Header(other.to_string())),
    };
    let names: Vec<&str> = header.split(',').collect();
    let col = names
        .iter()
        .position(|n| *n == column)
        .ok_or_else(|| CsvError::Header(format!("missing column `{column}`")))?;
    let gen_col = names.iter().position(|n| *n == "generation").expect("in header");

    let mut series: Vec<Series> = Vec::new();
    for (k, line) in lines.enumerate() {
        let line_no = k + 2;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(CsvError::Row {
                line: line_no,
                message: format!("expected {} fields, got {}", names.len(), fields.len()),
            });
        }
        let num = |i: usize| -> Result<f64, CsvError> {
            fields[i].parse::<f64>().map_err(|_| CsvError::Row {
                line: line_no,
                message: format!("`{}` is not a number", fields[i]),
            })
        };
        let groups = if combined {
            Some(fields[0].parse::<usize>().map_err(|_| CsvError::Row {
                line: line_no,
                message: format!("`{}` is not a group count", fields[0]),
            })?)
        } else {
            None
        };
        let point = (num(gen_col)?, num(col)?);
        match series.iter_mut().find(|s| s.groups == groups) {
            Some(s) => s.points.push(point),
            None => series.push(Series {
                groups,
                points: vec![point],
            }),
        }
    }
    if series.is_empty() {
        return Err(CsvError::NoRows);
    }
    Ok(series)
}
