//! CSV and SVG output.

pub mod csv;
pub mod svg;

pub use csv::{aggregate_csv, combined_csv, read_series, CsvError, Series};
pub use svg::line_chart;
