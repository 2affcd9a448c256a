//! CSV datasets with a one-line metadata header.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Token written in place of a value that is not defined.
pub const UNDEFINED: &str = "undefined";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy)]
pub struct Column {
    pub name: &'static str,
    pub units: &'static str,
}

pub const fn col(name: &'static str, units: &'static str) -> Column {
    Column { name, units }
}

/// A dataset: a metadata comment line, one column-header row and the data.
#[derive(Debug, Clone)]
pub struct Table {
    pub quantity: String,
    pub params: String,
    pub seed: u64,
    pub config: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Option<f64>>>,
}

pub fn format_value(v: Option<f64>) -> String {
    match v {
        Some(0.0) => format!("{:.16e}", 0.0),
        Some(x) if x.is_finite() => format!("{x:.16e}"),
        _ => UNDEFINED.to_string(),
    }
}

impl Table {
    pub fn metadata_line(&self) -> String {
        let units = self
            .columns
            .iter()
            .map(|c| format!("{}={}", c.name, c.units))
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "# phasedeficit {VERSION} | quantity: {} | units: {} | params: {} | seed: {} | config: {}",
            self.quantity, units, self.params, self.seed, self.config
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.metadata_line());
        out.push('\n');
        let header: Vec<&str> = self.columns.iter().map(|c| c.name).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> CliResult<()> {
        write_file(path, &self.render())
    }
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
