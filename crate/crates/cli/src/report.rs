//! Structured-text audit report, one `[record]` block per formula.

use std::fmt::Write as _;

use phasedeficit_core::oracle::CONFIRM_THRESHOLD;
use phasedeficit_core::oracle::{compare_to_oracle, DiscrepancyRecord, FormulaId, Grid};

use crate::config::CommonConfig;
use crate::error::CliResult;
use crate::table::{format_value, VERSION};

pub fn run_audit(ids: &[FormulaId], tail: f64) -> CliResult<Vec<DiscrepancyRecord>> {
    ids.iter()
        .map(|&id| Ok(compare_to_oracle(id, &Grid::default_for(id, tail)?)?))
        .collect()
}

fn count(n: usize) -> String {
    n.to_string()
}

pub fn render(records: &[DiscrepancyRecord], cfg: &CommonConfig) -> String {
    let mut out = format!(
        "# phasedeficit {VERSION} | quantity: published closed forms against the brute-force oracle \
         | units: per record | params: confirm_threshold={} | seed: {} | config: {}\n",
        format_value(Some(CONFIRM_THRESHOLD)),
        cfg.seed,
        cfg.render()
    );
    for r in records {
        let fields: [(&str, String); 12] = [
            ("formula_id", r.formula_id.to_string()),
            ("classification", r.classification.to_string()),
            (
                "max_abs_error",
                format_value((r.evaluated > 0).then_some(r.max_abs_error)),
            ),
            ("units", r.units.to_string()),
            (
                "worst_point",
                r.worst_point
                    .map_or_else(|| "none".to_string(), |p| p.to_string()),
            ),
            ("grid", r.grid.clone()),
            ("points", count(r.points)),
            ("evaluated", count(r.evaluated)),
            ("undefined_oracle", count(r.undefined_oracle)),
            ("undefined_published", count(r.undefined_published)),
            (
                "finite_where_oracle_undefined",
                count(r.finite_where_oracle_undefined),
            ),
            ("notes", r.notes.clone()),
        ];
        out.push_str("\n[record]\n");
        for (k, v) in fields {
            let _ = writeln!(out, "{k} = {v}");
        }
    }
    out
}
