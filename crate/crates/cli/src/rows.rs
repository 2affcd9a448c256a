//! Per-point evaluation of each scenario into dataset columns.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use phasedeficit_core::measures::entanglement_entropy;
use phasedeficit_core::oracle::{cat_oracle, kondo_oracle, oracle_deficit, oracle_reduced};
use phasedeficit_core::scenarios::{
    cat_closed, kondo_closed, kondo_concurrence, micro_macro_build, micro_macro_closed,
    micro_macro_invert, CatParams, KondoParams, MicroMacroParams,
};

use crate::config::Scenario;
use crate::error::CliResult;
use crate::table::{col, Column};

/// One evaluated point, without the swept-parameter column.
#[derive(Debug, Clone)]
pub struct Row {
    pub values: Vec<Option<f64>>,
    pub oracle_defined: bool,
}

pub fn param_units(key: &str) -> &'static str {
    match key {
        "lambda0" | "n_minus" | "n_plus" => "dimensionless",
        _ => "radians",
    }
}

pub fn quantity(scenario: Scenario) -> &'static str {
    match scenario {
        Scenario::MicroMacro => {
            "Pancharatnam phases, phase deficit and entanglement entropy of the micro-macro state"
        }
        Scenario::Cat => "phase deficit and entanglement entropy of the coherent cat state",
        Scenario::Kondo => "phase deficit and boundary-spin concurrence of the four-spin chain",
    }
}

pub fn value_columns(scenario: Scenario) -> Vec<Column> {
    match scenario {
        Scenario::MicroMacro => vec![
            col("phi_ab_published", "radians"),
            col("phi_a_published", "radians"),
            col("phi_b_published", "radians"),
            col("delta_published", "radians"),
            col("delta_oracle", "radians"),
            col("entropy_from_delta", "nats"),
            col("entropy_oracle", "nats"),
        ],
        Scenario::Cat => vec![
            col("delta_published", "radians"),
            col("delta_oracle", "radians"),
            col("entropy_published", "bits"),
            col("entropy_oracle", "bits"),
        ],
        Scenario::Kondo => vec![
            col("delta_published", "radians"),
            col("delta_oracle", "radians"),
            col("concurrence_published", "dimensionless"),
            col("concurrence_oracle", "dimensionless"),
            col("e_from_delta_published", "dimensionless"),
        ],
    }
}

/// Checks that `params` build a valid scenario before any sweep work starts.
pub fn validate(scenario: Scenario, params: &BTreeMap<String, f64>, tail: f64) -> CliResult<()> {
    match scenario {
        Scenario::MicroMacro => micro_macro_params(params).map(|_| ()),
        Scenario::Cat => cat_params(params, tail).map(|_| ()),
        Scenario::Kondo => Ok(()),
    }
}

pub fn evaluate(scenario: Scenario, params: &BTreeMap<String, f64>, tail: f64) -> CliResult<Row> {
    match scenario {
        Scenario::MicroMacro => micro_macro_row(&micro_macro_params(params)?),
        Scenario::Cat => cat_row(&cat_params(params, tail)?),
        Scenario::Kondo => kondo_row(&kondo_params(params)),
    }
}

fn micro_macro_params(p: &BTreeMap<String, f64>) -> CliResult<MicroMacroParams> {
    Ok(MicroMacroParams::new(p["lambda0"], p["g1"], p["g2"])?)
}

fn cat_params(p: &BTreeMap<String, f64>, tail: f64) -> CliResult<CatParams> {
    Ok(CatParams::new(
        p["n_minus"],
        p["n_plus"],
        p["xi"],
        p["psi"],
        p["theta"],
        tail,
    )?)
}

fn kondo_params(p: &BTreeMap<String, f64>) -> KondoParams {
    KondoParams::new(p["theta"], p["g1"], p["g4"])
}

fn micro_macro_row(p: &MicroMacroParams) -> CliResult<Row> {
    let closed = micro_macro_closed(p);
    let (psi, locals) = micro_macro_build(p)?;
    let report = oracle_deficit(&psi, &locals)?;
    let entropy = entanglement_entropy(&oracle_reduced(&psi, &[0])?)?;
    let at_quarter_turn = (p.g1 - FRAC_PI_2).abs() < 1e-12 && (p.g2 - FRAC_PI_2).abs() < 1e-12;
    let from_delta = closed
        .delta
        .filter(|_| at_quarter_turn)
        .and_then(|d| micro_macro_invert(d).ok())
        .map(|inv| inv.entropy_nats);
    Ok(Row {
        values: vec![
            closed.phi_ab.value(),
            closed.phi_a.value(),
            closed.phi_b.value(),
            closed.delta,
            report.deficit,
            from_delta,
            Some(entropy),
        ],
        oracle_defined: report.deficit.is_some(),
    })
}

fn cat_row(p: &CatParams) -> CliResult<Row> {
    let closed = cat_closed(p);
    let oracle = cat_oracle(p)?;
    Ok(Row {
        values: vec![
            closed.delta,
            oracle.report.deficit,
            closed.entropy_bits,
            Some(oracle.entropy_bits()),
        ],
        oracle_defined: oracle.report.deficit.is_some(),
    })
}

fn kondo_row(p: &KondoParams) -> CliResult<Row> {
    let closed = kondo_closed(p);
    let oracle = kondo_oracle(p)?;
    Ok(Row {
        values: vec![
            closed.delta,
            oracle.report.deficit,
            Some(kondo_concurrence(p.theta)),
            Some(oracle.concurrence),
            closed.e_from_delta,
        ],
        oracle_defined: oracle.report.deficit.is_some(),
    })
}
