use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{cat_oracle, kondo_oracle, oracle_deficit};
use crate::error::{Error, Result};
use crate::phase::{wrap_phase, PhaseResult};
use crate::scenarios::{
    cat_closed, kondo_closed, kondo_concurrence, micro_macro_build, micro_macro_closed, CatParams,
    KondoParams, MicroMacroParams,
};

/// Errors at or above this classify a formula as deviating.
pub const CONFIRM_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    MicroMacroClosed,
    CatTraceAb,
    CatTraceA,
    CatTraceB,
    CatDelta,
    CatEntropy,
    KondoGlobal,
    KondoLocals,
    KondoDelta,
    KondoEFromDelta,
    KondoConcurrence,
}

impl FormulaId {
    pub const ALL: [FormulaId; 11] = [
        FormulaId::MicroMacroClosed,
        FormulaId::CatTraceAb,
        FormulaId::CatTraceA,
        FormulaId::CatTraceB,
        FormulaId::CatDelta,
        FormulaId::CatEntropy,
        FormulaId::KondoGlobal,
        FormulaId::KondoLocals,
        FormulaId::KondoDelta,
        FormulaId::KondoEFromDelta,
        FormulaId::KondoConcurrence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::MicroMacroClosed => "micro_macro_closed",
            FormulaId::CatTraceAb => "cat_closed.trace_ab",
            FormulaId::CatTraceA => "cat_closed.trace_a",
            FormulaId::CatTraceB => "cat_closed.trace_b",
            FormulaId::CatDelta => "cat_closed.delta",
            FormulaId::CatEntropy => "cat_closed.entropy",
            FormulaId::KondoGlobal => "kondo_closed.global",
            FormulaId::KondoLocals => "kondo_closed.locals",
            FormulaId::KondoDelta => "kondo_closed.delta",
            FormulaId::KondoEFromDelta => "kondo_closed.e_from_delta",
            FormulaId::KondoConcurrence => "kondo_concurrence",
        }
    }

    pub fn units(self) -> &'static str {
        match self {
            FormulaId::CatTraceAb
            | FormulaId::CatTraceA
            | FormulaId::CatTraceB
            | FormulaId::KondoEFromDelta
            | FormulaId::KondoConcurrence => "dimensionless",
            FormulaId::CatEntropy => "bits",
            _ => "radians",
        }
    }

    fn notes(self) -> &'static str {
        match self {
            FormulaId::MicroMacroClosed => {
                "global and both local phases plus their deficit; the second local phase's \
                 cosine argument is read as g2"
            }
            FormulaId::CatTraceAb => "complex modulus of the difference from <psi|U (x) V|psi>",
            FormulaId::CatTraceA => "complex modulus of the difference from Tr[rho_A U]",
            FormulaId::CatTraceB => "complex modulus of the difference from Tr[rho_B V]",
            FormulaId::CatDelta => {
                "third arctangent pairs (k^2+k*^2) with sin and (k^2-k*^2) with cos; the printed \
                 Tr[rho_B V] implies the opposite pairing with an explicit i, giving the phase of \
                 cos(n sin xi - 2 psi)"
            }
            FormulaId::CatEntropy => {
                "entropy exponent uses n_- n_+ cos xi where the coherent overlap gives \
                 sqrt(n_- n_+) cos xi; compared in bits"
            }
            FormulaId::KondoGlobal => {
                "printed denominator lacks the constant cos^2(theta) term of the direct inner \
                 product [(1+sin^2)(e^{-ig1}+e^{-ig4}) + cos^2(1+e^{-i(g1+g4)})]/4"
            }
            FormulaId::KondoLocals => "local phases of spins 1 and 4",
            FormulaId::KondoDelta => "inherits the global-phase denominator omission",
            FormulaId::KondoEFromDelta => {
                "(tan D + 2)/(tan D - 2) on the published deficit versus the Wootters concurrence \
                 of the boundary pair; inherits the global-phase denominator omission"
            }
            FormulaId::KondoConcurrence => {
                "max{0, (1 - 3 cos 2 theta)/4} versus the Wootters concurrence of the boundary pair"
            }
        }
    }

    fn accepts(self, point: &GridPoint) -> bool {
        matches!(
            (self, point),
            (FormulaId::MicroMacroClosed, GridPoint::MicroMacro(_))
                | (
                    FormulaId::CatTraceAb
                        | FormulaId::CatTraceA
                        | FormulaId::CatTraceB
                        | FormulaId::CatDelta
                        | FormulaId::CatEntropy,
                    GridPoint::Cat(_)
                )
                | (
                    FormulaId::KondoGlobal
                        | FormulaId::KondoLocals
                        | FormulaId::KondoDelta
                        | FormulaId::KondoEFromDelta
                        | FormulaId::KondoConcurrence,
                    GridPoint::Kondo(_)
                )
        )
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown formula id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridPoint {
    MicroMacro(MicroMacroParams),
    Cat(CatParams),
    Kondo(KondoParams),
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridPoint::MicroMacro(p) => {
                write!(f, "lambda0={:?},g1={:?},g2={:?}", p.lambda0, p.g1, p.g2)
            }
            GridPoint::Cat(p) => write!(
                f,
                "n_minus={:?},n_plus={:?},xi={:?},psi={:?},theta={:?},n_max={}",
                p.n_minus, p.n_plus, p.xi, p.psi, p.theta, p.fock.n_max
            ),
            GridPoint::Kondo(p) => write!(f, "theta={:?},g1={:?},g4={:?}", p.theta, p.g1, p.g4),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub description: String,
    pub points: Vec<GridPoint>,
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        stop
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}

impl Grid {
    pub fn new(description: impl Into<String>, points: Vec<GridPoint>) -> Self {
        Self {
            description: description.into(),
            points,
        }
    }

    /// `lambda0` in {0.55, ..., 0.95} times `g1`, `g2` at ten interior points
    /// of `(0, pi)`.
    pub fn micro_macro() -> Self {
        let gs: Vec<f64> = (1..=10).map(|j| PI * j as f64 / 11.0).collect();
        let mut points = Vec::new();
        for lambda0 in [0.55, 0.65, 0.75, 0.85, 0.95] {
            for &g1 in &gs {
                for &g2 in &gs {
                    points.push(GridPoint::MicroMacro(
                        MicroMacroParams::new(lambda0, g1, g2).expect("valid grid"),
                    ));
                }
            }
        }
        Self::new(
            "lambda0 in {0.55,0.65,0.75,0.85,0.95} x g1,g2 = pi*j/11 for j=1..10",
            points,
        )
    }

    /// `psi` over `[0, pi]` at `|alpha_-|^2 = 2`, `|alpha_+|^2 = 1`,
    /// `xi = pi/4`, `theta = pi`.
    pub fn cat_figure_one(count: usize, tail: f64) -> Result<Self> {
        let points = linspace(0.0, PI, count)
            .into_iter()
            .map(|psi| CatParams::figure_one(psi, tail).map(GridPoint::Cat))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(
            format!("psi in [0, pi] ({count} points), n_minus=2, n_plus=1, xi=pi/4, theta=pi, tail={tail:e}"),
            points,
        ))
    }

    /// `theta` over `[0, pi]` at `g1 = g4 = pi/2`.
    pub fn kondo_figure_two(count: usize) -> Self {
        let points = linspace(0.0, PI, count)
            .into_iter()
            .map(|theta| GridPoint::Kondo(KondoParams::new(theta, FRAC_PI_2, FRAC_PI_2)))
            .collect();
        Self::new(
            format!("theta in [0, pi] ({count} points), g1=g4=pi/2"),
            points,
        )
    }

    /// The grid each formula is audited on by default.
    pub fn default_for(id: FormulaId, tail: f64) -> Result<Self> {
        Ok(match id {
            FormulaId::MicroMacroClosed => Self::micro_macro(),
            FormulaId::CatTraceAb
            | FormulaId::CatTraceA
            | FormulaId::CatTraceB
            | FormulaId::CatDelta
            | FormulaId::CatEntropy => Self::cat_figure_one(201, tail)?,
            _ => Self::kondo_figure_two(101),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Confirmed,
    Deviates,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Confirmed => "CONFIRMED",
            Classification::Deviates => "DEVIATES",
        })
    }
}

#[derive(Debug, Clone)]
pub struct DiscrepancyRecord {
    pub formula_id: FormulaId,
    pub grid: String,
    pub points: usize,
    pub evaluated: usize,
    pub undefined_oracle: usize,
    pub undefined_published: usize,
    /// Points where the published value is finite but the oracle's is not.
    pub finite_where_oracle_undefined: usize,
    pub max_abs_error: f64,
    pub units: &'static str,
    pub classification: Classification,
    pub worst_point: Option<GridPoint>,
    pub notes: String,
}

enum Outcome {
    Compared(f64),
    OracleUndefined { published_finite: bool },
    PublishedUndefined,
}

fn angular(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

fn phase_pair(published: &PhaseResult, oracle: &PhaseResult) -> Outcome {
    match (published.defined, oracle.defined) {
        (_, false) => Outcome::OracleUndefined {
            published_finite: published.defined,
        },
        (false, true) => Outcome::PublishedUndefined,
        (true, true) => Outcome::Compared(angular(published.phase, oracle.phase)),
    }
}

fn optional_pair(published: Option<f64>, oracle: Option<f64>, angle: bool) -> Outcome {
    match (published, oracle) {
        (p, None) => Outcome::OracleUndefined {
            published_finite: p.is_some(),
        },
        (None, Some(_)) => Outcome::PublishedUndefined,
        (Some(p), Some(o)) => Outcome::Compared(if angle { angular(p, o) } else { (p - o).abs() }),
    }
}

fn evaluate(id: FormulaId, point: &GridPoint) -> Result<Outcome> {
    Ok(match (id, point) {
        (FormulaId::MicroMacroClosed, GridPoint::MicroMacro(p)) => {
            let (psi, locals) = micro_macro_build(p)?;
            let oracle = oracle_deficit(&psi, &locals)?;
            let closed = micro_macro_closed(p);
            let parts = [
                phase_pair(&closed.phi_ab, &oracle.global_phase),
                phase_pair(&closed.phi_a, &oracle.local_phases[0]),
                phase_pair(&closed.phi_b, &oracle.local_phases[1]),
                optional_pair(closed.delta, oracle.deficit, true),
            ];
            let mut worst = 0.0f64;
            for part in parts {
                match part {
                    Outcome::Compared(e) => worst = worst.max(e),
                    other => return Ok(other),
                }
            }
            Outcome::Compared(worst)
        }
        (_, GridPoint::Cat(p)) => {
            let closed = cat_closed(p);
            let oracle = cat_oracle(p)?;
            match id {
                FormulaId::CatTraceAb => {
                    Outcome::Compared((closed.trace_ab - oracle.amplitudes.global).norm())
                }
                FormulaId::CatTraceA => {
                    Outcome::Compared((closed.trace_a - oracle.amplitudes.locals[0]).norm())
                }
                FormulaId::CatTraceB => {
                    Outcome::Compared((closed.trace_b - oracle.amplitudes.locals[1]).norm())
                }
                FormulaId::CatDelta => optional_pair(closed.delta, oracle.report.deficit, true),
                FormulaId::CatEntropy => {
                    optional_pair(closed.entropy_bits, Some(oracle.entropy_bits()), false)
                }
                _ => return Err(Error::GridMismatch(id.to_string())),
            }
        }
        (_, GridPoint::Kondo(p)) => {
            let oracle = kondo_oracle(p)?;
            let closed = kondo_closed(p);
            match id {
                FormulaId::KondoGlobal => {
                    phase_pair(&closed.phi_global, &oracle.report.global_phase)
                }
                FormulaId::KondoLocals => {
                    match (
                        phase_pair(&closed.phi_1, &oracle.report.local_phases[0]),
                        phase_pair(&closed.phi_4, &oracle.report.local_phases[3]),
                    ) {
                        (Outcome::Compared(a), Outcome::Compared(b)) => Outcome::Compared(a.max(b)),
                        (Outcome::Compared(_), other) | (other, _) => other,
                    }
                }
                FormulaId::KondoDelta => optional_pair(closed.delta, oracle.report.deficit, true),
                FormulaId::KondoEFromDelta => {
                    optional_pair(closed.e_from_delta, Some(oracle.concurrence), false)
                }
                FormulaId::KondoConcurrence => {
                    Outcome::Compared((kondo_concurrence(p.theta) - oracle.concurrence).abs())
                }
                _ => return Err(Error::GridMismatch(id.to_string())),
            }
        }
        _ => return Err(Error::GridMismatch(id.to_string())),
    })
}

/// Grades a published formula against the oracle on every grid point.
///
/// Points where either side is undefined are counted and left out of the
/// error; a published value that is finite where the oracle is undefined
/// forces `DEVIATES`.
pub fn compare_to_oracle(id: FormulaId, grid: &Grid) -> Result<DiscrepancyRecord> {
    if grid.points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if let Some(bad) = grid.points.iter().find(|p| !id.accepts(p)) {
        return Err(Error::GridMismatch(format!("{id} on point {bad}")));
    }
    let outcomes = grid
        .points
        .par_iter()
        .map(|p| evaluate(id, p))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut record = DiscrepancyRecord {
        formula_id: id,
        grid: grid.description.clone(),
        points: grid.points.len(),
        evaluated: 0,
        undefined_oracle: 0,
        undefined_published: 0,
        finite_where_oracle_undefined: 0,
        max_abs_error: 0.0,
        units: id.units(),
        classification: Classification::Confirmed,
        worst_point: None,
        notes: id.notes().to_string(),
    };
    for (outcome, point) in outcomes.iter().zip(&grid.points) {
        match *outcome {
            Outcome::Compared(err) => {
                record.evaluated += 1;
                if record.worst_point.is_none() || err > record.max_abs_error {
                    record.max_abs_error = err;
                    record.worst_point = Some(*point);
                }
            }
            Outcome::OracleUndefined { published_finite } => {
                record.undefined_oracle += 1;
                if published_finite {
                    record.finite_where_oracle_undefined += 1;
                }
            }
            Outcome::PublishedUndefined => record.undefined_published += 1,
        }
    }
    let deviates = record.evaluated == 0
        || record.finite_where_oracle_undefined > 0
        || record.max_abs_error >= CONFIRM_THRESHOLD
        || record.max_abs_error.is_nan();
    if deviates {
        record.classification = Classification::Deviates;
    }
    if record.evaluated == 0 {
        record.notes.push_str("; no comparable grid points");
    }
    Ok(record)
}
