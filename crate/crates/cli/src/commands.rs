use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use phasedeficit_core::oracle::{cat_oracle, kondo_oracle, linspace, oracle_deficit, FormulaId};
use phasedeficit_core::qstate::random::{random_product_state, random_state, random_unitary};
use phasedeficit_core::scenarios::{
    cat_closed, kondo_closed, kondo_concurrence, micro_macro_closed, CatParams, KondoParams,
    MicroMacroParams,
};
use phasedeficit_core::{
    deficit_closed_form_schmidt, phase_deficit, schmidt_decompose, wrap_phase, HilbertShape,
    LocalUnitarySet,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{AuditArgs, CommonArgs, FiguresArgs, SelftestArgs, SweepArgs, Which};
use crate::config::{parse_assignment, CommonConfig, Layers, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report;
use crate::rows;
use crate::table::{col, write_file, Table};

pub const FIGURE_POINTS: usize = 201;

fn layers(common: &CommonArgs) -> CliResult<Layers> {
    let mut l = Layers::from_file(common.config.as_deref())?;
    if let Some(s) = &common.seed {
        l.set("seed", s.clone());
    }
    if let Some(t) = &common.tail {
        l.set("tail", t.clone());
    }
    Ok(l)
}

fn emit(out: Option<&Path>, contents: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, contents),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub fn sweep(args: &SweepArgs) -> CliResult<()> {
    let mut l = layers(&args.common)?;
    if let Some(s) = &args.scenario {
        l.set("scenario", s.clone());
    }
    for a in &args.set {
        let (k, v) = parse_assignment(a)?;
        l.set(k, v);
    }
    if let Some(s) = &args.sweep {
        l.set("sweep", s.clone());
    }
    let table = sweep_table(&l.into_run()?)?;
    emit(args.out.as_deref(), &table.render())
}

/// Evaluates a run; without a swept parameter an undefined oracle deficit aborts.
pub fn sweep_table(rc: &RunConfig) -> CliResult<Table> {
    let tail = rc.common.tail;
    rows::validate(rc.scenario, &rc.params, tail)?;
    let mut columns = Vec::new();
    let data = match &rc.sweep {
        Some(sw) => {
            columns.push(col(param_name(rc, &sw.key), rows::param_units(&sw.key)));
            let points = sw.points();
            let evaluated = points
                .par_iter()
                .map(|&x| {
                    let mut params = rc.params.clone();
                    params.insert(sw.key.clone(), x);
                    rows::evaluate(rc.scenario, &params, tail)
                })
                .collect::<CliResult<Vec<_>>>()?;
            points
                .iter()
                .zip(evaluated)
                .map(|(&x, row)| std::iter::once(Some(x)).chain(row.values).collect())
                .collect()
        }
        None => {
            let row = rows::evaluate(rc.scenario, &rc.params, tail)?;
            if !row.oracle_defined {
                return Err(CliError::Undefined(format!(
                    "oracle phase deficit is undefined for {}",
                    rc.common.render()
                )));
            }
            vec![row.values]
        }
    };
    columns.extend(rows::value_columns(rc.scenario));

    let params = rc
        .params
        .iter()
        .map(|(k, v)| match &rc.sweep {
            Some(sw) if sw.key == *k => {
                format!("{k}=[{:?}:{:?}:{}]", sw.start, sw.stop, sw.count)
            }
            _ => format!("{k}={v:?}"),
        })
        .collect::<Vec<_>>()
        .join(",");
    Ok(Table {
        quantity: rows::quantity(rc.scenario).to_string(),
        params,
        seed: rc.common.seed,
        config: rc.common.render(),
        columns,
        rows: data,
    })
}

fn param_name(rc: &RunConfig, key: &str) -> &'static str {
    rc.scenario
        .defaults()
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(k, _)| *k)
        .expect("sweep key validated against the scenario")
}

pub fn figures(args: &FiguresArgs) -> CliResult<()> {
    let cfg = layers(&args.common)?.into_common()?;
    write_figures(args.which, &args.out, &cfg).map(|_| ())
}

/// Writes the requested figure datasets and `audit.txt`, returning the paths.
pub fn write_figures(which: Which, dir: &Path, cfg: &CommonConfig) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    if matches!(which, Which::Fig1 | Which::All) {
        let path = dir.join("fig1.csv");
        figure_one(cfg)?.write_to(&path)?;
        written.push(path);
    }
    if matches!(which, Which::Fig2 | Which::All) {
        let path = dir.join("fig2.csv");
        figure_two(cfg)?.write_to(&path)?;
        written.push(path);
    }
    let path = dir.join("audit.txt");
    let records = report::run_audit(&FormulaId::ALL, cfg.tail)?;
    write_file(&path, &report::render(&records, cfg))?;
    written.push(path);
    Ok(written)
}

pub fn figure_one(cfg: &CommonConfig) -> CliResult<Table> {
    let psis = linspace(0.0, PI, FIGURE_POINTS);
    let data = psis
        .par_iter()
        .map(|&psi| {
            let p = CatParams::figure_one(psi, cfg.tail)?;
            let closed = cat_closed(&p);
            let oracle = cat_oracle(&p)?;
            Ok(vec![
                Some(psi),
                closed.delta,
                closed.entropy_bits,
                oracle.report.deficit,
                Some(oracle.entropy_bits()),
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Table {
        quantity: "phase deficit and entanglement entropy against psi (published and oracle)"
            .to_string(),
        params: format!(
            "n_minus=2,n_plus=1,xi=pi/4,theta=pi,psi=[0:pi:{FIGURE_POINTS}],n_max={}",
            CatParams::figure_one(0.0, cfg.tail)?.fock.n_max
        ),
        seed: cfg.seed,
        config: cfg.render(),
        columns: vec![
            col("psi", "radians"),
            col("delta_published", "radians"),
            col("entropy_published", "bits"),
            col("delta_oracle", "radians"),
            col("entropy_oracle", "bits"),
        ],
        rows: data,
    })
}

pub fn figure_two(cfg: &CommonConfig) -> CliResult<Table> {
    let thetas = linspace(0.0, PI, FIGURE_POINTS);
    let data = thetas
        .par_iter()
        .map(|&theta| {
            let p = KondoParams::new(theta, FRAC_PI_2, FRAC_PI_2);
            let oracle = kondo_oracle(&p)?;
            Ok(vec![
                Some(theta),
                kondo_closed(&p).delta,
                Some(kondo_concurrence(theta)),
                oracle.report.deficit,
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Table {
        quantity: "phase deficit and concurrence against theta (published and oracle)".to_string(),
        params: format!("g1=pi/2,g4=pi/2,theta=[0:pi:{FIGURE_POINTS}]"),
        seed: cfg.seed,
        config: cfg.render(),
        columns: vec![
            col("theta", "radians"),
            col("delta_published", "radians"),
            col("concurrence", "dimensionless"),
            col("delta_oracle", "radians"),
        ],
        rows: data,
    })
}

pub fn audit(args: &AuditArgs) -> CliResult<()> {
    let cfg = layers(&args.common)?.into_common()?;
    let ids = if args.formulas.is_empty() {
        FormulaId::ALL.to_vec()
    } else {
        args.formulas
            .iter()
            .map(|s| {
                s.parse::<FormulaId>()
                    .map_err(|e| CliError::Config(e.to_string()))
            })
            .collect::<CliResult<Vec<_>>>()?
    };
    let records = report::run_audit(&ids, cfg.tail)?;
    emit(args.out.as_deref(), &report::render(&records, &cfg))
}

/// Outcome of one self-test check.
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn selftest(args: &SelftestArgs) -> CliResult<()> {
    let cfg = layers(&args.common)?.into_common()?;
    let checks = selftest_checks(cfg.seed)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", c.name, c.detail);
    }
    if failed > 0 {
        Err(CliError::SelftestFailed(failed))
    } else {
        Ok(())
    }
}

fn check(name: &'static str, worst: f64, tolerance: f64) -> Check {
    Check {
        name,
        passed: worst < tolerance,
        detail: format!("worst {worst:.3e}, tolerance {tolerance:e}"),
    }
}

pub fn selftest_checks(seed: u64) -> CliResult<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [vec![2, 2], vec![2, 3], vec![2, 2, 2]];
    let mut nullity: f64 = 0.0;
    let mut cross: f64 = 0.0;
    for i in 0..30 {
        let shape = HilbertShape::new(shapes[i % shapes.len()].clone())?;
        let locals = LocalUnitarySet::new(
            shape
                .dims()
                .iter()
                .map(|&d| random_unitary(d, &mut rng))
                .collect(),
        )?;
        let product = random_product_state(&shape, &mut rng);
        if let Some(d) = phase_deficit(&product, &locals)?.deficit {
            nullity = nullity.max(d.abs());
        }
        let psi = random_state(&shape, &mut rng);
        let (a, b) = (
            phase_deficit(&psi, &locals)?,
            oracle_deficit(&psi, &locals)?,
        );
        if let (Some(x), Some(y)) = (a.deficit, b.deficit) {
            cross = cross.max(wrap_phase(x - y).abs());
        }
    }

    let mut closed: f64 = 0.0;
    let shape = HilbertShape::new(vec![3, 4])?;
    for _ in 0..10 {
        let psi = random_state(&shape, &mut rng);
        let (ua, ub) = (random_unitary(3, &mut rng), random_unitary(4, &mut rng));
        let c = deficit_closed_form_schmidt(&schmidt_decompose(&psi, &[0])?, &ua, &ub)?;
        let d = phase_deficit(&psi, &LocalUnitarySet::new(vec![ua, ub])?)?;
        if let Some(d) = d.deficit {
            closed = closed.max(wrap_phase(c - d).abs());
        }
    }

    let mm = micro_macro_closed(&MicroMacroParams::new(0.75, FRAC_PI_2, FRAC_PI_2)?);
    let mm_err = mm
        .delta
        .map_or(f64::INFINITY, |d| (d - 2.0 * (1.0f64 / 3.0).atan()).abs());
    let kondo_zero = kondo_oracle(&KondoParams::new(0.0, FRAC_PI_2, FRAC_PI_2))?
        .report
        .deficit
        .map_or(f64::INFINITY, f64::abs);
    let anchors = [
        kondo_concurrence(0.0),
        (kondo_concurrence(FRAC_PI_2) - 1.0).abs(),
    ];

    Ok(vec![
        check("product-state nullity", nullity, 1e-10),
        check("engine and oracle agree", cross, 1e-10),
        check("Schmidt closed form", closed, 1e-9),
        check("micro-macro anchor", mm_err, 1e-12),
        check("four-spin deficit at theta = 0", kondo_zero, 1e-10),
        check("concurrence anchors", anchors[0].max(anchors[1]), 1e-12),
    ])
}
