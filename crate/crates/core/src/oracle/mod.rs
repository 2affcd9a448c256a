//! Brute-force ground truth and the auditor for the published closed forms.
//!
//! The dense path here assembles `U_1 (x) ... (x) U_N` explicitly, forms
//! `|psi><psi|`, reduces it by explicit index sums and reads each phase off
//! a direct inner product or trace. It shares nothing with
//! [`phase_deficit`](crate::phase::phase_deficit) beyond
//! [`principal_arg`], and the deficit is taken as the argument of
//! `A_global * prod conj(A_i)` rather than by subtracting phases.

mod audit;

pub use audit::{
    compare_to_oracle, linspace, Classification, DiscrepancyRecord, FormulaId, Grid, GridPoint,
    CONFIRM_THRESHOLD,
};

use crate::error::{Error, Result};
use crate::measures::{entanglement_entropy, wootters_concurrence};
use crate::phase::{principal_arg, DeficitReport, LocalUnitarySet, PhaseSlot, WITNESS_TOLERANCE};
use crate::qstate::{partial_trace, smallest_truncation, FockSpec, Operator, StateVector};
use crate::scenarios::{cat_build, kondo_build, CatParams, KondoParams};
use crate::C64;

/// Transition amplitudes `<psi|U_1 (x) ... (x) U_N|psi>` and `Tr[rho_i U_i]`.
#[derive(Debug, Clone)]
pub struct TransitionAmplitudes {
    pub global: C64,
    pub locals: Vec<C64>,
}

pub fn transition_amplitudes(
    psi: &StateVector,
    locals: &LocalUnitarySet,
) -> Result<TransitionAmplitudes> {
    locals.check_shape(psi.shape())?;
    let mut factors = locals.unitaries().iter();
    let first = factors.next().expect("nonempty local set").clone();
    let full = factors.fold(first, |acc, u| acc.tensor(u));
    let v = psi.amplitudes();
    let global = v.dotc(&(full.matrix() * v));

    let rho = psi.density();
    let locals = locals
        .unitaries()
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let reduced = partial_trace(&rho, &[i])?;
            Ok((reduced.matrix() * u.matrix()).trace())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionAmplitudes { global, locals })
}

/// Same contract as [`phase_deficit`](crate::phase::phase_deficit), computed
/// by dense assembly.
pub fn oracle_deficit(psi: &StateVector, locals: &LocalUnitarySet) -> Result<DeficitReport> {
    Ok(report_from_amplitudes(&transition_amplitudes(psi, locals)?))
}

fn report_from_amplitudes(amps: &TransitionAmplitudes) -> DeficitReport {
    let global_phase = principal_arg(amps.global);
    let local_phases: Vec<_> = amps.locals.iter().map(|&a| principal_arg(a)).collect();

    let mut undefined = Vec::new();
    if !global_phase.defined {
        undefined.push(PhaseSlot::Global);
    }
    for (i, p) in local_phases.iter().enumerate() {
        if !p.defined {
            undefined.push(PhaseSlot::Local(i));
        }
    }

    let (deficit, unwrapped_deficit) = if undefined.is_empty() {
        let combined = amps
            .locals
            .iter()
            .fold(amps.global, |acc, a| acc * a.conj() / a.norm());
        let unwrapped = local_phases
            .iter()
            .fold(global_phase.phase, |acc, p| acc - p.phase);
        (Some(principal_arg(combined).phase), Some(unwrapped))
    } else {
        (None, None)
    };

    DeficitReport {
        global_phase,
        local_phases,
        deficit,
        unwrapped_deficit,
        entangled_witnessed: deficit.is_some_and(|d| d.abs() > WITNESS_TOLERANCE),
        witness_tolerance: WITNESS_TOLERANCE,
        undefined,
    }
}

/// Reduced state on `keep` by explicit partial trace of `|psi><psi|`.
pub fn oracle_reduced(psi: &StateVector, keep: &[usize]) -> Result<Operator> {
    partial_trace(&psi.density(), keep)
}

/// Smallest Fock truncation whose Poisson tail beyond `n_max` is below `tail`.
pub fn truncation_for_tolerance(mean_photon: f64, tail: f64) -> Result<FockSpec> {
    if !(tail > 0.0 && tail < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tail {tail} outside (0, 1)"
        )));
    }
    if !(mean_photon >= 0.0 && mean_photon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "mean photon number {mean_photon}"
        )));
    }
    Ok(smallest_truncation(mean_photon, tail))
}

/// Oracle values for the cat scenario.
#[derive(Debug, Clone)]
pub struct CatOracle {
    pub amplitudes: TransitionAmplitudes,
    pub report: DeficitReport,
    pub entropy_nats: f64,
}

impl CatOracle {
    pub fn entropy_bits(&self) -> f64 {
        self.entropy_nats / std::f64::consts::LN_2
    }
}

pub fn cat_oracle(p: &CatParams) -> Result<CatOracle> {
    let (psi, locals) = cat_build(p)?;
    let amplitudes = transition_amplitudes(&psi, &locals)?;
    Ok(CatOracle {
        report: report_from_amplitudes(&amplitudes),
        amplitudes,
        entropy_nats: entanglement_entropy(&oracle_reduced(&psi, &[1])?)?,
    })
}

/// Oracle values for the four-spin scenario.
#[derive(Debug, Clone)]
pub struct KondoOracle {
    pub report: DeficitReport,
    /// Wootters concurrence of the boundary pair (spins 1 and 4).
    pub concurrence: f64,
}

pub fn kondo_oracle(p: &KondoParams) -> Result<KondoOracle> {
    let (psi, locals) = kondo_build(p)?;
    Ok(KondoOracle {
        report: oracle_deficit(&psi, &locals)?,
        concurrence: wootters_concurrence(&oracle_reduced(&psi, &[0, 3])?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::phase_deficit;
    use crate::qstate::{random, HilbertShape};
    use crate::scenarios::{micro_macro_build, MicroMacroParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn product_states_have_zero_deficit() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let shape = HilbertShape::new(vec![2, 3, 2]).unwrap();
        for _ in 0..10 {
            let psi = random::random_product_state(&shape, &mut rng);
            let locals = LocalUnitarySet::new(
                shape
                    .dims()
                    .iter()
                    .map(|&d| random::random_unitary(d, &mut rng))
                    .collect(),
            )
            .unwrap();
            let r = oracle_deficit(&psi, &locals).unwrap();
            assert!(r.deficit.unwrap().abs() < 1e-10);
            assert!(!r.entangled_witnessed);
        }
    }

    #[test]
    fn micro_macro_cross_path() {
        let p = MicroMacroParams::new(0.75, FRAC_PI_2, FRAC_PI_2).unwrap();
        let (psi, locals) = micro_macro_build(&p).unwrap();
        let a = oracle_deficit(&psi, &locals).unwrap().deficit.unwrap();
        let b = phase_deficit(&psi, &locals).unwrap().deficit.unwrap();
        assert!((a - 0.643_501_108_793_284_4).abs() < 1e-12);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn cat_oracle_at_figure_one() {
        let p = CatParams::figure_one(std::f64::consts::FRAC_PI_3, 1e-12).unwrap();
        let o = cat_oracle(&p).unwrap();
        assert!(o.report.deficit.is_some_and(f64::is_finite));
        assert!(o.entropy_nats > 0.0);
    }

    #[test]
    fn truncation_contract() {
        assert_eq!(truncation_for_tolerance(0.0, 1e-12).unwrap().n_max, 0);
        let spec = truncation_for_tolerance(2.0, 1e-12).unwrap();
        assert!(spec.tail_bound < 1e-12);
        let mut prev = 0;
        for tail in [1e-2, 1e-4, 1e-8, 1e-12, 1e-15] {
            let n = truncation_for_tolerance(3.0, tail).unwrap().n_max;
            assert!(n >= prev);
            prev = n;
        }
        assert!(truncation_for_tolerance(1.0, 0.0).is_err());
        assert!(truncation_for_tolerance(-1.0, 0.1).is_err());
    }

    #[test]
    fn kondo_boundary_concurrence_at_quarter_turn() {
        let o = kondo_oracle(&KondoParams::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)).unwrap();
        assert!((o.concurrence - 1.0).abs() < 1e-9);
    }
}
