use std::f64::consts::FRAC_PI_2;

use nalgebra::DVector;

use super::{deficit_of, published_arctan};
use crate::error::{Error, Result};
use crate::measures::shannon_nats;
use crate::phase::{LocalUnitarySet, PhaseResult};
use crate::qstate::{projector_phase_unitary, HilbertShape, StateVector};
use crate::C64;

/// `sqrt(l0) |psi>|0> + sqrt(l1) |psi_bar>|1>` evolved by
/// `exp(-i g1 |psi_bar><psi_bar|) (x) exp(-i g2 |1><1|)`.
///
/// The macroscopic factor is represented by the span of its two orthogonal
/// branch states, `|psi> = |0>` and `|psi_bar> = |1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicroMacroParams {
    pub lambda0: f64,
    pub g1: f64,
    pub g2: f64,
}

impl MicroMacroParams {
    pub fn new(lambda0: f64, g1: f64, g2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda0) {
            return Err(Error::InvalidParameter(format!(
                "lambda0 = {lambda0} outside [0, 1]"
            )));
        }
        if !g1.is_finite() || !g2.is_finite() {
            return Err(Error::InvalidParameter("non-finite phase angle".into()));
        }
        Ok(Self { lambda0, g1, g2 })
    }

    pub fn lambda1(&self) -> f64 {
        1.0 - self.lambda0
    }
}

pub fn micro_macro_build(p: &MicroMacroParams) -> Result<(StateVector, LocalUnitarySet)> {
    let zero = C64::new(0.0, 0.0);
    let amps = DVector::from_vec(vec![
        C64::new(p.lambda0.sqrt(), 0.0),
        zero,
        zero,
        C64::new(p.lambda1().sqrt(), 0.0),
    ]);
    let psi = StateVector::normalized(HilbertShape::new(vec![2, 2])?, amps)?;
    let one = StateVector::ket(2, 1)?;
    let locals = LocalUnitarySet::new(vec![
        projector_phase_unitary(&one, p.g1),
        projector_phase_unitary(&one, p.g2),
    ])?;
    Ok((psi, locals))
}

#[derive(Debug, Clone, Copy)]
pub struct MicroMacroPhases {
    pub phi_ab: PhaseResult,
    pub phi_a: PhaseResult,
    pub phi_b: PhaseResult,
    pub delta: Option<f64>,
}

/// Published global and local phases and their deficit.
///
/// The printed second local phase writes its cosine argument as
/// `epsilon t_2`; it is read as `g2`.
pub fn micro_macro_closed(p: &MicroMacroParams) -> MicroMacroPhases {
    let (l0, l1) = (p.lambda0, p.lambda1());
    let g = p.g1 + p.g2;
    let phi_ab = published_arctan(-l1 * g.sin(), l0 + l1 * g.cos());
    let phi_a = published_arctan(-l1 * p.g1.sin(), 1.0 + l1 * (p.g1.cos() - 1.0));
    let phi_b = published_arctan(-l1 * p.g2.sin(), 1.0 + l1 * (p.g2.cos() - 1.0));
    MicroMacroPhases {
        phi_ab,
        phi_a,
        phi_b,
        delta: deficit_of(&phi_ab, &[&phi_a, &phi_b]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicroMacroInversion {
    pub lambda0: f64,
    pub lambda1: f64,
    pub entropy_nats: f64,
}

/// Recovers the Schmidt weights from a deficit measured at `g1 = g2 = pi/2`:
/// `lambda0 = 1 / (1 + tan(delta/2))`.
///
/// Only `delta` in `[0, pi)` inverts; that branch corresponds to
/// `lambda0 >= 1/2`.
pub fn micro_macro_invert(delta: f64) -> Result<MicroMacroInversion> {
    let half = 0.5 * delta;
    if !delta.is_finite() || (half.abs() - FRAC_PI_2).abs() < 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "tan(delta/2) is singular at delta = {delta}"
        )));
    }
    let t = half.tan();
    if t < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tan(delta/2) = {t} is negative"
        )));
    }
    let lambda0 = 1.0 / (1.0 + t);
    let lambda1 = t / (1.0 + t);
    Ok(MicroMacroInversion {
        lambda0,
        lambda1,
        entropy_nats: shannon_nats(&[lambda0, lambda1]),
    })
}
