use nalgebra::DVector;

use super::{deficit_of, published_arctan};
use crate::error::Result;
use crate::phase::{LocalUnitarySet, PhaseResult};
use crate::qstate::{projector_phase_unitary, HilbertShape, Operator, StateVector};
use crate::C64;

/// Four-spin boundary state at `theta = 2 J_m t`, probed by
/// `exp(-i g1 |1><1|)` on spin 1 and `exp(-i g4 |1><1|)` on spin 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KondoParams {
    pub theta: f64,
    pub g1: f64,
    pub g4: f64,
}

impl KondoParams {
    pub fn new(theta: f64, g1: f64, g4: f64) -> Self {
        Self { theta, g1, g4 }
    }
}

fn spins(amps: &[(&str, C64)]) -> Result<StateVector> {
    let mut v = DVector::<C64>::zeros(16);
    for (label, a) in amps {
        let idx = usize::from_str_radix(label, 2).expect("binary spin label");
        v[idx] += *a;
    }
    StateVector::normalized(HilbertShape::new(vec![2, 2, 2, 2])?, v)
}

pub fn kondo_build(p: &KondoParams) -> Result<(StateVector, LocalUnitarySet)> {
    let th = p.theta;
    let a = C64::new(0.0, -th.sin() / 2.0);
    let b = C64::new(-th.cos() / 2.0, 0.0);
    let c = C64::from_polar(0.5, th);
    let psi = spins(&[
        ("0011", a),
        ("1100", a),
        ("1001", b),
        ("0110", b),
        ("0101", c),
        ("1010", c),
    ])?;
    let one = StateVector::ket(2, 1)?;
    let id = Operator::identity(HilbertShape::single(2)?);
    let locals = LocalUnitarySet::new(vec![
        projector_phase_unitary(&one, p.g1),
        id.clone(),
        id,
        projector_phase_unitary(&one, p.g4),
    ])?;
    Ok((psi, locals))
}

/// The evolved four-spin state as printed, term by term.
pub fn kondo_evolved_published(p: &KondoParams) -> Result<StateVector> {
    let th = p.theta;
    let ph = |g: f64| C64::from_polar(1.0, -g);
    let a = C64::new(0.0, -th.sin() / 2.0);
    let b = C64::new(-th.cos() / 2.0, 0.0);
    let c = C64::from_polar(0.5, th);
    spins(&[
        ("0011", a * ph(p.g4)),
        ("1100", a * ph(p.g1)),
        ("1001", b * ph(p.g1 + p.g4)),
        ("0110", b),
        ("0101", c * ph(p.g4)),
        ("1010", c * ph(p.g1)),
    ])
}

#[derive(Debug, Clone, Copy)]
pub struct KondoClosed {
    pub phi_global: PhaseResult,
    pub phi_1: PhaseResult,
    pub phi_4: PhaseResult,
    pub delta: Option<f64>,
    /// `(tan delta + 2) / (tan delta - 2)` from the published deficit.
    pub e_from_delta: Option<f64>,
}

/// Published phases, deficit and the deficit-to-concurrence relation.
///
/// The printed global-phase denominator has no `cos^2 theta` constant; the
/// direct inner product is
/// `[(1 + sin^2) (e^{-i g1} + e^{-i g4}) + cos^2 (1 + e^{-i (g1 + g4)})] / 4`.
pub fn kondo_closed(p: &KondoParams) -> KondoClosed {
    let s2 = p.theta.sin().powi(2);
    let (g1, g4) = (p.g1, p.g4);
    let num = -(1.0 + s2) * (g1.sin() + g4.sin()) - (g1 + g4).sin() + s2 * (g1 + g4).sin();
    let den = (1.0 + s2) * (g1.cos() + g4.cos()) + (g1 + g4).cos() - s2 * (g1 + g4).cos();
    let phi_global = published_arctan(num, den);
    let phi_1 = published_arctan(-g1.sin(), 1.0 + g1.cos());
    let phi_4 = published_arctan(-g4.sin(), 1.0 + g4.cos());
    let delta = deficit_of(&phi_global, &[&phi_1, &phi_4]);
    KondoClosed {
        phi_global,
        phi_1,
        phi_4,
        delta,
        e_from_delta: delta.and_then(concurrence_from_deficit),
    }
}

fn concurrence_from_deficit(delta: f64) -> Option<f64> {
    if delta.cos().abs() < 1e-12 {
        return None;
    }
    let t = delta.tan();
    if (t - 2.0).abs() < 1e-12 {
        return None;
    }
    Some((t + 2.0) / (t - 2.0))
}

/// `max{0, (1 - 3 cos 2 theta) / 4}`, with `2 theta = 4 J_m t`.
pub fn kondo_concurrence(theta: f64) -> f64 {
    ((1.0 - 3.0 * (2.0 * theta).cos()) / 4.0).max(0.0)
}
