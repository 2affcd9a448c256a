use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, LN_2, PI};

use super::{deficit_of, published_arctan, published_arctan_complex};
use crate::error::{Error, Result};
use crate::phase::{LocalUnitarySet, PhaseResult};
use crate::qstate::{
    coherent_state, number_phase_unitary, pauli_x, poisson_tail, smallest_truncation, FockSpec,
    StateVector,
};
use crate::C64;

/// `(k |alpha_-> |g> + k* |alpha_+> |e>) / sqrt 2` with `k = e^{-i psi}`,
/// probed by `e^{-i theta N} (x) sigma_x`.
///
/// `alpha_- = sqrt(n_minus) e^{i xi}` and `alpha_+ = sqrt(n_plus)`; only the
/// relative phase `xi` enters any quantity. The qubit uses `|g> = |0>`,
/// `|e> = |1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatParams {
    pub n_minus: f64,
    pub n_plus: f64,
    pub xi: f64,
    pub psi: f64,
    pub theta: f64,
    pub fock: FockSpec,
    /// Largest Poisson tail either branch may lose to truncation.
    pub tail_tolerance: f64,
}

impl CatParams {
    /// Chooses the smallest truncation meeting `tail` for both branches.
    pub fn new(
        n_minus: f64,
        n_plus: f64,
        xi: f64,
        psi: f64,
        theta: f64,
        tail: f64,
    ) -> Result<Self> {
        if !(n_minus >= 0.0 && n_plus >= 0.0 && n_minus.is_finite() && n_plus.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mean photon numbers ({n_minus}, {n_plus}) must be finite and nonnegative"
            )));
        }
        if !(tail > 0.0 && tail < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tail {tail} outside (0, 1)"
            )));
        }
        if ![xi, psi, theta].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite angle".into()));
        }
        Ok(Self {
            n_minus,
            n_plus,
            xi,
            psi,
            theta,
            fock: smallest_truncation(n_minus.max(n_plus), tail),
            tail_tolerance: tail,
        })
    }

    /// `|alpha_-|^2 = 2`, `|alpha_+|^2 = 1`, `xi = pi/4`, `theta = pi`.
    pub fn figure_one(psi: f64, tail: f64) -> Result<Self> {
        Self::new(2.0, 1.0, FRAC_PI_4, psi, PI, tail)
    }

    pub fn alpha_minus(&self) -> C64 {
        C64::from_polar(self.n_minus.sqrt(), self.xi)
    }

    pub fn alpha_plus(&self) -> C64 {
        C64::new(self.n_plus.sqrt(), 0.0)
    }

    pub fn k(&self) -> C64 {
        C64::from_polar(1.0, -self.psi)
    }

    /// `n = sqrt(n_- n_+)`.
    pub fn n(&self) -> f64 {
        (self.n_minus * self.n_plus).sqrt()
    }
}

pub fn cat_build(p: &CatParams) -> Result<(StateVector, LocalUnitarySet)> {
    for mean in [p.n_minus, p.n_plus] {
        let tail = poisson_tail(mean, p.fock.n_max);
        if tail > p.tail_tolerance {
            return Err(Error::TruncationInadequate {
                n_max: p.fock.n_max,
                tail,
                tolerance: p.tail_tolerance,
            });
        }
    }
    let minus = coherent_state(p.alpha_minus(), p.fock);
    let plus = coherent_state(p.alpha_plus(), p.fock);
    let g = StateVector::ket(2, 0)?;
    let e = StateVector::ket(2, 1)?;
    let k = p.k();
    let amps = minus.tensor(&g).amplitudes() * (k * FRAC_1_SQRT_2)
        + plus.tensor(&e).amplitudes() * (k.conj() * FRAC_1_SQRT_2);
    let psi = StateVector::normalized(minus.shape().concat(g.shape()), amps)?;
    let locals = LocalUnitarySet::new(vec![number_phase_unitary(p.theta, p.fock), pauli_x()])?;
    Ok((psi, locals))
}

#[derive(Debug, Clone, Copy)]
pub struct CatClosed {
    pub trace_ab: C64,
    pub trace_a: C64,
    pub trace_b: C64,
    /// The three printed arctangent terms, in order.
    pub terms: [PhaseResult; 3],
    pub delta: Option<f64>,
    /// Entropy in bits, carrying the printed `1/(2 ln 2)` prefactor.
    pub entropy_bits: Option<f64>,
}

/// Published transition amplitudes, deficit and entropy of the cat state.
///
/// Suspected misprints, kept as printed:
/// * the third deficit term pairs `(k^2 + k*^2)` with `sin` and
///   `(k^2 - k*^2)` with `cos`, the reverse of the printed `Tr[rho_B V]`;
/// * the entropy exponent is `-n_-/2 - n_+/2 + n_- n_+ cos xi`, where the
///   coherent overlap gives `sqrt(n_- n_+) cos xi`.
pub fn cat_closed(p: &CatParams) -> CatClosed {
    let (nm, np, n) = (p.n_minus, p.n_plus, p.n());
    let (xi, th) = (p.xi, p.theta);
    let k = p.k();
    let k2 = k * k;
    let k2c = k2.conj();
    let i = C64::i();

    let e1 = (n * (xi - th).cos()).exp();
    let e2 = (n * (xi + th).cos()).exp();
    let (s1, c1) = (n * (xi - th).sin()).sin_cos();
    let (s2, c2) = (n * (xi + th).sin()).sin_cos();
    let envelope = (-0.5 * (nm + np)).exp();
    let trace_ab =
        0.5 * envelope * ((k2 * e1 * c1 + k2c * e2 * c2) + i * (k2 * e1 * s1 - k2c * e2 * s2));

    let em = (nm * (th.cos() - 1.0)).exp();
    let ep = (np * (th.cos() - 1.0)).exp();
    let (sm, cm) = (nm * th.sin()).sin_cos();
    let (sp, cp) = (np * th.sin()).sin_cos();
    let trace_a = 0.5 * (C64::new(em * cm + ep * cp, 0.0) - i * (em * sm + ep * sp));

    let (sx, cx) = (n * xi.sin()).sin_cos();
    let trace_b =
        0.5 * (-0.5 * (nm + np) + n * xi.cos()).exp() * ((k2 + k2c) * cx + i * (k2 - k2c) * sx);

    let term_ab =
        published_arctan_complex(k2 * e1 * s1 - k2c * e2 * s2, k2 * e1 * c1 + k2c * e2 * c2);
    let term_a = published_arctan(-em * sm - ep * sp, em * cm + ep * cp);
    let term_b = published_arctan_complex((k2 + k2c) * sx, (k2 - k2c) * cx);

    CatClosed {
        trace_ab,
        trace_a,
        trace_b,
        terms: [term_ab, term_a, term_b],
        delta: deficit_of(&term_ab, &[&term_a, &term_b]),
        entropy_bits: published_entropy_bits(p),
    }
}

fn published_entropy_bits(p: &CatParams) -> Option<f64> {
    let kk = p.k().norm_sqr();
    let x = kk * (-0.5 * p.n_minus - 0.5 * p.n_plus + p.n_minus * p.n_plus * p.xi.cos()).exp();
    if !x.is_finite() || x > 1.0 {
        return None;
    }
    let pre = 1.0 / (2.0 * LN_2);
    let lower = if x == 1.0 {
        0.0
    } else {
        pre * (x - 1.0) * (0.5 * (1.0 - x)).ln()
    };
    Some(lower - pre * (1.0 + x) * (0.5 * (1.0 + x)).ln())
}
