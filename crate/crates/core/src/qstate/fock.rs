use nalgebra::DVector;

use super::{HilbertShape, Operator, StateVector};
use crate::error::{Error, Result};
use crate::C64;

/// Truncated bosonic mode: Fock states `|0>..|n_max>`.
///
/// `tail_bound` is the Poisson probability mass discarded above `n_max`
/// for the mean photon number the spec was chosen for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockSpec {
    pub n_max: usize,
    pub tail_bound: f64,
}

impl FockSpec {
    pub fn new(n_max: usize, tail_bound: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&tail_bound) {
            return Err(Error::InvalidParameter(format!(
                "tail bound {tail_bound} outside [0, 1)"
            )));
        }
        Ok(Self { n_max, tail_bound })
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn shape(&self) -> HilbertShape {
        HilbertShape::single(self.dim()).expect("dim >= 1")
    }
}

/// Poisson probabilities `p_n = e^{-m} m^n / n!` up to the point where the
/// remaining mass is far below double precision.
fn poisson_pmf(mean: f64) -> Vec<f64> {
    let mut out = vec![(-mean).exp()];
    let mut n = 0usize;
    loop {
        let next = out[n] * mean / (n + 1) as f64;
        n += 1;
        if n as f64 > mean && (next < 1e-300 || next == 0.0) {
            break;
        }
        out.push(next);
    }
    out
}

/// `P(N > n_max)` for a Poisson variable with the given mean.
pub fn poisson_tail(mean: f64, n_max: usize) -> f64 {
    if mean <= 0.0 {
        return 0.0;
    }
    let pmf = poisson_pmf(mean);
    // summed from the small end for accuracy
    pmf.iter().skip(n_max + 1).rev().sum()
}

/// Smallest `n_max` with Poisson tail `< tail` for the given mean.
pub(crate) fn smallest_truncation(mean: f64, tail: f64) -> FockSpec {
    if mean <= 0.0 {
        return FockSpec {
            n_max: 0,
            tail_bound: 0.0,
        };
    }
    let pmf = poisson_pmf(mean);
    let mut suffix = vec![0.0; pmf.len() + 1];
    for n in (0..pmf.len()).rev() {
        suffix[n] = suffix[n + 1] + pmf[n];
    }
    let n_max = (0..pmf.len())
        .find(|&n| suffix[n + 1] < tail)
        .unwrap_or(pmf.len() - 1);
    FockSpec {
        n_max,
        tail_bound: suffix[n_max + 1],
    }
}

/// Truncated coherent state `|alpha>`, renormalized after truncation.
pub fn coherent_state(alpha: C64, spec: FockSpec) -> StateVector {
    let mut amps = DVector::<C64>::zeros(spec.dim());
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..spec.dim() {
        amps[n] = c;
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    StateVector::normalized(spec.shape(), amps).expect("vacuum term is nonzero")
}

/// `e^{-i theta N}` on the truncated mode.
pub fn number_phase_unitary(theta: f64, spec: FockSpec) -> Operator {
    let phases: Vec<f64> = (0..spec.dim()).map(|n| -theta * n as f64).collect();
    Operator::diagonal_phases(spec.shape(), &phases).expect("length matches")
}
