//! Pancharatnam phases and the phase deficit under local unitaries.
//!
//! Every phase is a principal value in `(-pi, pi]` obtained with a
//! two-argument arctangent. A transition amplitude whose modulus (the
//! interference visibility) falls below [`EPSILON_VIS`] yields an undefined
//! phase instead of numerical noise.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::qstate::{HilbertShape, Operator, OperatorKind, SchmidtForm, StateVector};
use crate::C64;

/// Visibility below which a phase is reported as undefined.
pub const EPSILON_VIS: f64 = 1e-9;
/// Default threshold separating a numerical-zero deficit from a genuine one.
pub const WITNESS_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    /// Principal value in `(-pi, pi]`; meaningless when `defined` is false.
    pub phase: f64,
    /// Modulus of the underlying complex amplitude.
    pub visibility: f64,
    pub defined: bool,
    pub amplitude: C64,
}

impl PhaseResult {
    /// The phase, or `None` when undefined.
    pub fn value(&self) -> Option<f64> {
        self.defined.then_some(self.phase)
    }
}

/// Reduces `x` into `(-pi, pi]`. Values already in range are returned as is.
pub fn wrap_phase(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

pub fn principal_arg(z: C64) -> PhaseResult {
    let mut phase = z.im.atan2(z.re);
    if phase == -PI {
        phase = PI;
    }
    let visibility = z.norm();
    PhaseResult {
        phase,
        visibility,
        defined: visibility >= EPSILON_VIS,
        amplitude: z,
    }
}

/// `Arg <initial|final>`.
pub fn pancharatnam_pure(initial: &StateVector, final_state: &StateVector) -> Result<PhaseResult> {
    Ok(principal_arg(initial.inner(final_state)?))
}

/// `Arg Tr[rho U]`.
pub fn pancharatnam_mixed(rho: &Operator, u: &Operator) -> Result<PhaseResult> {
    if rho.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: u.dim(),
        });
    }
    let (r, m) = (rho.matrix(), u.matrix());
    let n = rho.dim();
    let tr: C64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| r[(i, j)] * m[(j, i)])
        .sum();
    Ok(principal_arg(tr))
}

/// `-<state|h|state> t`, not reduced modulo `2 pi`.
pub fn dynamical_phase(h: &Operator, state: &StateVector, t: f64) -> Result<f64> {
    check_observable(h)?;
    if h.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: h.dim(),
        });
    }
    let v = state.amplitudes();
    Ok(-v.dotc(&(h.matrix() * v)).re * t)
}

/// `-Tr[rho h] t` for a subsystem described by a reduced state.
pub fn dynamical_phase_mixed(h: &Operator, rho: &Operator, t: f64) -> Result<f64> {
    check_observable(h)?;
    if h.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: h.dim(),
        });
    }
    Ok(-(rho.matrix() * h.matrix()).trace().re * t)
}

fn check_observable(h: &Operator) -> Result<()> {
    match h.kind() {
        OperatorKind::Hermitian | OperatorKind::Density => Ok(()),
        k => Err(Error::InvalidOperator {
            kind: "Hermitian",
            detail: format!("{k:?} operator as a Hamiltonian"),
        }),
    }
}

/// One unitary per subsystem, acting as `U_1 (x) U_2 (x) ... (x) U_N`.
#[derive(Debug, Clone)]
pub struct LocalUnitarySet {
    unitaries: Vec<Operator>,
}

impl LocalUnitarySet {
    pub fn new(unitaries: Vec<Operator>) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(Error::InvalidShape("empty local unitary set".into()));
        }
        for (i, u) in unitaries.iter().enumerate() {
            if u.kind() != OperatorKind::Unitary {
                return Err(Error::InvalidOperator {
                    kind: "unitary",
                    detail: format!("local operator {i} is {:?}", u.kind()),
                });
            }
        }
        Ok(Self { unitaries })
    }

    pub fn unitaries(&self) -> &[Operator] {
        &self.unitaries
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    /// Fails unless factor `i` of `shape` has the dimension of unitary `i`.
    pub fn check_shape(&self, shape: &HilbertShape) -> Result<()> {
        if shape.num_subsystems() != self.unitaries.len() {
            return Err(Error::InvalidShape(format!(
                "{} local unitaries for shape {shape}",
                self.unitaries.len()
            )));
        }
        for (u, &d) in self.unitaries.iter().zip(shape.dims()) {
            if u.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: u.dim(),
                });
            }
        }
        Ok(())
    }

    /// Applies each factor in turn, never forming the full product.
    pub fn evolve(&self, psi: &StateVector) -> Result<StateVector> {
        self.check_shape(psi.shape())?;
        self.unitaries
            .iter()
            .enumerate()
            .try_fold(psi.clone(), |s, (i, u)| s.apply_local(i, u))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSlot {
    Global,
    Local(usize),
}

impl std::fmt::Display for PhaseSlot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhaseSlot::Global => write!(f, "global"),
            PhaseSlot::Local(i) => write!(f, "local[{i}]"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DeficitReport {
    pub global_phase: PhaseResult,
    pub local_phases: Vec<PhaseResult>,
    /// Deficit in `(-pi, pi]`; `None` when any constituent phase is undefined.
    pub deficit: Option<f64>,
    /// Global phase minus the sum of local phases before wrapping.
    pub unwrapped_deficit: Option<f64>,
    pub entangled_witnessed: bool,
    pub witness_tolerance: f64,
    /// Which constituent phases were undefined.
    pub undefined: Vec<PhaseSlot>,
}

impl DeficitReport {
    pub fn is_defined(&self) -> bool {
        self.undefined.is_empty()
    }
}

pub fn phase_deficit(psi: &StateVector, locals: &LocalUnitarySet) -> Result<DeficitReport> {
    phase_deficit_with_tolerance(psi, locals, WITNESS_TOLERANCE)
}

pub fn phase_deficit_with_tolerance(
    psi: &StateVector,
    locals: &LocalUnitarySet,
    witness_tolerance: f64,
) -> Result<DeficitReport> {
    let evolved = locals.evolve(psi)?;
    let global_phase = pancharatnam_pure(psi, &evolved)?;
    let local_phases = locals
        .unitaries()
        .iter()
        .enumerate()
        .map(|(i, u)| pancharatnam_mixed(&psi.reduced(&[i])?, u))
        .collect::<Result<Vec<_>>>()?;

    let mut undefined = Vec::new();
    if !global_phase.defined {
        undefined.push(PhaseSlot::Global);
    }
    undefined.extend(
        local_phases
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.defined)
            .map(|(i, _)| PhaseSlot::Local(i)),
    );

    let (deficit, unwrapped_deficit) = if undefined.is_empty() {
        let raw = global_phase.phase - local_phases.iter().map(|p| p.phase).sum::<f64>();
        (Some(wrap_phase(raw)), Some(raw))
    } else {
        (None, None)
    };
    let entangled_witnessed = deficit.is_some_and(|d| d.abs() > witness_tolerance);

    Ok(DeficitReport {
        global_phase,
        local_phases,
        deficit,
        unwrapped_deficit,
        entangled_witnessed,
        witness_tolerance,
        undefined,
    })
}

/// Deficit of a bipartite state from its Schmidt form.
///
/// With `U_kl = <a_k|U|a_l>` and `V_kl = <b_k|V|b_l>` the global amplitude is
/// `sum_kl sqrt(l_k l_l) U_kl V_kl` and the local ones are `sum_k l_k U_kk`,
/// `sum_k l_k V_kk`. Each arctangent is taken quadrant-aware on its
/// (imaginary, real) pair.
pub fn deficit_closed_form_schmidt(
    schmidt: &SchmidtForm,
    u_a: &Operator,
    u_b: &Operator,
) -> Result<f64> {
    for (u, shape) in [(u_a, &schmidt.shape_a), (u_b, &schmidt.shape_b)] {
        if u.dim() != shape.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: shape.total_dim(),
                got: u.dim(),
            });
        }
    }
    let a = &schmidt.basis_a;
    let b = &schmidt.basis_b;
    let u_kl = a.adjoint() * u_a.matrix() * a;
    let v_kl = b.adjoint() * u_b.matrix() * b;
    let lambda = &schmidt.coefficients;
    let r = lambda.len();

    let (mut num, mut den) = (0.0, 0.0);
    for k in 0..r {
        for l in 0..r {
            let w = (lambda[k] * lambda[l]).sqrt();
            let (u, v) = (u_kl[(k, l)], v_kl[(k, l)]);
            num += w * (u.im * v.re + u.re * v.im);
            den += w * (u.re * v.re - u.im * v.im);
        }
    }
    let (mut num_a, mut den_a, mut num_b, mut den_b) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..r {
        num_a += lambda[k] * u_kl[(k, k)].im;
        den_a += lambda[k] * u_kl[(k, k)].re;
        num_b += lambda[k] * v_kl[(k, k)].im;
        den_b += lambda[k] * v_kl[(k, k)].re;
    }

    let parts = [
        ("global", principal_arg(C64::new(den, num))),
        ("subsystem A", principal_arg(C64::new(den_a, num_a))),
        ("subsystem B", principal_arg(C64::new(den_b, num_b))),
    ];
    if let Some((name, _)) = parts.iter().find(|(_, p)| !p.defined) {
        return Err(Error::UndefinedPhase(format!("{name} amplitude vanishes")));
    }
    Ok(wrap_phase(
        parts[0].1.phase - parts[1].1.phase - parts[2].1.phase,
    ))
}
