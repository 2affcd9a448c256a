//! Builders for the three worked systems and their published closed forms.
//!
//! Closed forms are transcribed as printed, suspected typos included, so the
//! [`oracle`](crate::oracle) auditor can grade them. They never feed an
//! entanglement verdict. Each printed `tan^-1[N/D]` is evaluated as
//! `Arg(D + iN)`, which is the quadrant-aware two-argument arctangent when
//! `N` and `D` are real.

mod cat;
mod kondo;
mod micro_macro;

pub use cat::{cat_build, cat_closed, CatClosed, CatParams};
pub use kondo::{
    kondo_build, kondo_closed, kondo_concurrence, kondo_evolved_published, KondoClosed, KondoParams,
};
pub use micro_macro::{
    micro_macro_build, micro_macro_closed, micro_macro_invert, MicroMacroInversion,
    MicroMacroParams, MicroMacroPhases,
};

use crate::phase::{principal_arg, PhaseResult};
use crate::C64;

/// `tan^-1[num / den]`, quadrant-aware.
pub(crate) fn published_arctan(num: f64, den: f64) -> PhaseResult {
    principal_arg(C64::new(den, num))
}

/// `tan^-1[num / den]` for printed numerators and denominators that evaluate
/// to complex values: `Arg(den + i num)`.
pub(crate) fn published_arctan_complex(num: C64, den: C64) -> PhaseResult {
    principal_arg(den + C64::i() * num)
}

pub(crate) fn deficit_of(global: &PhaseResult, locals: &[&PhaseResult]) -> Option<f64> {
    if !global.defined || locals.iter().any(|p| !p.defined) {
        return None;
    }
    let sum: f64 = locals.iter().map(|p| p.phase).sum();
    Some(crate::phase::wrap_phase(global.phase - sum))
}
