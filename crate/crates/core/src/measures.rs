//! Entanglement measures used to cross-check the deficit.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::qstate::{pauli_y, Operator, OperatorKind};

/// `-sum p ln p` with `0 ln 0 = 0`.
pub fn shannon_nats(probabilities: &[f64]) -> f64 {
    -probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// Von Neumann entropy in nats.
pub fn entanglement_entropy(rho: &Operator) -> Result<f64> {
    require_density(rho)?;
    let spectrum: Vec<f64> = rho
        .eigenvalues()?
        .into_iter()
        .map(|p| if p < 0.0 { 0.0 } else { p })
        .collect();
    Ok(shannon_nats(&spectrum))
}

/// Wootters concurrence of a two-qubit density operator.
///
/// With `rho = W W^dagger`, `W` built from the eigenvectors scaled by
/// `sqrt(p_i)`, the `mu_i` are the singular values of `W^T (Y (x) Y) W`.
/// Eigenvalues below [`CONCURRENCE_RANK_CUTOFF`] are treated as zero.
pub fn wootters_concurrence(rho: &Operator) -> Result<f64> {
    require_density(rho)?;
    if rho.shape().dims() != [2, 2] {
        return Err(Error::InvalidShape(format!(
            "concurrence needs a two-qubit state, got {}",
            rho.shape()
        )));
    }
    let yy = pauli_y().tensor(&pauli_y());
    let eig = SymmetricEigen::new(rho.matrix().clone());
    let kept: Vec<usize> = (0..4)
        .filter(|&i| eig.eigenvalues[i] > CONCURRENCE_RANK_CUTOFF)
        .collect();
    let w = DMatrix::from_fn(4, kept.len(), |r, c| {
        eig.eigenvectors[(r, kept[c])] * eig.eigenvalues[kept[c]].sqrt()
    });
    let tau = w.transpose() * yy.matrix() * &w;

    let mut mu: Vec<f64> = tau.singular_values().iter().copied().collect();
    mu.resize(4, 0.0);
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Density eigenvalues at or below this are dropped by [`wootters_concurrence`].
pub const CONCURRENCE_RANK_CUTOFF: f64 = 1e-14;

fn require_density(rho: &Operator) -> Result<()> {
    if rho.kind() != OperatorKind::Density {
        return Err(Error::InvalidOperator {
            kind: "a density operator",
            detail: format!("{:?} operator", rho.kind()),
        });
    }
    Ok(())
}
