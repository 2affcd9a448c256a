use nalgebra::{DMatrix, DVector};

use super::{HilbertShape, StateVector, SCHMIDT_ZERO};
use crate::error::Result;
use crate::C64;

/// `|psi> = sum_n sqrt(lambda_n) |a_n>|b_n>` with descending `lambda_n`.
///
/// Column `n` of `basis_a` / `basis_b` is `|a_n>` / `|b_n>`. There are
/// `min(dim A, dim B)` terms; coefficients below `1e-12` are exact zeros.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub basis_a: DMatrix<C64>,
    pub basis_b: DMatrix<C64>,
    pub shape_a: HilbertShape,
    pub shape_b: HilbertShape,
}

impl SchmidtForm {
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&l| l > 0.0).count()
    }

    /// Reassembles the state on `shape_a ++ shape_b`.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let da = self.shape_a.total_dim();
        let db = self.shape_b.total_dim();
        let mut amps = DVector::<C64>::zeros(da * db);
        for (n, &lambda) in self.coefficients.iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            let term = self.basis_a.column(n).kronecker(&self.basis_b.column(n));
            amps.axpy(C64::new(lambda.sqrt(), 0.0), &term, C64::new(1.0, 0.0));
        }
        StateVector::normalized(self.shape_a.concat(&self.shape_b), amps)
    }

    /// Natural-log entropy of the coefficient distribution.
    pub fn entropy(&self) -> f64 {
        crate::measures::shannon_nats(&self.coefficients)
    }
}

/// Schmidt decomposition across the cut `side_a | rest` via SVD of the
/// amplitude matrix.
pub fn schmidt_decompose(psi: &StateVector, side_a: &[usize]) -> Result<SchmidtForm> {
    let (m, shape_a, shape_b) = psi.bipartite_matrix(side_a)?;
    let svd = m.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let values = svd.singular_values;

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));

    let coefficients: Vec<f64> = order
        .iter()
        .map(|&i| {
            let l = values[i] * values[i];
            if l < SCHMIDT_ZERO {
                0.0
            } else {
                l
            }
        })
        .collect();

    // M = U S V^dagger, so |b_n> has components (V^dagger)_{n j}
    let basis_a = DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let basis_b = DMatrix::from_fn(v_t.ncols(), order.len(), |r, c| v_t[(order[c], r)]);

    Ok(SchmidtForm {
        coefficients,
        basis_a,
        basis_b,
        shape_a,
        shape_b,
    })
}
