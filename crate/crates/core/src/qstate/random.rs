//! Seeded random states and operators for test corpora and sweeps.
//!
//! Haar-distributed unitaries come from Gram-Schmidt orthonormalization of
//! complex Gaussian columns; Haar states are normalized complex Gaussian vectors.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{HilbertShape, Operator, OperatorKind, StateVector};
use crate::C64;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_state<R: Rng + ?Sized>(shape: &HilbertShape, rng: &mut R) -> StateVector {
    let v = DVector::from_fn(shape.total_dim(), |_, _| gaussian(rng));
    StateVector::normalized(shape.clone(), v).expect("gaussian vector is nonzero")
}

/// Tensor product of independent random single-factor states.
pub fn random_product_state<R: Rng + ?Sized>(shape: &HilbertShape, rng: &mut R) -> StateVector {
    let mut factors = shape
        .dims()
        .iter()
        .map(|&d| random_state(&HilbertShape::single(d).expect("d >= 1"), rng));
    let first = factors.next().expect("nonempty shape");
    factors.fold(first, |acc, f| acc.tensor(&f))
}

pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Operator {
    let mut m = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    for j in 0..dim {
        for k in 0..j {
            let proj = m.column(k).dotc(&m.column(j));
            let ck = m.column(k).into_owned();
            m.column_mut(j).axpy(-proj, &ck, C64::new(1.0, 0.0));
        }
        let norm = m.column(j).norm();
        m.column_mut(j).unscale_mut(norm);
    }
    Operator::from_parts(
        HilbertShape::single(dim).expect("dim >= 1"),
        m,
        OperatorKind::Unitary,
    )
}

/// `(G + G^dagger) / 2` for a complex Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Operator {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    Operator::from_parts(
        HilbertShape::single(dim).expect("dim >= 1"),
        h,
        OperatorKind::Hermitian,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::operator::max_abs;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 1..9 {
            let u = random_unitary(d, &mut rng);
            assert!(Operator::unitary(u.shape().clone(), u.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let shape = HilbertShape::new(vec![2, 3]).unwrap();
        let a = random_state(&shape, &mut ChaCha8Rng::seed_from_u64(4));
        let b = random_state(&shape, &mut ChaCha8Rng::seed_from_u64(4));
        assert_eq!(a, b);
    }

    #[test]
    fn hermitian_is_hermitian() {
        let h = random_hermitian(5, &mut ChaCha8Rng::seed_from_u64(6));
        assert!(max_abs(&(h.matrix() - h.matrix().adjoint())) == 0.0);
    }
}
