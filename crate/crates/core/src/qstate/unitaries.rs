use nalgebra::DMatrix;

use super::{HilbertShape, Operator, OperatorKind, StateVector};
use crate::C64;

/// `(I - P) + e^{-i g} P` with `P = |phi><phi|`.
pub fn projector_phase_unitary(phi: &StateVector, g: f64) -> Operator {
    let n = phi.dim();
    let v = phi.amplitudes();
    let p = v * v.adjoint();
    let factor = C64::from_polar(1.0, -g) - C64::new(1.0, 0.0);
    let entries = DMatrix::<C64>::identity(n, n) + p * factor;
    Operator::from_parts(phi.shape().clone(), entries, OperatorKind::Unitary)
}

pub fn pauli_x() -> Operator {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    Operator::from_parts(
        HilbertShape::single(2).expect("dim 2"),
        DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
        OperatorKind::Unitary,
    )
}

pub fn pauli_y() -> Operator {
    let o = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    Operator::from_parts(
        HilbertShape::single(2).expect("dim 2"),
        DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        OperatorKind::Unitary,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{operator::max_abs, random};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_angle_is_identity() {
        let phi = StateVector::ket(3, 1).unwrap();
        let u = projector_phase_unitary(&phi, 0.0);
        assert!(max_abs(&(u.matrix() - DMatrix::<C64>::identity(3, 3))) < 1e-15);
    }

    #[test]
    fn eigenvector_picks_up_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let phi = random::random_state(&HilbertShape::single(4).unwrap(), &mut rng);
        let u = projector_phase_unitary(&phi, 0.9);
        let out = phi.apply(&u).unwrap();
        let expect = phi.with_global_phase(-0.9);
        assert!((out.amplitudes() - expect.amplitudes()).norm() < 1e-14);
    }

    #[test]
    fn unitary_for_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let d = rng.random_range(2..6);
            let phi = random::random_state(&HilbertShape::single(d).unwrap(), &mut rng);
            let g = rng.random_range(-10.0..10.0);
            let u = projector_phase_unitary(&phi, g);
            let dev =
                max_abs(&(u.matrix().adjoint() * u.matrix() - DMatrix::<C64>::identity(d, d)));
            assert!(dev < 1e-12);
        }
    }
}
