//! Seeded fixtures shared by the criterion benches.

use phasedeficit_core::qstate::random::{random_state, random_unitary};
use phasedeficit_core::{HilbertShape, LocalUnitarySet, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random pure state on `dims` with random local unitaries.
pub fn instance(dims: &[usize], seed: u64) -> (StateVector, LocalUnitarySet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = HilbertShape::new(dims.to_vec()).expect("nonempty positive dims");
    let psi = random_state(&shape, &mut rng);
    let locals = LocalUnitarySet::new(dims.iter().map(|&d| random_unitary(d, &mut rng)).collect())
        .expect("unitaries");
    (psi, locals)
}
