use nalgebra::{DMatrix, SymmetricEigen};

use super::{
    HilbertShape, DENSITY_EIGEN_TOLERANCE, HERMITIAN_TOLERANCE, NORM_TOLERANCE, UNITARY_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    General,
    Unitary,
    Hermitian,
    Density,
}

/// Square operator over a factorized Hilbert space, tagged with the
/// structural property it was validated against.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    shape: HilbertShape,
    entries: DMatrix<C64>,
    kind: OperatorKind,
}

impl Operator {
    pub(crate) fn from_parts(
        shape: HilbertShape,
        entries: DMatrix<C64>,
        kind: OperatorKind,
    ) -> Self {
        Self {
            shape,
            entries,
            kind,
        }
    }

    pub fn general(shape: HilbertShape, entries: DMatrix<C64>) -> Result<Self> {
        check_square(&shape, &entries)?;
        Ok(Self::from_parts(shape, entries, OperatorKind::General))
    }

    pub fn unitary(shape: HilbertShape, entries: DMatrix<C64>) -> Result<Self> {
        check_square(&shape, &entries)?;
        let n = entries.nrows();
        let dev = max_abs(&(entries.adjoint() * &entries - DMatrix::<C64>::identity(n, n)));
        if dev >= UNITARY_TOLERANCE {
            return Err(Error::InvalidOperator {
                kind: "unitary",
                detail: format!("max |U^dagger U - I| = {dev:e}"),
            });
        }
        Ok(Self::from_parts(shape, entries, OperatorKind::Unitary))
    }

    pub fn hermitian(shape: HilbertShape, entries: DMatrix<C64>) -> Result<Self> {
        check_square(&shape, &entries)?;
        check_hermitian(&entries)?;
        Ok(Self::from_parts(shape, entries, OperatorKind::Hermitian))
    }

    /// Hermitian, unit trace, eigenvalues no lower than `-1e-10`.
    pub fn density(shape: HilbertShape, entries: DMatrix<C64>) -> Result<Self> {
        check_square(&shape, &entries)?;
        check_hermitian(&entries)?;
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > NORM_TOLERANCE || tr.im.abs() > NORM_TOLERANCE {
            return Err(Error::InvalidOperator {
                kind: "a density operator",
                detail: format!("trace = {tr}"),
            });
        }
        let min = hermitian_eigenvalues(&entries)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -DENSITY_EIGEN_TOLERANCE {
            return Err(Error::InvalidOperator {
                kind: "a density operator",
                detail: format!("eigenvalue {min:e}"),
            });
        }
        Ok(Self::from_parts(shape, entries, OperatorKind::Density))
    }

    pub fn identity(shape: HilbertShape) -> Self {
        let n = shape.total_dim();
        Self::from_parts(shape, DMatrix::identity(n, n), OperatorKind::Unitary)
    }

    /// Diagonal unitary `diag(e^{i phases[0]}, e^{i phases[1]}, ...)`.
    pub fn diagonal_phases(shape: HilbertShape, phases: &[f64]) -> Result<Self> {
        if phases.len() != shape.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: shape.total_dim(),
                got: phases.len(),
            });
        }
        let diag = nalgebra::DVector::from_iterator(
            phases.len(),
            phases.iter().map(|&p| C64::from_polar(1.0, p)),
        );
        Ok(Self::from_parts(
            shape,
            DMatrix::from_diagonal(&diag),
            OperatorKind::Unitary,
        ))
    }

    pub fn shape(&self) -> &HilbertShape {
        &self.shape
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn adjoint(&self) -> Operator {
        Self::from_parts(self.shape.clone(), self.entries.adjoint(), self.kind)
    }

    /// Kronecker product, left operand slow. Kind is kept when both agree.
    pub fn tensor(&self, other: &Operator) -> Operator {
        let kind = if self.kind == other.kind {
            self.kind
        } else {
            OperatorKind::General
        };
        Self::from_parts(
            self.shape.concat(&other.shape),
            self.entries.kronecker(&other.entries),
            kind,
        )
    }

    /// Matrix product `self * other` as a general operator.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.shape != other.shape {
            return Err(Error::InvalidShape(format!(
                "product of operators on {} and {}",
                self.shape, other.shape
            )));
        }
        let kind = if self.kind == OperatorKind::Unitary && other.kind == OperatorKind::Unitary {
            OperatorKind::Unitary
        } else {
            OperatorKind::General
        };
        Ok(Self::from_parts(
            self.shape.clone(),
            &self.entries * &other.entries,
            kind,
        ))
    }

    /// `U rho U^dagger`; `self` must be a density operator and `u` unitary.
    pub fn conjugated_by(&self, u: &Operator) -> Result<Operator> {
        if u.kind != OperatorKind::Unitary || u.shape != self.shape {
            return Err(Error::InvalidOperator {
                kind: "unitary",
                detail: "conjugation needs a unitary on the same shape".into(),
            });
        }
        let m = &u.entries * &self.entries * u.entries.adjoint();
        Ok(Self::from_parts(self.shape.clone(), m, self.kind))
    }

    /// Real eigenvalues, ascending. Only meaningful for Hermitian kinds.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self.kind {
            OperatorKind::Hermitian | OperatorKind::Density => {
                let mut ev = hermitian_eigenvalues(&self.entries);
                ev.sort_by(f64::total_cmp);
                Ok(ev)
            }
            _ => Err(Error::InvalidOperator {
                kind: "Hermitian",
                detail: format!("{:?} operator has no real spectrum guarantee", self.kind),
            }),
        }
    }
}

/// Reduced density operator on the `keep` subsystems by explicit index sums.
pub fn partial_trace(rho: &Operator, keep: &[usize]) -> Result<Operator> {
    if rho.kind != OperatorKind::Density {
        return Err(Error::InvalidOperator {
            kind: "a density operator",
            detail: format!("{:?} operator", rho.kind),
        });
    }
    let shape = &rho.shape;
    let keep = shape.check_subset(keep)?;
    let traced = shape.complement(&keep);
    let kept_shape = shape.select(&keep)?;
    if traced.is_empty() {
        return Ok(rho.clone());
    }
    let traced_shape = shape.select(&traced)?;
    let dk = kept_shape.total_dim();
    let dt = traced_shape.total_dim();

    // full flat index for each (kept, traced) pair
    let mut full_index = vec![0usize; dk * dt];
    let mut digits = vec![0usize; shape.num_subsystems()];
    for k in 0..dk {
        let kd = kept_shape.digits(k);
        for t in 0..dt {
            let td = traced_shape.digits(t);
            for (slot, &i) in keep.iter().enumerate() {
                digits[i] = kd[slot];
            }
            for (slot, &i) in traced.iter().enumerate() {
                digits[i] = td[slot];
            }
            full_index[k * dt + t] = shape.flat(&digits);
        }
    }

    let m = &rho.entries;
    let reduced = DMatrix::from_fn(dk, dk, |i, j| {
        (0..dt)
            .map(|t| m[(full_index[i * dt + t], full_index[j * dt + t])])
            .sum::<C64>()
    });
    Operator::density(kept_shape, reduced)
}

pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect()
}

pub(crate) fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_square(shape: &HilbertShape, m: &DMatrix<C64>) -> Result<()> {
    let n = shape.total_dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if m.nrows() != n { m.nrows() } else { m.ncols() },
        });
    }
    Ok(())
}

fn check_hermitian(m: &DMatrix<C64>) -> Result<()> {
    let dev = max_abs(&(m - m.adjoint()));
    if dev >= HERMITIAN_TOLERANCE {
        return Err(Error::InvalidOperator {
            kind: "Hermitian",
            detail: format!("max |A - A^dagger| = {dev:e}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{random, StateVector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(d: &[usize]) -> HilbertShape {
        HilbertShape::new(d.to_vec()).unwrap()
    }

    #[test]
    fn constructors_validate() {
        let bad = DMatrix::from_element(2, 2, C64::new(1.0, 0.0));
        assert!(Operator::unitary(shape(&[2]), bad.clone()).is_err());
        assert!(Operator::density(shape(&[2]), bad.clone()).is_err());
        let skew = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert!(Operator::hermitian(shape(&[2]), skew).is_err());
        assert!(Operator::general(shape(&[3]), bad).is_err());
        // negative eigenvalue
        let neg = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(1.5, 0.0),
            C64::new(-0.5, 0.0),
        ]));
        assert!(Operator::density(shape(&[2]), neg).is_err());
    }

    #[test]
    fn partial_trace_of_product_returns_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random::random_state(&shape(&[3]), &mut rng);
        let b = random::random_state(&shape(&[2]), &mut rng);
        let rho_a = a.density();
        let rho = a.tensor(&b).density();
        let red = partial_trace(&rho, &[0]).unwrap();
        assert!(max_abs(&(red.matrix() - rho_a.matrix())) < 1e-14);
        let red_b = partial_trace(&rho, &[1]).unwrap();
        assert!(max_abs(&(red_b.matrix() - b.density().matrix())) < 1e-14);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = StateVector::ket(2, 0)
            .unwrap()
            .tensor(&StateVector::ket(2, 1).unwrap())
            .density();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
        let general = Operator::general(shape(&[2, 2]), rho.matrix().clone()).unwrap();
        assert!(partial_trace(&general, &[0]).is_err());
        let full = partial_trace(&rho, &[0, 1]).unwrap();
        assert_eq!(full.matrix(), rho.matrix());
    }

    #[test]
    fn partial_trace_agrees_with_reshape_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = random::random_state(&shape(&[2, 3, 2]), &mut rng);
        let rho = s.density();
        for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]] {
            let a = partial_trace(&rho, &keep).unwrap();
            let b = s.reduced(&keep).unwrap();
            assert!(max_abs(&(a.matrix() - b.matrix())) < 1e-14, "keep {keep:?}");
        }
    }

    #[test]
    fn tensor_kind_bookkeeping() {
        let i2 = Operator::identity(shape(&[2]));
        let h = Operator::hermitian(shape(&[2]), DMatrix::identity(2, 2)).unwrap();
        assert_eq!(i2.tensor(&i2).kind(), OperatorKind::Unitary);
        assert_eq!(i2.tensor(&h).kind(), OperatorKind::General);
        assert_eq!(i2.tensor(&i2).shape().dims(), &[2, 2]);
    }
}
