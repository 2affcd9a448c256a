use nalgebra::{DMatrix, DVector};

use super::{HilbertShape, Operator, OperatorKind, NORM_TOLERANCE};
use crate::error::{Error, Result};
use crate::C64;

/// Normalized pure state over a factorized Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    shape: HilbertShape,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized to within `1e-12`.
    pub fn new(shape: HilbertShape, amplitudes: impl Into<DVector<C64>>) -> Result<Self> {
        let amplitudes = amplitudes.into();
        check_len(&shape, amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { shape, amplitudes })
    }

    /// Normalizes the given amplitudes. Fails on the zero vector.
    pub fn normalized(shape: HilbertShape, amplitudes: impl Into<DVector<C64>>) -> Result<Self> {
        let mut amplitudes = amplitudes.into();
        check_len(&shape, amplitudes.len())?;
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        amplitudes.unscale_mut(norm);
        Ok(Self { shape, amplitudes })
    }

    /// Computational basis state `|index>`.
    pub fn basis(shape: HilbertShape, index: usize) -> Result<Self> {
        let dim = shape.total_dim();
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: index,
            });
        }
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { shape, amplitudes })
    }

    /// Single-qudit basis state `|index>` of dimension `dim`.
    pub fn ket(dim: usize, index: usize) -> Result<Self> {
        Self::basis(HilbertShape::single(dim)?, index)
    }

    pub fn shape(&self) -> &HilbertShape {
        &self.shape
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.shape != other.shape {
            return Err(Error::InvalidShape(format!(
                "inner product of {} and {}",
                self.shape, other.shape
            )));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector {
            shape: self.shape.concat(&other.shape),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    /// Multiplies every amplitude by `e^{i phi}`.
    pub fn with_global_phase(&self, phi: f64) -> StateVector {
        let factor = C64::from_polar(1.0, phi);
        StateVector {
            shape: self.shape.clone(),
            amplitudes: self.amplitudes.map(|a| a * factor),
        }
    }

    /// Reorders subsystems: subsystem `order[j]` of `self` becomes subsystem `j`.
    pub fn permuted(&self, order: &[usize]) -> Result<StateVector> {
        let n = self.shape.num_subsystems();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::InvalidSubsystems(format!(
                "permutation of length {} for {n} subsystems",
                order.len()
            )));
        }
        for &i in order {
            if i >= n || seen[i] {
                return Err(Error::InvalidSubsystems(format!(
                    "{order:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        let shape = self.shape.select(order)?;
        let mut amplitudes = DVector::zeros(self.dim());
        let mut new_digits = vec![0; n];
        for (index, &a) in self.amplitudes.iter().enumerate() {
            let digits = self.shape.digits(index);
            for (slot, &src) in new_digits.iter_mut().zip(order) {
                *slot = digits[src];
            }
            amplitudes[shape.flat(&new_digits)] = a;
        }
        Ok(StateVector { shape, amplitudes })
    }

    /// Amplitudes as a `dim(first) x dim(rest)` matrix after moving the
    /// `first` subsystems (in ascending order) to the front.
    pub(crate) fn bipartite_matrix(
        &self,
        first: &[usize],
    ) -> Result<(DMatrix<C64>, HilbertShape, HilbertShape)> {
        let first = self.shape.check_subset(first)?;
        let rest = self.shape.complement(&first);
        if rest.is_empty() {
            return Err(Error::InvalidSubsystems(
                "bipartition leaves one side empty".into(),
            ));
        }
        let order: Vec<usize> = first.iter().chain(&rest).copied().collect();
        let moved = self.permuted(&order)?;
        let shape_a = self.shape.select(&first)?;
        let shape_b = self.shape.select(&rest)?;
        let m = DMatrix::from_row_slice(
            shape_a.total_dim(),
            shape_b.total_dim(),
            moved.amplitudes.as_slice(),
        );
        Ok((m, shape_a, shape_b))
    }

    /// `|psi><psi|` as a density operator.
    pub fn density(&self) -> Operator {
        let entries = &self.amplitudes * self.amplitudes.adjoint();
        Operator::from_parts(self.shape.clone(), entries, OperatorKind::Density)
    }

    /// Reduced density operator on `keep`, obtained by reshaping the amplitudes.
    pub fn reduced(&self, keep: &[usize]) -> Result<Operator> {
        let keep = self.shape.check_subset(keep)?;
        if keep.len() == self.shape.num_subsystems() {
            return Ok(self.density());
        }
        let (m, shape_keep, _) = self.bipartite_matrix(&keep)?;
        let rho = &m * m.adjoint();
        Operator::density(shape_keep, rho)
    }

    /// Applies an operator acting on the whole space.
    pub fn apply(&self, op: &Operator) -> Result<StateVector> {
        if op.shape() != &self.shape {
            return Err(Error::InvalidShape(format!(
                "operator on {} applied to state on {}",
                op.shape(),
                self.shape
            )));
        }
        if op.kind() != OperatorKind::Unitary {
            return Err(Error::InvalidOperator {
                kind: "unitary",
                detail: "only unitaries map states to states".into(),
            });
        }
        StateVector::new(self.shape.clone(), op.matrix() * &self.amplitudes)
    }

    /// Applies a unitary to one subsystem without forming the full operator.
    pub fn apply_local(&self, factor: usize, op: &Operator) -> Result<StateVector> {
        let dims = self.shape.dims();
        let d = *dims
            .get(factor)
            .ok_or_else(|| Error::InvalidSubsystems(format!("factor {factor} out of range")))?;
        if op.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: op.dim(),
            });
        }
        let stride: usize = dims[factor + 1..].iter().product();
        let outer: usize = dims[..factor].iter().product();
        let u = op.matrix();
        let mut out = DVector::zeros(self.dim());
        let mut column = DVector::zeros(d);
        for o in 0..outer {
            for r in 0..stride {
                let base = o * d * stride + r;
                for k in 0..d {
                    column[k] = self.amplitudes[base + k * stride];
                }
                let mapped = u * &column;
                for k in 0..d {
                    out[base + k * stride] = mapped[k];
                }
            }
        }
        StateVector::normalized(self.shape.clone(), out)
    }
}

fn check_len(shape: &HilbertShape, len: usize) -> Result<()> {
    if shape.total_dim() != len {
        return Err(Error::DimensionMismatch {
            expected: shape.total_dim(),
            got: len,
        });
    }
    Ok(())
}
