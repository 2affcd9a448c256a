use crate::error::{Error, Result};

/// Ordered subsystem dimensions of a factorized Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertShape {
    dims: Vec<usize>,
}

impl HilbertShape {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(Error::InvalidShape("no subsystems".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidShape(format!(
                "subsystem {pos} has dimension 0"
            )));
        }
        Ok(Self { dims })
    }

    /// Single-factor shape.
    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn concat(&self, other: &HilbertShape) -> HilbertShape {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        HilbertShape { dims }
    }

    /// Shape of the listed subsystems, in the order given.
    pub fn select(&self, indices: &[usize]) -> Result<HilbertShape> {
        let dims = indices
            .iter()
            .map(|&i| {
                self.dims.get(i).copied().ok_or_else(|| {
                    Error::InvalidSubsystems(format!(
                        "index {i} out of range for {} subsystems",
                        self.dims.len()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HilbertShape::new(dims)
    }

    /// Validates a subsystem index set, returning it sorted and deduplicated.
    pub(crate) fn check_subset(&self, indices: &[usize]) -> Result<Vec<usize>> {
        if indices.is_empty() {
            return Err(Error::InvalidSubsystems("empty subsystem set".into()));
        }
        let mut out = indices.to_vec();
        out.sort_unstable();
        out.dedup();
        if let Some(&bad) = out.iter().find(|&&i| i >= self.dims.len()) {
            return Err(Error::InvalidSubsystems(format!(
                "index {bad} out of range for {} subsystems",
                self.dims.len()
            )));
        }
        Ok(out)
    }

    /// Indices not in `indices`, ascending.
    pub(crate) fn complement(&self, indices: &[usize]) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|i| !indices.contains(i))
            .collect()
    }

    /// Splits a flat index into per-subsystem digits.
    pub(crate) fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    /// Inverse of [`digits`](Self::digits).
    pub(crate) fn flat(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&digit, &d)| acc * d + digit)
    }
}

impl std::fmt::Display for HilbertShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.dims)
    }
}
