use super::matrix::Matrix;
use super::scalar::Field;
use super::AlgError;

/// A subspace of `F^n` held by its reduced row-echelon basis.
///
/// Because the basis is canonical, two subspaces of the same ambient space
/// are equal exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<F>>) -> Result<Self, AlgError> {
        let m = Matrix::from_rows(ambient, vectors)?;
        let r = m.rref();
        Ok(Subspace {
            ambient,
            basis: r.matrix,
            pivots: r.pivots,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, n: usize) -> Result<(), AlgError> {
        if n != self.ambient {
            return Err(AlgError::DimensionMismatch {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the reduced basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Result<Option<Vec<F>>, AlgError> {
        self.check(v.len())?;
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (row, c) in self.basis.row_iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.clone() - &(c.clone() * b);
                }
            }
        }
        Ok(rest.iter().all(F::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[F]) -> Result<bool, AlgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `self ⊆ other`.
    pub fn leq(&self, other: &Subspace<F>) -> Result<bool, AlgError> {
        other.check(self.ambient)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        for row in self.basis.row_iter() {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Subspace<F>) -> Result<bool, AlgError> {
        other.check(self.ambient)?;
        Ok(self.basis == other.basis)
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Subspace<F>) -> Result<Subspace<F>, AlgError> {
        other.check(self.ambient)?;
        let mut rows = self.basis.to_rows();
        rows.extend(other.basis.to_rows());
        Subspace::from_vectors(self.ambient, rows)
    }
}
