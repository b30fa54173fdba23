use std::fmt;

use super::scalar::{Field, Rational, Scalar, ScalarKind};
use super::{AlgError, RatFunc, Subspace};

/// Dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of [`Matrix::rref`]: the nonzero rows of the reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, AlgError> {
        if data.len() != rows * cols {
            return Err(AlgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Builds a matrix from equally long rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self, AlgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(AlgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        self.row_iter().map(<[F]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgError> {
        if self.cols != other.rows {
            return Err(AlgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].clone() + &(a.clone() * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, AlgError> {
        if v.len() != self.cols {
            return Err(AlgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect())
    }

    /// Reduced row-echelon form, leftmost pivot column first.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - &(factor.clone() * pv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Rref {
            rank: r,
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Subspace<F> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = matrix.get(i, free);
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis).expect("kernel vectors have ambient length")
    }

    pub fn inverse(&self) -> Result<Matrix<F>, AlgError> {
        if self.rows != self.cols {
            return Err(AlgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let red = aug.rref();
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return Err(AlgError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.matrix.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix whose scalar kind is decided at run time, e.g. from parsed input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynMatrix {
    Rational(Matrix<Rational>),
    Function(Matrix<RatFunc>),
}

impl DynMatrix {
    /// All entries must share one scalar kind.
    pub fn from_scalars(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, AlgError> {
        let kind = rows
            .iter()
            .flatten()
            .next()
            .map_or(ScalarKind::Rational, Scalar::kind);
        match kind {
            ScalarKind::Rational => {
                let rows = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|s| match s {
                                Scalar::Rational(q) => Ok(q),
                                Scalar::Function(_) => Err(AlgError::ScalarKindMismatch),
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DynMatrix::Rational(Matrix::from_rows(cols, rows)?))
            }
            ScalarKind::Function => {
                let rows = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|s| match s {
                                Scalar::Function(f) => Ok(f),
                                Scalar::Rational(_) => Err(AlgError::ScalarKindMismatch),
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DynMatrix::Function(Matrix::from_rows(cols, rows)?))
            }
        }
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            DynMatrix::Rational(_) => ScalarKind::Rational,
            DynMatrix::Function(_) => ScalarKind::Function,
        }
    }

    /// Reduced form, pivots and rank.
    pub fn rref(&self) -> (DynMatrix, Vec<usize>, usize) {
        match self {
            DynMatrix::Rational(m) => {
                let r = m.rref();
                (DynMatrix::Rational(r.matrix), r.pivots, r.rank)
            }
            DynMatrix::Function(m) => {
                let r = m.rref();
                (DynMatrix::Function(r.matrix), r.pivots, r.rank)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn proportional_rows_collapse() {
        let r = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, q(&[&[1, 2]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn identity_is_reduced() {
        let id = Matrix::<Rational>::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(id.nullspace().dim(), 0);
    }

    #[test]
    fn small_kernels() {
        assert_eq!(Matrix::<Rational>::zeros(2, 3).nullspace().dim(), 3);
        let k = q(&[&[1, -1]]).nullspace();
        assert_eq!(k.basis().to_rows(), vec![vec![rat(1), rat(1)]]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(AlgError::Singular));
    }

    #[test]
    fn mixed_kinds_rejected() {
        let rows = vec![vec![
            Scalar::Rational(rat(1)),
            Scalar::Function(RatFunc::lambda()),
        ]];
        assert_eq!(
            DynMatrix::from_scalars(2, rows),
            Err(AlgError::ScalarKindMismatch)
        );
        let ok = vec![vec![
            Scalar::Function(RatFunc::lambda()),
            Scalar::Function(RatFunc::lambda()),
        ]];
        let (_, pivots, rank) = DynMatrix::from_scalars(2, ok).unwrap().rref();
        assert_eq!((pivots, rank), (vec![0], 1));
    }
}
