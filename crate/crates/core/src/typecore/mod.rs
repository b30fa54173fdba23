//! Presentations `(Ω, R)` of binary quadratic regular operads with a
//! splitting associativity.
//!
//! A relation element `(L, R)` with `m × m` matrices encodes the identity
//! `Σ L[i][j] (x e_i y) e_j z = Σ R[i][j] x e_i (y e_j z)`. Every subspace
//! computation uses the flattening `flatten(L, R)` of length `2m²`: `L`
//! row-major (index `i*m + j`) followed by `R` row-major (`m² + i*m + j`).

pub mod labels;

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::{Matrix, Rational, Subspace};
use crate::Error;

/// Which side of a relation element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Position of `e_i ⊗ e_j` on `side` in flattened coordinates.
pub fn flat_index(m: usize, side: Side, i: usize, j: usize) -> usize {
    let base = match side {
        Side::Left => 0,
        Side::Right => m * m,
    };
    base + i * m + j
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationElement {
    pub left: Matrix<Rational>,
    pub right: Matrix<Rational>,
}

impl RelationElement {
    pub fn zero(m: usize) -> Self {
        RelationElement {
            left: Matrix::zeros(m, m),
            right: Matrix::zeros(m, m),
        }
    }

    pub fn dim(&self) -> usize {
        self.left.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    pub fn flatten(&self) -> Vec<Rational> {
        let m = self.dim();
        let mut v = Vec::with_capacity(2 * m * m);
        for side in [&self.left, &self.right] {
            for row in side.row_iter() {
                v.extend(row.iter().cloned());
            }
        }
        v
    }

    pub fn from_flat(m: usize, v: &[Rational]) -> Result<Self, Error> {
        if v.len() != 2 * m * m {
            return Err(crate::exactalg::AlgError::DimensionMismatch {
                expected: 2 * m * m,
                found: v.len(),
            }
            .into());
        }
        Ok(RelationElement {
            left: Matrix::new(m, m, v[..m * m].to_vec())?,
            right: Matrix::new(m, m, v[m * m..].to_vec())?,
        })
    }

    /// `(s⊗s, s⊗s)`, the associativity relation of `s`.
    pub fn associativity(s: &[Rational]) -> Self {
        let m = s.len();
        let mut left = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                left.set(i, j, &s[i] * &s[j]);
            }
        }
        RelationElement {
            right: left.clone(),
            left,
        }
    }

    /// Push-forward along a linear map `F` (`m' × m`): `L ↦ F L Fᵀ`, same for `R`.
    pub fn push_forward(&self, f: &Matrix<Rational>) -> Result<Self, Error> {
        let ft = f.transpose();
        Ok(RelationElement {
            left: f.mul(&self.left)?.mul(&ft)?,
            right: f.mul(&self.right)?.mul(&ft)?,
        })
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        RelationElement {
            left: self.left.map(|x| x * c),
            right: self.right.map(|x| x * c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        let m = self.dim();
        let sum: Vec<Rational> = self
            .flatten()
            .iter()
            .zip(other.flatten())
            .map(|(a, b)| a + b)
            .collect();
        Self::from_flat(m, &sum)
    }
}

/// Outcome of [`TypePresentation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub name: String,
    pub relation_count: usize,
    pub rank: usize,
    /// `None` when the presentation carries no star.
    pub star_nonzero: Option<bool>,
    pub star_associative: Option<bool>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn independent(&self) -> bool {
        self.rank == self.relation_count
    }

    pub fn valid(&self) -> bool {
        self.independent()
            && self.star_nonzero.unwrap_or(true)
            && self.star_associative.unwrap_or(true)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type {}", self.name)?;
        writeln!(
            f,
            "  relations: {} listed, rank {} ({})",
            self.relation_count,
            self.rank,
            if self.independent() {
                "independent"
            } else {
                "dependent"
            }
        )?;
        match (self.star_nonzero, self.star_associative) {
            (Some(nz), Some(assoc)) => {
                writeln!(f, "  star: {}", if nz { "nonzero" } else { "zero" })?;
                writeln!(
                    f,
                    "  star associativity: {}",
                    if assoc {
                        "(★⊗★,★⊗★) ∈ R"
                    } else {
                        "associativity vector not in R"
                    }
                )?;
            }
            _ => writeln!(f, "  star: skipped")?,
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        write!(f, "  {}", if self.valid() { "valid" } else { "invalid" })
    }
}

/// Generator basis with `★ = Σ ωᵢ` and relation basis with
/// `(★⊗★, ★⊗★) = Σ rⱼ`, in the original coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingBasis {
    pub generators: Vec<Vec<Rational>>,
    pub relations: Vec<RelationElement>,
}

/// A type `(Ω, R)` with named generator basis, optional star and named
/// auxiliary operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePresentation {
    name: String,
    generators: Vec<String>,
    star: Option<Vec<Rational>>,
    relations: Vec<RelationElement>,
    aux: Vec<(String, Vec<Rational>)>,
    space: Subspace<Rational>,
}

pub const DUAL_STAR_NOTE: &str = "dual presentation, star unresolved";

impl TypePresentation {
    /// Checks shapes only; mathematical validity is reported by
    /// [`validate`](Self::validate).
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        star: Option<Vec<Rational>>,
        relations: Vec<RelationElement>,
        aux: Vec<(String, Vec<Rational>)>,
    ) -> Result<Self, Error> {
        let name = name.into();
        let m = generators.len();
        if m == 0 {
            return Err(Error::Structure(format!("type `{name}` has no generators")));
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::Structure(format!("duplicate generator `{g}`")));
            }
        }
        if let Some(s) = &star {
            if s.len() != m {
                return Err(Error::Structure(format!(
                    "star has {} coefficients, expected {m}",
                    s.len()
                )));
            }
        }
        for (a, v) in &aux {
            if v.len() != m {
                return Err(Error::Structure(format!(
                    "auxiliary `{a}` has wrong length"
                )));
            }
        }
        for r in &relations {
            if r.dim() != m || r.right.nrows() != m || r.left.ncols() != m || r.right.ncols() != m {
                return Err(Error::Structure("relation matrix has wrong size".into()));
            }
        }
        let space = Subspace::from_vectors(
            2 * m * m,
            relations.iter().map(RelationElement::flatten).collect(),
        )?;
        Ok(TypePresentation {
            name,
            generators,
            star,
            relations,
            aux,
            space,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn star(&self) -> Option<&[Rational]> {
        self.star.as_deref()
    }

    pub fn with_star(mut self, star: Option<Vec<Rational>>) -> Result<Self, Error> {
        if star.as_ref().is_some_and(|s| s.len() != self.dim()) {
            return Err(Error::Structure("star has wrong length".into()));
        }
        self.star = star;
        Ok(self)
    }

    pub fn relations(&self) -> &[RelationElement] {
        &self.relations
    }

    pub fn aux(&self) -> &[(String, Vec<Rational>)] {
        &self.aux
    }

    pub fn with_aux(mut self, aux: Vec<(String, Vec<Rational>)>) -> Self {
        self.aux = aux;
        self
    }

    /// The relation subspace `R` in flattened coordinates.
    pub fn space(&self) -> &Subspace<Rational> {
        &self.space
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == label)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut notes = Vec::new();
        let (star_nonzero, star_associative) = match &self.star {
            None => {
                notes.push(DUAL_STAR_NOTE.to_string());
                (None, None)
            }
            Some(s) => {
                let nonzero = s.iter().any(|c| !c.is_zero());
                let assoc = self
                    .space
                    .contains(&RelationElement::associativity(s).flatten())
                    .expect("star has ambient length");
                (Some(nonzero), Some(nonzero && assoc))
            }
        };
        if self.relations.is_empty() {
            notes.push("empty relation list".into());
        }
        ValidationReport {
            name: self.name.clone(),
            relation_count: self.relations.len(),
            rank: self.space.dim(),
            star_nonzero,
            star_associative,
            notes,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid()
    }

    /// Fails with the attached report unless the presentation is valid.
    pub fn ensure_valid(&self) -> Result<(), Error> {
        let report = self.validate();
        if report.valid() {
            Ok(())
        } else {
            Err(Error::Invalid(Box::new(report)))
        }
    }

    /// Dimension `2m² − dim R` of the arity-3 component.
    pub fn arity3_dimension(&self) -> Result<usize, Error> {
        self.ensure_valid()?;
        let m = self.dim();
        (2 * m * m)
            .checked_sub(self.space.dim())
            .ok_or_else(|| Error::Internal("relation space exceeds ambient".into()))
    }

    /// Bases adapted to the star, built by completing `★` (and the
    /// associativity vector) to a basis and replacing the first element by
    /// `★ − Σ(others)`. Bases that already sum correctly are kept.
    pub fn splitting_basis(&self) -> Result<SplittingBasis, Error> {
        let star = match &self.star {
            Some(s) if self.is_valid() => s.clone(),
            _ => return Err(Error::NoSplittingAssociativity),
        };
        let m = self.dim();
        let generators = if star.iter().all(One::is_one) {
            standard_basis(m)
        } else {
            let candidates = standard_basis(m);
            split_completion(star.clone(), &candidates, m)
        };
        let assoc = RelationElement::associativity(&star).flatten();
        let flat: Vec<Vec<Rational>> = self
            .relations
            .iter()
            .map(RelationElement::flatten)
            .collect();
        let relations = if sum_vectors(&flat, assoc.len()) == assoc {
            self.relations.clone()
        } else {
            split_completion(assoc, &flat, self.relations.len())
                .iter()
                .map(|v| RelationElement::from_flat(m, v))
                .collect::<Result<_, _>>()?
        };
        Ok(SplittingBasis {
            generators,
            relations,
        })
    }

    /// The same type written in its splitting basis: star becomes all ones
    /// and the relation basis sums to the associativity relation.
    pub fn in_splitting_basis(&self) -> Result<TypePresentation, Error> {
        let basis = self.splitting_basis()?;
        let m = self.dim();
        let mut w = Matrix::zeros(m, m);
        for (j, col) in basis.generators.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                w.set(i, j, c.clone());
            }
        }
        let to_new = w.inverse()?;
        let relations = basis
            .relations
            .iter()
            .map(|r| r.push_forward(&to_new))
            .collect::<Result<_, _>>()?;
        let aux = self
            .aux
            .iter()
            .map(|(a, v)| Ok((a.clone(), to_new.mul_vec(v)?)))
            .collect::<Result<_, Error>>()?;
        TypePresentation::new(
            self.name.clone(),
            self.generators.clone(),
            Some(vec![Rational::one(); m]),
            relations,
            aux,
        )
    }

    /// Transports the presentation along an invertible `F`. Labels stay
    /// positional, so swapping `≺` and `≻` yields the opposite type.
    pub fn relabel(&self, f: &Matrix<Rational>) -> Result<TypePresentation, Error> {
        let m = self.dim();
        if f.nrows() != m || f.ncols() != m {
            return Err(crate::exactalg::AlgError::DimensionMismatch {
                expected: m,
                found: f.nrows().max(f.ncols()),
            }
            .into());
        }
        f.inverse()?;
        let star = self.star.as_ref().map(|s| f.mul_vec(s)).transpose()?;
        let relations = self
            .relations
            .iter()
            .map(|r| r.push_forward(f))
            .collect::<Result<_, _>>()?;
        let aux = self
            .aux
            .iter()
            .map(|(a, v)| Ok((a.clone(), f.mul_vec(v)?)))
            .collect::<Result<_, Error>>()?;
        TypePresentation::new(
            self.name.clone(),
            self.generators.clone(),
            star,
            relations,
            aux,
        )
    }

    /// Relabeling by a permutation of generator names: generator `from`
    /// is sent to position of `to`.
    pub fn relabel_by_names(&self, pairs: &[(&str, &str)]) -> Result<TypePresentation, Error> {
        self.relabel(&self.permutation_matrix(pairs)?)
    }

    /// Permutation matrix of a label bijection; unlisted labels are fixed.
    pub fn permutation_matrix(&self, pairs: &[(&str, &str)]) -> Result<Matrix<Rational>, Error> {
        let m = self.dim();
        let mut target: Vec<usize> = (0..m).collect();
        for (from, to) in pairs {
            let i = self.index_or_err(from)?;
            let j = self.index_or_err(to)?;
            target[i] = j;
        }
        let mut f = Matrix::zeros(m, m);
        for (i, &j) in target.iter().enumerate() {
            f.set(j, i, Rational::one());
        }
        Ok(f)
    }

    fn index_or_err(&self, label: &str) -> Result<usize, Error> {
        self.generator_index(label).ok_or_else(|| {
            Error::Structure(format!("unknown generator `{label}` in `{}`", self.name))
        })
    }
}

fn standard_basis(m: usize) -> Vec<Vec<Rational>> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn sum_vectors(vs: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); n];
    for v in vs {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
    }
    acc
}

/// Completes `first` to `target` independent vectors from `candidates`,
/// then replaces `first` by `first − Σ(others)`.
fn split_completion(
    first: Vec<Rational>,
    candidates: &[Vec<Rational>],
    target: usize,
) -> Vec<Vec<Rational>> {
    let n = first.len();
    let mut chosen = vec![first.clone()];
    for c in candidates {
        if chosen.len() == target {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(c.clone());
        if Matrix::from_rows(n, trial.clone())
            .expect("equal lengths")
            .rank()
            == trial.len()
        {
            chosen = trial;
        }
    }
    let rest_sum = sum_vectors(&chosen[1..], n);
    chosen[0] = first.iter().zip(&rest_sum).map(|(a, b)| a - b).collect();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.len(),
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn rel(l: &[&[i64]], r: &[&[i64]]) -> RelationElement {
        RelationElement {
            left: mat(l),
            right: mat(r),
        }
    }

    fn dendriform(star: &[i64]) -> TypePresentation {
        TypePresentation::new(
            "dendriform",
            vec!["lt".into(), "gt".into()],
            Some(star.iter().map(|&x| rat(x)).collect()),
            vec![
                rel(&[&[1, 0], &[0, 0]], &[&[1, 1], &[0, 0]]),
                rel(&[&[0, 0], &[1, 0]], &[&[0, 0], &[1, 0]]),
                rel(&[&[0, 1], &[0, 1]], &[&[0, 0], &[0, 1]]),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn flattening_layout() {
        let r = rel(&[&[1, 2], &[3, 4]], &[&[5, 6], &[7, 8]]);
        let flat = r.flatten();
        assert_eq!(flat[flat_index(2, Side::Left, 1, 0)], rat(3));
        assert_eq!(flat[flat_index(2, Side::Right, 0, 1)], rat(6));
        assert_eq!(RelationElement::from_flat(2, &flat).unwrap(), r);
    }

    #[test]
    fn dendriform_validates() {
        let d = dendriform(&[1, 1]);
        let report = d.validate();
        assert!(report.valid(), "{report}");
        assert_eq!(report.rank, 3);
        assert_eq!(d.arity3_dimension().unwrap(), 5);
    }

    #[test]
    fn wrong_star_is_reported() {
        let report = dendriform(&[1, 0]).validate();
        assert_eq!(report.star_associative, Some(false));
        assert!(!report.valid());
    }

    #[test]
    fn structural_errors() {
        let dup = TypePresentation::new("d", vec!["a".into(), "a".into()], None, vec![], vec![]);
        assert!(matches!(dup, Err(Error::Structure(_))));
        let empty = TypePresentation::new("e", vec![], None, vec![], vec![]);
        assert!(empty.is_err());
        let none = TypePresentation::new("n", vec!["a".into()], Some(vec![rat(1)]), vec![], vec![])
            .unwrap();
        assert!(!none.is_valid());
    }

    #[test]
    fn splitting_basis_kept_when_already_split() {
        let d = dendriform(&[1, 1]);
        let b = d.splitting_basis().unwrap();
        assert_eq!(
            b.generators,
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]
        );
        assert_eq!(b.relations, d.relations().to_vec());
    }

    #[test]
    fn swap_gives_opposite() {
        let d = dendriform(&[1, 1]);
        let op = d.relabel_by_names(&[("lt", "gt"), ("gt", "lt")]).unwrap();
        assert!(op.is_valid());
        // (lt⊗lt, lt⊗st) becomes (gt⊗gt, gt⊗st).
        assert_eq!(
            op.relations()[0],
            rel(&[&[0, 0], &[0, 1]], &[&[0, 0], &[1, 1]])
        );
        let back = op.relabel_by_names(&[("lt", "gt"), ("gt", "lt")]).unwrap();
        assert_eq!(back.space(), d.space());
        assert!(d.relabel(&mat(&[&[1, 1], &[1, 1]])).is_err());
    }
}
