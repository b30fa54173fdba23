//! Linear maps between generator spaces that carry star to star and
//! relations into relations, plus exhaustive search for monomial
//! automorphisms.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::exactalg::{Matrix, Rational, Subspace};
use crate::typecore::{RelationElement, TypePresentation};
use crate::Error;

/// A linear map `F: Ω → Ω'` given by its `m' × m` matrix.
#[derive(Clone, Debug)]
pub struct TypeMorphism {
    source: Arc<TypePresentation>,
    target: Arc<TypePresentation>,
    matrix: Matrix<Rational>,
}

impl TypeMorphism {
    /// Checks shapes only. Whether `F` respects star and relations is
    /// answered by [`check_morphism`](Self::check_morphism), so that
    /// non-morphisms can still be constructed and rejected.
    pub fn new(
        source: Arc<TypePresentation>,
        target: Arc<TypePresentation>,
        matrix: Matrix<Rational>,
    ) -> Result<Self, Error> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::Morphism(format!(
                "matrix is {}×{}, expected {}×{}",
                matrix.nrows(),
                matrix.ncols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(TypeMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(t: Arc<TypePresentation>) -> Self {
        let m = t.dim();
        TypeMorphism {
            source: t.clone(),
            target: t,
            matrix: Matrix::identity(m),
        }
    }

    /// Map sending each generator to a generator, by label.
    pub fn from_label_map(
        source: Arc<TypePresentation>,
        target: Arc<TypePresentation>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, Error> {
        let mut f = Matrix::zeros(target.dim(), source.dim());
        for (from, to) in pairs {
            let i = source
                .generator_index(from)
                .ok_or_else(|| Error::Morphism(format!("no generator `{from}` in source")))?;
            let j = target
                .generator_index(to)
                .ok_or_else(|| Error::Morphism(format!("no generator `{to}` in target")))?;
            f.set(j, i, Rational::one());
        }
        Self::new(source, target, f)
    }

    pub fn source(&self) -> &Arc<TypePresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TypePresentation> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    fn star_preserved(&self) -> Result<bool, Error> {
        match (self.source.star(), self.target.star()) {
            (Some(s), Some(t)) => Ok(self.matrix.mul_vec(s)? == t),
            (None, None) => Ok(true),
            _ => Ok(false),
        }
    }

    /// Image of the source relation space.
    pub fn push_forward_space(&self) -> Result<Subspace<Rational>, Error> {
        let m = self.target.dim();
        let rows = self
            .source
            .relations()
            .iter()
            .map(|r| Ok(r.push_forward(&self.matrix)?.flatten()))
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Subspace::from_vectors(2 * m * m, rows)?)
    }

    /// `F★ = ★'` and `F(R) ⊆ R'`.
    pub fn check_morphism(&self) -> Result<bool, Error> {
        if !self.star_preserved()? {
            return Ok(false);
        }
        for r in self.source.relations() {
            if !self
                .target
                .space()
                .contains(&r.push_forward(&self.matrix)?.flatten())?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Invertible morphism with `F(R) = R'`.
    pub fn check_isomorphism(&self) -> Result<bool, Error> {
        if self.matrix.nrows() != self.matrix.ncols() || self.matrix.inverse().is_err() {
            return Ok(false);
        }
        Ok(self.check_morphism()? && self.push_forward_space()?.equal(self.target.space())?)
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &TypeMorphism) -> Result<TypeMorphism, Error> {
        if g.target.dim() != self.source.dim()
            || g.target.generators() != self.source.generators()
            || g.target.space() != self.source.space()
        {
            return Err(Error::Morphism("morphisms are not composable".into()));
        }
        let out = TypeMorphism {
            source: g.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&g.matrix)?,
        };
        if !out.star_preserved()? {
            return Err(Error::Morphism(
                "composite does not preserve the star".into(),
            ));
        }
        Ok(out)
    }

    pub fn invert(&self) -> Result<TypeMorphism, Error> {
        let inv = self
            .matrix
            .inverse()
            .map_err(|_| Error::Morphism("morphism matrix is singular".into()))?;
        let out = TypeMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        };
        if !out.star_preserved()? {
            return Err(Error::Morphism("inverse does not preserve the star".into()));
        }
        Ok(out)
    }

    /// `f ⊠ g` on generator spaces of the square products (Kronecker product).
    pub fn boxtimes(
        &self,
        g: &TypeMorphism,
        source: Arc<TypePresentation>,
        target: Arc<TypePresentation>,
    ) -> Result<TypeMorphism, Error> {
        let (a, b) = (&self.matrix, &g.matrix);
        let mut k = Matrix::zeros(a.nrows() * b.nrows(), a.ncols() * b.ncols());
        for i1 in 0..a.nrows() {
            for j1 in 0..a.ncols() {
                if a.get(i1, j1).is_zero() {
                    continue;
                }
                for i2 in 0..b.nrows() {
                    for j2 in 0..b.ncols() {
                        k.set(
                            i1 * b.nrows() + i2,
                            j1 * b.ncols() + j2,
                            a.get(i1, j1) * b.get(i2, j2),
                        );
                    }
                }
            }
        }
        TypeMorphism::new(source, target, k)
    }

    /// Signed permutation data `(image, sign)` per source generator, if the
    /// matrix is monomial with ±1 entries.
    pub fn as_signed_permutation(&self) -> Option<Vec<(usize, i8)>> {
        let m = self.matrix.ncols();
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let nz: Vec<usize> = (0..self.matrix.nrows())
                .filter(|&i| !self.matrix.get(i, j).is_zero())
                .collect();
            let [i] = nz[..] else { return None };
            let c = self.matrix.get(i, j);
            if !c.abs().is_one() {
                return None;
            }
            out.push((i, if c.is_negative() { -1 } else { 1 }));
        }
        Some(out)
    }

    /// Morphism data as JSON: `{source, target, matrix}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source.name(),
            "target": self.target.name(),
            "matrix": self.matrix.row_iter().map(|row| row.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl PartialEq for TypeMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
            && self.source.space() == other.source.space()
            && self.target.space() == other.target.space()
    }
}

impl fmt::Display for TypeMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(perm) = self.as_signed_permutation() {
            let parts: Vec<String> = perm
                .iter()
                .enumerate()
                .map(|(j, &(i, s))| {
                    format!(
                        "{}↦{}{}",
                        crate::typecore::labels::display_label(&self.source.generators()[j]),
                        if s < 0 { "-" } else { "" },
                        crate::typecore::labels::display_label(&self.target.generators()[i])
                    )
                })
                .collect();
            write!(f, "{}", parts.join(", "))
        } else {
            write!(f, "{}", self.matrix)
        }
    }
}

/// On an `n`-th power of a two-generator type, sends the generator with
/// coordinates `(d₀, …, dₙ₋₁)` to the one carrying `dᵢ xor flips[i]` at
/// position `perm[i]`. Whether this is an automorphism is left to
/// [`TypeMorphism::check_isomorphism`].
pub fn coordinate_map(
    t: Arc<TypePresentation>,
    perm: &[usize],
    flips: &[bool],
) -> Result<TypeMorphism, Error> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Morphism("coordinate map needs a permutation".into()));
        }
    }
    if flips.len() != n || t.dim() != 1 << n {
        return Err(Error::Morphism(format!(
            "coordinate map needs {} generators",
            1usize << n
        )));
    }
    let bit = |index: usize, pos: usize| (index >> (n - 1 - pos)) & 1;
    let mut f = Matrix::zeros(t.dim(), t.dim());
    for src in 0..t.dim() {
        let mut dst = 0;
        for i in 0..n {
            dst |= (bit(src, i) ^ flips[i] as usize) << (n - 1 - perm[i]);
        }
        f.set(dst, src, Rational::one());
    }
    TypeMorphism::new(t.clone(), t, f)
}

/// Closure of `gens` under composition, identity first, in discovery order.
pub fn generated_subgroup(
    t: &Arc<TypePresentation>,
    gens: &[TypeMorphism],
) -> Result<Vec<TypeMorphism>, Error> {
    let mut out = vec![TypeMorphism::identity(t.clone())];
    let mut seen: HashSet<Matrix<Rational>> = out.iter().map(|f| f.matrix.clone()).collect();
    let mut frontier = 0;
    while frontier < out.len() {
        for g in gens {
            let h = g.compose(&out[frontier])?;
            if seen.insert(h.matrix.clone()) {
                out.push(h);
            }
        }
        frontier += 1;
    }
    Ok(out)
}

/// Result of [`monomial_automorphisms`].
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    /// Sorted by `(image, sign)` data, identity first.
    pub elements: Vec<TypeMorphism>,
    pub closed_under_composition: bool,
    pub closed_under_inverse: bool,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, f: &TypeMorphism) -> bool {
        self.elements.iter().any(|g| g.matrix == f.matrix)
    }
}

pub const DEFAULT_MONOMIAL_GUARD: usize = 9;

/// Every monomial matrix with entries in `{1}` (or `{±1}` when `signed`)
/// that is an automorphism of `t`. Candidates are pruned by star
/// preservation before relations are tested.
pub fn monomial_automorphisms(
    t: &Arc<TypePresentation>,
    signed: bool,
    guard: usize,
) -> Result<AutomorphismGroup, Error> {
    let m = t.dim();
    if m > guard {
        return Err(Error::SearchGuard { m, guard });
    }
    t.ensure_valid()?;
    let signs: &[i8] = if signed { &[1, -1] } else { &[1] };
    // Allowed (image, sign) for each generator under star preservation.
    let options: Vec<Vec<(usize, i8)>> = (0..m)
        .map(|i| {
            let mut opts = Vec::new();
            for j in 0..m {
                for &s in signs {
                    let ok = match t.star() {
                        Some(star) => {
                            let si = &star[i];
                            if s > 0 {
                                *si == star[j]
                            } else {
                                -si.clone() == star[j]
                            }
                        }
                        None => true,
                    };
                    if ok {
                        opts.push((j, s));
                    }
                }
            }
            opts
        })
        .collect();

    let relations: Vec<Vec<(usize, usize, usize, Rational)>> = t
        .relations()
        .iter()
        .map(|r| sparse_relation(r, m))
        .collect();

    let mut found: Vec<Vec<(usize, i8)>> = options[0]
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let mut used = vec![false; m];
            used[first.0] = true;
            let mut current = vec![first];
            search(t, &options, &relations, &mut used, &mut current, &mut out);
            out
        })
        .collect();
    found.sort();

    let elements = found
        .iter()
        .map(|perm| signed_permutation_matrix(perm))
        .map(|f| TypeMorphism::new(t.clone(), t.clone(), f))
        .collect::<Result<Vec<_>, _>>()?;
    for f in &elements {
        if !f.check_isomorphism()? {
            return Err(Error::Internal(
                "monomial candidate failed the isomorphism check".into(),
            ));
        }
    }

    let set: HashSet<&Vec<(usize, i8)>> = found.iter().collect();
    let closed_under_composition = found
        .par_iter()
        .all(|a| found.iter().all(|b| set.contains(&compose_perm(a, b))));
    let closed_under_inverse = found.iter().all(|a| set.contains(&invert_perm(a)));
    Ok(AutomorphismGroup {
        elements,
        closed_under_composition,
        closed_under_inverse,
    })
}

fn sparse_relation(r: &RelationElement, m: usize) -> Vec<(usize, usize, usize, Rational)> {
    let mut out = Vec::new();
    for (side, mat) in [(0, &r.left), (1, &r.right)] {
        for i in 0..m {
            for j in 0..m {
                let c = mat.get(i, j);
                if !c.is_zero() {
                    out.push((side, i, j, c.clone()));
                }
            }
        }
    }
    out
}

fn search(
    t: &TypePresentation,
    options: &[Vec<(usize, i8)>],
    relations: &[Vec<(usize, usize, usize, Rational)>],
    used: &mut [bool],
    current: &mut Vec<(usize, i8)>,
    out: &mut Vec<Vec<(usize, i8)>>,
) {
    let m = options.len();
    if current.len() == m {
        if preserves_relations(t, current, relations) {
            out.push(current.clone());
        }
        return;
    }
    for &(j, s) in &options[current.len()] {
        if used[j] {
            continue;
        }
        used[j] = true;
        current.push((j, s));
        search(t, options, relations, used, current, out);
        current.pop();
        used[j] = false;
    }
}

fn preserves_relations(
    t: &TypePresentation,
    perm: &[(usize, i8)],
    relations: &[Vec<(usize, usize, usize, Rational)>],
) -> bool {
    let m = perm.len();
    let mut v = vec![Rational::zero(); 2 * m * m];
    for r in relations {
        v.iter_mut().for_each(|x| *x = Rational::zero());
        for (side, i, j, c) in r {
            let (pi, si) = perm[*i];
            let (pj, sj) = perm[*j];
            let idx = side * m * m + pi * m + pj;
            v[idx] = if si * sj > 0 { c.clone() } else { -c.clone() };
        }
        if !t.space().contains(&v).expect("ambient length") {
            return false;
        }
    }
    true
}

fn signed_permutation_matrix(perm: &[(usize, i8)]) -> Matrix<Rational> {
    let m = perm.len();
    let mut f = Matrix::zeros(m, m);
    for (j, &(i, s)) in perm.iter().enumerate() {
        f.set(
            i,
            j,
            if s > 0 {
                Rational::one()
            } else {
                -Rational::one()
            },
        );
    }
    f
}

/// `a ∘ b` on signed permutation data.
fn compose_perm(a: &[(usize, i8)], b: &[(usize, i8)]) -> Vec<(usize, i8)> {
    b.iter().map(|&(i, s)| (a[i].0, a[i].1 * s)).collect()
}

fn invert_perm(a: &[(usize, i8)]) -> Vec<(usize, i8)> {
    let mut out = vec![(0, 1); a.len()];
    for (j, &(i, s)) in a.iter().enumerate() {
        out[i] = (j, s);
    }
    out
}
