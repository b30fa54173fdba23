//! Square and maltese products, powers, the transpose isomorphism and the
//! symbolic tensor-model check.
//!
//! Product generators are the pairs `(a|b)` in lexicographic order, so
//! `(i₁, i₂)` sits at index `i₁·m₂ + i₂`. For relation elements
//! `f₁ ⊠ f₂` has `L[(i₁,i₂),(j₁,j₂)] = f₁.L[i₁,j₁]·f₂.L[i₂,j₂]`, likewise
//! for `R`; mixed `L`/`R` terms do not occur.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exactalg::{modular, Matrix, Rational, SparseEchelon, Subspace};
use crate::morphisms::TypeMorphism;
use crate::typecore::{flat_index, labels, RelationElement, Side, TypePresentation};
use crate::Error;

fn kron(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let (ra, ca, rb, cb) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    let mut k = Matrix::zeros(ra * rb, ca * cb);
    for i1 in 0..ra {
        for j1 in 0..ca {
            let x = a.get(i1, j1);
            if x.is_zero() {
                continue;
            }
            for i2 in 0..rb {
                for j2 in 0..cb {
                    let y = b.get(i2, j2);
                    if !y.is_zero() {
                        k.set(i1 * rb + i2, j1 * cb + j2, x * y);
                    }
                }
            }
        }
    }
    k
}

/// `f₁ ⊠ f₂`.
pub fn boxtimes(f1: &RelationElement, f2: &RelationElement) -> RelationElement {
    RelationElement {
        left: kron(&f1.left, &f2.left),
        right: kron(&f1.right, &f2.right),
    }
}

fn product_star(t1: &TypePresentation, t2: &TypePresentation) -> Option<Vec<Rational>> {
    let (s1, s2) = (t1.star()?, t2.star()?);
    Some(
        s1.iter()
            .flat_map(|a| s2.iter().map(move |b| a * b))
            .collect(),
    )
}

fn product_labels(t1: &TypePresentation, t2: &TypePresentation) -> Vec<String> {
    t1.generators()
        .iter()
        .flat_map(|a| {
            t2.generators()
                .iter()
                .map(move |b| labels::tuple_label(a, b))
        })
        .collect()
}

fn product_name(op: &str, t1: &TypePresentation, t2: &TypePresentation) -> String {
    format!("{} {op} {}", t1.name(), t2.name())
}

/// `t₁ □ t₂` with relation basis `{f₁ ⊠ f₂}` over basis pairs, minus any
/// product dependent on earlier ones.
pub fn square(t1: &TypePresentation, t2: &TypePresentation) -> Result<TypePresentation, Error> {
    t1.ensure_valid()?;
    t2.ensure_valid()?;
    // f₁ ⊠ f₂ vanishes when f₁ lies on one side only and f₂ on the other,
    // so the products can be dependent; keep the first independent ones.
    let mut ech = SparseEchelon::<usize, Rational>::new();
    let mut relations = Vec::new();
    for f1 in t1.relations() {
        for f2 in t2.relations() {
            let f = boxtimes(f1, f2);
            let before = ech.rank();
            ech.insert(sparse_flat(&f));
            if ech.rank() > before {
                relations.push(f);
            }
        }
    }
    let t = TypePresentation::new(
        product_name("□", t1, t2),
        product_labels(t1, t2),
        product_star(t1, t2),
        relations,
        Vec::new(),
    )?;
    let report = t.validate();
    if !report.valid() {
        return Err(Error::Internal(format!(
            "square product failed validation\n{report}"
        )));
    }
    Ok(t)
}

fn elementary_relations(m: usize) -> Vec<RelationElement> {
    let mut out = Vec::with_capacity(2 * m * m);
    for side in [Side::Left, Side::Right] {
        for i in 0..m {
            for j in 0..m {
                let mut e = RelationElement::zero(m);
                let mat = match side {
                    Side::Left => &mut e.left,
                    Side::Right => &mut e.right,
                };
                mat.set(i, j, Rational::one());
                out.push(e);
            }
        }
    }
    out
}

/// `t₁ ✠ t₂`: span of `f₁ ⊠ g` and `g ⊠ f₂` with `g` running over a basis of
/// the whole space on the other side; the row-reduced span is the basis.
pub fn maltese(t1: &TypePresentation, t2: &TypePresentation) -> Result<TypePresentation, Error> {
    t1.ensure_valid()?;
    t2.ensure_valid()?;
    let m = t1.dim() * t2.dim();
    let mut spanning = Vec::new();
    for f1 in t1.relations() {
        for g2 in elementary_relations(t2.dim()) {
            spanning.push(boxtimes(f1, &g2).flatten());
        }
    }
    for g1 in elementary_relations(t1.dim()) {
        for f2 in t2.relations() {
            spanning.push(boxtimes(&g1, f2).flatten());
        }
    }
    let span = Subspace::from_vectors(2 * m * m, spanning)?;
    let relations = span
        .basis()
        .row_iter()
        .map(|row| RelationElement::from_flat(m, row))
        .collect::<Result<Vec<_>, _>>()?;
    TypePresentation::new(
        product_name("✠", t1, t2),
        product_labels(t1, t2),
        product_star(t1, t2),
        relations,
        Vec::new(),
    )
}

/// Left-associated `t □ t □ … □ t` with `n` factors.
pub fn power(t: &TypePresentation, n: usize) -> Result<TypePresentation, Error> {
    if n < 1 {
        return Err(Error::BadExponent);
    }
    t.ensure_valid()?;
    let mut acc = t.clone();
    for _ in 1..n {
        acc = square(&acc, t)?;
    }
    if n > 1 {
        acc = acc.with_name(format!("{}^{n}", t.name()));
    }
    Ok(acc)
}

/// `(a|b) ↦ (b|a)` from `t₁ □ t₂` to `t₂ □ t₁`.
pub fn transpose_swap(t1: &TypePresentation, t2: &TypePresentation) -> Result<TypeMorphism, Error> {
    let source = Arc::new(square(t1, t2)?);
    let target = Arc::new(square(t2, t1)?);
    let (m1, m2) = (t1.dim(), t2.dim());
    let mut f = Matrix::zeros(m1 * m2, m1 * m2);
    for i1 in 0..m1 {
        for i2 in 0..m2 {
            f.set(i2 * m1 + i1, i1 * m2 + i2, Rational::one());
        }
    }
    TypeMorphism::new(source, target, f)
}

/// Rank of the square relations of `t₁ □ t₂` and star associativity,
/// computed without building the product presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCheck {
    pub relation_count: usize,
    pub rank: usize,
    /// `None` when a factor carries no star.
    pub star_associative: Option<bool>,
}

impl SquareCheck {
    pub fn independent(&self) -> bool {
        self.rank == self.relation_count
    }
}

fn sparse_flat(r: &RelationElement) -> BTreeMap<usize, Rational> {
    let m = r.dim();
    let mut out = BTreeMap::new();
    for (side, mat) in [(Side::Left, &r.left), (Side::Right, &r.right)] {
        for i in 0..m {
            for j in 0..m {
                let c = mat.get(i, j);
                if !c.is_zero() {
                    out.insert(flat_index(m, side, i, j), c.clone());
                }
            }
        }
    }
    out
}

fn sparse_boxtimes(
    f1: &BTreeMap<usize, Rational>,
    m1: usize,
    f2: &BTreeMap<usize, Rational>,
    m2: usize,
) -> BTreeMap<usize, Rational> {
    let m = m1 * m2;
    let split = |k: usize, n: usize| {
        if k < n * n {
            (Side::Left, k / n, k % n)
        } else {
            (Side::Right, (k - n * n) / n, k % n)
        }
    };
    let mut out = BTreeMap::new();
    for (k1, c1) in f1 {
        let (s1, i1, j1) = split(*k1, m1);
        for (k2, c2) in f2 {
            let (s2, i2, j2) = split(*k2, m2);
            if s1 == s2 {
                out.insert(flat_index(m, s1, i1 * m2 + i2, j1 * m2 + j2), c1 * c2);
            }
        }
    }
    out
}

fn star_coordinates(t: &TypePresentation) -> Option<BTreeMap<usize, Rational>> {
    let mut ech = SparseEchelon::new();
    for r in t.relations() {
        ech.insert(sparse_flat(r));
    }
    ech.solve(&sparse_flat(&RelationElement::associativity(t.star()?)))
}

/// Independence of `{f₁ ⊠ f₂}` and associativity of `s₁ ⊗ s₂` for
/// `t₁ □ t₂`.
///
/// Independence is decided by rank modulo a large prime; full rank there is
/// full rank over `Q`, and only a deficient answer falls back to exact
/// elimination. Associativity comes from coordinates `c`, `d` of each
/// factor's star associativity, with `Σ cᵢdⱼ fᵢ ⊠ gⱼ` compared exactly to
/// the product's.
pub fn square_check(t1: &TypePresentation, t2: &TypePresentation) -> Result<SquareCheck, Error> {
    t1.ensure_valid()?;
    t2.ensure_valid()?;
    let (m1, m2) = (t1.dim(), t2.dim());
    let r1: Vec<_> = t1.relations().iter().map(sparse_flat).collect();
    let r2: Vec<_> = t2.relations().iter().map(sparse_flat).collect();
    let vectors: Vec<_> = r1
        .iter()
        .flat_map(|a| r2.iter().map(move |b| sparse_boxtimes(a, m1, b, m2)))
        .collect();
    let count = vectors.len();
    let rank = match modular::rank_mod_p(&vectors) {
        Some(r) if r == count => r,
        _ => {
            let mut ech = SparseEchelon::<usize, Rational>::new();
            for v in vectors {
                ech.insert(v);
            }
            ech.rank()
        }
    };
    let star_associative = match product_star(t1, t2) {
        None => None,
        Some(s) => {
            let assoc = match (star_coordinates(t1), star_coordinates(t2)) {
                (Some(c), Some(d)) => {
                    let mut sum: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (i, ci) in &c {
                        for (j, dj) in &d {
                            for (k, e) in sparse_boxtimes(&r1[*i], m1, &r2[*j], m2) {
                                *sum.entry(k).or_insert_with(Rational::zero) += ci * dj * e;
                            }
                        }
                    }
                    sum.retain(|_, c| !c.is_zero());
                    sum == sparse_flat(&RelationElement::associativity(&s))
                }
                _ => false,
            };
            Some(assoc)
        }
    };
    Ok(SquareCheck {
        relation_count: count,
        rank,
        star_associative,
    })
}

/// A formal product `(x a y) b z` (left) or `x a (y b z)` (right) in one
/// factor, by generator indices.
pub type Monomial = (Side, usize, usize);

/// Formal expansion of one side of a relation into monomials.
pub type Expansion<K> = BTreeMap<K, Rational>;

fn side_expansion(r: &RelationElement, side: Side) -> Expansion<Monomial> {
    let mat = match side {
        Side::Left => &r.left,
        Side::Right => &r.right,
    };
    let m = r.dim();
    let mut out = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            let c = mat.get(i, j);
            if !c.is_zero() {
                out.insert((side, i, j), c.clone());
            }
        }
    }
    out
}

fn outer(a: &Expansion<Monomial>, b: &Expansion<Monomial>) -> Expansion<(Monomial, Monomial)> {
    let mut out = BTreeMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            out.insert((*ka, *kb), ca * cb);
        }
    }
    out
}

/// Per-relation outcome of [`verify_tensor_model`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModelReport {
    pub product: String,
    /// One flag per pair of factor relations, in lexicographic order.
    pub relations: Vec<bool>,
}

impl TensorModelReport {
    pub fn holds(&self) -> bool {
        self.relations.iter().all(|&b| b)
    }
}

/// Splits product label components between the factors.
fn factor_indices(
    label: &str,
    t1: &TypePresentation,
    t2: &TypePresentation,
) -> Option<(usize, usize)> {
    let comps = labels::tuple_components(label);
    let k1 = labels::tuple_components(&t1.generators()[0]).len();
    if comps.len() != k1 + labels::tuple_components(&t2.generators()[0]).len() {
        return None;
    }
    let join = |parts: &[&str]| {
        if parts.len() == 1 {
            parts[0].to_string()
        } else {
            format!("({})", parts.join("|"))
        }
    };
    let a = t1.generator_index(&join(&comps[..k1]))?;
    let b = t2.generator_index(&join(&comps[k1..]))?;
    Some((a, b))
}

/// Evaluates every basis relation of `t₁ □ t₂` on elementary tensors
/// `x₁⊗x₂, y₁⊗y₂, z₁⊗z₂` with `(a|b)` acting componentwise, and checks that
/// each side factors as the tensor product of the corresponding sides of
/// relations of `t₁` and `t₂`. Then the identity holds in `D₁ ⊗ D₂`
/// whenever it holds in each factor.
pub fn verify_tensor_model(
    t1: &TypePresentation,
    t2: &TypePresentation,
) -> Result<TensorModelReport, Error> {
    let product = square(t1, t2)?;
    let m = product.dim();
    let decode: Vec<(usize, usize)> = product
        .generators()
        .iter()
        .map(|g| factor_indices(g, t1, t2))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("product labels do not decode".into()))?;
    let pairs = t1
        .relations()
        .iter()
        .flat_map(|f1| t2.relations().iter().map(move |f2| (f1, f2)));
    let mut flags = Vec::new();
    for (f1, f2) in pairs {
        let r = &boxtimes(f1, f2);
        let factors_hold =
            t1.space().contains(&f1.flatten())? && t2.space().contains(&f2.flatten())?;
        let mut ok = factors_hold;
        for side in [Side::Left, Side::Right] {
            let mat = match side {
                Side::Left => &r.left,
                Side::Right => &r.right,
            };
            let mut expansion: Expansion<(Monomial, Monomial)> = BTreeMap::new();
            for p in 0..m {
                for q in 0..m {
                    let c = mat.get(p, q);
                    if c.is_zero() {
                        continue;
                    }
                    let ((a1, a2), (b1, b2)) = (decode[p], decode[q]);
                    *expansion
                        .entry(((side, a1, b1), (side, a2, b2)))
                        .or_insert_with(Rational::zero) += c;
                }
            }
            expansion.retain(|_, c| !c.is_zero());
            let expected = outer(&side_expansion(f1, side), &side_expansion(f2, side));
            ok &= expansion == expected;
        }
        flags.push(ok);
    }
    Ok(TensorModelReport {
        product: product.name().to_string(),
        relations: flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_type;

    fn assoc() -> TypePresentation {
        parse_type("type assoc { generators: dot; star: dot; relations: (dot.dot | dot.dot) }")
            .unwrap()
    }

    fn dend() -> TypePresentation {
        parse_type("type dend { generators: lt, gt; star: lt+gt; relations: (lt.lt | lt.lt + lt.gt) (gt.lt | gt.lt) (lt.gt + gt.gt | gt.gt) }").unwrap()
    }

    #[test]
    fn square_counts() {
        let q = square(&dend(), &dend()).unwrap();
        assert_eq!(q.dim(), 4);
        assert_eq!(q.relations().len(), 9);
        assert_eq!(q.generators()[1], "(lt|gt)");
    }

    #[test]
    fn associative_factor_is_neutral() {
        let d = dend();
        let p = square(&assoc(), &d).unwrap();
        assert_eq!(p.space(), d.space());
        assert_eq!(p.generators()[0], "(dot|lt)");
    }

    #[test]
    fn maltese_contains_square() {
        let d = dend();
        assert!(square(&d, &d)
            .unwrap()
            .space()
            .leq(maltese(&d, &d).unwrap().space())
            .unwrap());
        // With m = 1 the cross already contains (dot.dot | 0), so the
        // product is the whole two-dimensional space.
        let a = assoc();
        let ma = maltese(&a, &a).unwrap();
        assert_eq!(ma.space(), &Subspace::full(2));
        assert!(ma.is_valid());
    }

    #[test]
    fn powers() {
        let d = dend();
        assert_eq!(power(&d, 1).unwrap(), d);
        let cube = power(&d, 3).unwrap();
        assert_eq!((cube.dim(), cube.relations().len()), (8, 27));
        assert_eq!(cube.generators()[1], "(lt|lt|gt)");
        assert!(matches!(power(&d, 0), Err(Error::BadExponent)));
    }

    #[test]
    fn swap_is_an_isomorphism() {
        let d = dend();
        let swap = transpose_swap(&d, &d).unwrap();
        assert!(swap.check_isomorphism().unwrap());
        let back = transpose_swap(&d, &d).unwrap();
        assert_eq!(swap.compose(&back).unwrap().matrix(), &Matrix::identity(4));
    }

    #[test]
    fn tensor_model_dendriform() {
        assert!(verify_tensor_model(&dend(), &dend()).unwrap().holds());
    }

    #[test]
    fn square_check_agrees_with_construction() {
        let d = dend();
        let sq = square(&d, &d).unwrap();
        let c = square_check(&d, &d).unwrap();
        assert_eq!(
            (c.relation_count, c.rank),
            (sq.relations().len(), sq.space().dim())
        );
        assert_eq!(c.star_associative, Some(true));
        assert_eq!(c.star_associative, sq.validate().star_associative);
    }
}
