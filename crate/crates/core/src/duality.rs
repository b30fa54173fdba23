//! Dual types under the signed pairing
//! `⟨(α,β),(γ,δ)⟩ = ⟨α,γ⟩ − ⟨β,δ⟩`, where dual basis vectors are
//! identified coordinate-wise.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::exactalg::{AlgError, Matrix, Rational};
use crate::products::{maltese, square};
use crate::typecore::{labels, RelationElement, TypePresentation};
use crate::Error;

/// Signed pairing of a relation element with a dual-coordinate element.
pub fn pair2(u: &RelationElement, v: &RelationElement) -> Result<Rational, Error> {
    if u.dim() != v.dim() {
        return Err(AlgError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        }
        .into());
    }
    let m = u.dim();
    let mut acc = Rational::zero();
    for i in 0..m {
        for j in 0..m {
            acc += u.left.get(i, j) * v.left.get(i, j);
            acc -= u.right.get(i, j) * v.right.get(i, j);
        }
    }
    Ok(acc)
}

/// Name of the dual basis vector of `label`.
pub fn dual_label(label: &str) -> String {
    let comps = labels::tuple_components(label);
    if comps.len() > 1 {
        return format!("({})", comps.iter().map(|c| dual_label(c)).join("|"));
    }
    match label {
        "lt" => "lv".into(),
        "gt" => "rv".into(),
        "cir" => "perp".into(),
        "bul" => "cir".into(),
        "lv" => "lt".into(),
        "rv" => "gt".into(),
        "perp" => "cir".into(),
        other => match other.strip_suffix('^') {
            Some(base) => base.to_string(),
            None => format!("{other}^"),
        },
    }
}

/// Default coefficient bound of [`find_star`].
pub const STAR_SEARCH_BOUND: i64 = 1;

/// Candidate vectors with entries in `[-bound, bound]`, ordered by number
/// of nonzero entries, then by support (lexicographic), then by values
/// with positive before negative.
fn star_candidates(m: usize, bound: i64) -> impl Iterator<Item = Vec<Rational>> {
    let values: Vec<i64> = (1..=bound).chain((1..=bound).map(|v| -v)).collect();
    (1..=m).flat_map(move |k| {
        let values = values.clone();
        (0..m).combinations(k).flat_map(move |support| {
            let support = support.clone();
            std::iter::repeat_n(values.clone(), k)
                .multi_cartesian_product()
                .map(move |vals| {
                    let mut v = vec![Rational::zero(); m];
                    for (&p, &x) in support.iter().zip(&vals) {
                        v[p] = Rational::from_integer(x.into());
                    }
                    v
                })
        })
    })
}

fn is_associative(t: &TypePresentation, s: &[Rational]) -> bool {
    t.space()
        .contains(&RelationElement::associativity(s).flatten())
        .expect("star length")
}

/// All nonzero `s` with entries in `[-bound, bound]` whose associativity
/// relation lies in `R`, in candidate order.
pub fn find_star(t: &TypePresentation, bound: i64) -> Vec<Vec<Rational>> {
    star_candidates(t.dim(), bound)
        .filter(|s| is_associative(t, s))
        .collect()
}

/// First associative candidate in [`find_star`] order.
pub fn first_star(t: &TypePresentation, bound: i64) -> Option<Vec<Rational>> {
    star_candidates(t.dim(), bound).find(|s| is_associative(t, s))
}

/// `t! = (Ω̌, R^⊥)`. The annihilator is the kernel of the matrix whose
/// rows are the flattened basis relations with the `R` block negated. The
/// star is the first associative candidate of the bounded search, or none.
pub fn dual(t: &TypePresentation) -> Result<TypePresentation, Error> {
    t.ensure_valid()?;
    let m = t.dim();
    let n = 2 * m * m;
    let rows: Vec<Vec<Rational>> = t
        .relations()
        .iter()
        .map(|r| {
            let mut v = r.flatten();
            v[m * m..].iter_mut().for_each(|x| *x = -x.clone());
            v
        })
        .collect();
    let kernel = Matrix::from_rows(n, rows)?.nullspace();
    let relations = kernel
        .basis()
        .row_iter()
        .map(|row| RelationElement::from_flat(m, row))
        .collect::<Result<Vec<_>, _>>()?;
    let generators = t.generators().iter().map(|g| dual_label(g)).collect();
    let unstarred = TypePresentation::new(
        format!("{}!", t.name()),
        generators,
        None,
        relations,
        vec![],
    )?;
    let star = first_star(&unstarred, STAR_SEARCH_BOUND);
    unstarred.with_star(star)
}

/// `(t!)! = t`, comparing relation spaces positionally.
pub fn double_dual_check(t: &TypePresentation) -> Result<bool, Error> {
    let dd = dual(&dual(t)?)?;
    Ok(dd.space().equal(t.space())?)
}

/// `(a ⊗ b, c ⊗ d)` by generator labels.
pub fn elementary_pair(
    t: &TypePresentation,
    left: (&str, &str),
    right: (&str, &str),
) -> Result<RelationElement, Error> {
    let idx = |l: &str| {
        t.generator_index(l)
            .ok_or_else(|| Error::Structure(format!("no generator `{l}` in `{}`", t.name())))
    };
    let mut e = RelationElement::zero(t.dim());
    e.left.set(idx(left.0)?, idx(left.1)?, Rational::one());
    e.right.set(idx(right.0)?, idx(right.1)?, Rational::one());
    Ok(e)
}

/// Evidence that the dual of a square product is not the maltese product
/// of the duals, for two dendriform factors.
#[derive(Clone, Debug)]
pub struct NonDualityReport {
    pub aq_dim: usize,
    pub maltese_dim: usize,
    /// Whether `M.R ⊆ AQ.R`; the claim is that it is false.
    pub inclusion_holds: bool,
    pub witness: RelationElement,
    pub witness_in_maltese: bool,
    pub witness_in_aq: bool,
    pub partner: RelationElement,
    pub partner_in_square: bool,
    /// `⟨partner, witness⟩`.
    pub pairing: Rational,
    /// Whether `((⊢|⊢)⊗(⊣|⊣), (⊢|⊢)⊗(⊣|⊣))` annihilates every basis
    /// relation of the square; recorded, not asserted.
    pub diagonal_annihilates_square: bool,
    pub labels: Vec<String>,
}

impl NonDualityReport {
    pub fn confirmed(&self) -> bool {
        !self.inclusion_holds
            && self.witness_in_maltese
            && !self.witness_in_aq
            && self.partner_in_square
            && self.pairing == -Rational::one()
    }
}

impl fmt::Display for NonDualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: &RelationElement| describe_element(e, &self.labels);
        writeln!(
            f,
            "dim AQ.R = {}, dim (AD ✠ AD).R = {}",
            self.aq_dim, self.maltese_dim
        )?;
        writeln!(f, "(AD ✠ AD).R ⊆ AQ.R: {}", self.inclusion_holds)?;
        writeln!(
            f,
            "witness w = {} (in AD ✠ AD: {}, in AQ: {})",
            show(&self.witness),
            self.witness_in_maltese,
            self.witness_in_aq
        )?;
        writeln!(
            f,
            "partner q = {} (in Q: {})",
            show(&self.partner),
            self.partner_in_square
        )?;
        writeln!(f, "⟨q, w⟩ = {}", self.pairing)?;
        write!(
            f,
            "diagonal element annihilates Q: {}",
            self.diagonal_annihilates_square
        )
    }
}

/// Renders a relation element as `(Σ c a⊗b, Σ c a⊗b)` with display labels.
pub fn describe_element(e: &RelationElement, names: &[String]) -> String {
    let side = |mat: &Matrix<Rational>| {
        let m = names.len();
        let mut parts = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let c = mat.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let term = format!(
                    "{}⊗{}",
                    labels::display_label(&names[i]),
                    labels::display_label(&names[j])
                );
                parts.push(if c.is_one() {
                    term
                } else {
                    format!("{c}·{term}")
                });
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    };
    format!("({}, {})", side(&e.left), side(&e.right))
}

/// Builds `AQ = (D □ D)!` and `M = D! ✠ D!` and exhibits
/// `w = ((⊢|⊢)⊗(⊣|⊢), (⊢|⊢)⊗(⊣|⊣)) ∈ M` pairing to `−1` with
/// `q = ((≻|≻)⊗(≺|≺), (≻|≻)⊗(≺|≺)) ∈ R_Q`.
pub fn non_duality_witness(dendriform: &TypePresentation) -> Result<NonDualityReport, Error> {
    let q_type = square(dendriform, dendriform)?;
    let aq = dual(&q_type)?;
    let ad = dual(dendriform)?;
    let m = maltese(&ad, &ad)?;
    if aq.generators() != m.generators() {
        return Err(Error::Internal(
            "dual labels of the square and maltese products differ".into(),
        ));
    }
    let inclusion_holds = m.space().leq(aq.space())?;
    let witness = elementary_pair(&m, ("(rv|rv)", "(lv|rv)"), ("(rv|rv)", "(lv|lv)"))?;
    let partner = elementary_pair(&q_type, ("(gt|gt)", "(lt|lt)"), ("(gt|gt)", "(lt|lt)"))?;
    let diagonal = elementary_pair(&m, ("(rv|rv)", "(lv|lv)"), ("(rv|rv)", "(lv|lv)"))?;
    let mut diagonal_annihilates_square = true;
    for r in q_type.relations() {
        if !pair2(r, &diagonal)?.is_zero() {
            diagonal_annihilates_square = false;
        }
    }
    let report = NonDualityReport {
        aq_dim: aq.space().dim(),
        maltese_dim: m.space().dim(),
        inclusion_holds,
        witness_in_maltese: m.space().contains(&witness.flatten())?,
        witness_in_aq: aq.space().contains(&witness.flatten())?,
        partner_in_square: q_type.space().contains(&partner.flatten())?,
        pairing: pair2(&partner, &witness)?,
        witness,
        partner,
        diagonal_annihilates_square,
        labels: m.generators().to_vec(),
    };
    if report.inclusion_holds {
        return Err(Error::Internal(
            "maltese product of duals is contained in the dual of the square".into(),
        ));
    }
    Ok(report)
}
