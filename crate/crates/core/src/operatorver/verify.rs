use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::normalize::{is_normal, Law, Limits, Normalizer, Weight};
use super::term::{add_scaled, add_term, difference, render_lincomb, Lincomb, Term, Word};
use crate::catalog;
use crate::exactalg::{RatFunc, Rational, SparseEchelon};
use crate::products::square;
use crate::typecore::{RelationElement, TypePresentation};
use crate::Error;

/// Derived operations `x (ω|τ) y` built from one operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// `(ω|≺) = x ω P(y)`, `(ω|≻) = P(x) ω y`, `(ω|∘) = w·(x ω y)`.
    Trialgebra,
    /// `(ω|≺) = x ω P(y)`, `(ω|≻) = P(x) ω y`.
    Dendriform,
    /// `(ω|≺) = x ω N(y)`, `(ω|≻) = N(x) ω y`, `(ω|•) = −N(x ω y)`.
    Ns,
    /// `(ω|★) = x ω P(y)`, `(ω|≻) = P(x) ω y`.
    Dipterous,
    /// `(ω|≺) = x ω P(y)`, `(ω|★) = P(x) ω y`.
    AntiDipterous,
    /// `(ω|≺) = x ω P(y)`, `(ω|≻) = −P̃(x) ω y = w·(x ω y) + P(x) ω y`.
    TildeDendriform,
}

impl Table {
    /// Catalog type whose generators index the table.
    pub fn factor(&self) -> &'static str {
        match self {
            Table::Trialgebra => "trialgebra",
            Table::Dendriform | Table::TildeDendriform => "dendriform",
            Table::Ns => "ns",
            Table::Dipterous => "dipterous",
            Table::AntiDipterous => "anti_dipterous",
        }
    }
}

/// An operator: its rewrite law and the operations derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    pub law: Law,
    pub table: Table,
}

impl OperatorSpec {
    pub fn rb(weight: Weight) -> Self {
        OperatorSpec {
            law: Law::RotaBaxter(weight),
            table: Table::Trialgebra,
        }
    }

    /// Weight zero, producing dendriform operations.
    pub fn rb0() -> Self {
        OperatorSpec {
            law: Law::RotaBaxter(Weight::Value(Rational::zero())),
            table: Table::Dendriform,
        }
    }

    pub fn nijenhuis() -> Self {
        OperatorSpec {
            law: Law::Nijenhuis,
            table: Table::Ns,
        }
    }

    pub fn left_rb() -> Self {
        OperatorSpec {
            law: Law::LeftRotaBaxter,
            table: Table::Dipterous,
        }
    }

    pub fn right_rb() -> Self {
        OperatorSpec {
            law: Law::RightRotaBaxter,
            table: Table::AntiDipterous,
        }
    }

    /// Rota-Baxter operator used through `−P̃ = w·id + P`.
    pub fn tilde_rb(weight: Weight) -> Self {
        OperatorSpec {
            law: Law::RotaBaxter(weight),
            table: Table::TildeDendriform,
        }
    }

    /// Parses `rb`, `rb0`, `nijenhuis`, `leftrb`, `rightrb` (underscores
    /// allowed). `weight` applies to `rb` only.
    pub fn parse(name: &str, weight: Option<&str>) -> Result<Self, Error> {
        let weight = match weight {
            None | Some("formal") | Some("lambda") | Some("λ") => Weight::Formal,
            Some(w) => Weight::Value(crate::exactalg::parse_rational(w).map_err(|_| {
                Error::Usage(format!(
                    "bad weight `{w}` (expected formal or a rational p/q)"
                ))
            })?),
        };
        match name.replace('_', "").as_str() {
            "rb" => Ok(Self::rb(weight)),
            "rb0" => Ok(Self::rb0()),
            "nijenhuis" => Ok(Self::nijenhuis()),
            "leftrb" => Ok(Self::left_rb()),
            "rightrb" => Ok(Self::right_rb()),
            "tilderb" => Ok(Self::tilde_rb(weight)),
            other => Err(Error::Usage(format!(
                "unknown law `{other}` (expected rb, rb0, nijenhuis, leftrb, rightrb or tilderb)"
            ))),
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.law, self.table) {
            (Law::RotaBaxter(_), Table::Dendriform) => f.write_str("rota-baxter(weight 0)"),
            (law, Table::TildeDendriform) => write!(f, "{law} via −P̃"),
            (law, _) => write!(f, "{law}"),
        }
    }
}

/// One step of a derived operation: `coef · node(word, u, v)` pending.
#[derive(Clone)]
struct Pending {
    coef: RatFunc,
    word: Word,
    u: Term,
    v: Term,
}

fn apply_table(
    spec: &OperatorSpec,
    op: usize,
    label: &str,
    p: Pending,
) -> Result<Vec<Pending>, Error> {
    let weight = || match &spec.law {
        Law::RotaBaxter(w) => w.scalar(),
        _ => RatFunc::one(),
    };
    let right_wrapped = || Pending {
        v: p.v.wrap(op),
        ..p.clone()
    };
    let left_wrapped = || Pending {
        u: p.u.wrap(op),
        ..p.clone()
    };
    let scaled = |c: RatFunc| Pending {
        coef: p.coef.clone() * &c,
        ..p.clone()
    };
    let out = match (spec.table, label) {
        (Table::Trialgebra, "lt") | (Table::Dendriform, "lt") | (Table::TildeDendriform, "lt") => {
            vec![right_wrapped()]
        }
        (Table::Trialgebra, "gt") | (Table::Dendriform, "gt") => vec![left_wrapped()],
        (Table::Trialgebra, "cir") => vec![scaled(weight())],
        (Table::TildeDendriform, "gt") => vec![scaled(weight()), left_wrapped()],
        (Table::Ns, "lt") => vec![right_wrapped()],
        (Table::Ns, "gt") => vec![left_wrapped()],
        (Table::Ns, "bul") => vec![Pending {
            coef: -p.coef.clone(),
            word: p.word.plus(op, 1),
            ..p.clone()
        }],
        (Table::Dipterous, "st") => vec![right_wrapped()],
        (Table::Dipterous, "gt") => vec![left_wrapped()],
        (Table::AntiDipterous, "lt") => vec![right_wrapped()],
        (Table::AntiDipterous, "st") => vec![left_wrapped()],
        _ => {
            return Err(Error::Structure(format!(
                "operation `{label}` of `{}` has no derived form",
                spec.table.factor()
            )))
        }
    };
    Ok(out.into_iter().filter(|p| !p.coef.is_zero()).collect())
}

/// The product `((t □ X₁) □ X₂) …` together with everything needed to
/// evaluate its operations through operators on a `t`-algebra.
pub struct Construction {
    base: TypePresentation,
    specs: Vec<OperatorSpec>,
    factors: Vec<TypePresentation>,
    product: TypePresentation,
    op_names: Vec<String>,
    limits: Limits,
}

impl Construction {
    pub fn new(
        base: &TypePresentation,
        specs: &[OperatorSpec],
        limits: Limits,
    ) -> Result<Self, Error> {
        base.ensure_valid()?;
        if specs.is_empty() || specs.len() > 3 {
            return Err(Error::Structure(
                "between one and three commuting operators are supported".into(),
            ));
        }
        let factors = specs
            .iter()
            .map(|s| catalog::get(s.table.factor()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut product = base.clone();
        for f in &factors {
            product = square(&product, f)?;
        }
        let op_names = if specs.len() == 1 {
            vec![specs[0].law.symbol().to_string()]
        } else {
            specs
                .iter()
                .enumerate()
                .map(|(i, s)| format!("{}{}", s.law.symbol(), i + 1))
                .collect()
        };
        Ok(Construction {
            base: base.clone(),
            specs: specs.to_vec(),
            factors,
            product,
            op_names,
            limits,
        })
    }

    pub fn product(&self) -> &TypePresentation {
        &self.product
    }

    pub fn operator_names(&self) -> &[String] {
        &self.op_names
    }

    fn laws(&self) -> Vec<Law> {
        self.specs.iter().map(|s| s.law.clone()).collect()
    }

    /// Splits a product generator index into the base index and one index
    /// per factor.
    fn decode(&self, mut index: usize) -> (usize, Vec<usize>) {
        let mut parts = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            parts[k] = index % f.dim();
            index /= f.dim();
        }
        (index, parts)
    }

    /// `u (g) v` for a product generator `g`.
    pub fn operation(&self, g: usize, u: &Term, v: &Term) -> Result<Lincomb, Error> {
        let (base, parts) = self.decode(g);
        let mut pending = vec![Pending {
            coef: RatFunc::one(),
            word: Word::default(),
            u: u.clone(),
            v: v.clone(),
        }];
        for (k, spec) in self.specs.iter().enumerate().rev() {
            let label = &self.factors[k].generators()[parts[k]];
            let mut next = Vec::new();
            for p in pending {
                next.extend(apply_table(spec, k, label, p)?);
            }
            pending = next;
        }
        let mut out = Lincomb::new();
        for p in pending {
            add_term(&mut out, Term::node(base, p.word, p.u, p.v), p.coef);
        }
        Ok(out)
    }

    /// Applies `g` to every term of `c` on the given side.
    fn operation_on(
        &self,
        g: usize,
        c: &Lincomb,
        other: &Term,
        c_on_left: bool,
    ) -> Result<Lincomb, Error> {
        let mut out = Lincomb::new();
        for (t, k) in c {
            let r = if c_on_left {
                self.operation(g, t, other)?
            } else {
                self.operation(g, other, t)?
            };
            add_scaled(&mut out, &r, k);
        }
        Ok(out)
    }

    /// `Σ L[a][b] (x a y) b z − Σ R[c][d] x c (y d z)` with derived operations.
    pub fn evaluate(&self, rel: &RelationElement) -> Result<Lincomb, Error> {
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        let m = rel.dim();
        let mut out = Lincomb::new();
        for a in 0..m {
            for b in 0..m {
                let c = rel.left.get(a, b);
                if !c.is_zero() {
                    let inner = self.operation(a, &x, &y)?;
                    add_scaled(
                        &mut out,
                        &self.operation_on(b, &inner, &z, true)?,
                        &RatFunc::constant(c.clone()),
                    );
                }
                let c = rel.right.get(a, b);
                if !c.is_zero() {
                    let inner = self.operation(b, &y, &z)?;
                    add_scaled(
                        &mut out,
                        &self.operation_on(a, &inner, &x, false)?,
                        &RatFunc::constant(-c.clone()),
                    );
                }
            }
        }
        Ok(out)
    }

    /// Normal form of [`evaluate`](Self::evaluate).
    pub fn residual(&self, rel: &RelationElement) -> Result<Lincomb, Error> {
        let laws = self.laws();
        let mut n = Normalizer::new(&laws, self.limits)?;
        n.normalize(&self.evaluate(rel)?)
    }

    /// `C[f(u, v, w)]` for a base relation `f`, leaf words `u, v, w` and a
    /// wrapper `C` around the whole instance, before normalization.
    fn instance(&self, f: &RelationElement, leaves: [Word; 3], wrapper: Word) -> Lincomb {
        let leaf = |i: usize| Term::Leaf {
            var: i as u8,
            word: leaves[i],
        };
        let m = f.dim();
        let mut out = Lincomb::new();
        for a in 0..m {
            for b in 0..m {
                let c = f.left.get(a, b);
                if !c.is_zero() {
                    let t = Term::node(
                        b,
                        wrapper,
                        Term::node(a, Word::default(), leaf(0), leaf(1)),
                        leaf(2),
                    );
                    add_term(&mut out, t, RatFunc::constant(c.clone()));
                }
                let c = f.right.get(a, b);
                if !c.is_zero() {
                    let t = Term::node(
                        a,
                        wrapper,
                        leaf(0),
                        Term::node(b, Word::default(), leaf(1), leaf(2)),
                    );
                    add_term(&mut out, t, RatFunc::constant(-c.clone()));
                }
            }
        }
        out
    }

    fn verify_relation(&self, index: usize) -> Result<RelationVerdict, Error> {
        let rel = &self.product.relations()[index];
        let laws = self.laws();
        let mut n = Normalizer::new(&laws, self.limits)?;
        let residual = n.normalize(&self.evaluate(rel)?)?;
        if residual.is_empty() {
            return Ok(RelationVerdict {
                index,
                verified: true,
                certificate: Vec::new(),
                residual,
                certificate_checked: true,
            });
        }

        let triples: BTreeSet<[Word; 3]> = residual
            .keys()
            .map(|t| {
                let w = t.leaf_words();
                [w[0], w[1], w[2]]
            })
            .collect();
        let top = residual
            .keys()
            .fold(Word::default(), |acc, t| acc.lcm(&t.word()));

        // Fallback: every decoration below each variable's largest word.
        let per_var: Vec<Vec<Word>> = (0..3)
            .map(|i| {
                triples
                    .iter()
                    .fold(Word::default(), |acc, t| acc.lcm(&t[i]))
                    .divisors()
            })
            .collect();
        let mut wider_triples = BTreeSet::new();
        for a in &per_var[0] {
            for b in &per_var[1] {
                for c in &per_var[2] {
                    wider_triples.insert([*a, *b, *c]);
                }
            }
        }
        let mut wider_top = top;
        for op in 0..laws.len() {
            wider_top = wider_top.plus(op, 1);
        }

        let mut last = None;
        for (triples, top) in [(triples, top), (wider_triples, wider_top)] {
            let mut echelon: SparseEchelon<Term, RatFunc> = SparseEchelon::new();
            let mut labels = Vec::new();
            let mut generators = Vec::new();
            for (j, f) in self.base.relations().iter().enumerate() {
                for leaves in &triples {
                    for wrapper in top.divisors() {
                        let nf = n.normalize(&self.instance(f, *leaves, wrapper))?;
                        if nf.is_empty() {
                            continue;
                        }
                        echelon.insert(nf.clone());
                        labels.push(InstanceRef {
                            relation: j,
                            leaves: *leaves,
                            wrapper,
                            coefficient: RatFunc::zero(),
                        });
                        generators.push(nf);
                    }
                }
            }
            if let Some(cert) = echelon.solve(&residual) {
                let mut recombined = Lincomb::new();
                let mut certificate = Vec::new();
                for (i, c) in cert {
                    add_scaled(&mut recombined, &generators[i], &c);
                    certificate.push(InstanceRef {
                        coefficient: c,
                        ..labels[i].clone()
                    });
                }
                let certificate_checked = difference(&recombined, &residual).is_empty();
                return Ok(RelationVerdict {
                    index,
                    verified: certificate_checked,
                    certificate,
                    residual,
                    certificate_checked,
                });
            }
            last = Some(residual.clone());
        }
        Ok(RelationVerdict {
            index,
            verified: false,
            certificate: Vec::new(),
            residual: last.unwrap_or_default(),
            certificate_checked: false,
        })
    }

    /// Verifies every basis relation of the product.
    pub fn verify(&self) -> Result<VerificationReport, Error> {
        let relations = (0..self.product.relations().len())
            .into_par_iter()
            .map(|i| self.verify_relation(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VerificationReport {
            base: self.base.name().to_string(),
            product: self.product.clone(),
            law: self
                .specs
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ⊗ "),
            operators: self.op_names.clone(),
            experimental: is_experimental(&self.specs),
            relations,
        })
    }

    /// Whether normal forms of all evaluated relations are free of redexes.
    pub fn residuals_normal(&self) -> Result<bool, Error> {
        let laws = self.laws();
        for rel in self.product.relations() {
            if !self.residual(rel)?.keys().all(|t| is_normal(t, &laws)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Families mixing operator kinds, other than the right/left Rota-Baxter
/// pair, have no reference construction to compare against.
fn is_experimental(specs: &[OperatorSpec]) -> bool {
    let kinds: BTreeSet<_> = specs.iter().map(|s| format!("{:?}", s.table)).collect();
    if kinds.len() <= 1 {
        return false;
    }
    !(specs.len() == 2
        && specs[0] == OperatorSpec::right_rb()
        && specs[1] == OperatorSpec::left_rb())
}

/// A relation instance `C[f(u, v, w)]` with its coefficient in a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceRef {
    pub relation: usize,
    pub leaves: [Word; 3],
    pub wrapper: Word,
    pub coefficient: RatFunc,
}

#[derive(Clone, Debug)]
pub struct RelationVerdict {
    pub index: usize,
    pub verified: bool,
    /// `residual = Σ coefficient · NF(instance)`.
    pub certificate: Vec<InstanceRef>,
    /// Normal form of the evaluated relation.
    pub residual: Lincomb,
    /// Whether recombining the certificate reproduced the residual.
    pub certificate_checked: bool,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub base: String,
    pub product: TypePresentation,
    pub law: String,
    pub operators: Vec<String>,
    pub experimental: bool,
    pub relations: Vec<RelationVerdict>,
}

impl VerificationReport {
    pub fn all_verified(&self) -> bool {
        self.relations.iter().all(|r| r.verified)
    }

    pub fn verified_count(&self) -> usize {
        self.relations.iter().filter(|r| r.verified).count()
    }

    fn describe_instance(&self, base_gens: &[String], i: &InstanceRef) -> String {
        let leaf =
            |var: u8, w: Word| Term::Leaf { var, word: w }.render(base_gens, &self.operators);
        let body = format!(
            "f{}({}, {}, {})",
            i.relation + 1,
            leaf(0, i.leaves[0]),
            leaf(1, i.leaves[1]),
            leaf(2, i.leaves[2])
        );
        Term::Leaf {
            var: 0,
            word: i.wrapper,
        }
        .render(base_gens, &self.operators)
        .replacen('x', &body, 1)
    }

    pub fn to_json(&self, base_gens: &[String]) -> Value {
        let relations: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                let mut o = json!({
                    "index": r.index,
                    "verdict": if r.verified { "verified" } else { "failed" },
                });
                if r.verified {
                    o["certificate"] = Value::Array(
                        r.certificate
                            .iter()
                            .map(|i| json!({ "instance": self.describe_instance(base_gens, i), "coefficient": i.coefficient.to_string() }))
                            .collect(),
                    );
                } else {
                    o["residual"] = Value::String(render_lincomb(&r.residual, base_gens, &self.operators));
                }
                o
            })
            .collect();
        json!({
            "type": self.product.name(),
            "base": self.base,
            "law": self.law,
            "experimental": self.experimental,
            "relations": relations,
        })
    }

    /// One line per relation.
    pub fn render(&self, base_gens: &[String]) -> String {
        let mut out = format!(
            "{} with {}: product {}\n",
            self.base,
            self.law,
            self.product.name()
        );
        if self.experimental {
            out.push_str("experimental: mixed operator kinds\n");
        }
        for r in &self.relations {
            if r.verified {
                let cert = if r.certificate.is_empty() {
                    "residual 0".to_string()
                } else {
                    r.certificate
                        .iter()
                        .map(|i| {
                            let inst = self.describe_instance(base_gens, i);
                            if i.coefficient.is_one() {
                                inst
                            } else {
                                format!("{}·{inst}", i.coefficient)
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                out.push_str(&format!(
                    "  relation {:>3}: verified  [{cert}]\n",
                    r.index + 1
                ));
            } else {
                out.push_str(&format!(
                    "  relation {:>3}: FAILED  residual {}\n",
                    r.index + 1,
                    render_lincomb(&r.residual, base_gens, &self.operators)
                ));
            }
        }
        out.push_str(&format!(
            "{}/{} relations verified\n",
            self.verified_count(),
            self.relations.len()
        ));
        out
    }
}

/// Checks that the operations derived from one operator on a `t`-algebra
/// satisfy the relations of `t □ X`.
pub fn verify_operator_theorem(
    t: &TypePresentation,
    spec: &OperatorSpec,
    limits: Limits,
) -> Result<VerificationReport, Error> {
    Construction::new(t, std::slice::from_ref(spec), limits)?.verify()
}

/// The same for commuting operators `P₁, …, P_k` and the product
/// `((t □ X₁) □ X₂) …`.
pub fn verify_commuting_family(
    t: &TypePresentation,
    specs: &[OperatorSpec],
    limits: Limits,
) -> Result<VerificationReport, Error> {
    Construction::new(t, specs, limits)?.verify()
}

/// Outcome of [`verify_operator_lemmas`].
#[derive(Clone, Debug)]
pub struct LemmaReport {
    /// `P̃ = −λ·id − P` residual under the Rota-Baxter law.
    pub tilde_rota_baxter: Lincomb,
    /// `Ñ = id − N` residual under the Nijenhuis law.
    pub tilde_nijenhuis: Lincomb,
    /// The `−P̃` dendriform construction, per base type.
    pub tilde_constructions: Vec<VerificationReport>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.tilde_rota_baxter.is_empty()
            && self.tilde_nijenhuis.is_empty()
            && self.tilde_constructions.iter().all(|r| r.all_verified())
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = vec!["cir".to_string()];
        writeln!(
            f,
            "P̃ = −λ·id − P is rota-baxter of weight λ: residual {}",
            render_lincomb(&self.tilde_rota_baxter, &gens, &["P".into()])
        )?;
        writeln!(
            f,
            "Ñ = id − N is nijenhuis: residual {}",
            render_lincomb(&self.tilde_nijenhuis, &gens, &["N".into()])
        )?;
        for r in &self.tilde_constructions {
            writeln!(
                f,
                "{} with {}: {}/{} relations of {} verified",
                r.base,
                r.law,
                r.verified_count(),
                r.relations.len(),
                r.product.name()
            )?;
        }
        Ok(())
    }
}

fn wrap_all(c: &Lincomb, op: usize) -> Lincomb {
    c.iter().map(|(t, k)| (t.wrap(op), k.clone())).collect()
}

fn product_of(l: &Lincomb, r: &Lincomb) -> Lincomb {
    let mut out = Lincomb::new();
    for (a, ka) in l {
        for (b, kb) in r {
            add_term(
                &mut out,
                Term::node(0, Word::default(), a.clone(), b.clone()),
                ka.clone() * kb,
            );
        }
    }
    out
}

/// `a·c + b·O(c)`.
fn affine(c: &Lincomb, a: &RatFunc, b: &RatFunc) -> Lincomb {
    let mut out = Lincomb::new();
    add_scaled(&mut out, c, a);
    add_scaled(&mut out, &wrap_all(c, 0), b);
    out
}

/// `Q(x)∘Q(y) − Q(Q(x)∘y + x∘Q(y) + t)` for `Q = a·id + b·O`, with
/// `t = λ·x∘y` under the Rota-Baxter law and `t = −Q(x∘y)` under the
/// Nijenhuis law.
fn operator_identity_residual(
    law: Law,
    a: RatFunc,
    b: RatFunc,
    limits: Limits,
) -> Result<Lincomb, Error> {
    let x = super::term::single(Term::var(0));
    let y = super::term::single(Term::var(1));
    let q = |c: &Lincomb| affine(c, &a, &b);
    let lhs = product_of(&q(&x), &q(&y));
    let mut inner = product_of(&q(&x), &y);
    add_scaled(&mut inner, &product_of(&x, &q(&y)), &RatFunc::one());
    let third = match law {
        Law::Nijenhuis => q(&product_of(&x, &y)),
        _ => product_of(&x, &y)
            .into_iter()
            .map(|(t, k)| (t, k * RatFunc::lambda()))
            .collect(),
    };
    let sign = if law == Law::Nijenhuis {
        -RatFunc::one()
    } else {
        RatFunc::one()
    };
    add_scaled(&mut inner, &third, &sign);
    let rhs = q(&inner);
    let laws = [law];
    let mut n = Normalizer::new(&laws, limits)?;
    n.normalize(&difference(&lhs, &rhs))
}

/// `P̃ = −λ·id − P` is Rota-Baxter of weight `λ`, `Ñ = id − N` is
/// Nijenhuis, and `x (ω|≺) y = x ω P(y)`, `x (ω|≻) y = −P̃(x) ω y` satisfy
/// the relations of `t □ dendriform` for each given `t`.
pub fn verify_operator_lemmas(
    bases: &[TypePresentation],
    limits: Limits,
) -> Result<LemmaReport, Error> {
    let lambda = RatFunc::lambda();
    let one = RatFunc::one();
    let tilde_rota_baxter = operator_identity_residual(
        Law::RotaBaxter(Weight::Formal),
        -lambda,
        -one.clone(),
        limits,
    )?;
    let tilde_nijenhuis = operator_identity_residual(Law::Nijenhuis, one.clone(), -one, limits)?;
    let tilde_constructions = bases
        .iter()
        .map(|t| verify_operator_theorem(t, &OperatorSpec::tilde_rb(Weight::Formal), limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LemmaReport {
        tilde_rota_baxter,
        tilde_nijenhuis,
        tilde_constructions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn get(name: &str) -> TypePresentation {
        catalog::get(name).unwrap()
    }

    #[test]
    fn associative_rota_baxter_gives_trialgebra() {
        let r = verify_operator_theorem(
            &get("associative"),
            &OperatorSpec::rb(Weight::Formal),
            Limits::default(),
        )
        .unwrap();
        assert_eq!(r.relations.len(), 7);
        assert!(
            r.all_verified(),
            "{}",
            r.render(get("associative").generators())
        );
        assert_eq!(r.product.space(), get("trialgebra").space());
    }

    #[test]
    fn associative_nijenhuis_gives_ns() {
        let r = verify_operator_theorem(
            &get("associative"),
            &OperatorSpec::nijenhuis(),
            Limits::default(),
        )
        .unwrap();
        assert_eq!(r.relations.len(), 4);
        assert!(
            r.all_verified(),
            "{}",
            r.render(get("associative").generators())
        );
    }

    #[test]
    fn wrong_table_fails() {
        // Left Rota-Baxter operations do not satisfy the anti-dipterous relations.
        let spec = OperatorSpec {
            law: Law::LeftRotaBaxter,
            table: Table::AntiDipterous,
        };
        let r = verify_operator_theorem(&get("associative"), &spec, Limits::default()).unwrap();
        assert!(!r.all_verified());
        assert!(r
            .relations
            .iter()
            .any(|v| !v.verified && !v.residual.is_empty()));
    }

    #[test]
    fn operation_table() {
        let c = Construction::new(
            &get("associative"),
            &[OperatorSpec::rb(Weight::Value(rat(2)))],
            Limits::default(),
        )
        .unwrap();
        let gens = c.product().generators().to_vec();
        let cir = gens.iter().position(|g| g == "(dot|cir)").unwrap();
        let out = c.operation(cir, &Term::var(0), &Term::var(1)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.values().next().unwrap(), &RatFunc::constant(rat(2)));
    }

    #[test]
    fn lemmas() {
        let r = verify_operator_lemmas(&[get("associative")], Limits::default()).unwrap();
        assert!(r.holds(), "{r}");
    }
}
