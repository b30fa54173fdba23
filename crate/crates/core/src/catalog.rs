//! Built-in types and the operation tables identifying product types with
//! their presentations in the literature.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::dsl::{parse_document, parse_type, LinComb};
use crate::duality::dual;
use crate::exactalg::Rational;
use crate::morphisms::TypeMorphism;
use crate::products::{power, square};
use crate::typecore::TypePresentation;
use crate::Error;

/// How an entry is built.
#[derive(Clone, Copy, Debug)]
pub enum Recipe {
    Text(&'static str),
    Square(&'static str, &'static str),
    /// `(a □ b) □ c`.
    Square3(&'static str, &'static str, &'static str),
    Power(&'static str, usize),
    Dual(&'static str),
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub recipe: Recipe,
}

const ASSOCIATIVE: &str = "type associative {
  generators: dot;
  star: dot;
  relations: (dot.dot | dot.dot);
}
";

const DENDRIFORM: &str = "type dendriform {
  generators: lt, gt;
  star: st;
  aux: st = lt + gt;
  relations:
    (lt.lt | lt.st)
    (gt.lt | gt.lt)
    (st.gt | gt.gt);
}
";

const TRIALGEBRA: &str = "type trialgebra {
  generators: lt, gt, cir;
  star: st;
  aux: st = lt + gt + cir;
  relations:
    (lt.lt | lt.st)
    (gt.lt | gt.lt)
    (st.gt | gt.gt)
    (gt.cir | gt.cir)
    (lt.cir | cir.gt)
    (cir.lt | cir.lt)
    (cir.cir | cir.cir);
}
";

const NS: &str = "type ns {
  generators: lt, gt, bul;
  star: st;
  aux: st = lt + gt + bul;
  relations:
    (lt.lt | lt.st)
    (gt.lt | gt.lt)
    (st.gt | gt.gt)
    (st.bul + bul.lt | gt.bul + bul.st);
}
";

const DIPTEROUS: &str = "type dipterous {
  generators: st, gt;
  star: st;
  relations:
    (st.st | st.st)
    (st.gt | gt.gt)
    (gt.st | gt.st);
}
";

const ANTI_DIPTEROUS: &str = "type anti_dipterous {
  generators: st, lt;
  star: st;
  relations:
    (st.st | st.st)
    (lt.lt | lt.st)
    (st.lt | st.lt);
}
";

const QUADRI_LIT: &str = "type quadri_lit {
  generators: ne, nw, se, sw;
  star: st;
  aux: wedge = ne + nw, vee = se + sw, lt = nw + sw, gt = ne + se, st = ne + nw + se + sw;
  relations:
    (nw.nw | nw.st)     (ne.nw | ne.lt)    (wedge.ne | ne.gt)
    (sw.nw | sw.wedge)  (se.nw | se.nw)    (vee.ne | se.ne)
    (lt.sw | sw.vee)    (gt.sw | se.sw)    (st.se | se.se);
}
";

const ASSOC_DIALGEBRA: &str = "type assoc_dialgebra {
  generators: lv, rv;
  star: lv;
  relations:
    (lv.lv | lv.lv)
    (rv.rv | rv.rv)
    (lv.lv | lv.rv)
    (rv.lv | rv.lv)
    (lv.rv | rv.rv);
}
";

const ASSOC_NIJENHUIS_TRI: &str = "type assoc_nijenhuis_tri {
  generators: lv, rv, cir;
  star: lv;
  relations:
    (lv.lv | lv.lv)  (lv.lv | lv.rv)  (lv.lv | lv.cir)
    (rv.lv | rv.lv)
    (rv.rv | rv.rv)  (lv.rv | rv.rv)  (cir.rv | rv.rv)
    (lv.cir | rv.cir)  (rv.cir | rv.cir)  (cir.cir | rv.cir)  (cir.lv | rv.cir)
    (cir.lv | cir.lv)  (cir.lv | cir.rv)  (cir.lv | cir.cir);
}
";

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "associative",
        description: "associative algebra",
        recipe: Recipe::Text(ASSOCIATIVE),
    },
    CatalogEntry {
        name: "dendriform",
        description: "dendriform dialgebra",
        recipe: Recipe::Text(DENDRIFORM),
    },
    CatalogEntry {
        name: "trialgebra",
        description: "dendriform trialgebra",
        recipe: Recipe::Text(TRIALGEBRA),
    },
    CatalogEntry {
        name: "ns",
        description: "NS-algebra",
        recipe: Recipe::Text(NS),
    },
    CatalogEntry {
        name: "dipterous",
        description: "L-dipterous algebra",
        recipe: Recipe::Text(DIPTEROUS),
    },
    CatalogEntry {
        name: "anti_dipterous",
        description: "L-anti-dipterous algebra",
        recipe: Recipe::Text(ANTI_DIPTEROUS),
    },
    CatalogEntry {
        name: "quadri_lit",
        description: "quadri-algebra in the arrow notation, auxiliary operations expanded",
        recipe: Recipe::Text(QUADRI_LIT),
    },
    CatalogEntry {
        name: "assoc_dialgebra",
        description: "associative dialgebra",
        recipe: Recipe::Text(ASSOC_DIALGEBRA),
    },
    CatalogEntry {
        name: "assoc_nijenhuis_tri",
        description: "associative Nijenhuis trialgebra, a basis of the dual of ns",
        recipe: Recipe::Text(ASSOC_NIJENHUIS_TRI),
    },
    CatalogEntry {
        name: "quadri",
        description: "dendriform □ dendriform",
        recipe: Recipe::Square("dendriform", "dendriform"),
    },
    CatalogEntry {
        name: "ennea",
        description: "trialgebra □ trialgebra",
        recipe: Recipe::Square("trialgebra", "trialgebra"),
    },
    CatalogEntry {
        name: "dendriform_nijenhuis",
        description: "trialgebra □ ns",
        recipe: Recipe::Square("trialgebra", "ns"),
    },
    CatalogEntry {
        name: "octo",
        description: "third power of dendriform",
        recipe: Recipe::Power("dendriform", 3),
    },
    CatalogEntry {
        name: "m2",
        description: "dipterous □ dipterous",
        recipe: Recipe::Square("dipterous", "dipterous"),
    },
    CatalogEntry {
        name: "m1",
        description:
            "anti_dipterous □ dipterous; identification with the literature type not checked",
        recipe: Recipe::Square("anti_dipterous", "dipterous"),
    },
    CatalogEntry {
        name: "di_dipterous_anti",
        description: "dendriform □ dipterous □ anti_dipterous",
        recipe: Recipe::Square3("dendriform", "dipterous", "anti_dipterous"),
    },
    CatalogEntry {
        name: "assoc_trialgebra",
        description: "associative trialgebra, the dual of trialgebra",
        recipe: Recipe::Dual("trialgebra"),
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry, Error> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownType {
            name: name.to_string(),
            available: names().join(", "),
        })
}

fn build(recipe: Recipe) -> Result<TypePresentation, Error> {
    match recipe {
        Recipe::Text(text) => Ok(parse_type(text)?),
        Recipe::Square(a, b) => square(&get(a)?, &get(b)?),
        Recipe::Square3(a, b, c) => square(&square(&get(a)?, &get(b)?)?, &get(c)?),
        Recipe::Power(a, n) => power(&get(a)?, n),
        Recipe::Dual(a) => dual(&get(a)?),
    }
}

fn cache() -> &'static [OnceLock<Result<TypePresentation, Error>>] {
    static CACHE: OnceLock<Vec<OnceLock<Result<TypePresentation, Error>>>> = OnceLock::new();
    CACHE.get_or_init(|| ENTRIES.iter().map(|_| OnceLock::new()).collect())
}

/// A fresh copy of the named entry.
pub fn get(name: &str) -> Result<TypePresentation, Error> {
    let pos = ENTRIES.iter().position(|e| e.name == name);
    let Some(pos) = pos else {
        return Err(entry(name).unwrap_err());
    };
    let e = &ENTRIES[pos];
    let built = cache()[pos].get_or_init(|| build(e.recipe).map(|t| t.with_name(e.name)));
    built.clone()
}

/// DSL source of a text entry.
pub fn source_text(name: &str) -> Result<Option<&'static str>, Error> {
    Ok(match entry(name)?.recipe {
        Recipe::Text(t) => Some(t),
        _ => None,
    })
}

/// Correspondence between the operations of a literature type and tuples
/// of factor operations of a product.
#[derive(Clone, Copy, Debug)]
pub struct LiteratureTable {
    pub name: &'static str,
    /// Catalog entry of the product.
    pub product: &'static str,
    pub factors: &'static [&'static str],
    /// Catalog entry holding the literature relations, if transcribed;
    /// otherwise they are rendered from the factors through the table.
    pub literature: Option<&'static str>,
    pub generators: &'static [&'static str],
    pub star: &'static str,
    pub entries: &'static [(&'static str, &'static [&'static str])],
}

static QUADRI_TABLE: &[(&str, &[&str])] = &[
    ("nw", &["lt", "lt"]),
    ("ne", &["lt", "gt"]),
    ("wedge", &["lt", "st"]),
    ("sw", &["gt", "lt"]),
    ("se", &["gt", "gt"]),
    ("vee", &["gt", "st"]),
    ("lt", &["st", "lt"]),
    ("gt", &["st", "gt"]),
    ("st", &["st", "st"]),
];

static ENNEA_TABLE: &[(&str, &[&str])] = &[
    ("nw", &["lt", "lt"]),
    ("up", &["lt", "cir"]),
    ("ne", &["lt", "gt"]),
    ("wedge", &["lt", "st"]),
    ("lt", &["cir", "lt"]),
    ("cir", &["cir", "cir"]),
    ("gt", &["cir", "gt"]),
    ("st", &["cir", "st"]),
    ("sw", &["gt", "lt"]),
    ("dn", &["gt", "cir"]),
    ("se", &["gt", "gt"]),
    ("vee", &["gt", "st"]),
    ("tl", &["st", "lt"]),
    ("cir_bar", &["st", "cir"]),
    ("tr", &["st", "gt"]),
    ("st_bar", &["st", "st"]),
];

static DENDRIFORM_NIJENHUIS_TABLE: &[(&str, &[&str])] = &[
    ("nw", &["lt", "lt"]),
    ("up", &["lt", "bul"]),
    ("ne", &["lt", "gt"]),
    ("wedge", &["lt", "st"]),
    ("lt_t", &["cir", "lt"]),
    ("bul_t", &["cir", "bul"]),
    ("gt_t", &["cir", "gt"]),
    ("st_t", &["cir", "st"]),
    ("sw", &["gt", "lt"]),
    ("dn", &["gt", "bul"]),
    ("se", &["gt", "gt"]),
    ("vee", &["gt", "st"]),
    ("tl", &["st", "lt"]),
    ("bul_bar", &["st", "bul"]),
    ("tr", &["st", "gt"]),
    ("st_bar", &["st", "st"]),
];

static OCTO_TABLE: &[(&str, &[&str])] = &[
    ("nw1", &["lt", "lt", "lt"]),
    ("ne1", &["lt", "gt", "lt"]),
    ("wedge1", &["lt", "st", "lt"]),
    ("sw1", &["gt", "lt", "lt"]),
    ("se1", &["gt", "gt", "lt"]),
    ("vee1", &["gt", "st", "lt"]),
    ("lt1", &["st", "lt", "lt"]),
    ("gt1", &["st", "gt", "lt"]),
    ("st1", &["st", "st", "lt"]),
    ("nw2", &["lt", "lt", "gt"]),
    ("ne2", &["lt", "gt", "gt"]),
    ("wedge2", &["lt", "st", "gt"]),
    ("sw2", &["gt", "lt", "gt"]),
    ("se2", &["gt", "gt", "gt"]),
    ("vee2", &["gt", "st", "gt"]),
    ("lt2", &["st", "lt", "gt"]),
    ("gt2", &["st", "gt", "gt"]),
    ("st2", &["st", "st", "gt"]),
    ("nw12", &["lt", "lt", "st"]),
    ("ne12", &["lt", "gt", "st"]),
    ("bigwedge12", &["lt", "st", "st"]),
    ("sw12", &["gt", "lt", "st"]),
    ("se12", &["gt", "gt", "st"]),
    ("bigvee12", &["gt", "st", "st"]),
    ("ll", &["st", "lt", "st"]),
    ("gg", &["st", "gt", "st"]),
    ("st_bar", &["st", "st", "st"]),
];

static M2_TABLE: &[(&str, &[&str])] = &[
    ("b1", &["gt", "gt"]),
    ("b2", &["gt", "st"]),
    ("b3", &["st", "gt"]),
    ("b4", &["st", "st"]),
];

static TABLES: &[LiteratureTable] = &[
    LiteratureTable {
        name: "quadri",
        product: "quadri",
        factors: &["dendriform", "dendriform"],
        literature: Some("quadri_lit"),
        generators: &["ne", "nw", "se", "sw"],
        star: "st",
        entries: QUADRI_TABLE,
    },
    LiteratureTable {
        name: "ennea",
        product: "ennea",
        factors: &["trialgebra", "trialgebra"],
        literature: None,
        generators: &["nw", "up", "ne", "lt", "cir", "gt", "sw", "dn", "se"],
        star: "st_bar",
        entries: ENNEA_TABLE,
    },
    LiteratureTable {
        name: "dendriform_nijenhuis",
        product: "dendriform_nijenhuis",
        factors: &["trialgebra", "ns"],
        literature: None,
        generators: &["ne", "se", "sw", "nw", "up", "dn", "lt_t", "gt_t", "bul_t"],
        star: "st_bar",
        entries: DENDRIFORM_NIJENHUIS_TABLE,
    },
    LiteratureTable {
        name: "octo",
        product: "octo",
        factors: &["dendriform", "dendriform", "dendriform"],
        literature: None,
        generators: &["ne1", "nw1", "sw1", "se1", "ne2", "nw2", "sw2", "se2"],
        star: "st_bar",
        entries: OCTO_TABLE,
    },
    LiteratureTable {
        name: "m2",
        product: "m2",
        factors: &["dipterous", "dipterous"],
        literature: None,
        generators: &["b1", "b2", "b3", "b4"],
        star: "b4",
        entries: M2_TABLE,
    },
];

pub fn tables() -> &'static [LiteratureTable] {
    TABLES
}

pub fn table(name: &str) -> Result<&'static LiteratureTable, Error> {
    TABLES
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Error::UnknownType {
            name: name.to_string(),
            available: TABLES.iter().map(|t| t.name).join(", "),
        })
}

/// Coordinates of a named operation (generator or auxiliary) of a factor.
fn factor_vector(t: &TypePresentation, name: &str) -> Result<Vec<Rational>, Error> {
    if let Some(i) = t.generator_index(name) {
        let mut v = vec![Rational::zero(); t.dim()];
        v[i] = Rational::one();
        return Ok(v);
    }
    t.aux()
        .iter()
        .find(|(a, _)| a == name)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::Structure(format!("`{name}` is not an operation of `{}`", t.name())))
}

fn kron_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

fn tuple_of(components: &[&str]) -> String {
    format!("({})", components.join("|"))
}

fn format_lincomb(terms: &[(Rational, &str)]) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(name);
    }
    out
}

impl LiteratureTable {
    fn lookup(&self, components: &[&str]) -> Result<&'static str, Error> {
        self.entries
            .iter()
            .find(|(_, c)| *c == components)
            .map(|(n, _)| *n)
            .ok_or_else(|| {
                Error::Structure(format!(
                    "table `{}` has no entry for {}",
                    self.name,
                    tuple_of(components)
                ))
            })
    }

    fn components(&self, name: &str) -> Result<&'static [&'static str], Error> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| *c)
            .ok_or_else(|| {
                Error::Structure(format!("table `{}` has no operation `{name}`", self.name))
            })
    }

    /// Pairs `(literature generator, product generator label)`.
    pub fn generator_map(&self) -> Result<Vec<(&'static str, String)>, Error> {
        self.generators
            .iter()
            .map(|g| Ok((*g, tuple_of(self.components(g)?))))
            .collect()
    }

    /// DSL text of the literature presentation, obtained by renaming the
    /// factor relations through the table. Auxiliary operations are
    /// defined as sums of literature generators.
    pub fn render(&self) -> Result<String, Error> {
        let factors = self
            .factors
            .iter()
            .map(|f| get(f))
            .collect::<Result<Vec<_>, _>>()?;
        let docs = self
            .factors
            .iter()
            .map(|f| {
                let text = source_text(f)?
                    .ok_or_else(|| Error::Structure(format!("factor `{f}` has no source text")))?;
                Ok(parse_document(text)?)
            })
            .collect::<Result<Vec<_>, Error>>()?;

        // Product coordinates of each table entry, then in literature generators.
        let product_vec = |components: &[&str]| -> Result<Vec<Rational>, Error> {
            let mut acc = vec![Rational::one()];
            for (t, c) in factors.iter().zip(components) {
                acc = kron_vec(&acc, &factor_vector(t, c)?);
            }
            Ok(acc)
        };
        let mut gen_at = HashMap::new();
        for g in self.generators {
            let v = product_vec(self.components(g)?)?;
            let hot: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            if hot.len() != 1 || !v[hot[0]].is_one() {
                return Err(Error::Structure(format!(
                    "literature generator `{g}` is not a product generator"
                )));
            }
            gen_at.insert(hot[0], *g);
        }
        let product_dim: usize = factors.iter().map(|t| t.dim()).product();
        if gen_at.len() != product_dim || self.generators.len() != product_dim {
            return Err(Error::Structure(format!(
                "table `{}` does not list a basis of generators",
                self.name
            )));
        }
        let mut aux = Vec::new();
        for (name, components) in self.entries {
            if self.generators.contains(name) {
                continue;
            }
            let v = product_vec(components)?;
            let terms: Vec<(Rational, &str)> = (0..v.len())
                .filter(|&i| !v[i].is_zero())
                .map(|i| (v[i].clone(), gen_at[&i]))
                .collect();
            aux.push(format!("{name} = {}", format_lincomb(&terms)));
        }

        let mut relations = Vec::new();
        for choice in docs
            .iter()
            .map(|d| 0..d.relations.len())
            .multi_cartesian_product()
        {
            let rels: Vec<_> = choice
                .iter()
                .zip(&docs)
                .map(|(&i, d)| &d.relations[i])
                .collect();
            let left = self.render_side(&rels.iter().map(|r| &r.left).collect::<Vec<_>>())?;
            let right = self.render_side(&rels.iter().map(|r| &r.right).collect::<Vec<_>>())?;
            relations.push(format!("    ({left} | {right})"));
        }

        let aux = if aux.is_empty() {
            String::new()
        } else {
            format!("  aux: {};\n", aux.join(", "))
        };
        Ok(format!(
            "type {}_lit {{\n  generators: {};\n  star: {};\n{aux}  relations:\n{};\n}}\n",
            self.name,
            self.generators.join(", "),
            self.star,
            relations.join("\n")
        ))
    }

    fn render_side(&self, sides: &[&crate::dsl::Bilin]) -> Result<String, Error> {
        fn expand(l: &LinComb) -> Vec<(Rational, &str)> {
            l.terms
                .iter()
                .map(|t| (t.coef.clone(), t.name.as_str()))
                .collect()
        }
        let mut acc: Vec<((&'static str, &'static str), Rational)> = Vec::new();
        let per_factor: Vec<Vec<(Rational, &str, &str)>> = sides
            .iter()
            .map(|b| {
                b.terms
                    .iter()
                    .flat_map(|t| {
                        expand(&t.left).into_iter().flat_map(move |(cl, nl)| {
                            expand(&t.right)
                                .into_iter()
                                .map(move |(cr, nr)| (&t.coef * &cl * &cr, nl, nr))
                        })
                    })
                    .collect()
            })
            .collect();
        for combo in per_factor
            .iter()
            .map(|v| v.iter())
            .multi_cartesian_product()
        {
            let coef = combo.iter().fold(Rational::one(), |c, (x, _, _)| c * x);
            let l: Vec<&str> = combo.iter().map(|(_, a, _)| *a).collect();
            let r: Vec<&str> = combo.iter().map(|(_, _, b)| *b).collect();
            let key = (self.lookup(&l)?, self.lookup(&r)?);
            match acc.iter_mut().find(|(k, _)| *k == key) {
                Some((_, c)) => *c += coef,
                None => acc.push((key, coef)),
            }
        }
        let terms: Vec<(Rational, String)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, b), c)| (c, format!("{a}.{b}")))
            .collect();
        if terms.is_empty() {
            return Ok("0".into());
        }
        Ok(format_lincomb(
            &terms
                .iter()
                .map(|(c, s)| (c.clone(), s.as_str()))
                .collect::<Vec<_>>(),
        ))
    }

    /// The literature presentation: the transcribed entry when there is
    /// one, otherwise the rendered text.
    pub fn literature_presentation(&self) -> Result<TypePresentation, Error> {
        match self.literature {
            Some(name) => get(name),
            None => Ok(parse_type(&self.render()?)?),
        }
    }

    /// The table as a map from the literature presentation to the product.
    pub fn isomorphism(&self) -> Result<TypeMorphism, Error> {
        let source = Arc::new(self.literature_presentation()?);
        let target = Arc::new(get(self.product)?);
        let pairs = self.generator_map()?;
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (*a, b.as_str())).collect();
        TypeMorphism::from_label_map(source, target, &refs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds() {
        for name in names() {
            let t = get(name).unwrap();
            assert_eq!(t.name(), name);
            assert!(t.is_valid(), "{name}");
        }
    }

    #[test]
    fn unknown_name_lists_available() {
        let err = get("pentagon").unwrap_err();
        assert!(err.to_string().contains("dendriform"), "{err}");
    }

    #[test]
    fn rendered_quadri_matches_transcription() {
        let t = table("quadri").unwrap();
        let rendered = parse_type(&t.render().unwrap()).unwrap();
        let lit = get("quadri_lit").unwrap();
        assert_eq!(rendered.generators(), lit.generators());
        assert_eq!(rendered.space(), lit.space());
    }

    #[test]
    fn tables_are_isomorphisms() {
        for t in tables() {
            assert!(
                t.isomorphism().unwrap().check_isomorphism().unwrap(),
                "{}",
                t.name
            );
        }
    }

    #[test]
    fn transcribed_duals() {
        let ad = dual(&get("dendriform").unwrap()).unwrap();
        assert_eq!(ad.space(), get("assoc_dialgebra").unwrap().space());
        let ant = dual(&get("ns").unwrap()).unwrap();
        assert_eq!(ant.space(), get("assoc_nijenhuis_tri").unwrap().space());
        assert_eq!(get("assoc_trialgebra").unwrap().relations().len(), 11);
    }

    #[test]
    fn uncorrected_nijenhuis_dual_is_rejected() {
        // (x ⊣ y) ∘ z = x ⊣ (y ∘ z) pairs to −1 with (x ≺ y) ≺ z = x ≺ (y ★ z).
        let wrong = ASSOC_NIJENHUIS_TRI.replace("(lv.cir | rv.cir)", "(lv.cir | lv.cir)");
        let t = parse_type(&wrong).unwrap();
        assert_ne!(t.space(), get("assoc_nijenhuis_tri").unwrap().space());
    }
}
