//! The batch of checks behind `operad paper-suite`.
//!
//! Each check returns a verdict plus report lines. Checks are independent
//! and run concurrently; results come back ordered by index.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::catalog;
use crate::dsl::{self, Format};
use crate::duality;
use crate::exactalg::Rational;
use crate::morphisms::{self, TypeMorphism, DEFAULT_MONOMIAL_GUARD};
use crate::operatorver::{self, Limits, OperatorSpec, VerificationReport, Weight};
use crate::products;
use crate::typecore::{RelationElement, TypePresentation};
use crate::Error;

pub const CHECK_TITLES: [&str; 9] = [
    "catalog validation",
    "duality",
    "non-duality counterexample",
    "isomorphism tables",
    "symmetries",
    "operator constructions",
    "operator lemmas",
    "structural properties",
    "dsl round-trip",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    /// 1-based.
    pub index: usize,
    pub title: &'static str,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl CheckResult {
    /// Names the failed sub-checks.
    pub fn failures(&self) -> impl Iterator<Item = &String> {
        self.lines.iter().filter(|l| l.starts_with("FAIL"))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "[{}] {verdict} {}", self.index, self.title)?;
        for l in &self.lines {
            writeln!(f, "    {l}")?;
        }
        Ok(())
    }
}

/// Collects `ok`/`FAIL` lines; the check passes when no line failed.
struct Log {
    lines: Vec<String>,
    passed: bool,
}

impl Log {
    fn new() -> Self {
        Log {
            lines: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.lines.push(format!(
            "{} {}",
            if ok { "ok  " } else { "FAIL" },
            what.into()
        ));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("     {}", what.into()));
    }

    fn finish(self, index: usize) -> CheckResult {
        CheckResult {
            index,
            title: CHECK_TITLES[index - 1],
            passed: self.passed,
            lines: self.lines,
        }
    }
}

/// Runs check `index` (1 to 9).
pub fn run_check(index: usize) -> Result<CheckResult, Error> {
    let mut log = Log::new();
    match index {
        1 => catalog_validation(&mut log)?,
        2 => duality_checks(&mut log)?,
        3 => non_duality(&mut log)?,
        4 => isomorphism_tables(&mut log)?,
        5 => symmetries(&mut log)?,
        6 => operator_constructions(&mut log)?,
        7 => operator_lemmas(&mut log)?,
        8 => structural(&mut log)?,
        9 => round_trip(&mut log)?,
        _ => {
            return Err(Error::Usage(format!(
                "no check {index}; checks are numbered 1 to 9"
            )))
        }
    }
    Ok(log.finish(index))
}

/// Every check, concurrently, in index order.
pub fn run_all() -> Vec<Result<CheckResult, Error>> {
    (1..=CHECK_TITLES.len())
        .into_par_iter()
        .map(run_check)
        .collect()
}

/// Expected relation counts of catalog entries.
pub const RELATION_COUNTS: &[(&str, usize)] = &[
    ("dendriform", 3),
    ("trialgebra", 7),
    ("ns", 4),
    ("dipterous", 3),
    ("anti_dipterous", 3),
    ("quadri_lit", 9),
    ("quadri", 9),
    ("ennea", 49),
    ("dendriform_nijenhuis", 28),
    ("octo", 27),
    ("assoc_dialgebra", 5),
    ("assoc_nijenhuis_tri", 14),
];

fn catalog_validation(log: &mut Log) -> Result<(), Error> {
    for name in catalog::names() {
        let t = catalog::get(name)?;
        let report = t.validate();
        let expected = RELATION_COUNTS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| *c);
        let count = t.relations().len();
        let mut what = format!("{name}: {} generators, {count} relations", t.dim());
        let ok = report.valid() && expected.is_none_or(|e| e == count);
        if let Some(e) = expected.filter(|&e| e != count) {
            what.push_str(&format!(", expected {e}"));
        }
        if !report.valid() {
            what.push_str(", invalid");
        }
        log.check(ok, what);
    }
    Ok(())
}

fn duality_checks(log: &mut Log) -> Result<(), Error> {
    let ad = duality::dual(&catalog::get("dendriform")?)?;
    log.check(
        ad.space() == catalog::get("assoc_dialgebra")?.space(),
        "dual(dendriform) spans the associative dialgebra relations",
    );
    let at = duality::dual(&catalog::get("trialgebra")?)?;
    log.check(
        at.space().dim() == 11,
        format!("dual(trialgebra) has {} relations", at.space().dim()),
    );
    let an = duality::dual(&catalog::get("ns")?)?;
    log.check(
        an.space() == catalog::get("assoc_nijenhuis_tri")?.space(),
        "dual(ns) spans the 14 associative Nijenhuis trialgebra relations",
    );
    let cir = an
        .generator_index("cir")
        .ok_or_else(|| Error::Internal("dual(ns) lacks cir".into()))?;
    let mut s = vec![Rational::from_integer(0.into()); an.dim()];
    s[cir] = Rational::from_integer(1.into());
    log.check(
        an.space()
            .contains(&RelationElement::associativity(&s).flatten())?,
        "dual(ns) contains (cir.cir | cir.cir)",
    );
    let names = catalog::names();
    let rows: Vec<(String, bool)> = names
        .par_iter()
        .map(|name| -> Result<(String, bool), Error> {
            let t = catalog::get(name)?;
            let m = t.dim();
            let d = duality::dual(&t)?;
            let dim_ok = d.space().dim() == 2 * m * m - t.space().dim();
            let twice = duality::double_dual_check(&t)?;
            Ok((
                format!(
                    "{name}: dim dual R = {} = 2·{m}² − {}, double dual {}",
                    d.space().dim(),
                    t.space().dim(),
                    if twice { "recovers R" } else { "differs" }
                ),
                dim_ok && twice,
            ))
        })
        .collect::<Result<_, _>>()?;
    for (what, ok) in rows {
        log.check(ok, what);
    }
    Ok(())
}

fn non_duality(log: &mut Log) -> Result<(), Error> {
    let report = duality::non_duality_witness(&catalog::get("dendriform")?)?;
    log.check(
        !report.inclusion_holds,
        "maltese(dual D, dual D) ⊄ dual(square(D, D))",
    );
    log.check(
        report.witness_in_maltese && !report.witness_in_aq,
        "witness lies in the maltese product only",
    );
    log.check(report.partner_in_square, "partner lies in square(D, D)");
    let minus_one = Rational::from_integer((-1).into());
    log.check(
        report.pairing == minus_one,
        format!("pairing of witness and partner = {}", report.pairing),
    );
    log.note(format!(
        "witness: {}",
        duality::describe_element(&report.witness, &report.labels)
    ));
    Ok(())
}

fn isomorphism_tables(log: &mut Log) -> Result<(), Error> {
    for table in catalog::tables() {
        let f = table.isomorphism()?;
        log.check(
            f.check_isomorphism()?,
            format!(
                "{} ≅ {} ({} generators)",
                f.source().name(),
                table.product,
                f.source().dim()
            ),
        );
    }
    Ok(())
}

/// The subgroup of `Aut(t^n)` candidates generated by per-factor swaps and
/// coordinate permutations; `rotations` keeps only orientation-preserving
/// elements of the cube `{≺, ≻}ⁿ`.
fn coordinate_maps(
    t: &Arc<TypePresentation>,
    n: usize,
    rotations: bool,
) -> Result<Vec<TypeMorphism>, Error> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    perms.sort();
    let parity = |p: &[usize]| {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
            % 2
    };
    let mut out = Vec::new();
    for p in &perms {
        for mask in 0..1usize << n {
            let flips: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let odd = (parity(p) + flips.iter().filter(|&&b| b).count()) % 2 == 1;
            if rotations && odd {
                continue;
            }
            out.push(morphisms::coordinate_map(t.clone(), p, &flips)?);
        }
    }
    Ok(out)
}

fn symmetries(log: &mut Log) -> Result<(), Error> {
    let quadri = Arc::new(catalog::get("quadri")?);
    let octo = Arc::new(catalog::get("octo")?);
    let gq = morphisms::monomial_automorphisms(&quadri, true, DEFAULT_MONOMIAL_GUARD)?;
    let go = morphisms::monomial_automorphisms(&octo, true, DEFAULT_MONOMIAL_GUARD)?;

    let gens = [
        morphisms::coordinate_map(quadri.clone(), &[0, 1], &[true, false])?,
        morphisms::coordinate_map(quadri.clone(), &[0, 1], &[false, true])?,
        morphisms::coordinate_map(quadri.clone(), &[1, 0], &[false, false])?,
    ];
    let d4 = morphisms::generated_subgroup(&quadri, &gens)?;
    let inside = d4.iter().filter(|f| gq.contains(f)).count();
    log.check(
        d4.len() == 8 && inside == 8,
        format!(
            "quadri: swaps and transpose generate {} maps, {inside} of them automorphisms",
            d4.len()
        ),
    );
    let rotations = coordinate_maps(&octo, 3, true)?;
    let inside = rotations.iter().filter(|f| go.contains(f)).count();
    log.check(
        rotations.len() == 24 && inside == 24,
        format!(
            "octo: {inside} of {} cube rotations are automorphisms",
            rotations.len()
        ),
    );

    let again_q = morphisms::monomial_automorphisms(&quadri, true, DEFAULT_MONOMIAL_GUARD)?;
    let again_o = morphisms::monomial_automorphisms(&octo, true, DEFAULT_MONOMIAL_GUARD)?;
    let same = |a: &morphisms::AutomorphismGroup, b: &morphisms::AutomorphismGroup| {
        a.elements
            .iter()
            .map(|f| f.matrix())
            .eq(b.elements.iter().map(|f| f.matrix()))
    };
    log.check(
        same(&gq, &again_q)
            && same(&go, &again_o)
            && gq.closed_under_composition
            && go.closed_under_composition,
        format!(
            "signed monomial automorphism groups: quadri order {}, octo order {} (stable, closed)",
            gq.order(),
            go.order()
        ),
    );
    Ok(())
}

fn report_line(r: &VerificationReport) -> String {
    format!(
        "{} with {}: {}/{} relations of {} verified",
        r.base,
        r.law,
        r.verified_count(),
        r.relations.len(),
        r.product.name()
    )
}

fn verified_with_certificates(r: &VerificationReport) -> bool {
    r.all_verified() && r.relations.iter().all(|v| v.certificate_checked)
}

fn operator_constructions(log: &mut Log) -> Result<(), Error> {
    let limits = Limits::default();
    let bases = ["associative", "dendriform", "trialgebra", "ns", "dipterous"];
    let laws = [
        OperatorSpec::rb(Weight::Formal),
        OperatorSpec::nijenhuis(),
        OperatorSpec::left_rb(),
        OperatorSpec::right_rb(),
    ];
    let grid: Vec<(&str, &OperatorSpec)> = bases
        .iter()
        .flat_map(|b| laws.iter().map(move |l| (*b, l)))
        .collect();
    let reports: Vec<VerificationReport> = grid
        .par_iter()
        .map(|(b, spec)| operatorver::verify_operator_theorem(&catalog::get(b)?, spec, limits))
        .collect::<Result<_, _>>()?;
    for r in &reports {
        log.check(verified_with_certificates(r), report_line(r));
    }

    // (base, operators, catalog entry the product must equal)
    let rb = || OperatorSpec::rb(Weight::Formal);
    let items: Vec<(&str, Vec<OperatorSpec>, &str)> = vec![
        ("associative", vec![OperatorSpec::rb0()], "dendriform"),
        ("associative", vec![rb()], "trialgebra"),
        ("dendriform", vec![OperatorSpec::rb0()], "quadri"),
        (
            "associative",
            vec![OperatorSpec::rb0(), OperatorSpec::rb0()],
            "quadri",
        ),
        ("trialgebra", vec![rb()], "ennea"),
        ("associative", vec![rb(), rb()], "ennea"),
        ("associative", vec![OperatorSpec::nijenhuis()], "ns"),
        (
            "trialgebra",
            vec![OperatorSpec::nijenhuis()],
            "dendriform_nijenhuis",
        ),
        ("associative", vec![OperatorSpec::left_rb()], "dipterous"),
        (
            "associative",
            vec![OperatorSpec::right_rb()],
            "anti_dipterous",
        ),
        (
            "associative",
            vec![OperatorSpec::right_rb(), OperatorSpec::left_rb()],
            "m1",
        ),
        (
            "associative",
            vec![OperatorSpec::left_rb(), OperatorSpec::left_rb()],
            "m2",
        ),
        (
            "associative",
            vec![
                OperatorSpec::rb0(),
                OperatorSpec::rb0(),
                OperatorSpec::rb0(),
            ],
            "octo",
        ),
    ];
    let reports: Vec<(VerificationReport, bool)> = items
        .par_iter()
        .map(|(b, specs, target)| -> Result<_, Error> {
            let r = operatorver::verify_commuting_family(&catalog::get(b)?, specs, limits)?;
            let same = r.product.space() == catalog::get(target)?.space();
            Ok((r, same))
        })
        .collect::<Result<_, _>>()?;
    for ((r, same), (_, _, target)) in reports.iter().zip(&items) {
        log.check(
            verified_with_certificates(r) && *same,
            format!("{} → {target}", report_line(r)),
        );
    }
    Ok(())
}

fn operator_lemmas(log: &mut Log) -> Result<(), Error> {
    let bases = [catalog::get("associative")?, catalog::get("trialgebra")?];
    let report = operatorver::verify_operator_lemmas(&bases, Limits::default())?;
    log.check(
        report.tilde_rota_baxter.is_empty(),
        "P̃ = −λ·id − P is rota-baxter of weight λ (residual 0)",
    );
    log.check(
        report.tilde_nijenhuis.is_empty(),
        "Ñ = id − N is nijenhuis (residual 0)",
    );
    for (r, t) in report.tilde_constructions.iter().zip(&bases) {
        log.check(
            verified_with_certificates(r) && r.relations.len() == 3 * t.relations().len(),
            report_line(r),
        );
    }
    Ok(())
}

/// Planar rooted trees with `leaves` leaves whose internal vertices have
/// between 2 and `max_arity` children.
pub fn count_planar_trees(leaves: usize, max_arity: usize) -> u64 {
    // forests[k][n]: ordered sequences of k trees with n leaves in total.
    let mut trees = vec![0u64; leaves + 1];
    let mut forests = vec![vec![0u64; leaves + 1]; max_arity.max(1) + 1];
    forests[0][0] = 1;
    for n in 1..=leaves {
        for k in 2..=max_arity {
            forests[k][n] = (1..n)
                .map(|first| trees[first] * forests[k - 1][n - first])
                .sum();
        }
        trees[n] = if n == 1 {
            1
        } else {
            (2..=max_arity).map(|k| forests[k][n]).sum()
        };
        forests[1][n] = trees[n];
    }
    trees[leaves]
}

fn structural(log: &mut Log) -> Result<(), Error> {
    let d = catalog::get("dendriform")?;
    let t = catalog::get("trialgebra")?;
    let n = catalog::get("ns")?;
    for (a, b) in [(&d, &d), (&t, &t), (&t, &n)] {
        let r = products::verify_tensor_model(a, b)?;
        log.check(r.holds(), format!("tensor model for {}", r.product));
    }

    let names = catalog::names();
    let types: Vec<TypePresentation> = names
        .iter()
        .map(|n| catalog::get(n))
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..types.len())
        .flat_map(|i| (0..types.len()).map(move |j| (i, j)))
        .collect();
    let checks: Vec<products::SquareCheck> = pairs
        .par_iter()
        .map(|&(i, j)| products::square_check(&types[i], &types[j]))
        .collect::<Result<_, _>>()?;
    let mut dependent = Vec::new();
    let mut non_associative = Vec::new();
    for (&(i, j), c) in pairs.iter().zip(&checks) {
        if !c.independent() {
            dependent.push(format!(
                "{} □ {}: rank {} of {}",
                names[i], names[j], c.rank, c.relation_count
            ));
        }
        if c.star_associative != Some(true) {
            non_associative.push(format!("{} □ {}", names[i], names[j]));
        }
    }
    log.check(
        dependent.is_empty(),
        format!(
            "dim R(t₁ □ t₂) = dim R(t₁)·dim R(t₂) on {} of {} catalog pairs",
            pairs.len() - dependent.len(),
            pairs.len()
        ),
    );
    for line in dependent {
        log.note(line);
    }
    log.check(
        non_associative.is_empty(),
        format!(
            "star associative in {} of {} catalog squares",
            pairs.len() - non_associative.len(),
            pairs.len()
        ),
    );
    for entry in catalog::entries() {
        let t = catalog::get(entry.name)?;
        if t.validate().star_associative != Some(true) {
            log.check(false, format!("star of {} not associative", entry.name));
        }
    }

    let cube = products::power(&d, 3)?;
    let iterated = products::square(&products::square(&d, &d)?, &d)?;
    log.check(
        cube.space() == iterated.space() && cube.space() == catalog::get("octo")?.space(),
        "power(D, 3) and square(square(D, D), D) have the same relations",
    );
    let (dd, td) = (d.arity3_dimension()?, t.arity3_dimension()?);
    let (binary, all) = (count_planar_trees(4, 2), count_planar_trees(4, 4));
    log.check(
        dd == 5 && dd as u64 == binary,
        format!("arity-3 dimension of dendriform {dd}, planar binary trees {binary}"),
    );
    log.check(
        td == 11 && td as u64 == all,
        format!("arity-3 dimension of trialgebra {td}, planar trees {all}"),
    );
    Ok(())
}

macro_rules! golden {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../golden/", $name, ".json")))),*]
    };
}

/// JSON exports of the catalog as committed.
pub const GOLDEN: &[(&str, &str)] = golden![
    "associative",
    "dendriform",
    "trialgebra",
    "ns",
    "dipterous",
    "anti_dipterous",
    "quadri_lit",
    "assoc_dialgebra",
    "assoc_nijenhuis_tri",
    "quadri",
    "ennea",
    "dendriform_nijenhuis",
    "octo",
    "m2",
    "m1",
    "di_dipterous_anti",
    "assoc_trialgebra",
];

fn round_trip(log: &mut Log) -> Result<(), Error> {
    let mut mismatched = Vec::new();
    for name in catalog::names() {
        let t = catalog::get(name)?;
        match dsl::parse_type(&dsl::serialize(&t, Format::Dsl)) {
            Ok(back) if back == t => {}
            Ok(_) => mismatched.push(format!("{name}: reparsed presentation differs")),
            Err(e) => mismatched.push(format!("{name}: {e}")),
        }
    }
    log.check(
        mismatched.is_empty(),
        format!(
            "parse ∘ serialize is the identity on {} catalog entries",
            catalog::names().len()
        ),
    );
    for m in mismatched {
        log.note(m);
    }
    let mut drift = Vec::new();
    for name in catalog::names() {
        let json = dsl::serialize(&catalog::get(name)?, Format::Json);
        match GOLDEN.iter().find(|(n, _)| *n == name) {
            Some((_, golden)) if *golden == json => {}
            _ => drift.push(name),
        }
    }
    log.check(
        drift.is_empty(),
        format!(
            "JSON exports match the golden files ({} entries)",
            GOLDEN.len()
        ),
    );
    if !drift.is_empty() {
        log.note(format!("differs: {}", drift.join(", ")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        assert_eq!(
            (1..=5)
                .map(|n| count_planar_trees(n, 2))
                .collect::<Vec<_>>(),
            [1, 1, 2, 5, 14]
        );
        assert_eq!(
            (1..=5)
                .map(|n| count_planar_trees(n, n))
                .collect::<Vec<_>>(),
            [1, 1, 3, 11, 45]
        );
    }

    #[test]
    fn unknown_check() {
        assert!(run_check(10).is_err());
    }
}
