//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Library results are cross-checked against oracles written here: a
//! separate rational rank, the signed pairing, explicit tree enumeration and
//! explicit coordinate permutations.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use operad_core::catalog;
use operad_core::dsl::{self, Format};
use operad_core::duality;
use operad_core::exactalg::Rational;
use operad_core::morphisms::{self, TypeMorphism, DEFAULT_MONOMIAL_GUARD};
use operad_core::operatorver::{self, Limits, OperatorSpec, VerificationReport, Weight};
use operad_core::products;
use operad_core::typecore::{RelationElement, TypePresentation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Gaussian elimination, independent of the library's row reduction.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            let (top, bottom) = rows.split_at_mut(i);
            for (x, y) in bottom[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

fn flats(rels: &[RelationElement]) -> Vec<Vec<Rational>> {
    rels.iter().map(RelationElement::flatten).collect()
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = rank(a.to_vec());
    let rb = rank(b.to_vec());
    let joint = rank(a.iter().chain(b).cloned().collect());
    ra == rb && ra == joint
}

fn in_span(rows: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank(rows.to_vec()) == rank(with)
}

/// `Σ L·L′ − Σ R·R′` on flattened coordinates.
fn pairing(u: &[Rational], v: &[Rational]) -> Rational {
    let half = u.len() / 2;
    let mut s = Rational::zero();
    for k in 0..u.len() {
        let p = &u[k] * &v[k];
        if k < half {
            s += p;
        } else {
            s -= p;
        }
    }
    s
}

fn get(name: &str) -> TypePresentation {
    catalog::get(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let expected = [
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
    let names = catalog::names();
    ensure(
        names.len() == 17,
        format!("catalog has {} entries", names.len()),
    )?;
    for name in &names {
        let t = get(name);
        ensure(t.is_valid(), format!("{name} does not validate"))?;
        let rows = flats(t.relations());
        ensure(
            rank(rows.clone()) == rows.len(),
            format!("{name}: relations dependent under the oracle rank"),
        )?;
        let star = t.star().ok_or(format!("{name} has no star"))?;
        ensure(
            in_span(&rows, &RelationElement::associativity(star).flatten()),
            format!("{name}: star associativity outside R under the oracle rank"),
        )?;
    }
    for (name, count) in expected {
        let found = get(name).relations().len();
        ensure(
            found == count,
            format!("{name}: {found} relations, expected {count}"),
        )?;
    }
    Ok(format!(
        "17 entries valid, {} relation counts match",
        expected.len()
    ))
}

fn criterion_2() -> Outcome {
    // Associative dialgebra as listed, ⊣ = lv, ⊢ = rv.
    let ad = dsl::parse_type(
        "type ad { generators: lv, rv; star: lv; relations: (lv.lv | lv.lv) (rv.rv | rv.rv) (lv.lv | lv.rv) (rv.lv | rv.lv) (lv.rv | rv.rv) }",
    )
    .map_err(|e| e.to_string())?;
    let d = get("dendriform");
    let dd = duality::dual(&d).map_err(|e| e.to_string())?;
    ensure(
        same_span(&flats(dd.relations()), &flats(ad.relations())),
        "dual(dendriform) differs from the listed relations",
    )?;

    let at = duality::dual(&get("trialgebra")).map_err(|e| e.to_string())?;
    ensure(
        at.relations().len() == 11,
        format!("dual(trialgebra) has {} relations", at.relations().len()),
    )?;

    let ns = get("ns");
    let an = duality::dual(&ns).map_err(|e| e.to_string())?;
    let listed = get("assoc_nijenhuis_tri");
    ensure(
        listed.relations().len() == 14,
        "listed NS dual does not have 14 relations",
    )?;
    for u in flats(listed.relations()) {
        for v in flats(ns.relations()) {
            ensure(
                pairing(&u, &v).is_zero(),
                "a listed NS dual relation does not annihilate R_N",
            )?;
        }
    }
    ensure(
        same_span(&flats(an.relations()), &flats(listed.relations())),
        "dual(ns) differs from the listed 14 relations",
    )?;
    let cir = an.generator_index("cir").ok_or("dual(ns) has no cir")?;
    let mut s = vec![q(0); 3];
    s[cir] = q(1);
    ensure(
        in_span(
            &flats(an.relations()),
            &RelationElement::associativity(&s).flatten(),
        ),
        "(cir.cir | cir.cir) ∉ dual(ns)",
    )?;

    for name in catalog::names() {
        let t = get(name);
        let m = t.dim();
        let dual = duality::dual(&t).map_err(|e| e.to_string())?;
        let d_rows = flats(dual.relations());
        ensure(
            rank(d_rows.clone()) == 2 * m * m - rank(flats(t.relations())),
            format!("{name}: dim dual R ≠ 2m² − dim R"),
        )?;
        for u in &d_rows {
            for v in flats(t.relations()) {
                ensure(
                    pairing(u, &v).is_zero(),
                    format!("{name}: dual relation pairs nontrivially with R"),
                )?;
            }
        }
        ensure(
            duality::double_dual_check(&t).map_err(|e| e.to_string())?,
            format!("{name}: double dual differs"),
        )?;
    }
    Ok("asdi, 11 trialgebra dual relations, 14 NS dual relations, annihilator dims and double duals".into())
}

fn criterion_3() -> Outcome {
    let d = get("dendriform");
    let report = duality::non_duality_witness(&d).map_err(|e| e.to_string())?;
    let ad = duality::dual(&d).map_err(|e| e.to_string())?;
    let malt = products::maltese(&ad, &ad).map_err(|e| e.to_string())?;
    let sq = products::square(&d, &d).map_err(|e| e.to_string())?;
    let aq = duality::dual(&sq).map_err(|e| e.to_string())?;
    let w = report.witness.flatten();
    let p = report.partner.flatten();
    ensure(
        in_span(&flats(malt.relations()), &w),
        "witness not in the maltese product",
    )?;
    ensure(
        !in_span(&flats(aq.relations()), &w),
        "witness lies in dual(square(D, D))",
    )?;
    ensure(
        in_span(&flats(sq.relations()), &p),
        "partner not in square(D, D)",
    )?;
    let value = pairing(&w, &p);
    ensure(value == q(-1), format!("pairing = {value}"))?;
    ensure(
        report.pairing == value && !report.inclusion_holds,
        "library report disagrees",
    )?;
    Ok("witness pairs to -1 with a square relation".into())
}

/// Image of `t`'s relations under the generator map `f`.
fn push(t: &TypePresentation, f: &TypeMorphism) -> Vec<Vec<Rational>> {
    t.relations()
        .iter()
        .map(|r| r.push_forward(f.matrix()).unwrap().flatten())
        .collect()
}

fn criterion_4() -> Outcome {
    let mut done = Vec::new();
    for name in ["quadri", "ennea", "dendriform_nijenhuis", "octo", "m2"] {
        let table = catalog::table(name).map_err(|e| e.to_string())?;
        let f = table.isomorphism().map_err(|e| e.to_string())?;
        ensure(
            f.check_isomorphism().map_err(|e| e.to_string())?,
            format!("{name}: check_isomorphism false"),
        )?;
        let lit = f.source();
        let product = get(table.product);
        ensure(
            same_span(&push(lit, &f), &flats(product.relations())),
            format!("{name}: pushed literature relations differ from the product"),
        )?;
        done.push(name);
    }
    Ok(format!(
        "{} correspondence tables are isomorphisms",
        done.len()
    ))
}

/// Generator permutation of the `n`-fold product of a two-generator type:
/// coordinate `i` goes to `perm[i]` after xor with `flips[i]`.
fn cube_map(n: usize, perm: &[usize], flips: &[bool]) -> Vec<usize> {
    (0..1usize << n)
        .map(|src| {
            let digits: Vec<usize> = (0..n).map(|i| (src >> (n - 1 - i)) & 1).collect();
            let mut out = vec![0; n];
            for i in 0..n {
                out[perm[i]] = digits[i] ^ flips[i] as usize;
            }
            out.iter().fold(0, |acc, d| acc * 2 + d)
        })
        .collect()
}

fn permuted(t: &TypePresentation, p: &[usize]) -> Vec<Vec<Rational>> {
    let m = t.dim();
    t.relations()
        .iter()
        .map(|r| {
            let mut out = RelationElement::zero(m);
            for i in 0..m {
                for j in 0..m {
                    out.left.set(p[i], p[j], r.left.get(i, j).clone());
                    out.right.set(p[i], p[j], r.right.get(i, j).clone());
                }
            }
            out.flatten()
        })
        .collect()
}

fn as_morphism(t: &Arc<TypePresentation>, p: &[usize]) -> TypeMorphism {
    let mut f = operad_core::exactalg::Matrix::zeros(t.dim(), t.dim());
    for (src, &dst) in p.iter().enumerate() {
        f.set(dst, src, Rational::one());
    }
    TypeMorphism::new(t.clone(), t.clone(), f).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i32 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn criterion_5() -> Outcome {
    let quadri = Arc::new(get("quadri"));
    let octo = Arc::new(get("octo"));
    let gq = morphisms::monomial_automorphisms(&quadri, true, DEFAULT_MONOMIAL_GUARD)
        .map_err(|e| e.to_string())?;
    let go = morphisms::monomial_automorphisms(&octo, true, DEFAULT_MONOMIAL_GUARD)
        .map_err(|e| e.to_string())?;
    let gq2 = morphisms::monomial_automorphisms(&quadri, true, DEFAULT_MONOMIAL_GUARD)
        .map_err(|e| e.to_string())?;
    let go2 = morphisms::monomial_automorphisms(&octo, true, DEFAULT_MONOMIAL_GUARD)
        .map_err(|e| e.to_string())?;
    let stable = gq
        .elements
        .iter()
        .map(|f| f.matrix())
        .eq(gq2.elements.iter().map(|f| f.matrix()))
        && go
            .elements
            .iter()
            .map(|f| f.matrix())
            .eq(go2.elements.iter().map(|f| f.matrix()));
    let orders = format!(
        "computed orders: quadri {}, octo {}",
        gq.order(),
        go.order()
    );
    ensure(
        stable,
        format!("automorphism groups differ between runs; {orders}"),
    )?;

    // D4: all coordinate permutations and swaps on two coordinates.
    let mut d4 = BTreeSet::new();
    for p in permutations(2) {
        for mask in 0..4 {
            d4.insert(cube_map(2, &p, &[mask & 1 == 1, mask & 2 == 2]));
        }
    }
    let base_q = flats(quadri.relations());
    let d4_autos = d4
        .iter()
        .filter(|p| same_span(&permuted(&quadri, p), &base_q))
        .count();
    let d4_in_group = d4
        .iter()
        .filter(|p| gq.contains(&as_morphism(&quadri, p)))
        .count();

    let mut rotations = BTreeSet::new();
    for p in permutations(3) {
        for mask in 0..8usize {
            let flips = [mask & 1 == 1, mask & 2 == 2, mask & 4 == 4];
            let det = sign(&p)
                * if flips.iter().filter(|&&b| b).count() % 2 == 0 {
                    1
                } else {
                    -1
                };
            if det == 1 {
                rotations.insert(cube_map(3, &p, &flips));
            }
        }
    }
    let base_o = flats(octo.relations());
    let rot_autos = rotations
        .iter()
        .filter(|p| same_span(&permuted(&octo, p), &base_o))
        .count();
    let rot_in_group = rotations
        .iter()
        .filter(|p| go.contains(&as_morphism(&octo, p)))
        .count();

    let detail = format!(
        "D4 maps: {} built, {d4_autos} automorphisms (oracle), {d4_in_group} in group; cube rotations: {} built, {rot_autos} automorphisms (oracle), {rot_in_group} in group; {orders}",
        d4.len(),
        rotations.len()
    );
    ensure(
        d4.len() == 8 && d4_in_group == 8 && rotations.len() == 24 && rot_in_group == 24,
        detail.clone(),
    )?;
    Ok(detail)
}

fn all_certified(r: &VerificationReport) -> bool {
    r.all_verified()
        && r.relations
            .iter()
            .all(|v| v.certificate_checked && !v.certificate.is_empty() || v.residual.is_empty())
}

fn criterion_6() -> Outcome {
    let limits = Limits::default();
    let mut relations = 0;
    for base in ["associative", "dendriform", "trialgebra", "ns", "dipterous"] {
        let t = get(base);
        for (spec, factor) in [
            (OperatorSpec::rb(Weight::Formal), "trialgebra"),
            (OperatorSpec::nijenhuis(), "ns"),
            (OperatorSpec::left_rb(), "dipterous"),
            (OperatorSpec::right_rb(), "anti_dipterous"),
        ] {
            let r = operatorver::verify_operator_theorem(&t, &spec, limits)
                .map_err(|e| e.to_string())?;
            ensure(
                all_certified(&r),
                format!(
                    "{base} with {spec}: {}/{}",
                    r.verified_count(),
                    r.relations.len()
                ),
            )?;
            let expected = products::square(&t, &get(factor)).map_err(|e| e.to_string())?;
            ensure(
                r.product.space() == expected.space(),
                format!("{base} with {spec}: wrong product"),
            )?;
            relations += r.relations.len();
        }
    }
    let rb = || OperatorSpec::rb(Weight::Formal);
    let items: Vec<(&str, Vec<OperatorSpec>, &str, usize)> = vec![
        ("associative", vec![OperatorSpec::rb0()], "dendriform", 3),
        ("associative", vec![rb()], "trialgebra", 7),
        ("dendriform", vec![OperatorSpec::rb0()], "quadri", 9),
        (
            "associative",
            vec![OperatorSpec::rb0(), OperatorSpec::rb0()],
            "quadri",
            9,
        ),
        ("trialgebra", vec![rb()], "ennea", 49),
        ("associative", vec![rb(), rb()], "ennea", 49),
        ("associative", vec![OperatorSpec::nijenhuis()], "ns", 4),
        (
            "trialgebra",
            vec![OperatorSpec::nijenhuis()],
            "dendriform_nijenhuis",
            28,
        ),
        ("associative", vec![OperatorSpec::left_rb()], "dipterous", 3),
        (
            "associative",
            vec![OperatorSpec::right_rb()],
            "anti_dipterous",
            3,
        ),
        (
            "associative",
            vec![OperatorSpec::right_rb(), OperatorSpec::left_rb()],
            "m1",
            9,
        ),
        (
            "associative",
            vec![OperatorSpec::left_rb(), OperatorSpec::left_rb()],
            "m2",
            9,
        ),
        (
            "associative",
            vec![
                OperatorSpec::rb0(),
                OperatorSpec::rb0(),
                OperatorSpec::rb0(),
            ],
            "octo",
            27,
        ),
    ];
    for (base, specs, target, count) in &items {
        let r = operatorver::verify_commuting_family(&get(base), specs, limits)
            .map_err(|e| e.to_string())?;
        ensure(
            all_certified(&r) && r.relations.len() == *count,
            format!(
                "{base} → {target}: {}/{}",
                r.verified_count(),
                r.relations.len()
            ),
        )?;
        ensure(
            r.product.space() == get(target).space(),
            format!("{base} → {target}: product differs from the catalog entry"),
        )?;
        relations += r.relations.len();
    }
    Ok(format!("20 single-operator constructions and {} listed constructions, {relations} relations certified", items.len()))
}

fn criterion_7() -> Outcome {
    let bases = [get("associative"), get("trialgebra")];
    let report = operatorver::verify_operator_lemmas(&bases, Limits::default())
        .map_err(|e| e.to_string())?;
    ensure(report.tilde_rota_baxter.is_empty(), "P̃ residual nonzero")?;
    ensure(report.tilde_nijenhuis.is_empty(), "Ñ residual nonzero")?;
    for (r, t) in report.tilde_constructions.iter().zip(&bases) {
        ensure(
            all_certified(r),
            format!(
                "{} □ D via −P̃: {}/{}",
                t.name(),
                r.verified_count(),
                r.relations.len()
            ),
        )?;
        ensure(
            r.relations.len() == 3 * t.relations().len(),
            "wrong relation count",
        )?;
        let d = products::square(t, &get("dendriform")).map_err(|e| e.to_string())?;
        ensure(
            r.product.space() == d.space(),
            "−P̃ construction does not target t □ D",
        )?;
    }
    Ok("P̃ and Ñ residuals 0; −P̃ construction verified on associative and trialgebra".into())
}

/// Planar rooted trees with `leaves` leaves, internal vertices of arity
/// `2..=max_arity`, as bracket strings.
fn trees(leaves: usize, max_arity: usize) -> BTreeSet<String> {
    if leaves == 1 {
        return ["x".to_string()].into();
    }
    let mut out = BTreeSet::new();
    for arity in 2..=max_arity.min(leaves) {
        for parts in compositions(leaves, arity) {
            let mut acc = vec![String::new()];
            for (k, &p) in parts.iter().enumerate() {
                let sub = trees(p, max_arity);
                acc = acc
                    .iter()
                    .flat_map(|a| {
                        sub.iter().map(move |s| {
                            if k == 0 {
                                s.clone()
                            } else {
                                format!("{a},{s}")
                            }
                        })
                    })
                    .collect();
            }
            out.extend(acc.into_iter().map(|s| format!("({s})")));
        }
    }
    out
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return if n >= 1 { vec![vec![n]] } else { vec![] };
    }
    (1..n)
        .flat_map(|first| {
            compositions(n - first, k - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let d = get("dendriform");
    let t = get("trialgebra");
    let n = get("ns");
    for (a, b) in [(&d, &d), (&t, &t), (&t, &n)] {
        let r = products::verify_tensor_model(a, b).map_err(|e| e.to_string())?;
        ensure(r.holds(), format!("tensor model fails for {}", r.product))?;
    }

    let names = catalog::names();
    let mut failures = Vec::new();
    let mut checked = 0;
    for a in &names {
        for b in &names {
            let (ta, tb) = (get(a), get(b));
            let c = products::square_check(&ta, &tb).map_err(|e| e.to_string())?;
            let expected = ta.relations().len() * tb.relations().len();
            if ta.dim() * tb.dim() <= 4 {
                // Small products: oracle rank of the Kronecker family.
                let family: Vec<Vec<Rational>> = ta
                    .relations()
                    .iter()
                    .flat_map(|f| {
                        tb.relations()
                            .iter()
                            .map(move |g| products::boxtimes(f, g).flatten())
                    })
                    .collect();
                ensure(
                    rank(family) == c.rank,
                    format!("{a} □ {b}: square_check rank disagrees with the oracle"),
                )?;
            }
            if c.rank != expected {
                failures.push(format!("{a} □ {b}: dim {} ≠ {}", c.rank, expected));
            }
            ensure(
                c.star_associative == Some(true),
                format!("{a} □ {b}: star not associative"),
            )?;
            checked += 1;
        }
    }

    let cube = products::power(&d, 3).map_err(|e| e.to_string())?;
    let iterated = products::square(&products::square(&d, &d).map_err(|e| e.to_string())?, &d)
        .map_err(|e| e.to_string())?;
    ensure(
        cube.space() == iterated.space(),
        "power(D, 3) differs from square(square(D, D), D)",
    )?;
    ensure(
        same_span(&flats(cube.relations()), &flats(iterated.relations())),
        "oracle: power spans differ",
    )?;

    let binary = trees(4, 2).len();
    let all = trees(4, 4).len();
    let (dd, td) = (
        d.arity3_dimension().map_err(|e| e.to_string())?,
        t.arity3_dimension().map_err(|e| e.to_string())?,
    );
    ensure(
        dd == 5 && dd == binary,
        format!("dendriform arity 3: {dd}, binary trees {binary}"),
    )?;
    ensure(
        td == 11 && td == all,
        format!("trialgebra arity 3: {td}, planar trees {all}"),
    )?;

    ensure(
        failures.is_empty(),
        format!(
            "multiplicativity fails on {} of {checked} pairs: {}",
            failures.len(),
            failures.join("; ")
        ),
    )?;
    Ok(format!("tensor models, {checked} products multiplicative and star associative, power, arity 3 = 5 and 11"))
}

fn criterion_9() -> Outcome {
    let golden_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    for name in catalog::names() {
        let t = get(name);
        let text = dsl::serialize(&t, Format::Dsl);
        let back = dsl::parse_type(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            back == t,
            format!("{name}: dsl round trip changed the presentation"),
        )?;
        let json = dsl::serialize(&t, Format::Json);
        ensure(
            json == dsl::serialize(&t, Format::Json),
            format!("{name}: json export not deterministic"),
        )?;
        let golden = std::fs::read_to_string(golden_dir.join(format!("{name}.json")))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(
            json == golden,
            format!("{name}: json export differs from the golden file"),
        )?;
    }
    Ok("17 entries round-trip; json exports byte-identical to golden files".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("catalog validation", criterion_1),
        ("duality", criterion_2),
        ("non-duality counterexample", criterion_3),
        ("isomorphism tables", criterion_4),
        ("symmetries", criterion_5),
        ("operator theorem suite", criterion_6),
        ("operator lemmas", criterion_7),
        ("structural properties", criterion_8),
        ("dsl round-trip", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({title}): PASS [{secs:.2}s] {detail}", i + 1),
            Err(detail) => {
                println!("criterion {} ({title}): FAIL [{secs:.2}s] {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
