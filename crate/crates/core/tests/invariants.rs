use std::sync::Arc;

use num_traits::{One, Zero};
use operad_core::dsl;
use operad_core::exactalg::{ratio, Matrix, Poly, RatFunc, Rational, Subspace};
use operad_core::morphisms::TypeMorphism;
use operad_core::operatorver::{
    self, is_normal, normalize_outermost, Law, Limits, Lincomb, Normalizer, OperatorSpec, Term,
    Weight, Word,
};
use operad_core::typecore::{RelationElement, TypePresentation};
use operad_core::{catalog, duality};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Catalog entries small enough to shuffle and relabel quickly.
const SMALL: [&str; 8] = [
    "associative",
    "dendriform",
    "trialgebra",
    "ns",
    "dipterous",
    "anti_dipterous",
    "quadri",
    "assoc_dialgebra",
];

fn rebuilt(t: &TypePresentation, relations: Vec<RelationElement>) -> TypePresentation {
    TypePresentation::new(
        t.name(),
        t.generators().to_vec(),
        t.star().map(<[_]>::to_vec),
        relations,
        vec![],
    )
    .unwrap()
}

fn signed_permutation(perm: &[usize], signs: &[bool]) -> Matrix<Rational> {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &p) in perm.iter().enumerate() {
        m.set(p, i, if signs[i] { -q(1) } else { q(1) });
    }
    m
}

fn pick_small() -> impl Strategy<Value = TypePresentation> {
    (0..SMALL.len()).prop_map(|i| catalog::get(SMALL[i]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relation_space_ignores_order_and_scaling(
        t in pick_small(),
        seed in any::<u64>(),
        scales in prop::collection::vec((1i64..7, 1i64..5, any::<bool>()), 64),
    ) {
        let mut rels = t.relations().to_vec();
        let n = rels.len();
        for i in (1..n).rev() {
            rels.swap(i, (seed as usize).wrapping_mul(i + 31) % (i + 1));
        }
        let mut mixed = Vec::new();
        for (k, r) in rels.iter().enumerate() {
            let (a, b, neg) = scales[k];
            let c = if neg { -ratio(a, b) } else { ratio(a, b) };
            // add a multiple of the next relation so the rows are no longer the originals
            let next = &rels[(k + 1) % n];
            let r = if n > 1 { r.scaled(&c).add(&next.scaled(&ratio(b, a))).unwrap() } else { r.scaled(&c) };
            mixed.push(r);
        }
        let u = rebuilt(&t, mixed);
        // the mixed rows may be dependent when n is even and the signs line up
        prop_assert!(u.space().leq(t.space()).unwrap());
        if u.space().dim() == t.space().dim() {
            prop_assert_eq!(u.space().basis(), t.space().basis());
            prop_assert_eq!(u.space().pivots(), t.space().pivots());
        }
        let shuffled = rebuilt(&t, rels);
        prop_assert_eq!(shuffled.space().basis(), t.space().basis());
    }

    #[test]
    fn signed_relabeling_is_an_isomorphism(t in pick_small(), seed in any::<u64>(), signs in prop::collection::vec(any::<bool>(), 8)) {
        let m = t.dim();
        let mut perm: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            perm.swap(i, (seed >> (i % 60)) as usize % (i + 1));
        }
        let f = signed_permutation(&perm, &signs[..m]);
        let image = t.relabel(&f).unwrap();
        prop_assert_eq!(image.space().dim(), t.space().dim());
        let g = TypeMorphism::new(Arc::new(t.clone()), Arc::new(image.clone()), f.clone()).unwrap();
        prop_assert!(g.check_morphism().unwrap());
        prop_assert!(g.check_isomorphism().unwrap());
        // the inverse relabeling gives the original relation space back
        let back = image.relabel(&f.inverse().unwrap()).unwrap();
        prop_assert!(back.space().equal(t.space()).unwrap());
    }

    #[test]
    fn evaluation_is_a_ring_map(
        a in prop::collection::vec(-5i64..6, 1..4),
        b in prop::collection::vec(-5i64..6, 1..4),
        c in prop::collection::vec(-5i64..6, 1..3),
        at in (-6i64..7, 1i64..4),
    ) {
        let poly = |v: &[i64]| Poly::from_coeffs(v.iter().map(|&n| q(n)).collect());
        let (pa, pb, pc) = (poly(&a), poly(&b), poly(&c));
        prop_assume!(!pc.is_zero());
        let x = RatFunc::new(pa, pc.clone()).unwrap();
        let y = RatFunc::new(pb, Poly::one()).unwrap();
        let at = ratio(at.0, at.1);
        prop_assume!(!pc.eval(&at).is_zero());
        let (ex, ey) = (x.eval(&at).unwrap(), y.eval(&at).unwrap());
        prop_assert_eq!((x.clone() + y.clone()).eval(&at).unwrap(), &ex + &ey);
        prop_assert_eq!((x.clone() * y.clone()).eval(&at).unwrap(), &ex * &ey);
        prop_assert_eq!((x.clone() - &x).eval(&at).unwrap(), Rational::zero());
        let text = x.to_string();
        prop_assert_eq!(text.parse::<RatFunc>().unwrap(), x);
    }
}

fn word(counts: &[u8]) -> Word {
    let mut w = Word::default();
    for (op, &n) in counts.iter().enumerate() {
        w = w.plus(op, n);
    }
    w
}

/// Three-leaf terms with short operator words over two operators.
fn term_strategy() -> impl Strategy<Value = Term> {
    let w = || prop::collection::vec(0u8..2, 2).prop_map(|c| word(&c));
    (any::<bool>(), 0usize..2, 0usize..2, w(), w(), w(), w(), w()).prop_map(
        |(left_comb, g1, g2, wx, wy, wz, inner, outer)| {
            let leaf = |v: u8, w: Word| Term::var(v).with_word(w);
            if left_comb {
                Term::node(
                    g1,
                    outer,
                    Term::node(g2, inner, leaf(0, wx), leaf(1, wy)),
                    leaf(2, wz),
                )
            } else {
                Term::node(
                    g1,
                    outer,
                    leaf(0, wx),
                    Term::node(g2, inner, leaf(1, wy), leaf(2, wz)),
                )
            }
        },
    )
}

fn law_strategy() -> impl Strategy<Value = Law> {
    prop_oneof![
        Just(Law::RotaBaxter(Weight::Formal)),
        Just(Law::RotaBaxter(Weight::Value(q(0)))),
        (-3i64..4).prop_map(|n| Law::RotaBaxter(Weight::Value(q(n)))),
        Just(Law::Nijenhuis),
        Just(Law::LeftRotaBaxter),
        Just(Law::RightRotaBaxter),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rewriting_strategies_agree(t in term_strategy(), l1 in law_strategy(), l2 in law_strategy()) {
        let laws = [l1, l2];
        let limits = Limits { nesting_cap: 12, step_budget: 100_000 };
        let mut c = Lincomb::new();
        c.insert(t, RatFunc::one());
        let mut n = Normalizer::new(&laws, limits).unwrap();
        let a = n.normalize(&c).unwrap();
        let b = normalize_outermost(&c, &laws, limits).unwrap();
        prop_assert!(a.keys().all(|t| is_normal(t, &laws)));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rota_baxter_at_a_rational_weight(n in -4i64..5, d in 1i64..4) {
        let weight = ratio(n, d).to_string();
        let spec = OperatorSpec::parse("rb", Some(&weight)).unwrap();
        let r = operatorver::verify_operator_theorem(&catalog::get("associative").unwrap(), &spec, Limits::default()).unwrap();
        prop_assert!(r.all_verified());
        prop_assert!(r.relations.iter().all(|v| v.certificate_checked));
    }
}

#[test]
fn zero_weight_agrees_with_the_dendriform_construction() {
    let assoc = catalog::get("associative").unwrap();
    let rb0 = OperatorSpec::parse("rb0", None).unwrap();
    let zero = OperatorSpec::parse("rb", Some("0")).unwrap();
    let a = operatorver::verify_operator_theorem(&assoc, &rb0, Limits::default()).unwrap();
    let b = operatorver::verify_operator_theorem(&assoc, &zero, Limits::default()).unwrap();
    assert!(a.all_verified() && b.all_verified());
    assert_eq!(a.relations.len(), 3);
    assert_eq!(b.relations.len(), 7);
}

/// Independent pairing ⟨(A, B), (C, D)⟩ = Σ A·C − Σ B·D on flattened vectors.
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

#[test]
fn dual_is_the_annihilator() {
    for name in catalog::names() {
        let t = catalog::get(name).unwrap();
        let d = duality::dual(&t).unwrap();
        let m = t.dim();
        assert_eq!(d.space().dim(), 2 * m * m - t.space().dim(), "{name}");
        for r in t.relations() {
            for s in d.relations() {
                assert!(pairing(&r.flatten(), &s.flatten()).is_zero(), "{name}");
            }
        }
        assert_eq!(t.arity3_dimension().unwrap(), d.space().dim(), "{name}");
    }
}

#[test]
fn catalog_survives_dsl_and_json() {
    for name in catalog::names() {
        let t = catalog::get(name).unwrap();
        for text in [dsl::to_dsl(&t), dsl::to_json(&t)] {
            let back = dsl::load_unchecked(&text).unwrap();
            assert_eq!(back.name(), t.name());
            assert_eq!(back.generators(), t.generators());
            assert_eq!(back.star(), t.star());
            assert_eq!(back.space(), t.space(), "{name}");
        }
    }
}

#[test]
fn subspace_is_canonical() {
    let a =
        Subspace::from_vectors(3, vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]]).unwrap();
    let b = Subspace::from_vectors(
        3,
        vec![
            vec![q(1), q(3), q(4)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(1), q(2)],
        ],
    )
    .unwrap();
    assert_eq!(a, b);
}
