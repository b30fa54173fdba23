use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use operad_core::operatorver::{self, Limits, OperatorSpec};
use operad_core::{catalog, duality, morphisms, products};

fn products_bench(c: &mut Criterion) {
    let d = catalog::get("dendriform").unwrap();
    let t = catalog::get("trialgebra").unwrap();
    let quadri = catalog::get("quadri").unwrap();
    c.bench_function("square dendriform dendriform", |b| {
        b.iter(|| products::square(black_box(&d), &d).unwrap())
    });
    c.bench_function("square trialgebra trialgebra", |b| {
        b.iter(|| products::square(black_box(&t), &t).unwrap())
    });
    c.bench_function("square_check quadri trialgebra", |b| {
        b.iter(|| products::square_check(black_box(&quadri), &t).unwrap())
    });
    c.bench_function("maltese dendriform dendriform", |b| {
        b.iter(|| products::maltese(black_box(&d), &d).unwrap())
    });
}

fn duality_bench(c: &mut Criterion) {
    let quadri = catalog::get("quadri").unwrap();
    c.bench_function("dual quadri", |b| {
        b.iter(|| duality::dual(black_box(&quadri)).unwrap())
    });
    let d = catalog::get("dendriform").unwrap();
    c.bench_function("non-duality witness", |b| {
        b.iter(|| duality::non_duality_witness(black_box(&d)).unwrap())
    });
}

fn automorphisms_bench(c: &mut Criterion) {
    let quadri = Arc::new(catalog::get("quadri").unwrap());
    c.bench_function("signed automorphisms quadri", |b| {
        b.iter(|| {
            morphisms::monomial_automorphisms(
                black_box(&quadri),
                true,
                morphisms::DEFAULT_MONOMIAL_GUARD,
            )
            .unwrap()
        })
    });
}

fn operator_bench(c: &mut Criterion) {
    let assoc = catalog::get("associative").unwrap();
    let trialgebra = catalog::get("trialgebra").unwrap();
    let rb = OperatorSpec::parse("rb", Some("formal")).unwrap();
    let rb0 = OperatorSpec::parse("rb0", None).unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("operators");
    group.sample_size(10);
    group.bench_function("associative rb", |b| {
        b.iter(|| operatorver::verify_operator_theorem(black_box(&assoc), &rb, limits).unwrap())
    });
    group.bench_function("trialgebra rb", |b| {
        b.iter(|| {
            operatorver::verify_operator_theorem(black_box(&trialgebra), &rb, limits).unwrap()
        })
    });
    group.bench_function("associative [rb0, rb0, rb0]", |b| {
        b.iter(|| {
            operatorver::verify_commuting_family(
                black_box(&assoc),
                &[rb0.clone(), rb0.clone(), rb0.clone()],
                limits,
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    products_bench,
    duality_bench,
    automorphisms_bench,
    operator_bench
);
criterion_main!(benches);
