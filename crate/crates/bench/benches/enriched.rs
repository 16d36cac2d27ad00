use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use enriched::dist::compose;
use enriched::gen::random_category;
use enriched::lawvere::enumerate_l;
use enriched::presheaf::{PresheafCategory, PresheafTower, DEFAULT_BUDGET};
use enriched::{builtin, CatRef, Quantale, VRelation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn category(q: &Quantale, n: usize, seed: u64) -> CatRef {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Arc::new(random_category(q, n, &q.carrier().unwrap(), &mut rng, "X"))
}

fn presheaves(c: &mut Criterion) {
    let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
    let mut g = c.benchmark_group("presheaf");
    for n in [2, 3, 4] {
        let x = category(&q, n, 7);
        g.bench_with_input(BenchmarkId::new("PX", n), &x, |b, x| {
            b.iter(|| PresheafCategory::build(black_box(x), DEFAULT_BUDGET).unwrap())
        });
    }
    let b2 = builtin("boolean2", None).unwrap();
    let x = category(&b2, 3, 7);
    g.bench_function("PPX boolean n=3", |b| b.iter(|| PresheafTower::build(black_box(&x), DEFAULT_BUDGET).unwrap()));
    g.finish();
}

fn composition(c: &mut Criterion) {
    let q = builtin("lukasiewicz_chain", Some(4)).unwrap();
    let carrier = q.carrier().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut g = c.benchmark_group("compose");
    for n in [8, 32, 64] {
        let mut rel = || {
            let data = (0..n * n).map(|_| carrier[rng.gen_range(0..carrier.len())]).collect();
            VRelation::new(&q, n, n, data).unwrap()
        };
        let (r, s) = (rel(), rel());
        g.bench_with_input(BenchmarkId::new("square", n), &(r, s), |b, (r, s)| {
            b.iter(|| compose(black_box(s), black_box(r)).unwrap())
        });
    }
    g.finish();
}

fn lawvere(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_l");
    for (kind, size, n) in [("boolean2", None, 4), ("lukasiewicz_chain", Some(2), 3), ("lukasiewicz_chain", Some(4), 2)] {
        let q = builtin(kind, size).unwrap();
        let x = category(&q, n, 3);
        g.bench_function(format!("{} n={n}", q.name()), |b| b.iter(|| enumerate_l(black_box(&x), DEFAULT_BUDGET).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, presheaves, composition, lawvere);
criterion_main!(benches);
