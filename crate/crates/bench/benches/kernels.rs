use argshift::sampling::{self, gaussian_element};
use argshift::verifier::{self, Campaign, SampleKind};
use argshift::{CartanType, Complex64, Exact, InvariantSystem, LieAlgebra, MfFamily};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const ALGEBRAS: [(CartanType, usize); 4] =
    [(CartanType::A, 2), (CartanType::A, 3), (CartanType::B, 2), (CartanType::C, 3)];

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for (ty, r) in ALGEBRAS {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{ty}{r}")), &(ty, r), |b, &(ty, r)| {
            b.iter(|| LieAlgebra::new(ty, r).unwrap())
        });
    }
    group.finish();
}

fn restricted_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("restricted_rank");
    for (ty, r) in ALGEBRAS {
        let g = LieAlgebra::new(ty, r).unwrap();
        let mut rng = sampling::rng(1);
        let a = verifier::regular_sample::<Complex64>(&g, SampleKind::Mixed, &mut rng, 1e-8).unwrap();
        let x = verifier::regular_sample::<Complex64>(&g, SampleKind::Nilpotent, &mut rng, 1e-8).unwrap();
        let fam = MfFamily::new(InvariantSystem::new(&g), a, 1e-8).unwrap();
        group.bench_function(format!("{ty}{r}"), |b| {
            b.iter(|| verifier::restricted_rank(&fam, black_box(&x), 1e-8).unwrap())
        });
    }
    group.finish();
}

fn exact_rank_a2(c: &mut Criterion) {
    let g = LieAlgebra::new(CartanType::A, 2).unwrap();
    let mut rng = sampling::rng(2);
    let a = verifier::regular_sample::<Exact>(&g, SampleKind::Mixed, &mut rng, 0.0).unwrap();
    let x = verifier::regular_sample::<Exact>(&g, SampleKind::Semisimple, &mut rng, 0.0).unwrap();
    let fam = MfFamily::new(InvariantSystem::new(&g), a, 0.0).unwrap();
    c.bench_function("exact_restricted_rank/A2", |b| {
        b.iter(|| verifier::restricted_rank(&fam, black_box(&x), 0.0).unwrap())
    });
}

fn orbit_push(c: &mut Criterion) {
    let g = LieAlgebra::new(CartanType::B, 3).unwrap();
    let mut rng = sampling::rng(3);
    let x = gaussian_element(g.dim(), &mut rng);
    let y = sampling::gaussian_direction(g.dim(), 1.0, &mut rng);
    c.bench_function("orbit_push/B3", |b| b.iter(|| g.orbit_push(black_box(&x), &y).unwrap()));
}

fn campaign(c: &mut Criterion) {
    let g = LieAlgebra::new(CartanType::A, 3).unwrap();
    let mut group = c.benchmark_group("campaign");
    group.sample_size(10);
    group.bench_function("A3/nilpotent-nilpotent/20", |b| {
        b.iter(|| {
            verifier::verify_completeness(&g, &Campaign::new(SampleKind::Nilpotent, SampleKind::Nilpotent, 20, 42))
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, construction, restricted_rank, exact_rank_a2, orbit_push, campaign);
criterion_main!(benches);
