use criterion::{criterion_group, criterion_main, Criterion};
use gorq::{run_census, CensusConfig, CensusMode, CiStyle, FieldSpec};

fn bench_census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("gf2_r5_exhaustive", |b| {
        let cfg = CensusConfig { r: 5, ..Default::default() };
        b.iter(|| run_census(&cfg).unwrap())
    });
    g.bench_function("gf3_r6_sample_500", |b| {
        let cfg = CensusConfig {
            field: FieldSpec::Prime(3),
            mode: CensusMode::RandomSample { count: 500, seed: 1 },
            ..Default::default()
        };
        b.iter(|| run_census(&cfg).unwrap())
    });
    g.bench_function("gf32003_r6_random_ci_sample_200", |b| {
        let cfg = CensusConfig {
            field: FieldSpec::Prime(32003),
            ci_style: CiStyle::Random(2),
            mode: CensusMode::RandomSample { count: 200, seed: 1 },
            ..Default::default()
        };
        b.iter(|| run_census(&cfg).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bench_census);
criterion_main!(benches);
