use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use locproj::grassmann::{euler_localized, WeightList};
use locproj::models::ExampleSpec;
use locproj::parallel;
use locproj::plethysm::{gamma_am, SymFun};
use locproj::projection::{rhs_at, Cutoffs};
use locproj::series::Grading;

fn modes() -> [(&'static str, bool); 2] {
    [("sequential", true), ("parallel", false)]
}

fn grassmannian_sum(c: &mut Criterion) {
    let ws: Vec<i64> = (0..14).map(|i| 2 * i - 9).collect();
    let z = WeightList::univariate(&ws);
    let g = Grading::univariate();
    let mut group = c.benchmark_group("euler_localized Gr(4,14)");
    for (name, seq) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            parallel::set_sequential(seq);
            b.iter(|| euler_localized(&z, 4, |u| gamma_am(u, 2, &SymFun::e(&[1])), &g, 12).unwrap());
        });
    }
    group.finish();
}

fn rhs(c: &mut Criterion) {
    let mut group = c.benchmark_group("rhs");
    group.sample_size(10);
    let cases = [
        ("plane n=3", ExampleSpec::builtin("hilbert-plane", 3, 1, SymFun::one(), 10).unwrap(), Cutoffs { k: 12, l: 14, j: 11, n: 10, w: 20 }),
        ("affine n=2", ExampleSpec::builtin("affine-sl2", 2, 0, SymFun::one(), 18).unwrap(), Cutoffs { k: 22, l: 22, j: 7, n: 18, w: 20 }),
    ];
    for (label, spec, cut) in &cases {
        let g = spec.grading.clone();
        for (name, seq) in modes() {
            group.bench_function(BenchmarkId::new(*label, name), |b| {
                parallel::set_sequential(seq);
                b.iter(|| rhs_at(spec, cut, &g).unwrap());
            });
        }
    }
    group.finish();
}

criterion_group!(benches, grassmannian_sum, rhs);
criterion_main!(benches);
