//! Exhaustive index scans, one thread against the rayon pool.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mubar::corpus::hopf;
use mubar::invariants::{first_nonvanishing, DEFAULT_BUDGET};
use mubar::operators::{bing_double, borromean_braid, DoublingSpec};
use mubar::{LinkRepr, Mode, MuTable, PdCode};

fn doubled(pd: &PdCode) -> LinkRepr {
    LinkRepr::Pd(bing_double(pd, &DoublingSpec::default()).unwrap())
}

fn scans(c: &mut Criterion) {
    let cases = [
        ("bd-hopf", doubled(&hopf()), 4),
        ("bd-br", doubled(&PdCode::braid_closure(&borromean_braid())), 6),
    ];
    let mut group = c.benchmark_group("first_nonvanishing");
    group.sample_size(10);
    for (name, link, q) in &cases {
        let data = link.peripheral(*q).unwrap();
        for (label, mode) in [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, name), &data, |b, data| {
                b.iter(|| first_nonvanishing(black_box(data), *q, DEFAULT_BUDGET, mode).unwrap())
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    let (_, link, q) = &cases[1];
    let data = link.peripheral(*q).unwrap();
    for (label, mode) in [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)] {
        group.bench_function(label, |b| {
            b.iter(|| MuTable::build(black_box(&data), *q, DEFAULT_BUDGET, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
