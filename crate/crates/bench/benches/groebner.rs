use cp_groebner::{approximate, buchberger, ApproximationOrder};
use cp_groebner_bench::generators;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn bases(c: &mut Criterion) {
    for order in ApproximationOrder::ALL {
        let (gens, ord) = generators(order);
        c.bench_function(&format!("buchberger/{}", order.label()), |b| {
            b.iter(|| buchberger(black_box(&gens), &ord).unwrap())
        });
    }
}

fn solve(c: &mut Criterion) {
    c.bench_function("approximate/3", |b| b.iter(|| approximate(black_box(ApproximationOrder::Third)).unwrap()));
    let res = approximate(ApproximationOrder::Third).unwrap();
    c.bench_function("branch_value/3", |b| b.iter(|| res.branch_value(black_box(2.5)).unwrap()));
}

criterion_group!(benches, bases, solve);
criterion_main!(benches);
