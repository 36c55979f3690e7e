//! Rewriting and family coefficients on one thread versus the default pool.
//! Without the `parallel` feature only the sequential path is measured.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use plane_branch::algebra::text::parse_poly;
use plane_branch::branch::{family_weierstrass_coeffs, Characteristic, ParamFamily};
use plane_branch::rewrite::{rewrite_invariant, Budget, RewriteContext};

type Workload = Box<dyn Fn() + Send + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    let c34 = Characteristic::new(vec![3, 4]).unwrap();
    let ctx34 = RewriteContext::new(&ParamFamily::closed(&c34, 30, [4, 7, 10].into()).unwrap()).unwrap();
    let c467 = Characteristic::new(vec![4, 6, 7]).unwrap();
    let fam = ParamFamily::closed(&c467, 28, [4, 6, 7].into()).unwrap();
    let ctx467 = RewriteContext::new(&fam).unwrap();
    let open = ParamFamily::open(&c467, 21).unwrap();
    let q1 = parse_poly("A4*A7^2").unwrap();
    let q2 = parse_poly("A4*A6*A7^2").unwrap();
    vec![
        (
            "rewrite_34",
            Box::new(move || {
                black_box(rewrite_invariant(&ctx34, &q1, Budget::default_for(3)).unwrap());
            }),
        ),
        (
            "rewrite_467",
            Box::new(move || {
                black_box(rewrite_invariant(&ctx467, &q2, Budget::default_for(4)).unwrap());
            }),
        ),
        (
            "coefficients_467_open",
            Box::new(move || {
                black_box(family_weierstrass_coeffs(&open).unwrap());
            }),
        ),
    ]
}

fn bench(c: &mut Criterion) {
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        #[cfg(feature = "parallel")]
        {
            let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            group.bench_function("one_thread", |b| b.iter(|| single.install(&work)));
            group.bench_function("default_pool", |b| b.iter(&work));
        }
        #[cfg(not(feature = "parallel"))]
        group.bench_function("sequential", |b| b.iter(&work));
        group.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
