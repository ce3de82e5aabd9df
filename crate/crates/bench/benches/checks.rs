use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use effdual_bench::signatures;
use effdual_core::duality::{check_duality, exception_laws, state_laws};
use effdual_core::semantics::{handle, HandlerList};
use effdual_core::suite::{body_pool, handler_lists, handler_pool};
use effdual_core::{equiv, parse};

fn laws(c: &mut Criterion) {
    let mut group = c.benchmark_group("laws");
    for (id, sig) in signatures() {
        let all: Vec<_> = state_laws(&sig)
            .into_iter()
            .chain(exception_laws(&sig))
            .collect();
        group.bench_with_input(BenchmarkId::new("equiv", id), &sig, |b, sig| {
            b.iter(|| {
                for law in &all {
                    black_box(equiv(sig, &law.lhs, &law.rhs).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("check_duality", id), &sig, |b, sig| {
            b.iter(|| black_box(check_duality(sig).unwrap()))
        });
    }
    group.finish();
}

fn handling(c: &mut Criterion) {
    let (_, sig) = signatures().swap_remove(1);
    let bodies = body_pool(&sig).unwrap();
    let pool = handler_pool(&sig).unwrap();
    let lists = handler_lists(&pool, 2);
    c.bench_function("handle/pool-lists-le-2", |b| {
        b.iter(|| {
            for (_, f) in &bodies {
                for list in &lists {
                    let hl: HandlerList = list.iter().map(|(_, ix, g)| (*ix, g.clone())).collect();
                    black_box(handle(&sig, f, &hl).unwrap());
                }
            }
        })
    });
}

fn parsing(c: &mut Criterion) {
    let src = "handle(case(inl{val[i], exc} . lookup[i] . update[i], inr{val[i], exc}) . inl{prod{val[i], st}, exc}, i => raise[i]{val[i]}, j => inl{par[j], exc} . id{par[j]})";
    c.bench_function("parse/handle-term", |b| {
        b.iter(|| black_box(parse(black_box(src)).unwrap()))
    });
}

criterion_group!(benches, laws, handling, parsing);
criterion_main!(benches);
