use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use skeinrec::oracle::{bracket, pin_convention};
use skeinrec::{
    braid_to_morse, check_relation, find_link, parse_braid, verify_recursion, ClosureSide, FunctorSpec, Relation,
    SkeinContext, Var,
};

fn links() -> Vec<(&'static str, skeinrec::MorseWord)> {
    ["unknot", "hopf", "trefoil", "figure-eight"]
        .into_iter()
        .map(|n| (n, find_link(n).unwrap().word().clone()))
        .collect()
}

fn homfly(c: &mut Criterion) {
    let mut g = c.benchmark_group("homfly");
    for (name, w) in links() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &w, |b, w| {
            b.iter(|| SkeinContext::homfly(Var::T).eval(black_box(w)).unwrap())
        });
    }
    let alt = braid_to_morse(&parse_braid("3; 1 -2 1 -2 1 -2").unwrap(), ClosureSide::Left);
    g.bench_function("braid-3-6", |b| b.iter(|| SkeinContext::homfly(Var::T).eval(black_box(&alt)).unwrap()));
    g.finish();
}

fn kauffman(c: &mut Criterion) {
    let mut g = c.benchmark_group("kauffman");
    for (name, w) in links() {
        let u = w.unoriented(Var::S);
        g.bench_with_input(BenchmarkId::from_parameter(name), &u, |b, u| {
            b.iter(|| SkeinContext::kauffman(Var::S).eval(black_box(u)).unwrap())
        });
    }
    g.finish();
}

fn recursion(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_recursion");
    g.sample_size(10);
    for (name, w) in links() {
        for spec in FunctorSpec::all() {
            g.bench_with_input(BenchmarkId::new(spec.id.name(), name), &w, |b, w| {
                b.iter(|| verify_recursion(&spec, black_box(w)).unwrap())
            });
        }
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    c.bench_function("check_relation/all", |b| {
        b.iter(|| {
            for spec in FunctorSpec::all() {
                for r in Relation::ALL {
                    assert!(check_relation(&spec, r).unwrap().holds);
                }
            }
        })
    });
}

fn oracle(c: &mut Criterion) {
    let words: Vec<_> = links().into_iter().map(|(_, w)| w).collect();
    c.bench_function("oracle/pin", |b| b.iter(|| pin_convention(black_box(&words[..2])).unwrap()));
    c.bench_function("oracle/bracket-figure-eight", |b| b.iter(|| bracket(black_box(&words[3])).unwrap()));
}

criterion_group!(benches, homfly, kauffman, recursion, relations, oracle);
criterion_main!(benches);
