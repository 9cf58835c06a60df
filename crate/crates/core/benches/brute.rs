use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use permpoly::perm::{is_pp_brute_seq, is_pp_hermite_with, HermiteOptions};
use permpoly::{make_field, FieldElement, SparsePoly, TrinomialParams};

fn trinomial(t: u32) -> SparsePoly {
    let field = make_field(t, None).unwrap();
    TrinomialParams {
        s: 1,
        t,
        alpha: FieldElement::ONE,
    }
    .poly(&field)
    .unwrap()
}

// Odd t: x^3 + x^2 + x permutes F_{2^t}, so every scan runs to the end.
fn brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute");
    group.sample_size(10);
    for t in [13u32, 17, 19] {
        let p = trinomial(t);
        group.bench_with_input(BenchmarkId::new("seq", t), &p, |b, p| {
            b.iter(|| is_pp_brute_seq(p).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", t), &p, |b, p| {
            b.iter(|| permpoly::perm::is_pp_brute_par(p).unwrap())
        });
    }
    group.finish();
}

fn hermite(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermite");
    group.sample_size(10);
    for t in [5u32, 7] {
        let p = trinomial(t);
        for skip in [false, true] {
            let opts = HermiteOptions {
                skip_even_powers: skip,
            };
            let name = if skip { "odd-k" } else { "all-k" };
            group.bench_with_input(BenchmarkId::new(name, t), &p, |b, p| {
                b.iter(|| is_pp_hermite_with(p, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, brute, hermite);
criterion_main!(benches);
