//! Fake-generation throughput: the per-fake work is embarrassingly parallel,
//! so the default run fans out across the rayon pool and the comparison run
//! pins the same workload to one thread.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use chaff_core::faker::{generate_fakes, Bank, FakeSpec, FakerContext};
use chaff_core::lexicon::{LocalGrammar, LocalReplacements, ReplacementCache, Warnings};
use chaff_core::text::tokenize;

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name);
    std::fs::read_to_string(path).expect("fixture readable")
}

fn bench_generation(c: &mut Criterion) {
    let real = tokenize(&fixture("real.txt"));
    let cache = ReplacementCache::in_memory();
    let warnings = Warnings::default();
    let ctx = FakerContext {
        cache: &cache,
        provider: LocalReplacements::bundled(),
        checker: &LocalGrammar,
        warnings: &warnings,
    };
    let mut spec = FakeSpec::new(32, 7);
    spec.bank = Bank::parse(&fixture("bank.txt")).expect("bank parses");
    // Warm the replacement cache so every timed run sees the same hits.
    generate_fakes(&real, &spec, &ctx).expect("warmup");

    let mut group = c.benchmark_group("generate_32_fakes");
    group.sample_size(10);

    #[cfg(feature = "parallel")]
    {
        group.bench_function("thread_pool", |b| {
            b.iter(|| black_box(generate_fakes(&real, &spec, &ctx).expect("generation")))
        });
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        group.bench_function("single_thread", |b| {
            b.iter(|| {
                single.install(|| black_box(generate_fakes(&real, &spec, &ctx).expect("generation")))
            })
        });
    }

    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(generate_fakes(&real, &spec, &ctx).expect("generation")))
    });

    group.finish();
}

criterion_group!(benches, bench_generation);
criterion_main!(benches);
