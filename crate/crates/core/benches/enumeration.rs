//! Enumeration throughput on the global rayon pool versus a one-thread
//! pool. Build with `--no-default-features` to time the sequential code
//! path itself.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use tdli::congruence::enumerate_congruences;
use tdli::corpus::{Corpus, CorpusConfig};
use tdli::filter::{enumerate_filters, FilterKind};
use tdli::tense::enumerate_tense_structures;
use tdli::Algebra;

type Case<'a> = (&'static str, Box<dyn Fn() + Sync + 'a>);

fn largest<'a>(it: impl Iterator<Item = &'a Algebra>) -> &'a Algebra {
    it.max_by_key(|a| a.size()).expect("corpus is nonempty")
}

fn bench(c: &mut Criterion) {
    let corpus = Corpus::build(&CorpusConfig::default()).unwrap();
    let k = largest(corpus.kalman.iter());
    let l = largest(corpus.tdli0());
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();

    let mut g = c.benchmark_group("enumeration");
    let cases: [Case; 3] = [
        ("congruences", Box::new(|| drop(enumerate_congruences(k)))),
        (
            "centered-tense-ds",
            Box::new(|| drop(enumerate_filters(k, FilterKind::CenteredTenseDs).unwrap())),
        ),
        (
            "tense-structures",
            Box::new(|| drop(enumerate_tense_structures(l, false, None).unwrap())),
        ),
    ];
    for (name, f) in &cases {
        g.bench_function(BenchmarkId::new(*name, "pool"), |b| b.iter(f));
        g.bench_function(BenchmarkId::new(*name, "one-thread"), |b| {
            b.iter(|| single.install(f))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
