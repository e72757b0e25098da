//! Sequential vs parallel timings for the hot kernels.
//!
//! `cargo bench -p lfd-core` compares both execution modes. With
//! `--no-default-features` the parallel rows run sequentially too.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lfd_core::catalog::{lookup, table88_basis, Payload};
use lfd_core::eulerhom::{build_saito_pair, strong_euler_check_with};
use lfd_core::liecoh::{lie_betti_with, LiePresentation};
use lfd_core::logder::{discriminant_with, verify_lfd_with};
use lfd_core::minorfam::minor_table;
use lfd_core::poly::groebner::Budget;
use lfd_core::poly::squarefree_test_with;
use lfd_core::{Exec, DEFAULT_SEED};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn quiver_basis(id: &str) -> lfd_core::logder::VectorFieldBasis {
    match lookup(id).unwrap().payload {
        Payload::Quiver(rep) => rep.basis().unwrap(),
        _ => unreachable!("{id} is a quiver entry"),
    }
}

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("discriminant");
    g.sample_size(10);
    let cases = [("binary-cubics", table88_basis(8).unwrap()), ("star-2-3", quiver_basis("star-2-3"))];
    for (name, b) in &cases {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), b, |bench, b| {
                bench.iter(|| discriminant_with(black_box(b), exec))
            });
        }
    }
    g.finish();
}

fn squarefree(c: &mut Criterion) {
    let mut g = c.benchmark_group("squarefree");
    let b = quiver_basis("star-2-3");
    let f = discriminant_with(&b, Exec::Sequential);
    for (mode, exec) in MODES {
        g.bench_function(mode, |bench| bench.iter(|| squarefree_test_with(black_box(&f), 20, DEFAULT_SEED, exec)));
    }
    g.finish();
}

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_lfd");
    let b = table88_basis(7).unwrap();
    for (mode, exec) in MODES {
        g.bench_function(mode, |bench| bench.iter(|| verify_lfd_with(black_box(&b), 20, DEFAULT_SEED, exec)));
    }
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("lie_betti");
    let cases = [("gl3", LiePresentation::gl(3)), ("b3", LiePresentation::borel(3))];
    for (name, p) in &cases {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), p, |bench, p| {
                bench.iter(|| lie_betti_with(black_box(p), exec))
            });
        }
    }
    g.finish();
}

fn strong_euler(c: &mut Criterion) {
    let mut g = c.benchmark_group("strong_euler");
    g.sample_size(10);
    let p = build_saito_pair(&table88_basis(6).unwrap()).unwrap();
    let budget = Budget::default();
    for (mode, exec) in MODES {
        g.bench_function(mode, |bench| bench.iter(|| strong_euler_check_with(black_box(&p), &budget, exec)));
    }
    g.finish();
}

fn minors(c: &mut Criterion) {
    let mut g = c.benchmark_group("minor_table");
    g.sample_size(10);
    let rows = match lookup("table87").unwrap().payload {
        Payload::MinorFamily(rows) => rows,
        _ => unreachable!(),
    };
    for (mode, exec) in MODES {
        g.bench_function(mode, |bench| bench.iter(|| minor_table(black_box(&rows), 8, DEFAULT_SEED, exec)));
    }
    g.finish();
}

criterion_group!(benches, determinants, squarefree, verify, cohomology, strong_euler, minors);
criterion_main!(benches);
