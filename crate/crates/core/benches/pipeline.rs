use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use orbifold_hf::catalog::{random_type_a, RandomTypeAParams};
use orbifold_hf::orbifold::{d_n, hfo_many, hfo_structure, orb_extend, OrbifoldOrders};
use orbifold_hf::tensor::box_a_d_with;
use orbifold_hf::{Execution, TypeAStructure};

const POLICIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

/// A random module with at least one ρ23 operation, so boxing with `D_n`
/// has a nonzero differential.
fn module() -> TypeAStructure {
    let params = RandomTypeAParams {
        max_generators: 12,
        ..Default::default()
    };
    (0..)
        .map(|seed| random_type_a(seed, &params).unwrap())
        .find(|a| {
            a.len() >= 6
                && a.ops()
                    .any(|(_, w, _)| w.contains(&orbifold_hf::Basis::R23))
        })
        .unwrap()
}

fn box_product(c: &mut Criterion) {
    let a = module();
    let big = hfo_structure(&a, &OrbifoldOrders::new(vec![4, 5, 6, 1]).unwrap()).unwrap();
    let d = d_n(7).unwrap();
    let mut g = c.benchmark_group("box_a_d");
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::new(name, big.len()), &exec, |b, &exec| {
            b.iter(|| box_a_d_with(black_box(&big), &d, exec).unwrap())
        });
    }
    g.finish();
}

fn structure_check(c: &mut Criterion) {
    let e = orb_extend(&module(), 40).unwrap();
    let mut g = c.benchmark_group("check_type_a");
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::new(name, e.len()), &exec, |b, &exec| {
            b.iter(|| assert!(e.check_with(exec).unwrap()))
        });
    }
    g.finish();
}

fn orderings(c: &mut Criterion) {
    let a = module();
    let base = [2, 3, 4, 5];
    let mut perms = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let l = 6 - i - j - k;
                if i != j && j != k && i != k && l < 4 {
                    perms.push(
                        OrbifoldOrders::new(vec![base[i], base[j], base[k], base[l]]).unwrap(),
                    );
                }
            }
        }
    }
    let mut g = c.benchmark_group("hfo_many");
    g.sample_size(20);
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::new(name, perms.len()), &exec, |b, &exec| {
            b.iter(|| hfo_many(&a, &perms, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, box_product, structure_check, orderings);
criterion_main!(benches);
