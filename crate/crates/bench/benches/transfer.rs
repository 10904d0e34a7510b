use std::sync::Arc;

use ainfty::ainfty::{check_all_higher_associativity, check_all_morphism};
use ainfty::coalgebra::oracle_transfer;
use ainfty::retract::build_retract;
use ainfty::transfer::transfer;
use ainfty::{fixtures, properties, AInftyAlgebra, DeformationRetract};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn setup(name: &str, cap: usize) -> (Arc<AInftyAlgebra>, Arc<DeformationRetract>) {
    let alg = Arc::new(fixtures::by_name(name, cap).unwrap());
    let r = Arc::new(build_retract(&alg.space, &alg.differential()).unwrap());
    (alg, r)
}

fn recursive_transfer(c: &mut Criterion) {
    let mut group = c.benchmark_group("transfer");
    group.sample_size(10);
    for name in ["exterior-massey", "twisted-ainfty"] {
        for cap in [4, 5, 6] {
            let (alg, r) = setup(name, cap);
            group.bench_with_input(BenchmarkId::new(name, cap), &cap, |b, &cap| {
                b.iter(|| transfer(&alg, &r, cap).unwrap())
            });
        }
    }
    group.finish();
}

fn coalgebra_transfer(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for cap in [4, 5] {
        let (alg, r) = setup("exterior-massey", cap);
        group.bench_with_input(BenchmarkId::new("exterior-massey", cap), &cap, |b, &cap| {
            b.iter(|| oracle_transfer(&alg, &r, cap).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("checks");
    group.sample_size(10);
    let (alg, r) = setup("exterior-massey", 6);
    let t = transfer(&alg, &r, 6).unwrap();
    group.bench_function("relations on the massey minimal model, cap 6", |b| {
        b.iter(|| check_all_higher_associativity(&t.minimal).unwrap())
    });
    group.bench_function("p is a morphism, cap 6", |b| b.iter(|| check_all_morphism(&t.projection).unwrap()));
    group.bench_function("inverses of 5 random morphisms, cap 4", |b| {
        b.iter(|| properties::inverses(1, 5, 4).unwrap())
    });
    group.finish();
}

criterion_group!(benches, recursive_transfer, coalgebra_transfer, verification);
criterion_main!(benches);
