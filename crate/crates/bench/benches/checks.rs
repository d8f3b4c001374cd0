use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lgh::duality::standard_pairs;
use lgh::families::{u_family, verify_eigenfamily};
use lgh::identities::verify_matrix_identities;
use lgh::morphisms::{random_morphism, verify_harmonic_morphism};
use lgh::sampling::sample_from_basis;
use lgh::{compact_basis, dual_pair, GroupId, SampleRng};

fn identities(c: &mut Criterion) {
    c.bench_function("matrix_identities_n10", |b| b.iter(|| verify_matrix_identities(black_box(10), 1e-12).unwrap()));
}

fn eigenfamily(c: &mut Criterion) {
    let fam = u_family(3, &SampleRng::new(3).unit_vector(3)).unwrap();
    let basis = compact_basis(fam.group).unwrap();
    let samples = sample_from_basis(&basis, 100, 0.5, &mut SampleRng::new(4));
    c.bench_function("verify_eigenfamily_u3_100", |b| {
        b.iter(|| verify_eigenfamily(&fam, &basis, black_box(&samples), 1e-8).unwrap())
    });
}

fn morphism(c: &mut Criterion) {
    let mut rng = SampleRng::new(5);
    let fam = u_family(3, &rng.unit_vector(3)).unwrap();
    let basis = compact_basis(GroupId::U { n: 3 }).unwrap();
    let samples = sample_from_basis(&basis, 50, 0.5, &mut rng);
    let mut group = c.benchmark_group("verify_harmonic_morphism_u3_50");
    for degree in 1..=3 {
        let m = random_morphism(&fam, degree, 1e-3, &mut rng).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(degree), &m, |b, m| {
            b.iter(|| verify_harmonic_morphism(m, &basis, black_box(&samples), 1e-7).unwrap())
        });
    }
    group.finish();
}

fn pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("dual_pair");
    for g in standard_pairs() {
        group.bench_with_input(BenchmarkId::from_parameter(g), &g, |b, &g| b.iter(|| dual_pair(black_box(g)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, identities, eigenfamily, morphism, pairs);
criterion_main!(benches);
