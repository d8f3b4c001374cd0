use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lgh::families::{maximal_isotropic_subspace, so_family_v, sp_family, u_family};
use lgh::sampling::sample_from_basis;
use lgh::{compact_basis, ComplexMatrix, Eigenfamily, GroupId, LocalFrame, SampleRng, C64};

fn exp(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix_exp");
    for n in [2usize, 4, 8] {
        let basis = compact_basis(GroupId::U { n }).unwrap();
        let mut rng = SampleRng::new(1);
        let a = basis
            .matrices()
            .fold(ComplexMatrix::zeros(n), |acc, z| acc.add_scaled(rng.uniform(-0.5, 0.5), z));
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| black_box(a).exp()));
    }
    group.finish();
}

fn families() -> Vec<Eigenfamily> {
    let p = |n: usize| -> Vec<C64> { SampleRng::new(n as u64).unit_vector(n) };
    vec![
        so_family_v(6, &p(6), &maximal_isotropic_subspace(6)).unwrap(),
        u_family(3, &p(3)).unwrap(),
        sp_family(2, &p(2)).unwrap(),
    ]
}

fn frame_and_operators(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_frame");
    for fam in families() {
        let basis = compact_basis(fam.group).unwrap();
        let x = sample_from_basis(&basis, 1, 0.5, &mut SampleRng::new(7)).remove(0);
        let label = fam.group.to_string();
        group.bench_function(BenchmarkId::new("build", &label), |b| {
            b.iter(|| LocalFrame::new(black_box(&x), &basis).unwrap())
        });
        let frame = LocalFrame::new(&x, &basis).unwrap();
        let f = &fam.members[0];
        group.bench_function(BenchmarkId::new("tau", &label), |b| b.iter(|| frame.tau(black_box(f)).unwrap()));
        group.bench_function(BenchmarkId::new("kappa", &label), |b| {
            b.iter(|| frame.kappa(black_box(f), &fam.members[1]).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exp, frame_and_operators);
criterion_main!(benches);
