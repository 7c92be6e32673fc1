use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gausslip_core::fractional::{c_beta_constant, integral_eigenvalue};
use gausslip_core::semigroup::kernel_derivative_l1;
use gausslip_core::{
    gauss_hermite_rule, FractionalKind, FractionalSpec, HermiteExpansion, MultiIndex, Operand, Representation,
    Semigroup,
};

fn rules(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_hermite_rule");
    for m in [16, 64, 128] {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| gauss_hermite_rule(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let sg = Semigroup::with_nodes(32, 1e-10).unwrap();
    let f = HermiteExpansion::basis(MultiIndex::new(vec![3]), 8).unwrap();
    let mut group = c.benchmark_group("poisson_kernel");
    for k in 0..=2 {
        group.bench_with_input(BenchmarkId::new("d1", k), &k, |b, &k| {
            b.iter(|| sg.ph_kernel_at(Operand::Expansion(&f), black_box(0.5), k, &[0.3]).unwrap())
        });
    }
    group.bench_function("ou_d1", |b| {
        b.iter(|| sg.ou_kernel_at(Operand::Expansion(&f), black_box(0.5), &[0.3]).unwrap())
    });
    group.bench_function("derivative_l1_k1", |b| {
        b.iter(|| kernel_derivative_l1(black_box(0.5), &[0.0], 1, 1e-8).unwrap())
    });
    group.finish();
}

fn fractional(c: &mut Criterion) {
    let mut group = c.benchmark_group("integral_eigenvalue");
    for kind in FractionalKind::ALL {
        let spec = FractionalSpec::new(kind, 0.5, Representation::Integral).unwrap();
        group.bench_function(kind.as_str(), |b| b.iter(|| integral_eigenvalue(&spec, black_box(4)).unwrap()));
    }
    group.finish();

    let mut group = c.benchmark_group("c_beta");
    for (k, beta) in [(1, 0.5), (2, 1.5), (3, 2.5)] {
        group.bench_function(format!("k{k}_beta{beta}"), |b| b.iter(|| c_beta_constant(black_box(beta), k).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, rules, kernels, fractional);
criterion_main!(benches);
