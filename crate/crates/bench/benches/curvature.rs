use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use einstein4::curvature::{decompose, min_sectional, MinSectionalOptions};
use einstein4::geometry::{curvature_operator_at, FiniteDifference, ModelKind};
use einstein4::quadrature::{curvature_integrals, QuadratureSpec};
use einstein4_bench::{einstein_operators, operators};

fn algebra(c: &mut Criterion) {
    let ops = operators(64);
    c.bench_function("decompose", |b| {
        b.iter(|| ops.iter().map(|r| decompose(black_box(r)).scalar).sum::<f64>())
    });
    let einstein = einstein_operators(16);
    let opts = MinSectionalOptions::default();
    c.bench_function("min_sectional", |b| {
        b.iter(|| einstein.iter().map(|r| min_sectional(black_box(r), &opts).value).sum::<f64>())
    });
}

fn chart(c: &mut Criterion) {
    let mut group = c.benchmark_group("curvature_operator_at");
    for kind in [ModelKind::S4, ModelKind::Cp2] {
        let model = kind.standard();
        let x = model.sample_point(&[0.3, 0.6, 0.2, 0.7]);
        for (label, fd) in [("richardson", FiniteDifference::default()), ("plain", FiniteDifference::plain(1e-3))] {
            group.bench_with_input(BenchmarkId::new(label, kind), &x, |b, x| {
                b.iter(|| curvature_operator_at(&model.chart, black_box(x), &fd).unwrap())
            });
        }
    }
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("curvature_integrals");
    group.sample_size(10);
    let spec = QuadratureSpec::default().with_order(6);
    for kind in ModelKind::ALL {
        let model = kind.standard();
        group.bench_function(BenchmarkId::from_parameter(kind), |b| {
            b.iter(|| curvature_integrals(&model, &spec).unwrap().euler_characteristic())
        });
    }
    group.finish();
}

criterion_group!(benches, algebra, chart, quadrature);
criterion_main!(benches);
