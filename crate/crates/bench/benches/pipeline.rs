use criterion::{criterion_group, criterion_main, Criterion};
use mopart::mop::{solve_mop, MultiIndex};
use mopart::partner::compute_all;
use mopart::weights::{family, FamilySpec};
use mopart::zeros::find_zeros;
use std::hint::black_box;

fn bench_moments(c: &mut Criterion) {
    let w = &family(&FamilySpec::new("jacobi_pineiro", &[
        ("alpha", "0"),
        ("beta1", "0"),
        ("beta2", "-1/2"),
    ]))
    .unwrap()[0];
    c.bench_function("pearson_moments jacobi_pineiro 200", |b| {
        b.iter(|| black_box(w.pearson_moments(200).unwrap()))
    });
}

fn bench_solve(c: &mut Criterion) {
    let ws = family(&FamilySpec::new("appell", &[])).unwrap();
    c.bench_function("solve_mop appell (8,8)", |b| {
        b.iter(|| black_box(solve_mop(&ws[0], &ws[1], MultiIndex::new(8, 8), None).unwrap()))
    });
}

fn bench_partner_suite(c: &mut Criterion) {
    let ws = family(&FamilySpec::new("multiple_hermite", &[("c1", "1"), ("c2", "-1")])).unwrap();
    let rec = solve_mop(&ws[0], &ws[1], MultiIndex::new(8, 8), None).unwrap();
    c.bench_function("partner pipeline multiple_hermite (8,8)", |b| {
        b.iter(|| {
            let mut r = rec.clone();
            compute_all(&mut r, &[&ws[0], &ws[1]]).unwrap();
            black_box(r)
        })
    });
}

fn bench_roots(c: &mut Criterion) {
    let ws = family(&FamilySpec::new("appell", &[])).unwrap();
    let rec = solve_mop(&ws[0], &ws[1], MultiIndex::new(8, 8), None).unwrap();
    c.bench_function("find_zeros degree 16 at 256 bits", |b| {
        b.iter(|| black_box(find_zeros(&rec.poly, 256).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_moments,
    bench_solve,
    bench_partner_suite,
    bench_roots
);
criterion_main!(benches);
