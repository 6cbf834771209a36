use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use strictify_core::demo::{parity, parity_signature};
use strictify_core::{
    canonical_d, nonstrictify, normalize_adapters, seq_normal_form, strictify_expand,
    strictify_shallow, MorC, ObjC, ObjD, Signature, TermGen,
};

/// Right-nested and left-nested trees over `n` copies of `W`.
fn combs(n: usize) -> (ObjC, ObjC) {
    let w = ObjC::base("W");
    let mut right = w.clone();
    let mut left = w.clone();
    for _ in 1..n {
        right = ObjC::tensor(w.clone(), right);
        left = ObjC::tensor(left, w.clone());
    }
    (right, left)
}

fn canonical(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_d");
    for n in [2, 4, 8, 16] {
        let (a, b) = combs(n);
        let (x, y) = (ObjD::wire(a), ObjD::wire(b));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, _| {
            bch.iter(|| canonical_d(black_box(&x), black_box(&y)).unwrap())
        });
    }
    group.finish();
}

fn normalize(c: &mut Criterion) {
    let sig = Signature::catw();
    let mut group = c.benchmark_group("normalize_rebracketing");
    for n in [2, 4, 8] {
        let (a, b) = combs(n);
        let k = canonical_d(&ObjD::wire(a), &ObjD::wire(b)).unwrap();
        let f = nonstrictify(&k, &sig).unwrap();
        let t = strictify_expand(&MorC::comp(f.clone(), f.invert().unwrap()), &sig).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |bch, t| {
            bch.iter(|| normalize_adapters(black_box(t), &sig).unwrap())
        });
    }
    group.finish();
}

fn slicing(c: &mut Criterion) {
    let sig = parity_signature();
    let mut group = c.benchmark_group("seq_normal_form_parity");
    for n in [4, 16, 64] {
        let t = parity(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |bch, t| {
            bch.iter(|| seq_normal_form(black_box(t), &sig).unwrap())
        });
    }
    group.finish();
}

fn round_trip(c: &mut Criterion) {
    let sig = Signature::catw();
    let mut gen = TermGen::new(&sig, 42);
    let terms: Vec<MorC> = (0..100).map(|_| gen.random_mor(5)).collect();
    c.bench_function("strictify_then_nonstrictify_100", |b| {
        b.iter(|| {
            for f in &terms {
                let t = strictify_shallow(black_box(f), &sig).unwrap();
                black_box(nonstrictify(&t, &sig).unwrap());
            }
        })
    });
}

criterion_group!(benches, canonical, normalize, slicing, round_trip);
criterion_main!(benches);
