use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qforms::hermitian::{verify_qnd_quat, HermDiagForm, Q_herm};
use qforms::lambda_ops::P;
use qforms::quadform::witt_equal;
use qforms::quaternion::{Quat, QuaternionAlgebra};
use qforms::rationals::{hilbert_symbol, rat};
use qforms::{DiagForm, Place};

fn herm(n: usize) -> HermDiagForm {
    let alg = QuaternionAlgebra::from_ints(-1, -3).unwrap();
    let gens = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 1, 1)];
    HermDiagForm::new(alg, gens[..n].iter().map(|&(x, y, w)| Quat::pure_ints(x, y, w)).collect()).unwrap()
}

fn quadratic(c: &mut Criterion) {
    let q = DiagForm::from_ints(&[1, -2, 3, 5, -7, 10]).unwrap();
    c.bench_function("P(6,3)", |b| b.iter(|| P(6, 3, black_box(&q)).unwrap()));
    let x = P(6, 3, &q).unwrap();
    let y = &x + &DiagForm::from_ints(&[15, -15]).unwrap().to_gw();
    c.bench_function("witt_equal on P(6,3)", |b| b.iter(|| witt_equal(black_box(&x), black_box(&y))));
    c.bench_function("hilbert_symbol at 2", |b| {
        b.iter(|| hilbert_symbol(black_box(&rat(-3 * 35)), black_box(&rat(10)), &Place::prime(2)).unwrap())
    });
}

fn hermitian(c: &mut Criterion) {
    let h3 = herm(3);
    c.bench_function("Q_herm(6,4)", |b| b.iter(|| Q_herm(6, 4, black_box(&h3)).unwrap()));
    c.bench_function("verify_qnd_quat d=4 |X|=3", |b| b.iter(|| verify_qnd_quat(4, black_box(&h3)).unwrap()));
    let h4 = herm(4);
    c.bench_function("verify_qnd_quat d=6 |X|=4", |b| b.iter(|| verify_qnd_quat(6, black_box(&h4)).unwrap()));
}

criterion_group!(benches, quadratic, hermitian);
criterion_main!(benches);
