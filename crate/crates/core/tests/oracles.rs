//! Library results checked against small independent reimplementations.

use num_traits::{One, Signed, Zero};
use qforms::hermitian::{nq_multiplicity, N_coeff};
use qforms::lambda_ops::lambda_d;
use qforms::quadform::{diagonalize_gram, gw_equal};
use qforms::quaternion::{Quat, QuaternionAlgebra};
use qforms::rationals::{hilbert_symbol, rat, ratio, squarefree_rep};
use qforms::{DiagForm, GWClass, Place, Rat};

fn legendre(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == p - 1 {
        -1
    } else {
        r
    }
}

fn split(mut a: i64, p: i64) -> (u32, i64) {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    (v, a)
}

/// Hilbert symbol of nonzero integers from the classical closed formulas.
fn hilbert_oracle(a: i64, b: i64, p: Option<i64>) -> i64 {
    let Some(p) = p else {
        return if a < 0 && b < 0 { -1 } else { 1 };
    };
    let (alpha, u) = split(a, p);
    let (beta, v) = split(b, p);
    if p == 2 {
        let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) as u32;
        let omega = |x: i64| ((x.rem_euclid(8).pow(2) - 1) / 8 % 2) as u32;
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let sign = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
    let lu = if beta % 2 == 1 { legendre(u, p) } else { 1 };
    let lv = if alpha % 2 == 1 { legendre(v, p) } else { 1 };
    sign * lu * lv
}

#[test]
fn hilbert_symbols_match_closed_formulas() {
    let values: Vec<i64> = (-30..=30).filter(|&x| x != 0).collect();
    let places = [None, Some(2), Some(3), Some(5), Some(7), Some(11), Some(13)];
    for &a in &values {
        for &b in &values {
            for p in places {
                let v = match p {
                    None => Place::Real,
                    Some(p) => Place::prime(p as u64),
                };
                let ours = hilbert_symbol(&rat(a), &rat(b), &v).unwrap() as i64;
                assert_eq!(ours, hilbert_oracle(a, b, p), "({a}, {b}) at {v}");
            }
        }
    }
}

#[test]
fn hilbert_symbol_frozen_values() {
    let cases = [
        (-1, -1, Place::Real, -1),
        (-1, -1, Place::prime(2), -1),
        (-1, -1, Place::prime(3), 1),
        (2, 5, Place::prime(5), -1),
        (2, 5, Place::prime(2), -1),
        (-1, 3, Place::prime(3), -1),
        (3, 7, Place::prime(7), -1),
        (3, 7, Place::prime(3), 1),
    ];
    for (a, b, v, expected) in cases {
        assert_eq!(hilbert_symbol(&rat(a), &rat(b), &v).unwrap(), expected, "({a}, {b}) at {v}");
    }
}

#[test]
fn exterior_powers_are_sums_over_subsets() {
    let forms: [&[i64]; 4] = [&[1, 2, 3], &[-1, 5, 7, -10], &[2, 2, -3, 6, 15], &[-7, -7]];
    for entries in forms {
        let q = DiagForm::from_ints(entries).unwrap();
        let n = entries.len();
        for d in 0..=n + 1 {
            let mut oracle = GWClass::zero();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize == d {
                    let prod: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| entries[i]).product();
                    oracle = &oracle + &GWClass::of_rat(&rat(prod)).unwrap();
                }
            }
            assert!(gw_equal(&lambda_d(&q, d), &oracle), "{entries:?} d = {d}");
        }
    }
}

/// `N` and `N'` by enumerating the disjoint pairs `(A, B)` with `2|A| + |B| = d`,
/// each weighted `2^{|A|+|B|−2}`.
fn n_oracle(x: usize, d: usize, min_a: u32) -> i64 {
    let mut total = 0;
    for a in 0u32..(1 << x) {
        for b in 0u32..(1 << x) {
            let (na, nb) = (a.count_ones(), b.count_ones());
            if a & b == 0 && (2 * na + nb) as usize == d && na >= min_a {
                total += 1i64 << (na + nb - 2);
            }
        }
    }
    total
}

#[test]
fn nq_coefficients_match_enumeration() {
    for x in 2..=5 {
        for d in (4..=2 * x).step_by(2) {
            assert_eq!(N_coeff(x, d).unwrap(), n_oracle(x, d, 0), "N({x},{d})");
            assert_eq!(nq_multiplicity(x, d).unwrap(), n_oracle(x, d, 2), "N'({x},{d})");
        }
    }
}

#[test]
fn nq_coefficients_frozen() {
    let table = [
        (2, 4, 1, 1),
        (3, 4, 9, 3),
        (3, 6, 2, 2),
        (4, 4, 34, 6),
        (4, 6, 32, 32),
        (4, 8, 4, 4),
    ];
    for (x, d, n, n2) in table {
        assert_eq!(N_coeff(x, d).unwrap(), n, "N({x},{d})");
        assert_eq!(nq_multiplicity(x, d).unwrap(), n2, "N'({x},{d})");
    }
}

fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut acc = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let pivot = m[c][c].clone();
        acc *= &pivot;
        for r in c + 1..n {
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    acc
}

fn basis() -> [Quat; 4] {
    [
        Quat::scalar(Rat::one()),
        Quat::pure_ints(1, 0, 0),
        Quat::pure_ints(0, 1, 0),
        Quat::pure_ints(0, 0, 1),
    ]
}

#[test]
fn reduced_norm_squared_is_left_multiplication_determinant() {
    for (a, b) in [(-1, -1), (2, 5), (-3, 7), (1, 1), (6, -10)] {
        let alg = QuaternionAlgebra::from_ints(a, b).unwrap();
        for c in [[1, 0, 0, 0], [0, 1, 2, 3], [2, -1, 1, -1], [3, 5, -2, 7]] {
            let x = Quat(c.map(rat));
            let cols: Vec<Quat> = basis().iter().map(|e| alg.mul(&x, e)).collect();
            let m: Vec<Vec<Rat>> = (0..4).map(|r| (0..4).map(|k| cols[k].0[r].clone()).collect()).collect();
            let n = alg.nrd(&x);
            assert_eq!(det(m), &n * &n, "{x:?} in ({a}, {b})");
        }
    }
}

#[test]
fn gram_diagonalization_preserves_determinant_class() {
    let grams: [[[i64; 3]; 3]; 4] = [
        [[0, 1, 0], [1, 0, 0], [0, 0, 3]],
        [[2, 1, 1], [1, 2, 1], [1, 1, 2]],
        [[0, 2, -1], [2, 0, 5], [-1, 5, 0]],
        [[1, 3, 0], [3, 9, 2], [0, 2, -4]],
    ];
    for g in grams {
        let m: Vec<Vec<Rat>> = g.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let diag = diagonalize_gram(&m).unwrap();
        let dprod: Rat = diag.iter().product();
        let full = det(m);
        assert_eq!(squarefree_rep(&dprod).unwrap(), squarefree_rep(&full).unwrap(), "{g:?}");
        // positive definite Gram matrices stay positive definite
        if g == [[2, 1, 1], [1, 2, 1], [1, 1, 2]] {
            assert!(diag.iter().all(|x| x.is_positive()));
        }
    }
    assert!(diagonalize_gram(&[vec![ratio(1, 2), rat(1)], vec![rat(1), rat(2)]]).is_err());
}
