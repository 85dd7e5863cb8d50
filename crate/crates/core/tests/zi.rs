mod common;

use common::{ball, is_prime_oracle, projective_line_size, units_with_inverse};
use gsk_core::zi::*;
use gsk_core::{GaussianInt, Gi};
use num_bigint::BigInt;
use proptest::prelude::*;

fn g(re: i64, im: i64) -> Gi {
    Gi::new(re, im)
}

#[test]
fn gcd_examples() {
    assert_eq!(gcd(&g(2, 0), &g(1, 1)).unwrap(), g(1, 1));
    assert_eq!(gcd(&g(-3, 4), &Gi::zero()).unwrap(), g(4, 3));
    assert_eq!(gcd(&g(3, 0), &g(5, 0)).unwrap(), Gi::one());
    assert!(gcd(&Gi::zero(), &Gi::zero()).is_err());
}

#[test]
fn bezout_examples() {
    let (u, t) = bezout(&Gi::one(), &Gi::one()).unwrap();
    assert_eq!(u - t, Gi::one());
    let (r, s) = (g(1, 1), g(3, 0));
    let (u, t) = bezout(&r, &s).unwrap();
    assert_eq!(r * u - s * t, Gi::one());
    assert!(bezout(&g(2, 0), &g(2, 0)).is_err());
}

#[test]
fn factorize_examples() {
    let f = factorize(&g(2, 0)).unwrap();
    assert_eq!(f.unit, g(0, -1));
    assert_eq!(f.primes, vec![(g(1, 1), 2)]);
    let f = factorize(&g(5, 0)).unwrap();
    assert_eq!(f.primes.len(), 2);
    assert!(f.primes.iter().all(|(p, e)| p.norm() == 5 && *e == 1));
    assert_eq!(f.reconstruct(), g(5, 0));
    let f = factorize(&g(0, 1)).unwrap();
    assert_eq!(f.unit, g(0, 1));
    assert!(f.primes.is_empty());
    assert!(factorize(&Gi::zero()).is_err());
}

#[test]
fn moebius_examples() {
    assert_eq!(moebius(&g(1, 1)).unwrap(), -1);
    assert_eq!(moebius(&g(2, 0)).unwrap(), 0);
    assert_eq!(moebius(&g(5, 0)).unwrap(), 1);
    assert!(moebius(&Gi::zero()).is_err());
}

#[test]
fn divisor_examples() {
    let d = divisors(&Gi::one(), DivisorMode::AllAssociates).unwrap();
    assert_eq!(d.len(), 4);
    assert_eq!(divisors(&g(1, 1), DivisorMode::AllAssociates).unwrap().len(), 8);
    assert_eq!(divisors(&g(1, 1), DivisorMode::OnePerClass).unwrap(), vec![g(1, 0), g(1, 1)]);
    let s: i32 = divisors(&g(2, 0), DivisorMode::AllAssociates)
        .unwrap()
        .iter()
        .map(|d| moebius(d).unwrap())
        .sum();
    assert_eq!(s, 0);
}

#[test]
fn residue_examples() {
    assert_eq!(residues_mod(&g(1, 1)).unwrap().len(), 2);
    assert_eq!(reduced_residues_mod(&g(2, 0)).unwrap().len(), 2);
    let inv = inv_mod(&g(0, 1), &g(2, 0)).unwrap();
    assert!(inv.congruent(&g(0, -1), &g(2, 0)));
    assert!(inv_mod(&g(1, 1), &g(2, 0)).is_err());
    assert!(residues_mod(&Gi::zero()).is_err());
}

#[test]
fn prime_count_examples() {
    assert_eq!(gaussian_prime_count(2.0), 4);
    assert_eq!(gaussian_prime_count(9.0), 12);
    assert_eq!(gaussian_prime_count(1.0), 0);
}

#[test]
fn prime_count_matches_oracle() {
    for x in [2.0, 3.5, 10.0, 25.0, 60.0, 137.0] {
        let want = ball(x as i64).iter().filter(|z| (z.norm() as f64) > x / 2.0 && is_prime_oracle(z)).count();
        assert_eq!(gaussian_prime_count(x), want as u64, "x = {x}");
    }
}

#[test]
fn index_examples() {
    assert_eq!(index_gamma0(&g(1, 1)).unwrap(), 3);
    assert_eq!(index_gamma0(&Gi::one()).unwrap(), 1);
    assert_eq!(index_gamma0(&g(3, 0)).unwrap(), 10);
    assert!(index_gamma0(&Gi::zero()).is_err());
}

#[test]
fn index_matches_projective_line() {
    for r in ball(25) {
        if r.canonical() != r {
            continue;
        }
        assert_eq!(index_gamma0(&r).unwrap(), projective_line_size(&r), "r = {r}");
    }
}

#[test]
fn residue_counts_and_inverses() {
    for w in ball(200) {
        let res = residues_mod(&w).unwrap();
        assert_eq!(res.len() as i64, w.norm(), "w = {w}");
        if w.norm() <= 40 {
            for d in reduced_residues_mod(&w).unwrap() {
                let ds = inv_mod(&d, &w).unwrap();
                assert!((d * ds).congruent(&Gi::one(), &w));
            }
            let want = units_with_inverse((w.re, w.im)).len();
            assert_eq!(reduced_residues_mod(&w).unwrap().len(), want, "w = {w}");
        }
    }
}

#[test]
fn moebius_sum_over_divisors() {
    for n in ball(2000) {
        let s: i32 = divisors(&n, DivisorMode::AllAssociates).unwrap().iter().map(|d| moebius(d).unwrap()).sum();
        let want = if n.is_unit() { 4 } else { 0 };
        assert_eq!(s, want, "n = {n}");
    }
}

#[test]
fn moebius_multiplicative() {
    let pts = ball(100);
    for m in &pts {
        for n in &pts {
            if (*m * *n).norm() > 10_000 || !coprime(m, n) {
                continue;
            }
            assert_eq!(moebius(&(*m * *n)).unwrap(), moebius(m).unwrap() * moebius(n).unwrap());
        }
    }
}

#[test]
fn wide_integer_types_agree() {
    let a = GaussianInt::<i128>::new(123_456_789, -987_654_321);
    let b = GaussianInt::<i128>::new(-31_415, 27_182);
    let big = |z: &GaussianInt<i128>| GaussianInt::<BigInt>::new(BigInt::from(z.re), BigInt::from(z.im));
    let g1 = gcd(&a, &b).unwrap();
    let g2 = gcd(&big(&a), &big(&b)).unwrap();
    assert_eq!(big(&g1), g2);
    let f = factorize(&GaussianInt::<BigInt>::new(BigInt::from(1_000_003), BigInt::from(17))).unwrap();
    assert_eq!(f.reconstruct(), GaussianInt::<BigInt>::new(BigInt::from(1_000_003), BigInt::from(17)));
}

fn small() -> impl Strategy<Value = Gi> {
    (-60i64..=60, -60i64..=60).prop_map(|(a, b)| Gi::new(a, b))
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in small(), b in small()) {
        prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn canonical_is_first_quadrant(a in small()) {
        prop_assume!(!a.is_zero());
        let c = a.canonical();
        prop_assert!(c.re > 0 && c.im >= 0);
        prop_assert!(c.is_associate(&a));
    }

    #[test]
    fn gcd_is_greatest(a in small(), b in small()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let d = gcd(&a, &b).unwrap();
        prop_assert!(d.divides(&a) && d.divides(&b));
        for e in [Gi::new(1, 1), Gi::new(2, 1), Gi::new(3, 0), Gi::new(1, 2)] {
            if e.divides(&a) && e.divides(&b) {
                prop_assert!(e.divides(&d));
            }
        }
        for k in 0..4 {
            prop_assert_eq!(gcd(&a.mul_i_pow(k), &b.mul_i_pow(3 * k)).unwrap(), d);
        }
    }

    #[test]
    fn factorization_reconstructs(a in small()) {
        prop_assume!(!a.is_zero());
        let f = factorize(&a).unwrap();
        prop_assert_eq!(f.reconstruct(), a);
        for (p, _) in &f.primes {
            prop_assert!(is_prime_oracle(p));
            prop_assert_eq!(p.canonical(), *p);
        }
    }

    #[test]
    fn bezout_solves(r in small(), s in small()) {
        prop_assume!(!r.is_zero() && !s.is_zero() && coprime(&r, &s));
        let (u, t) = bezout(&r, &s).unwrap();
        prop_assert_eq!(r * u - s * t, Gi::one());
    }

    #[test]
    fn reduction_is_idempotent(a in small(), w in small()) {
        prop_assume!(!w.is_zero());
        let r = a.reduce(&w);
        prop_assert_eq!(r.reduce(&w), r);
        prop_assert!(r.congruent(&a, &w));
        prop_assert!(2 * r.norm() <= w.norm());
    }
}
