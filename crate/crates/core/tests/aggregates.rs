mod common;

use std::collections::HashMap;
use std::sync::Arc;

use common::{kloosterman_oracle, OracleTable};
use gsk_core::aggregates::*;
use gsk_core::weights::test_function_fx;
use gsk_core::{Error, Gi, C64};
use num_complex::Complex;

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn ring(lo: i64, hi: i64, closed_below: bool) -> Vec<Gi> {
    let mut out = Vec::new();
    for x in -12i64..=12 {
        for y in -12i64..=12 {
            let n = 2 * (x * x + y * y);
            // compare 2|z|² against the doubled bounds to stay in integers
            let above = if closed_below { n >= lo } else { n > lo };
            if above && n <= hi && (x, y) != (0, 0) {
                out.push(Gi::new(x, y));
            }
        }
    }
    out
}

/// `Λ` with unit coefficients by the plain triple loop over `(r, s)`, `n`, `ℓ`
/// and the inner `p` sum, using search-based inverses and Kloosterman sums.
fn lambda_oracle(r_scale: i64, s_scale: i64, n_scale: i64, l_scale: i64, p_scale: i64) -> C64 {
    let rs = ring(r_scale, 2 * r_scale, false);
    let ss = ring(s_scale, 2 * s_scale, false);
    let ns: Vec<Gi> = ring(n_scale / 2, 2 * n_scale, false);
    let ls = ring(l_scale, 2 * l_scale, false);
    let ps = ring(p_scale, 2 * p_scale, true);
    let mut tables: HashMap<Gi, OracleTable> = HashMap::new();
    let mut total = c(0.0, 0.0);
    for r in &rs {
        for s in &ss {
            if OracleTable::new(s).inverse(r).is_none() {
                continue;
            }
            for p in &ps {
                if OracleTable::new(p).inverse(r).is_none() {
                    continue;
                }
                let w = *p * *s;
                let t = tables.entry(w).or_insert_with(|| OracleTable::new(&w));
                let r_inv = t.inverse(r).unwrap();
                for n in &ns {
                    for l in &ls {
                        total += t.kloosterman(&(r_inv * *n), l);
                    }
                }
            }
        }
    }
    total
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

#[test]
fn b_pairs_satisfy_constraints() {
    for (r, s) in [(1.0, 1.0), (2.0, 1.0), (5.0, 2.0), (10.0, 5.0)] {
        let pairs = enumerate_b(r, s);
        for (a, b) in &pairs {
            let (na, nb) = (a.norm() as f64, b.norm() as f64);
            assert!(na > r / 2.0 && na <= r && nb > s / 2.0 && nb <= s);
            assert!(OracleTable::new(b).inverse(a).is_some());
        }
        let brute = ring(r as i64, 2 * r as i64, false)
            .iter()
            .flat_map(|a| ring(s as i64, 2 * s as i64, false).into_iter().map(move |b| (*a, b)))
            .filter(|(a, b)| OracleTable::new(b).inverse(a).is_some())
            .count();
        assert_eq!(pairs.len(), brute, "({r}, {s})");
    }
}

#[test]
fn k_rs_examples() {
    let one = Gi::one();
    let g = |x: f64| c(x, 0.0);
    // 4 g(1) + 4 g(2)
    let v = k_rs(&one, &one, &one, &one, 2.0, &g).unwrap();
    assert!((v - c(12.0, 0.0)).norm() < 1e-12);
    let zero = |_: f64| c(0.0, 0.0);
    assert_eq!(k_rs(&one, &one, &one, &one, 2.0, &zero).unwrap(), c(0.0, 0.0));
    assert!(k_rs(&Gi::new(1, 1), &Gi::new(2, 0), &one, &one, 2.0, &g).is_err());
    // against the oracle, with the oracle's own choice of inverse
    let (r, s, n, l) = (Gi::new(2, 1), Gi::new(1, 1), Gi::new(3, -1), Gi::new(1, 2));
    let mut want = c(0.0, 0.0);
    for p in ring(8, 16, true) {
        let w = p * s;
        let t = OracleTable::new(&w);
        if OracleTable::new(&p).inverse(&r).is_none() {
            continue;
        }
        want += g(p.norm() as f64) * t.kloosterman(&(t.inverse(&r).unwrap() * n), &l);
    }
    let got = k_rs(&r, &s, &n, &l, 8.0, &g).unwrap();
    assert!(rel(got, want) < 1e-9, "{got} vs {want}");
}

#[test]
fn lambda_matches_triple_loop() {
    for (r, s, n, l, p) in [(1, 1, 1, 1, 2), (2, 2, 4, 4, 4), (5, 2, 16, 16, 8)] {
        let spec = CuspSumSpec::unit_coefficients(r as f64, s as f64, n as f64, l as f64, p as f64).unwrap();
        let a = lambda_sum(&spec, LambdaOrder::PairsFirst).unwrap();
        let b = lambda_sum(&spec, LambdaOrder::ModulusFirst).unwrap();
        let want = lambda_oracle(r, s, n, l, p);
        assert!(rel(a.value, want) <= 1e-9, "{r} {s}: {} vs {want}", a.value);
        assert!(rel(b.value, want) <= 1e-9);
        if r == 2 && s == 2 {
            assert_eq!(a.pairs, 0);
            assert_eq!(a.value, c(0.0, 0.0));
        }
    }
}

#[test]
fn lambda_unit_example_and_envelope() {
    let spec = CuspSumSpec::unit_coefficients(1.0, 1.0, 1.0, 1.0, 2.0).unwrap();
    let rep = lambda_sum(&spec, LambdaOrder::PairsFirst).unwrap();
    assert_eq!(rep.pairs, 16);
    // 16 pairs × one n × one ℓ... over all associates of n, ℓ in their annuli
    let n_count = ring(0, 2, false).len() as f64;
    let l_count = ring(1, 2, false).len() as f64;
    let one = Gi::one();
    let g = |_: f64| c(1.0, 0.0);
    let mut kmax: f64 = 0.0;
    for (r, s) in enumerate_b(1.0, 1.0) {
        for n in ring(0, 2, false) {
            for l in ring(1, 2, false) {
                kmax = kmax.max(k_rs(&r, &s, &n, &l, 2.0, &g).unwrap().norm());
            }
        }
    }
    assert!(rep.value.norm() <= 16.0 * n_count * l_count * kmax + 1e-9);
    assert!((k_rs(&one, &one, &one, &one, 2.0, &g).unwrap() - c(8.0, 0.0)).norm() < 1e-12);
}

#[test]
fn lambda_zero_coefficients_and_budget() {
    let mut spec = CuspSumSpec::unit_coefficients(5.0, 2.0, 16.0, 16.0, 8.0).unwrap();
    spec.b = Arc::new(|_, _| c(0.0, 0.0));
    assert_eq!(lambda_sum(&spec, LambdaOrder::ModulusFirst).unwrap().value, c(0.0, 0.0));
    let mut spec = CuspSumSpec::unit_coefficients(5.0, 2.0, 16.0, 16.0, 8.0).unwrap();
    spec.budget = 10;
    assert!(matches!(lambda_sum(&spec, LambdaOrder::PairsFirst), Err(Error::Resource(_))));
    assert!(CuspSumSpec::<f64>::unit_coefficients(1.0, 1.0, 16.0, 1.0, 2.0).is_err());
    assert!(CuspSumSpec::<f64>::unit_coefficients(0.5, 1.0, 1.0, 1.0, 2.0).is_err());
}

#[test]
fn r_sum_orders_agree() {
    let spec = AggregateSpec::unit_coefficients(2.5, 5.5, 5.5, 9.5, 17.0, 0.5).unwrap();
    let a = r_sum(&spec, Order::Direct).unwrap();
    let b = r_sum(&spec, Order::ByModulus).unwrap();
    assert!(a.terms > 0 && a.terms == b.terms);
    assert!(rel(a.value, b.value) <= 1e-9, "{} vs {}", a.value, b.value);
    assert!(a.ratio <= 10.0);
    assert!(b.distinct > 0);
}

#[test]
fn r_sum_reference_scales() {
    // no norm lies strictly inside (1, 2), so the h weights vanish
    let spec = AggregateSpec::unit_coefficients(2.0, 4.0, 4.0, 8.0, 16.0, 0.5).unwrap();
    let a = r_sum(&spec, Order::Direct).unwrap();
    let b = r_sum(&spec, Order::ByModulus).unwrap();
    assert_eq!(a.terms, 0);
    assert!(rel(a.value, b.value) <= 1e-9);
    assert!(a.ratio <= 10.0);
}

#[test]
fn r_sum_zero_coefficients_and_budget() {
    let mut spec = AggregateSpec::unit_coefficients(2.5, 5.5, 5.5, 9.5, 17.0, 0.5).unwrap();
    spec.upsilon = Arc::new(|_| c(0.0, 0.0));
    assert_eq!(r_sum(&spec, Order::Direct).unwrap().value, c(0.0, 0.0));
    let mut spec = AggregateSpec::unit_coefficients(2.5, 5.5, 5.5, 9.5, 17.0, 0.5).unwrap();
    spec.budget = 1000;
    assert!(matches!(r_sum(&spec, Order::ByModulus), Err(Error::Resource(_))));
    assert!(AggregateSpec::<f64>::unit_coefficients(2.0, 4.0, 4.0, 8.0, 16.0, 0.0).is_err());
}

#[test]
fn memo_matches_oracle() {
    let mut memo = KloostermanMemo::<f64>::new();
    for cm in [Gi::new(2, 1), Gi::new(-1, 2), Gi::new(0, 3), Gi::new(-3, 0)] {
        for (u, v) in [(Gi::new(1, 1), Gi::new(2, 0)), (Gi::new(4, -1), Gi::new(1, 3))] {
            let got = memo.get(&u, &v, &cm).unwrap();
            assert!((got - kloosterman_oracle(&u, &v, &cm)).norm() < 1e-9);
        }
    }
    assert_eq!(memo.hits(), 0);
    // S(εu, εv; εc) = S(u, v; c) is served from the table
    let (u, v, cm) = (Gi::new(1, 1), Gi::new(2, 0), Gi::new(2, 1));
    let rotated = memo.get(&u.mul_i_pow(1), &v.mul_i_pow(1), &cm.mul_i_pow(1)).unwrap();
    assert_eq!(memo.hits(), 1);
    assert!((rotated - kloosterman_oracle(&u, &v, &cm)).norm() < 1e-9);
}

#[test]
fn level_sum_window() {
    let f = test_function_fx(16.0).unwrap();
    let (lo, hi) = gsk_core::weights::Radial::support(&f);
    let one = Gi::one();
    let rep = level_sum(&one, &one, &one, &f).unwrap();
    // every c with 2π/|c| inside the support, by a plain scan
    let tau = std::f64::consts::TAU;
    let mut want = 0;
    let mut value = c(0.0, 0.0);
    for x in -40i64..=40 {
        for y in -40i64..=40 {
            let cm = Gi::new(x, y);
            if cm.is_zero() {
                continue;
            }
            let a = tau / (cm.norm() as f64).sqrt();
            if a >= lo && a <= hi {
                want += 1;
            }
            let fv = gsk_core::weights::Radial::eval(&f, a);
            if fv.norm() != 0.0 {
                // S(1, 1; c) from the plain evaluator, itself checked against the oracle elsewhere
                value += gsk_core::char_sums::kloosterman::<f64>(&one, &one, &cm).unwrap().value * fv / cm.norm() as f64;
            }
        }
    }
    assert_eq!(rep.visited, want);
    let (vlo, vhi) = rep.visited_range.unwrap();
    assert!(vlo as f64 >= rep.window.0 && vhi as f64 <= rep.window.1);
    assert!(rel(rep.value, value) < 1e-9, "{} vs {value}", rep.value);
}

#[test]
fn level_sum_empty_window_and_conjugation() {
    let f = test_function_fx(16.0).unwrap();
    let one = Gi::one();
    let far = level_sum(&one, &one, &Gi::new(100, 0), &f).unwrap();
    assert_eq!((far.visited, far.value), (0, c(0.0, 0.0)));
    // c ↦ conj c maps qO onto itself when q is rational, and onto conj(q)O in general
    let (m, n) = (Gi::new(1, 1), Gi::new(2, -1));
    let a = level_sum(&m, &n, &Gi::new(3, 0), &f).unwrap();
    let b = level_sum(&m.conj(), &n.conj(), &Gi::new(3, 0), &f).unwrap();
    assert!(a.nonzero > 0);
    assert!(rel(a.value, b.value) < 1e-9);
    let q = Gi::new(2, 1);
    let a = level_sum(&m, &n, &q, &f).unwrap();
    let b = level_sum(&m.conj(), &n.conj(), &q.conj(), &f).unwrap();
    assert!(rel(a.value, b.value) < 1e-9);
    assert!(level_sum(&Gi::zero(), &one, &one, &f).is_err());
}

#[test]
fn bilinear_examples() {
    let alpha = |h: &Gi| c(1.0 + h.re as f64 * 0.1, h.im as f64 * 0.2);
    let beta = |k: &Gi| c(0.5, -(k.norm() as f64) * 0.05);
    // a unit modulus factorizes
    let u = 0.7;
    let r = bilinear_ratio(&alpha, &beta, 10.0, 8.0, u, &Gi::new(0, 1)).unwrap();
    let tw = |z: &Gi| C64::from_polar(1.0, u * 0.5 * (z.norm() as f64).ln());
    let sa: C64 = annulus(5.0, 10.0).iter().map(|h| alpha(h) * tw(h)).sum();
    let sb: C64 = annulus(4.0, 8.0).iter().map(|k| beta(k) * tw(k)).sum();
    assert!((r.sum - sa * sb).norm() < 1e-9);
    // u = 0, H = K = 2, c = 1 + i by nested loops
    let cm = Gi::new(1, 1);
    let r = bilinear_ratio(&alpha, &beta, 2.0, 2.0, 0.0, &cm).unwrap();
    let mut want = c(0.0, 0.0);
    for h in ring(2, 4, false) {
        for k in ring(2, 4, false) {
            want += alpha(&h) * beta(&k) * kloosterman_oracle(&h, &k, &cm);
        }
    }
    assert!((r.sum - want).norm() < 1e-12);
    assert_eq!(r.trivial, 4.0);
    let zero = |_: &Gi| c(0.0, 0.0);
    assert_eq!(bilinear_ratio(&zero, &beta, 10.0, 8.0, 0.0, &Gi::new(2, 1)).unwrap().sum, c(0.0, 0.0));
    let sm = smooth_coefficient(10.0).unwrap();
    let r = bilinear_ratio(sm.as_ref(), sm.as_ref(), 10.0, 10.0, 0.0, &Gi::new(3, 2)).unwrap();
    assert!(r.abs_sum >= r.sum.norm());
}
