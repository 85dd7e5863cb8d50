use gsk_core::sieve::*;
use gsk_core::{Gi, C64};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// `e(Re(α n))` written out with cos and sin.
fn phase(alpha: C64, n: &Gi) -> C64 {
    let t = std::f64::consts::TAU * (alpha.re * n.re as f64 - alpha.im * n.im as f64);
    c(t.cos(), t.sin())
}

fn poly_oracle(coeffs: &CoefficientVector<f64>, alpha: C64) -> C64 {
    coeffs.entries().iter().map(|(n, v)| v * phase(alpha, n)).sum()
}

#[test]
fn trig_poly_examples() {
    let cv = CoefficientVector::new(vec![(Gi::one(), c(1.0, 0.0)), (Gi::new(1, 1), c(0.5, -2.0)), (Gi::new(0, -2), c(0.0, 1.0))], 4.0).unwrap();
    let at0 = trig_poly(&cv, c(0.0, 0.0), 4.0).unwrap();
    assert!((at0 - c(1.5, -1.0)).norm() < 1e-15);
    let one = CoefficientVector::new(vec![(Gi::one(), c(1.0, 0.0))], 1.0).unwrap();
    for alpha in [c(0.3, 0.1), c(-1.7, 2.2)] {
        let v = trig_poly(&one, alpha, 1.0).unwrap();
        assert!((v - phase(alpha, &Gi::one())).norm() < 1e-14);
        let w = trig_poly(&cv, alpha, 4.0).unwrap();
        assert!((w - poly_oracle(&cv, alpha)).norm() < 1e-13);
        // Cauchy–Schwarz
        assert!(w.norm_sqr() <= cv.support_len() as f64 * cv.norm_sq() * (1.0 + 1e-14));
    }
    assert!(trig_poly(&cv, c(0.0, 0.0), 2.0).is_err());
    assert!(CoefficientVector::new(vec![(Gi::zero(), c(1.0, 0.0))], 4.0).is_err());
    assert!(CoefficientVector::new(vec![(Gi::new(2, 1), c(1.0, 0.0))], 4.0).is_err());
    assert!(CoefficientVector::<f64>::zeros(0.5).is_err());
}

#[test]
fn spacing_examples() {
    assert_eq!(spacing_m(0.1, &[c(0.2, 0.3)]).unwrap(), 1);
    assert_eq!(spacing_m(0.1, &[c(0.0, 0.0), c(0.5, 0.0)]).unwrap(), 1);
    assert_eq!(spacing_m(0.1, &[c(0.0, 0.0), c(0.0, 0.0)]).unwrap(), 2);
    // 0 and 1 coincide modulo Z[i]
    assert_eq!(spacing_m(0.1, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap(), 2);
    assert!(spacing_m(0.0, &[c(0.0, 0.0)]).is_err());
    assert!(spacing_m(0.6, &[c(0.0, 0.0)]).is_err());
    assert_eq!(spacing_m(0.1, &[]).unwrap(), 0);
}

#[test]
fn general_sieve_edge_cases() {
    let cv = CoefficientVector::new(vec![(Gi::new(1, 2), c(0.3, 0.4))], 5.0).unwrap();
    let empty = general_sieve_check(&SieveInstance { points: vec![], coeffs: cv.clone(), delta: 0.25 }).unwrap();
    assert_eq!((empty.lhs, empty.rhs, empty.ratio), (0.0, 0.0, 0.0));
    let single = general_sieve_check(&SieveInstance { points: vec![c(0.37, -0.81)], coeffs: cv.clone(), delta: 0.25 }).unwrap();
    assert!(single.holds() && single.ratio <= 1.0);
    assert!((single.lhs - poly_oracle(&cv, c(0.37, -0.81)).norm_sqr()).abs() < 1e-14);
}

#[test]
fn farey_examples() {
    let pts = farey_points(1.0f64, &Gi::one()).unwrap();
    assert_eq!(pts.len(), 4);
    assert!(pts.iter().all(|p| p.re.fract() == 0.0 && p.im.fract() == 0.0));
    assert!(farey_points(1.0, &Gi::new(2, 0)).unwrap().is_empty());
    assert!(farey_points(0.5, &Gi::one()).is_err());
    assert!(farey_moduli(4.0, &Gi::zero()).is_err());
}

#[test]
fn farey_count_matches_enumeration() {
    let q_max = 20i64;
    let got = farey_fractions(q_max as f64, &Gi::one()).unwrap().len() as i64;
    // Σ φ(q) over 0 < |q|² <= Q; the box [0, n)² covers each class of O/qO n times
    let sum_phi: i64 = (-5i64..=5)
        .flat_map(|x| (-5i64..=5).map(move |y| Gi::new(x, y)))
        .filter(|q| !q.is_zero() && q.norm() <= q_max)
        .map(|q| {
            let n = q.norm();
            let mut units = 0;
            for a in 0..n {
                for b in 0..n {
                    if gsk_core::zi::gcd(&Gi::new(a, b), &q).unwrap().is_unit() {
                        units += 1;
                    }
                }
            }
            units / n
        })
        .sum();
    assert_eq!(got, sum_phi);
}

#[test]
fn special_sieve_examples() {
    let one = CoefficientVector::new(vec![(Gi::one(), c(1.0, 0.0))], 1.0).unwrap();
    let r = special_sieve_check(1.0, &Gi::one(), &one).unwrap();
    assert!((r.lhs - 4.0).abs() < 1e-12);
    assert!(r.rhs >= 192.0 && r.ratio <= 1.0);
    let zero = CoefficientVector::<f64>::zeros(10.0).unwrap();
    let r = special_sieve_check(9.0, &Gi::new(1, 1), &zero).unwrap();
    assert_eq!(r.ratio, 0.0);
}

#[test]
fn general_battery() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for k in 0..500 {
        let inst = random_general_instance::<f64, _>(&mut rng, 50.0, 60).unwrap();
        let r = general_sieve_check(&inst).unwrap();
        assert!(r.holds(), "instance {k}: {r:?}");
        if k % 50 == 0 {
            let lhs: f64 = inst.points.iter().map(|a| poly_oracle(&inst.coeffs, *a).norm_sqr()).sum();
            assert!((lhs - r.lhs).abs() <= 1e-9 * (1.0 + lhs));
        }
        worst = worst.max(r.ratio);
    }
    assert!(worst <= 1.0);
}

#[test]
fn special_battery() {
    let mut rng = ChaCha8Rng::seed_from_u64(4048);
    for k in 0..500 {
        let inst = random_special_instance::<f64, _>(&mut rng, 30.0, 50.0).unwrap();
        let r = special_sieve_check(inst.q_max, &inst.d, &inst.coeffs).unwrap();
        assert!(r.holds(), "instance {k}: {r:?}");
    }
}

#[test]
fn farey_spacing_is_exact() {
    for d in [Gi::one(), Gi::new(1, 1), Gi::new(2, 1)] {
        let rep = farey_spacing_exact(30, &d).unwrap();
        assert_eq!(rep.violations, 0, "d = {d}");
        assert!(rep.pairs > 0);
        // the minimum gap itself respects |d|²/Q²
        assert!(rep.min_num * 900 >= d.norm() as i128 * rep.min_den);
    }
}
