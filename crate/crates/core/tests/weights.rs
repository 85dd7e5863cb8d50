use gsk_core::weights::*;
use num_complex::Complex;

const E: f64 = std::f64::consts::E;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

#[test]
fn bump_values() {
    assert!((bump_phi(0.0f64) - 1.0 / E).abs() < 1e-15);
    assert_eq!(bump_phi(1.0f64), 0.0);
    assert_eq!(bump_phi(-1.0f64), 0.0);
    assert!((bump_phi(0.5f64) - (-4.0f64 / 3.0).exp()).abs() < 1e-15);
    assert!((bump_phi(0.5f32) - (-4.0f32 / 3.0).exp()).abs() < 1e-6);
}

#[test]
fn bump_jet_matches_differences() {
    for t in [-0.7, -0.2, 0.1, 0.55, 0.9] {
        let taylor = bump_phi_taylor(t, 4);
        for j in 1..=3usize {
            let exact = taylor[j] * (1..=j).product::<usize>() as f64;
            let fd = finite_difference(bump_phi, t, j, 2e-4);
            assert!((exact - fd).abs() <= 1e-4 * (1.0 + exact.abs()), "t={t} j={j}");
        }
    }
}

#[test]
fn bump_integral_edges() {
    let x = BumpIntegral::<f64>::new();
    assert_eq!(x.value(-1.0), 0.0);
    assert_eq!(x.value(-3.0), 0.0);
    assert!(x.total() > 0.0);
    assert!((x.value(0.0) - x.total() / 2.0).abs() < 1e-14);
    // X(1) by an independent midpoint rule
    let n = 200_000;
    let h = 2.0 / n as f64;
    let mid: f64 = (0..n).map(|k| bump_phi(-1.0 + (k as f64 + 0.5) * h) * h).sum();
    assert!((x.total() - mid).abs() < 1e-9);
}

#[test]
fn plateau_examples() {
    let om = plateau_omega(4.0f64).unwrap();
    assert!((om.eval(1.0) - 1.0).abs() < 1e-14);
    assert_eq!(om.eval(2f64.powi(6) + 1.0), 0.0);
    assert_eq!(om.bump_integral().value(-1.0), 0.0);
    assert!(plateau_omega(0.0f64).is_err());
    assert!(plateau_omega(-1.0f64).is_err());
}

#[test]
fn plateau_support_and_flat_part() {
    let eta = 4.0;
    let om = plateau_omega(eta).unwrap();
    for u in log_grid(2f64.powf(-8.0), 2f64.powf(8.0), 1000) {
        let v = om.eval(u);
        assert!((-1e-15..=1.0 + 1e-12).contains(&v));
        if u <= 2f64.powf(-eta - 2.0) || u >= 2f64.powf(eta + 2.0) {
            assert_eq!(v, 0.0, "u = {u}");
        }
        if u >= 2f64.powf(-eta) && u <= 2f64.powf(eta) {
            assert!((v - 1.0).abs() < 1e-12, "u = {u}");
        }
    }
}

#[test]
fn annular_examples() {
    let w = annular_weight(4.0f64).unwrap();
    assert_eq!(w.eval(2f64.sqrt()).re, 0.0);
    assert!(w.eval((4.0 * 2f64.powf(-0.5)).sqrt()).re > 0.25);
    assert_eq!(w.eval(0.0).re, 0.0);
    assert!(annular_weight(0.0f64).is_err());
    for z in [0.5, 3.0, 17.0] {
        let w = annular_weight(z).unwrap();
        for u in log_grid(z / 8.0, z * 4.0, 400) {
            let v = w.eval(u.sqrt()).re;
            assert!((0.0..=1.0 / E + 1e-15).contains(&v));
            if u <= z / 2.0 || u >= z {
                assert_eq!(v, 0.0);
            }
            if u >= 2f64.powf(-0.75) * z && u <= 2f64.powf(-0.25) * z {
                assert!(v > 0.25);
            }
        }
    }
}

#[test]
fn twisted_radial_examples() {
    let b = 2f64.powf(6.0);
    let x: f64 = 9.0;
    let phi = twisted_radial(plateau_omega(4.0).unwrap(), x, 0.0).unwrap();
    assert!(phi.is_real());
    assert!((phi.eval(x.powf(-0.5)) - Complex::new(1.0, 0.0)).norm() < 1e-12);
    let phi_t = twisted_radial(plateau_omega(4.0).unwrap(), x, 3.0).unwrap();
    for r in log_grid(0.01, 3.0, 50) {
        assert!((phi_t.eval(r).norm() - phi.eval(r).norm()).abs() < 1e-12);
    }
    assert_eq!(phi_t.eval(2.0 * b.sqrt() / x.sqrt()), Complex::new(0.0, 0.0));
    let (lo, hi) = phi_t.support();
    assert!(lo >= (b * x).sqrt().recip() * (1.0 - 1e-12) && hi <= (b / x).sqrt() * (1.0 + 1e-12));
    assert!(twisted_radial(plateau_omega(4.0).unwrap(), 0.0, 1.0).is_err());
}

#[test]
fn fx_examples() {
    let x = 16.0;
    let f = test_function_fx(x).unwrap();
    let r_of = |u: f64| (u / x).sqrt();
    assert_eq!(f.eval(r_of(0.25)).re, 0.0);
    assert!((f.eval(r_of(1.0)).re - 1.0).abs() < 1e-14);
    for u in log_grid(0.3, 3.0, 300) {
        let v = f.eval(r_of(u)).re;
        assert!((0.0..=1.0 + 1e-14).contains(&v));
        if !(0.5..=2.0).contains(&u) {
            assert_eq!(v, 0.0);
        }
        if (0.75..=1.5).contains(&u) {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }
    assert!(test_function_fx(1.5f64).is_err());
}

#[test]
fn jets_match_finite_differences() {
    let weights: Vec<Box<dyn Radial<f64>>> = vec![
        Box::new(annular_weight(3.0).unwrap()),
        Box::new(test_function_fx(4.0).unwrap()),
        Box::new(twisted_radial(plateau_omega(1.0).unwrap(), 2.0, 1.5).unwrap()),
    ];
    for w in &weights {
        let (lo, hi) = w.support();
        for k in 1..12 {
            let r = lo + (hi - lo) * k as f64 / 12.0;
            assert_eq!(w.deriv(0, r), w.eval(r));
            for j in 1..=3usize {
                let exact = w.deriv(j, r);
                let h = 2e-4 * r;
                let re = finite_difference(|s| w.eval(s).re, r, j, h);
                let im = finite_difference(|s| w.eval(s).im, r, j, h);
                let scale = 1.0 + exact.norm();
                assert!((exact - Complex::new(re, im)).norm() <= 1e-3 * scale, "j={j} r={r}");
            }
        }
        // outside an enlarged support everything vanishes
        for r in [lo * 0.9, hi * 1.1] {
            for j in 0..=4 {
                assert_eq!(w.deriv(j, r), Complex::new(0.0, 0.0));
            }
        }
    }
}

#[test]
fn derivative_radial_shifts_jets() {
    let w = test_function_fx(4.0).unwrap();
    let d = DerivativeRadial::new(&w, 2);
    for r in [0.4, 0.5, 0.6] {
        assert!((d.eval(r) - w.deriv(2, r)).norm() < 1e-12);
        assert!((d.deriv(1, r) - w.deriv(3, r)).norm() < 1e-9 * (1.0 + w.deriv(3, r).norm()));
    }
}

/// `max_r |r^j φ^{(j)}(r)| / (1 + |t|)^j` for the twisted plateau weight.
fn derivative_constant(t: f64, j: usize) -> f64 {
    let phi = twisted_radial(plateau_omega(2.0).unwrap(), 1.0, t).unwrap();
    let (lo, hi) = phi.support();
    log_grid(lo, hi, 2000)
        .into_iter()
        .map(|r| r.powi(j as i32) * phi.deriv(j, r).norm())
        .fold(0.0, f64::max)
        / (1.0 + t.abs()).powi(j as i32)
}

#[test]
fn twisted_derivative_bound_shape() {
    for j in 1..=3 {
        let cs: Vec<f64> = [0.0, 1.0, 5.0].iter().map(|&t| derivative_constant(t, j)).collect();
        // the t = 0 constant must serve every twist up to a factor 10
        assert!(cs.iter().all(|&c| c > 0.0 && c <= 10.0 * cs[0]), "j={j}: {cs:?}");
    }
}
