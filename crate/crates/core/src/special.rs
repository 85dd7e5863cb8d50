//! Reciprocal gamma, Pochhammer symbols and Bessel-type series.

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` for `Re z >= 1/2` (Lanczos, principal branch not tracked).
fn ln_gamma_right<F: Real>(z: Complex<F>) -> Complex<F> {
    let one = F::one();
    let z = z - one;
    let mut x = Complex::new(F::lit(LANCZOS[0]), F::zero());
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += Complex::new(F::lit(c), F::zero()) / (z + F::lit(k as f64));
    }
    let t = z + F::lit(LANCZOS_G + 0.5);
    let half_ln_tau = F::lit(0.5) * F::TAU().ln();
    (z + F::lit(0.5)) * t.ln() - t + half_ln_tau + x.ln()
}

/// `sin(π z)` with the integer part of `Re z` removed first.
pub fn sin_pi<F: Real>(z: Complex<F>) -> Complex<F> {
    let n = z.re.round();
    let w = Complex::new(z.re - n, z.im) * F::PI();
    let s = w.sin();
    let odd = n.to_i64().map(|k| k.rem_euclid(2) == 1).unwrap_or(false);
    if odd {
        -s
    } else {
        s
    }
}

/// `1/Γ(z)`, entire; exactly zero at `0, -1, -2, ...`.
pub fn rgamma<F: Real>(z: Complex<F>) -> Complex<F> {
    if z.im == F::zero() && z.re <= F::zero() && z.re == z.re.round() {
        return Complex::zero();
    }
    if z.re >= F::lit(0.5) {
        (-ln_gamma_right(z)).exp()
    } else {
        // 1/Γ(z) = Γ(1 - z) sin(πz) / π
        let one = Complex::new(F::one(), F::zero());
        ln_gamma_right(one - z).exp() * sin_pi(z) / F::PI()
    }
}

/// Real `1/Γ(x)`.
pub fn rgamma_real<F: Real>(x: F) -> F {
    rgamma(Complex::new(x, F::zero())).re
}

/// `Γ(z)` (infinite at the poles).
pub fn gamma<F: Real>(z: Complex<F>) -> Complex<F> {
    Complex::new(F::one(), F::zero()) / rgamma(z)
}

/// Rising factorial `(α)_m = α(α+1)...(α+m-1)`.
pub fn pochhammer<F: Real>(alpha: Complex<F>, m: u32) -> Complex<F> {
    (0..m).fold(Complex::new(F::one(), F::zero()), |acc, k| acc * (alpha + F::lit(k as f64)))
}

/// `J*_ξ(w) = Σ_m (-1)^m (w/2)^{2m} / (m! Γ(ξ+m+1))`.
pub fn j_star<F: Real>(xi: Complex<F>, w: Complex<F>) -> Complex<F> {
    let q = -(w * w) / F::lit(4.0);
    let one = F::one();
    let mut rg = rgamma(xi + one);
    let mut pw = Complex::new(one, F::zero());
    let mut fact = one;
    let mut sum = rg;
    let eps = F::epsilon() * F::lit(0.25);
    let qn = q.norm();
    for m in 1..10_000u32 {
        let mf = F::lit(m as f64);
        let a = xi + mf + one;
        // near the poles of Γ recompute directly, elsewhere recurse
        rg = if a.re <= one { rgamma(a) } else { rg / (a - one) };
        pw *= q;
        fact *= mf;
        let term = pw * rg / fact;
        sum += term;
        let past_peak = qn < F::lit(0.5) * mf * (a - one).norm().max(one);
        if past_peak && term.norm() <= eps * sum.norm() {
            break;
        }
        if past_peak && sum.norm() == F::zero() && term.norm() == F::zero() && m > 4 {
            break;
        }
    }
    sum
}

/// Classical `J_0` on the real line.
pub fn bessel_j0<F: Real>(x: F) -> F {
    F::lit(libm::j0(x.to_f64_lossy()))
}
