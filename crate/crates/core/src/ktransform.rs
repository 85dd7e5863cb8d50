//! The Bessel-type kernels `𝒥_{μ,k}`, `𝒦_{ν,p}` and the K-transform of a
//! radial test function, by series and by direct quadrature.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::quad::{integrate, integrate_with_breaks, QuadSpec};
use crate::scalar::Real;
use crate::special::{j_star, rgamma, sin_pi};
use crate::weights::{test_function_fx, Radial};

pub use crate::special::pochhammer;

/// Argument `(ν, p)` of the K-transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralPoint<F> {
    pub nu: Complex<F>,
    pub p: i64,
}

impl<F: Real> SpectralPoint<F> {
    pub fn new(nu: Complex<F>, p: i64) -> Self {
        SpectralPoint { nu, p }
    }

    pub fn real(nu: F, p: i64) -> Self {
        SpectralPoint { nu: Complex::new(nu, F::zero()), p }
    }

    pub fn imag(t: F, p: i64) -> Self {
        SpectralPoint { nu: Complex::new(F::zero(), t), p }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformResult<F> {
    pub value: Complex<F>,
    /// Series terms summed, or quadrature panels used.
    pub truncation_terms: usize,
    pub est_error: F,
}

/// Distance from `ν` to the integers below which the removable singularity
/// of `1/sin(πν)` is treated by extrapolation.
pub const NEAR_INTEGER: f64 = 1e-3;
const RICHARDSON_STEP: f64 = 2e-3;

fn near_integer<F: Real>(nu: Complex<F>) -> bool {
    (nu - Complex::new(nu.re.round(), F::zero())).norm() < F::lit(NEAR_INTEGER)
}

/// `(4 A(h) - A(2h)) / 3` with `A(h)` the mean of `g(ν ± h)`.
fn richardson<F: Real>(nu: Complex<F>, mut g: impl FnMut(Complex<F>) -> Result<Complex<F>>) -> Result<Complex<F>> {
    let h = F::lit(RICHARDSON_STEP);
    let two = F::lit(2.0);
    let a1 = (g(nu + h)? + g(nu - h)?) / two;
    let a2 = (g(nu + two * h)? + g(nu - two * h)?) / two;
    Ok((a1 * F::lit(4.0) - a2) / F::lit(3.0))
}

fn quad_tol<F: Real>(rel: f64) -> f64 {
    rel.max(100.0 * F::epsilon().to_f64_lossy())
}

/// `Mφ(s) = ∫_0^∞ φ(2ρ) ρ^{s-1} dρ`, integrated in `x = ln ρ`.
pub fn m_transform<F: Real>(phi: &dyn Radial<F>, s: Complex<F>) -> Result<TransformResult<F>> {
    let (lo, hi) = phi.support();
    let half = F::lit(0.5);
    let (a, b) = ((lo * half).ln(), (hi * half).ln());
    let f = |x: F| phi.eval(F::lit(2.0) * x.exp()) * (s * x).exp();
    // scale for the absolute tolerance from a coarse sample
    let n = 64;
    let mut peak = F::zero();
    for k in 0..=n {
        let x = a + (b - a) * F::lit(k as f64 / n as f64);
        peak = peak.max(f(x).norm());
    }
    if peak == F::zero() {
        return Ok(TransformResult { value: Complex::zero(), truncation_terms: 0, est_error: F::zero() });
    }
    let tol = quad_tol::<F>(1e-14);
    let spec = QuadSpec {
        abs_tol: tol * (peak * (b - a)).to_f64_lossy(),
        rel_tol: tol,
        max_intervals: 4000,
    };
    let r = integrate(f, a, b, spec)?;
    Ok(TransformResult { value: r.value, truncation_terms: r.intervals, est_error: r.error })
}

/// `𝒥_{μ,k}(z) = |z/2|^{2μ} (z/|z|)^{-2k} J*_{μ-k}(z) J*_{μ+k}(z̄)`.
pub fn cal_j<F: Real>(mu: Complex<F>, k: i64, z: Complex<F>) -> Complex<F> {
    let r = z.norm();
    let theta = z.arg();
    let kf = F::lit(k as f64);
    let pow = (mu * (F::lit(2.0) * (r * F::lit(0.5)).ln())).exp();
    let rot = Complex::from_polar(F::one(), -F::lit(2.0) * kf * theta);
    pow * rot * j_star(mu - kf, z) * j_star(mu + kf, z.conj())
}

fn cal_k_direct<F: Real>(nu: Complex<F>, p: i64, z: Complex<F>) -> Complex<F> {
    (cal_j(-nu, -p, z) - cal_j(nu, p, z)) / sin_pi(nu)
}

/// `𝒦_{ν,p}(z) = (𝒥_{-ν,-p}(z) - 𝒥_{ν,p}(z)) / sin(πν)`, continued
/// analytically across integer `ν`.
pub fn cal_k<F: Real>(point: SpectralPoint<F>, z: Complex<F>) -> Result<Complex<F>> {
    if z.is_zero() {
        return domain("𝒦 is undefined at z = 0");
    }
    if near_integer(point.nu) {
        return richardson(point.nu, |nu| Ok(cal_k_direct(nu, point.p, z)));
    }
    Ok(cal_k_direct(point.nu, point.p, z))
}

fn factorial<F: Real>(n: usize) -> F {
    (2..=n).fold(F::one(), |a, k| a * F::lit(k as f64))
}

/// `K_m φ(ν, k)`.
pub fn k_m<F: Real>(phi: &dyn Radial<F>, nu: Complex<F>, k: u32, m: u32) -> Result<(Complex<F>, F)> {
    let one = F::one();
    let two = F::lit(2.0);
    let mf = F::lit(m as f64);
    let kf = F::lit(k as f64);
    let shift = F::lit(4.0) * mf + two * kf;
    let mm = m_transform(phi, -nu * two + shift)?;
    let mp = m_transform(phi, nu * two + shift)?;
    let gm = rgamma(-nu + mf + one) * rgamma(-nu + mf + one + kf);
    let gp = rgamma(nu + mf + one) * rgamma(nu + mf + one + kf);
    let sign = if k % 2 == 0 { one } else { -one };
    let s = sin_pi(nu);
    let v = (mm.value * gm - mp.value * gp) * sign / s;
    let err = (mm.est_error * gm.norm() + mp.est_error * gp.norm()) / s.norm();
    Ok((v, err))
}

const MAX_SERIES_TERMS: u32 = 200;

fn k_series_direct<F: Real>(phi: &dyn Radial<F>, nu: Complex<F>, p: i64) -> Result<TransformResult<F>> {
    let k = p.unsigned_abs() as u32;
    let (_, hi) = phi.support();
    let q = (hi * F::lit(0.5)).powi(4);
    let tau = F::TAU();
    let mut sum = Complex::zero();
    let mut err = F::zero();
    let mut small = 0;
    for m in 0..MAX_SERIES_TERMS {
        let (v, e) = k_m(phi, nu, k, m)?;
        let w = tau / (factorial::<F>(m as usize) * factorial::<F>((m + k) as usize));
        let term = v * w;
        sum += term;
        err += e * w;
        let tn = term.norm();
        if tn <= F::lit(1e-16) * sum.norm() || (tn == F::zero() && m >= 2) {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 2 {
            // geometric majorant of the tail
            let mf = F::lit((m + 1) as f64);
            let ratio = q / (mf * (mf + F::lit(k as f64)));
            let tail = if ratio < F::one() { tn * ratio / (F::one() - ratio) } else { tn };
            return Ok(TransformResult { value: sum, truncation_terms: (m + 1) as usize, est_error: err + tail });
        }
    }
    Err(Error::Numerical(format!("K-transform series did not settle in {MAX_SERIES_TERMS} terms")))
}

/// `Kf(ν, p)` for `f(z) = φ(|z|)` by the series in `M`-transforms.
pub fn k_transform_series<F: Real>(phi: &dyn Radial<F>, point: SpectralPoint<F>) -> Result<TransformResult<F>> {
    if near_integer(point.nu) {
        let mut terms = 0;
        let mut est = F::zero();
        let v = richardson(point.nu, |nu| {
            let r = k_series_direct(phi, nu, point.p)?;
            terms = terms.max(r.truncation_terms);
            est = est.max(r.est_error);
            Ok(r.value)
        })?;
        return Ok(TransformResult { value: v, truncation_terms: terms, est_error: est });
    }
    k_series_direct(phi, point.nu, point.p)
}

/// `Kf(ν, p) = ∫_0^∞ ∫_0^{2π} 𝒦_{ν,p}(r e^{iθ}) φ(r) dθ dr/r` by nested
/// adaptive quadrature.
pub fn k_transform_quad<F: Real>(phi: &dyn Radial<F>, point: SpectralPoint<F>) -> Result<TransformResult<F>> {
    let (lo, hi) = phi.support();
    let tol = quad_tol::<F>(1e-11);
    let tau = F::TAU();
    let quarter = [tau * F::lit(0.25), tau * F::lit(0.5), tau * F::lit(0.75)];
    let inner = |r: F| -> Result<Complex<F>> {
        let g = |th: F| cal_k(point, Complex::from_polar(r, th)).unwrap_or_else(|_| Complex::zero());
        let scale = g(F::zero()).norm() + g(tau * F::lit(0.125)).norm();
        let spec = QuadSpec { abs_tol: tol * 1e-2 * scale.to_f64_lossy(), rel_tol: tol, max_intervals: 400 };
        Ok(integrate_with_breaks(g, F::zero(), tau, &quarter, spec)?.value)
    };
    // scale for the outer absolute tolerance from the kernel size, not the
    // angular integral, which may cancel almost completely when p != 0
    let mut scale = F::min_positive_value();
    for k in 1..8 {
        let r = lo + (hi - lo) * F::lit(k as f64 / 8.0);
        let size = cal_k(point, Complex::new(r, F::zero()))?.norm() * tau;
        scale = scale.max(size * phi.eval(r).norm() / r * (hi - lo));
    }
    let failure = std::sync::Mutex::new(None);
    let outer = |r: F| -> Complex<F> {
        let v = phi.eval(r);
        if v.is_zero() {
            return Complex::zero();
        }
        match inner(r) {
            Ok(a) => a * v / r,
            Err(e) => {
                *failure.lock().unwrap() = Some(e);
                Complex::zero()
            }
        }
    };
    let spec = QuadSpec {
        abs_tol: tol * 1e-2 * scale.to_f64_lossy(),
        rel_tol: tol,
        max_intervals: 2000,
    };
    let r = integrate(outer, lo, hi, spec)?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(TransformResult { value: r.value, truncation_terms: r.intervals, est_error: r.error })
}

/// One cell of the growth profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileCell<F> {
    pub nu: F,
    pub x: F,
    pub value: F,
    pub normalizer: F,
    pub ratio: F,
}

/// `∫ φ(r) dr / r`.
pub fn log_mass<F: Real>(phi: &dyn Radial<F>) -> Result<F> {
    let (lo, hi) = phi.support();
    let spec = QuadSpec { abs_tol: 0.0, rel_tol: quad_tol::<F>(1e-13), max_intervals: 2000 };
    Ok(integrate(|x: F| phi.eval(x.exp()).re, lo.ln(), hi.ln(), spec)?.value)
}

/// `KF_X(ν, 0) / (min{1 + |log X|, 1/ν} X^ν ∫φ dr/r)` over a grid of real
/// `ν ∈ (0, 1)` and `X >= 2`, with `φ` the profile of `F_X`.
pub fn bound_profile<F: Real>(nu_grid: &[F], x_grid: &[F]) -> Result<Vec<ProfileCell<F>>> {
    for &nu in nu_grid {
        if !(nu > F::zero() && nu < F::one()) {
            return domain("bound_profile needs 0 < ν < 1");
        }
    }
    let cells: Vec<(F, F)> = nu_grid.iter().flat_map(|&n| x_grid.iter().map(move |&x| (n, x))).collect();
    cells
        .par_iter()
        .map(|&(nu, x)| {
            let phi = test_function_fx(x)?;
            let kf = k_transform_series(&phi, SpectralPoint::real(nu, 0))?.value.re;
            let mass = log_mass(&phi)?;
            let normalizer = (F::one() + x.ln().abs()).min(F::one() / nu) * x.powf(nu) * mass;
            Ok(ProfileCell { nu, x, value: kf, normalizer, ratio: kf / normalizer })
        })
        .collect()
}

/// `(t, |KF_X(it, 0)|, (1+t)^4 |KF_X(it, 0)|)` along the imaginary axis.
pub fn imaginary_profile<F: Real>(x: F, t_grid: &[F]) -> Result<Vec<(F, F, F)>> {
    let phi = test_function_fx(x)?;
    t_grid
        .par_iter()
        .map(|&t| {
            let v = k_transform_series(&phi, SpectralPoint::imag(t, 0))?.value.norm();
            Ok((t, v, (F::one() + t).powi(4) * v))
        })
        .collect()
}
