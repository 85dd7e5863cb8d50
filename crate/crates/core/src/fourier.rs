//! Fourier transforms on C, Poisson summation over Z[i], and related checks.
//!
//! The transform is `f̂(w) = ∬ f(z) e(-Re(wz)) dx dy`.

use std::sync::Mutex;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::char_sums::{kloosterman, ramanujan_c_closed};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate_with_breaks, uniform_breaks, QuadSpec};
use crate::scalar::Real;
use crate::special::bessel_j0;
use crate::weights::Radial;
use crate::zi::residues_mod;
use crate::Gi;

/// A function on C known well enough to integrate.
pub trait PlaneFunction<F: Real>: Send + Sync {
    fn eval(&self, z: Complex<F>) -> Complex<F>;

    /// Radius outside which `f` vanishes (compact case) or is below `1e-13`
    /// of its peak.
    fn radius(&self) -> F;

    fn is_compact(&self) -> bool;

    /// Whether `f(z)` depends on `|z|` only; enables the Hankel route.
    fn is_radial(&self) -> bool {
        false
    }

    /// `ℒf = -(∂²/∂x² + ∂²/∂y²) f` when available.
    fn laplacian(&self, _z: Complex<F>) -> Option<Complex<F>> {
        None
    }
}

fn gaussian_radius<F: Real>() -> F {
    // e^{-πR²} = 1e-16
    (F::lit(16.0 * std::f64::consts::LN_10) / F::PI()).sqrt()
}

/// `e^{-π|z|²}`, its own transform.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gaussian;

impl<F: Real> PlaneFunction<F> for Gaussian {
    fn eval(&self, z: Complex<F>) -> Complex<F> {
        Complex::new((-F::PI() * z.norm_sqr()).exp(), F::zero())
    }
    fn radius(&self) -> F {
        gaussian_radius()
    }
    fn is_compact(&self) -> bool {
        false
    }
    fn is_radial(&self) -> bool {
        true
    }
    fn laplacian(&self, z: Complex<F>) -> Option<Complex<F>> {
        let pi = F::PI();
        let r2 = z.norm_sqr();
        let four = F::lit(4.0);
        Some(Complex::new((four * pi - four * pi * pi * r2) * (-pi * r2).exp(), F::zero()))
    }
}

/// `e^{-π|z|²} e(Re(βz))`, with transform `e^{-π|w-β|²}`.
#[derive(Clone, Copy, Debug)]
pub struct ModulatedGaussian<F> {
    pub beta: Complex<F>,
}

impl<F: Real> PlaneFunction<F> for ModulatedGaussian<F> {
    fn eval(&self, z: Complex<F>) -> Complex<F> {
        let g = (-F::PI() * z.norm_sqr()).exp();
        Complex::from_polar(g, F::TAU() * (self.beta * z).re)
    }
    fn radius(&self) -> F {
        gaussian_radius()
    }
    fn is_compact(&self) -> bool {
        false
    }
    fn laplacian(&self, z: Complex<F>) -> Option<Complex<F>> {
        // f = g e^{i k·x} with k = 2π(Re β, -Im β), g = e^{-π|x|²}
        let pi = F::PI();
        let tau = F::TAU();
        let (x, y) = (z.re, z.im);
        let (kx, ky) = (tau * self.beta.re, -tau * self.beta.im);
        let r2 = z.norm_sqr();
        let g = (-pi * r2).exp();
        let four = F::lit(4.0);
        let lap_g = (four * pi * pi * r2 - four * pi) * g;
        let grad_dot_k = -F::lit(2.0) * pi * (x * kx + y * ky) * g;
        let k2 = kx * kx + ky * ky;
        let phase = Complex::from_polar(F::one(), kx * x + ky * y);
        let delta = Complex::new(lap_g - k2 * g, F::lit(2.0) * grad_dot_k) * phase;
        Some(-delta)
    }
}

/// `z e^{-π|z|²}`, an odd function.
#[derive(Clone, Copy, Debug, Default)]
pub struct OddGaussian;

impl<F: Real> PlaneFunction<F> for OddGaussian {
    fn eval(&self, z: Complex<F>) -> Complex<F> {
        z * (-F::PI() * z.norm_sqr()).exp()
    }
    fn radius(&self) -> F {
        gaussian_radius::<F>() + F::one()
    }
    fn is_compact(&self) -> bool {
        false
    }
}

/// The zero function.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroFunction;

impl<F: Real> PlaneFunction<F> for ZeroFunction {
    fn eval(&self, _z: Complex<F>) -> Complex<F> {
        Complex::zero()
    }
    fn radius(&self) -> F {
        F::zero()
    }
    fn is_compact(&self) -> bool {
        true
    }
    fn is_radial(&self) -> bool {
        true
    }
    fn laplacian(&self, _z: Complex<F>) -> Option<Complex<F>> {
        Some(Complex::zero())
    }
}

/// `f(z) = φ(|z|)` for a compactly supported radial weight.
#[derive(Clone, Debug)]
pub struct RadialPlane<R> {
    pub phi: R,
}

impl<R> RadialPlane<R> {
    pub fn new(phi: R) -> Self {
        RadialPlane { phi }
    }
}

impl<F: Real, R: Radial<F>> PlaneFunction<F> for RadialPlane<R> {
    fn eval(&self, z: Complex<F>) -> Complex<F> {
        self.phi.eval(z.norm())
    }
    fn radius(&self) -> F {
        self.phi.support().1
    }
    fn is_compact(&self) -> bool {
        true
    }
    fn is_radial(&self) -> bool {
        true
    }
    fn laplacian(&self, z: Complex<F>) -> Option<Complex<F>> {
        let r = z.norm();
        if !(r > F::zero()) {
            // every weight used here vanishes near the origin
            return Some(Complex::zero());
        }
        let j = self.phi.jet(r, 2);
        Some(-(j.deriv(2) + j.deriv(1) / r))
    }
}

/// `ℒf` as a function in its own right.
pub struct LaplacianOf<'a, F> {
    pub f: &'a dyn PlaneFunction<F>,
}

impl<'a, F: Real> PlaneFunction<F> for LaplacianOf<'a, F> {
    fn eval(&self, z: Complex<F>) -> Complex<F> {
        self.f.laplacian(z).expect("laplacian available")
    }
    fn radius(&self) -> F {
        self.f.radius()
    }
    fn is_compact(&self) -> bool {
        self.f.is_compact()
    }
    fn is_radial(&self) -> bool {
        self.f.is_radial()
    }
}

/// Quadrature policy for [`fourier_c`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierSpec {
    /// Target absolute tolerance of each 1-D pass.
    pub abs_tol: f64,
    /// Breakpoints are laid at spacing `oscillation_scale / |w|`.
    pub oscillation_scale: f64,
    pub max_intervals: usize,
}

impl Default for FourierSpec {
    fn default() -> Self {
        FourierSpec { abs_tol: 1e-10, oscillation_scale: 0.25, max_intervals: 20_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierValue<F> {
    pub value: Complex<F>,
    pub error: F,
}

fn quad_spec(spec: &FourierSpec) -> QuadSpec {
    QuadSpec { abs_tol: spec.abs_tol, rel_tol: 1e-13, max_intervals: spec.max_intervals }
}

fn breaks_for<F: Real>(a: F, b: F, freq: F, spec: &FourierSpec) -> Vec<F> {
    if freq > F::zero() {
        uniform_breaks(a, b, F::lit(spec.oscillation_scale) / freq)
    } else {
        Vec::new()
    }
}

/// `f̂(ρ) = 2π ∫ φ(r) J₀(2πρr) r dr` for radial `f`, `ρ = |w|`.
pub fn fourier_radial<F: Real>(
    phi: &(dyn Fn(F) -> Complex<F> + Sync),
    support: (F, F),
    rho: F,
    spec: &FourierSpec,
) -> Result<FourierValue<F>> {
    let (lo, hi) = support;
    let tau = F::TAU();
    let g = |r: F| phi(r) * (bessel_j0(tau * rho * r) * r);
    let r = integrate_with_breaks(g, lo, hi, &breaks_for(lo, hi, rho, spec), quad_spec(spec))?;
    Ok(FourierValue { value: r.value * tau, error: r.error * tau })
}

/// `f̂(w)` by nested quadrature over the square `[-R, R]²`.
pub fn fourier_c_2d<F: Real>(f: &dyn PlaneFunction<F>, w: Complex<F>, spec: &FourierSpec) -> Result<FourierValue<F>> {
    let rad = f.radius();
    let tau = F::TAU();
    let failure = Mutex::new(None::<Error>);
    let qs = quad_spec(spec);
    let inner = |x: F| -> Complex<F> {
        let (ylo, yhi) = if f.is_compact() {
            let h = (rad * rad - x * x).max(F::zero()).sqrt();
            (-h, h)
        } else {
            (-rad, rad)
        };
        if !(yhi > ylo) {
            return Complex::zero();
        }
        let g = |y: F| {
            let z = Complex::new(x, y);
            f.eval(z) * Complex::from_polar(F::one(), -tau * (w * z).re)
        };
        match integrate_with_breaks(g, ylo, yhi, &breaks_for(ylo, yhi, w.im.abs(), spec), qs) {
            Ok(r) => r.value,
            Err(e) => {
                *failure.lock().unwrap() = Some(e);
                Complex::zero()
            }
        }
    };
    let r = integrate_with_breaks(inner, -rad, rad, &breaks_for(-rad, rad, w.re.abs(), spec), qs)?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(FourierValue { value: r.value, error: r.error })
}

/// `f̂(w) = ∬ f(z) e(-Re(wz)) dx dy`; radial functions take the Hankel route.
pub fn fourier_c<F: Real>(f: &dyn PlaneFunction<F>, w: Complex<F>, spec: &FourierSpec) -> Result<FourierValue<F>> {
    if f.is_radial() {
        let prof = |r: F| f.eval(Complex::new(r, F::zero()));
        return fourier_radial(&prof, (F::zero(), f.radius()), w.norm(), spec);
    }
    fourier_c_2d(f, w, spec)
}

/// `f(r)` recovered from `f̂` by the inverse Hankel transform over `|w| <= w_max`.
pub fn inverse_fourier_radial<F: Real>(
    f: &dyn PlaneFunction<F>,
    r: F,
    w_max: F,
    spec: &FourierSpec,
) -> Result<Complex<F>> {
    if !f.is_radial() {
        return domain("inverse transform implemented for radial functions");
    }
    let failure = Mutex::new(None::<Error>);
    let tau = F::TAU();
    let g = |rho: F| -> Complex<F> {
        match fourier_c(f, Complex::new(rho, F::zero()), spec) {
            Ok(v) => v.value * (bessel_j0(tau * rho * r) * rho),
            Err(e) => {
                *failure.lock().unwrap() = Some(e);
                Complex::zero()
            }
        }
    };
    let out = integrate_with_breaks(g, F::zero(), w_max, &breaks_for(F::zero(), w_max, r, spec), quad_spec(spec))?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(out.value * tau)
}

/// `min_{m ∈ Z[i]} |β - m|`.
pub fn nearest_distance<F: Real>(beta: Complex<F>) -> F {
    nearest_distance_sq(beta).sqrt()
}

/// `‖β‖² = ‖Re β‖² + ‖Im β‖²`.
pub fn nearest_distance_sq<F: Real>(beta: Complex<F>) -> F {
    let dx = beta.re - beta.re.round();
    let dy = beta.im - beta.im.round();
    dx * dx + dy * dy
}

/// Lattice points `ν ∈ Z[i]` with `|ν - c| <= radius`, in row-major order.
pub fn lattice_disc<F: Real>(center: Complex<F>, radius: F) -> Vec<Gi> {
    let x0 = (center.re - radius).floor().to_i64().unwrap_or(0);
    let x1 = (center.re + radius).ceil().to_i64().unwrap_or(0);
    let y0 = (center.im - radius).floor().to_i64().unwrap_or(0);
    let y1 = (center.im + radius).ceil().to_i64().unwrap_or(0);
    let r2 = radius * radius;
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let d = Complex::new(F::lit(x as f64), F::lit(y as f64)) - center;
            if d.norm_sqr() <= r2 {
                out.push(Gi::new(x, y));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoissonReport<F> {
    pub lhs: Complex<F>,
    pub rhs: Complex<F>,
    pub defect: F,
    /// `Σ |f̂|` over the outermost unit shell of the dual sum.
    pub tail: F,
    pub dual_terms: usize,
}

/// Both sides of `Σ_ν f(ν) e(Re(τν)) = Σ_ξ f̂(ξ - τ)` truncated at `cutoff`.
pub fn poisson_check<F: Real>(
    f: &dyn PlaneFunction<F>,
    tau: Complex<F>,
    cutoff: F,
    tail_tol: F,
    spec: &FourierSpec,
) -> Result<PoissonReport<F>> {
    if f.is_compact() && cutoff < f.radius() {
        return domain("cutoff smaller than the support radius");
    }
    let origin = Complex::zero();
    let lhs_pts = lattice_disc(origin, cutoff.min(f.radius() + F::one()));
    let lhs_terms: Vec<Complex<F>> = lhs_pts
        .par_iter()
        .map(|n| {
            let z = n.to_complex::<F>();
            f.eval(z) * crate::char_sums::e((tau * z).re)
        })
        .collect();
    let lhs: Complex<F> = lhs_terms.into_iter().sum();
    let dual = lattice_disc(tau, cutoff);
    let vals: Vec<Result<(F, Complex<F>)>> = dual
        .par_iter()
        .map(|xi| {
            let w = xi.to_complex::<F>() - tau;
            Ok((w.norm(), fourier_c(f, w, spec)?.value))
        })
        .collect();
    let mut rhs = Complex::zero();
    let mut tail = F::zero();
    for v in vals {
        let (r, fv) = v?;
        rhs += fv;
        if r > cutoff - F::one() {
            tail += fv.norm();
        }
    }
    if tail > tail_tol {
        return Err(Error::Numerical(format!(
            "dual sum tail {:e} exceeds tolerance at cutoff {}",
            tail.to_f64_lossy(),
            cutoff
        )));
    }
    Ok(PoissonReport { lhs, rhs, defect: (lhs - rhs).norm(), tail, dual_terms: dual.len() })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck<F> {
    pub lhs: Complex<F>,
    pub rhs: Complex<F>,
    pub defect: F,
}

/// `(ℒf)^(w)` against `|2πw|² f̂(w)`.
pub fn laplacian_transform_check<F: Real>(
    f: &dyn PlaneFunction<F>,
    w: Complex<F>,
    spec: &FourierSpec,
) -> Result<IdentityCheck<F>> {
    if f.laplacian(Complex::new(F::one(), F::zero())).is_none() {
        return domain("function has no Laplacian");
    }
    let lf = LaplacianOf { f };
    let lhs = fourier_c(&lf, w, spec)?.value;
    let rhs = fourier_c(f, w, spec)?.value * (F::TAU() * w.norm()).powi(2);
    Ok(IdentityCheck { lhs, rhs, defect: (lhs - rhs).norm() })
}

/// Support data `(Δ, Ω₁, C)` of an annular weight, as in the decay estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusParams<F> {
    pub delta: F,
    pub omega1: F,
    pub c: F,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualReport<F> {
    pub direct: Complex<F>,
    pub expansion: Complex<F>,
    pub defect: F,
    /// Residues `b mod q` kept by the truncation.
    pub kept: usize,
}

fn multiples_in_support<F: Real>(f: &dyn PlaneFunction<F>, d: &Gi) -> Vec<(Gi, Complex<F>)> {
    let r = f.radius() / d.to_complex::<F>().norm();
    lattice_disc(Complex::zero(), r)
        .into_iter()
        .map(|n| (n, f.eval((*d * n).to_complex())))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Both sides of the expansion of `Σ_{m ≡ 0 (d)} f(m) S(hm/d, k; q)` in the
/// dual variable `b mod q`, keeping `‖b/q‖² <= B|d|²/(ΔΩ₁)`.
pub fn dual_expansion_check<F: Real>(
    f: &dyn PlaneFunction<F>,
    d: &Gi,
    h: &Gi,
    k: &Gi,
    q: &Gi,
    big_b: F,
    params: AnnulusParams<F>,
) -> Result<DualReport<F>> {
    if d.is_zero() || q.is_zero() {
        return domain("d and q must be nonzero");
    }
    if !f.is_compact() {
        return domain("dual expansion needs a compactly supported weight");
    }
    let pts = multiples_in_support(f, d);
    let mut direct = Complex::zero();
    for (n, v) in &pts {
        direct += v * kloosterman::<F>(&(*h * *n), k, q)?.value;
    }
    let bound = big_b * F::lit(d.norm() as f64) / (params.delta * params.omega1);
    let qc = q.to_complex::<F>();
    let mut expansion = Complex::zero();
    let mut kept = 0;
    for b in residues_mod(q)? {
        let ratio = b.to_complex::<F>() / qc;
        if nearest_distance_sq(ratio) > bound {
            continue;
        }
        kept += 1;
        let c = ramanujan_c_closed::<F>(q, &b, h, k)?;
        if c.is_zero() {
            continue;
        }
        let mut inner = Complex::zero();
        for (n, v) in &pts {
            inner += v * crate::char_sums::e((ratio * n.to_complex::<F>()).re);
        }
        expansion += c * inner;
    }
    Ok(DualReport { direct, expansion, defect: (direct - expansion).norm(), kept })
}

/// `(|w|, |f̂(w)|, |f̂(w)| (1 + C⁻¹ΔΩ₁|w|²)^j / (CΩ₁))` along the real axis.
pub fn decay_profile<F: Real>(
    f: &dyn PlaneFunction<F>,
    params: AnnulusParams<F>,
    w_grid: &[F],
    j: i32,
    spec: &FourierSpec,
) -> Result<Vec<(F, F, F)>> {
    w_grid
        .par_iter()
        .map(|&w| {
            let v = fourier_c(f, Complex::new(w, F::zero()), spec)?.value.norm();
            let weight = (F::one() + params.delta * params.omega1 * w * w / params.c).powi(j);
            Ok((w, v, v * weight / (params.c * params.omega1)))
        })
        .collect()
}

/// `(‖τ‖, Σ_ξ |f̂(ξ - τ)|, normalized)` with normalization `(ΔΩ₁‖τ‖²)^j / Ω₁`.
pub fn tail_profile<F: Real>(
    f: &dyn PlaneFunction<F>,
    params: AnnulusParams<F>,
    taus: &[Complex<F>],
    cutoff: F,
    j: i32,
    spec: &FourierSpec,
) -> Result<Vec<(F, F, F)>> {
    taus.iter()
        .map(|&tau| {
            let dual = lattice_disc(tau, cutoff);
            let vals: Vec<Result<F>> = dual
                .par_iter()
                .map(|xi| Ok(fourier_c(f, xi.to_complex::<F>() - tau, spec)?.value.norm()))
                .collect();
            let mut s = F::zero();
            for v in vals {
                s += v?;
            }
            let nd = nearest_distance_sq(tau);
            let norm = (params.delta * params.omega1 * nd).powi(j) / params.omega1;
            Ok((nd.sqrt(), s, s * norm))
        })
        .collect()
}
