//! Smooth compactly supported weights built from the bump `exp(-1/(1-t²))`.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::jet::Jet;
use crate::quad::gk21;
use crate::scalar::Real;

/// `Φ(t) = exp(-1/(1-t²))` on `(-1, 1)`, zero elsewhere.
pub fn bump_phi<F: Real>(t: F) -> F {
    if t.abs() >= F::one() {
        return F::zero();
    }
    (-F::one() / (F::one() - t * t)).exp()
}

/// `Φ ∘ t` as a jet.
pub fn bump_phi_jet<F: Real>(t: &Jet<F>) -> Jet<F> {
    let t0 = t.value();
    if t0.abs() >= F::one() {
        return Jet::zero(t.order());
    }
    let s = (t * t).scale(-F::one()).add_const(F::one());
    s.recip().scale(-F::one()).exp()
}

/// Taylor coefficients of `Φ` at `t0` up to `order`.
pub fn bump_phi_taylor<F: Real>(t0: F, order: usize) -> Vec<F> {
    bump_phi_jet(&Jet::var(t0, order)).c
}

/// `X(x) = ∫_{-1}^{x} Φ`, tabulated on a fine grid and completed by one
/// Kronrod panel.
#[derive(Clone, Debug)]
pub struct BumpIntegral<F> {
    table: Vec<F>,
    h: F,
}

const BUMP_TABLE_CELLS: usize = 256;

impl<F: Real> BumpIntegral<F> {
    pub fn new() -> Self {
        let n = BUMP_TABLE_CELLS;
        let h = F::lit(2.0 / n as f64);
        let mut table = Vec::with_capacity(n + 1);
        let mut acc = F::zero();
        table.push(acc);
        for k in 0..n {
            let a = -F::one() + h * F::lit(k as f64);
            let (v, _) = gk21(&bump_phi, a, a + h);
            acc += v;
            table.push(acc);
        }
        BumpIntegral { table, h }
    }

    /// `X(1) = ∫ Φ`.
    pub fn total(&self) -> F {
        self.table[self.table.len() - 1]
    }

    pub fn value(&self, x: F) -> F {
        if x <= -F::one() {
            return F::zero();
        }
        if x >= F::one() {
            return self.total();
        }
        let pos = (x + F::one()) / self.h;
        let k = pos.floor().to_usize().unwrap_or(0).min(self.table.len() - 2);
        let a = -F::one() + self.h * F::lit(k as f64);
        if x == a {
            return self.table[k];
        }
        let (v, _) = gk21(&bump_phi, a, x);
        self.table[k] + v
    }

    /// `X ∘ x` as a jet; the derivatives of `X` are those of `Φ`.
    pub fn jet(&self, x: &Jet<F>) -> Jet<F> {
        let n = x.order();
        let x0 = x.value();
        let mut outer = vec![F::zero(); n + 1];
        outer[0] = self.value(x0);
        if n > 0 {
            let phi = bump_phi_taylor(x0, n - 1);
            for k in 1..=n {
                outer[k] = phi[k - 1] / F::lit(k as f64);
            }
        }
        x.compose(&outer)
    }
}

impl<F: Real> Default for BumpIntegral<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// A smooth real profile on `(0, ∞)` with compact support.
pub trait Profile<F: Real>: Send + Sync {
    /// Closed interval outside which the profile vanishes.
    fn support(&self) -> (F, F);
    fn eval(&self, u: F) -> F;
    /// The profile composed with a jet in `u`.
    fn apply(&self, u: &Jet<F>) -> Jet<F>;
}

/// Plateau weight `Ω(u) = Ψ(log₂ u)` with
/// `Ψ(y) = (X(y+η+1) - X(y-η-1)) / X(1)`.
#[derive(Clone, Debug)]
pub struct Plateau<F> {
    eta: F,
    xint: Arc<BumpIntegral<F>>,
}

impl<F: Real> Plateau<F> {
    pub fn new(eta: F) -> Result<Self> {
        if !(eta > F::zero()) {
            return domain("plateau width must be positive");
        }
        Ok(Plateau { eta, xint: Arc::new(BumpIntegral::new()) })
    }

    pub fn eta(&self) -> F {
        self.eta
    }

    pub fn bump_integral(&self) -> &BumpIntegral<F> {
        &self.xint
    }

    /// `Ψ(y)`.
    pub fn psi(&self, y: F) -> F {
        let e1 = self.eta + F::one();
        (self.xint.value(y + e1) - self.xint.value(y - e1)) / self.xint.total()
    }

    pub fn psi_jet(&self, y: &Jet<F>) -> Jet<F> {
        let e1 = self.eta + F::one();
        let a = self.xint.jet(&y.add_const(e1));
        let b = self.xint.jet(&y.add_const(-e1));
        (&a - &b).scale(F::one() / self.xint.total())
    }
}

impl<F: Real> Profile<F> for Plateau<F> {
    fn support(&self) -> (F, F) {
        let two = F::lit(2.0);
        (two.powf(-self.eta - two), two.powf(self.eta + two))
    }

    fn eval(&self, u: F) -> F {
        if !(u > F::zero()) {
            return F::zero();
        }
        self.psi(u.log2())
    }

    fn apply(&self, u: &Jet<F>) -> Jet<F> {
        if !(u.value() > F::zero()) {
            return Jet::zero(u.order());
        }
        self.psi_jet(&u.ln().scale(F::LOG2_E()))
    }
}

/// Fixed bump `Φ₀` supported on `[1/2, 2]`, equal to 1 on `[3/4, 3/2]`,
/// built from two smooth steps in `log₂ u`.
#[derive(Clone, Debug)]
pub struct UnitBump<F> {
    xint: Arc<BumpIntegral<F>>,
    rise: (F, F),
    fall: (F, F),
}

impl<F: Real> UnitBump<F> {
    pub fn new() -> Self {
        UnitBump {
            xint: Arc::new(BumpIntegral::new()),
            rise: (-F::one(), F::lit(0.75).log2()),
            fall: (F::lit(1.5).log2(), F::one()),
        }
    }

    /// Smooth step `S(x) = X(2x-1)/X(1)`: 0 for `x <= 0`, 1 for `x >= 1`.
    fn step(&self, x: F) -> F {
        let two = F::lit(2.0);
        self.xint.value(two * x - F::one()) / self.xint.total()
    }

    fn step_jet(&self, x: &Jet<F>) -> Jet<F> {
        let two = F::lit(2.0);
        self.xint.jet(&x.scale(two).add_const(-F::one())).scale(F::one() / self.xint.total())
    }

    fn edge_args(&self, y: F) -> (F, F) {
        let (r0, r1) = self.rise;
        let (f0, f1) = self.fall;
        ((y - r0) / (r1 - r0), (f1 - y) / (f1 - f0))
    }
}

impl<F: Real> Default for UnitBump<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Real> Profile<F> for UnitBump<F> {
    fn support(&self) -> (F, F) {
        (F::lit(0.5), F::lit(2.0))
    }

    fn eval(&self, u: F) -> F {
        if !(u > F::lit(0.5) && u < F::lit(2.0)) {
            return F::zero();
        }
        let (a, b) = self.edge_args(u.log2());
        self.step(a) * self.step(b)
    }

    fn apply(&self, u: &Jet<F>) -> Jet<F> {
        let u0 = u.value();
        if !(u0 > F::lit(0.5) && u0 < F::lit(2.0)) {
            return Jet::zero(u.order());
        }
        let y = u.ln().scale(F::LOG2_E());
        let (r0, r1) = self.rise;
        let (f0, f1) = self.fall;
        let a = y.add_const(-r0).scale(F::one() / (r1 - r0));
        let b = y.scale(-F::one()).add_const(f1).scale(F::one() / (f1 - f0));
        &self.step_jet(&a) * &self.step_jet(&b)
    }
}

/// `u ↦ Φ(a ln u + b)`.
#[derive(Clone, Copy, Debug)]
pub struct LogBump<F> {
    pub a: F,
    pub b: F,
}

impl<F: Real> LogBump<F> {
    /// The annular profile `Φ(1 + 2 log₂(u/Z))`, nonzero exactly for `Z/2 < u < Z`.
    pub fn annulus(z: F) -> Result<Self> {
        if !(z > F::zero()) {
            return domain("annulus scale must be positive");
        }
        let two = F::lit(2.0);
        let a = two * F::LOG2_E();
        Ok(LogBump { a, b: F::one() - two * z.log2() })
    }
}

impl<F: Real> Profile<F> for LogBump<F> {
    fn support(&self) -> (F, F) {
        let lo = ((-F::one() - self.b) / self.a).exp();
        let hi = ((F::one() - self.b) / self.a).exp();
        if lo < hi {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }

    fn eval(&self, u: F) -> F {
        if !(u > F::zero()) {
            return F::zero();
        }
        bump_phi(self.a * u.ln() + self.b)
    }

    fn apply(&self, u: &Jet<F>) -> Jet<F> {
        if !(u.value() > F::zero()) {
            return Jet::zero(u.order());
        }
        bump_phi_jet(&u.ln().scale(self.a).add_const(self.b))
    }
}

/// A radial function `φ(r)` on `(0, ∞)` with compact support and jets.
pub trait Radial<F: Real>: Send + Sync {
    fn support(&self) -> (F, F);
    fn eval(&self, r: F) -> Complex<F>;
    fn jet(&self, r: F, order: usize) -> Jet<Complex<F>>;

    /// `φ^{(j)}(r)`.
    fn deriv(&self, j: usize, r: F) -> Complex<F> {
        if j == 0 {
            return self.eval(r);
        }
        self.jet(r, j).deriv(j)
    }

    /// Whether `φ` is real valued.
    fn is_real(&self) -> bool {
        false
    }
}

/// `φ(r) = P(X r²) r^{2it}`.
#[derive(Clone, Debug)]
pub struct TwistedRadial<F, P> {
    profile: P,
    x: F,
    t: F,
}

impl<F: Real, P: Profile<F>> TwistedRadial<F, P> {
    pub fn new(profile: P, x: F, t: F) -> Result<Self> {
        if !(x > F::zero()) {
            return domain("scale X must be positive");
        }
        Ok(TwistedRadial { profile, x, t })
    }

    pub fn profile(&self) -> &P {
        &self.profile
    }

    pub fn scale(&self) -> F {
        self.x
    }

    pub fn twist(&self) -> F {
        self.t
    }
}

impl<F: Real, P: Profile<F>> Radial<F> for TwistedRadial<F, P> {
    fn support(&self) -> (F, F) {
        let (lo, hi) = self.profile.support();
        ((lo / self.x).sqrt(), (hi / self.x).sqrt())
    }

    fn eval(&self, r: F) -> Complex<F> {
        if !(r > F::zero()) {
            return Complex::zero();
        }
        let v = self.profile.eval(self.x * r * r);
        if v == F::zero() {
            return Complex::zero();
        }
        if self.t == F::zero() {
            return Complex::new(v, F::zero());
        }
        Complex::from_polar(v, F::lit(2.0) * self.t * r.ln())
    }

    fn jet(&self, r: F, order: usize) -> Jet<Complex<F>> {
        if !(r > F::zero()) {
            return Jet::zero(order);
        }
        let rj = Jet::var(r, order);
        let u = (&rj * &rj).scale(self.x);
        let p = self.profile.apply(&u).map(|v| Complex::new(v, F::zero()));
        if self.t == F::zero() {
            return p;
        }
        let i2t = Complex::new(F::zero(), F::lit(2.0) * self.t);
        let tw = rj.ln().map(|v| Complex::new(v, F::zero())).scale(i2t).exp();
        &p * &tw
    }

    fn is_real(&self) -> bool {
        self.t == F::zero()
    }
}

/// `Ω` of the plateau construction with width `η`.
pub fn plateau_omega<F: Real>(eta: F) -> Result<Plateau<F>> {
    Plateau::new(eta)
}

/// `ω(Z; z) = Φ(1 + 2 log₂(|z|²/Z))` as a radial function of `|z|`.
pub fn annular_weight<F: Real>(z: F) -> Result<TwistedRadial<F, LogBump<F>>> {
    TwistedRadial::new(LogBump::annulus(z)?, F::one(), F::zero())
}

/// `φ(r) = Ω(X r²) r^{2it}`.
pub fn twisted_radial<F: Real, P: Profile<F>>(
    profile: P,
    x: F,
    t: F,
) -> Result<TwistedRadial<F, P>> {
    TwistedRadial::new(profile, x, t)
}

/// The test function `F_X(z) = Φ₀(X|z|²)` as its radial profile.
pub fn test_function_fx<F: Real>(x: F) -> Result<TwistedRadial<F, UnitBump<F>>> {
    if !(x >= F::lit(2.0)) {
        return domain("F_X requires X >= 2");
    }
    TwistedRadial::new(UnitBump::new(), x, F::zero())
}

/// Central finite difference of order `j` with step `h` (cross-check only).
pub fn finite_difference<F: Real>(f: impl Fn(F) -> F, x: F, j: usize, h: F) -> F {
    // coefficients of the j-th central difference: Σ (-1)^k C(j,k) f(x + (j/2 - k) h)
    let mut acc = F::zero();
    let mut binom = F::one();
    for k in 0..=j {
        let sign = if k % 2 == 0 { F::one() } else { -F::one() };
        let off = F::lit(j as f64 / 2.0 - k as f64);
        acc += sign * binom * f(x + off * h);
        binom = binom * F::lit((j - k) as f64) / F::lit((k + 1) as f64);
    }
    acc / h.powi(j as i32)
}

/// `φ^{(j)}` of a radial function, as a radial function.
pub struct DerivativeRadial<'a, F> {
    phi: &'a dyn Radial<F>,
    j: usize,
}

impl<'a, F: Real> DerivativeRadial<'a, F> {
    pub fn new(phi: &'a dyn Radial<F>, j: usize) -> Self {
        DerivativeRadial { phi, j }
    }
}

impl<'a, F: Real> Radial<F> for DerivativeRadial<'a, F> {
    fn support(&self) -> (F, F) {
        self.phi.support()
    }

    fn eval(&self, r: F) -> Complex<F> {
        self.phi.deriv(self.j, r)
    }

    fn jet(&self, r: F, order: usize) -> Jet<Complex<F>> {
        let full = self.phi.jet(r, order + self.j);
        // c'_k = c_{k+j} (k+j)! / k!
        let c = (0..=order)
            .map(|k| {
                let f: f64 = (k + 1..=k + self.j).map(|m| m as f64).product();
                full.c[k + self.j] * F::lit(f)
            })
            .collect();
        Jet { c }
    }

    fn is_real(&self) -> bool {
        self.phi.is_real()
    }
}
