//! Analytic large sieve inequalities over `Z[i]`.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::char_sums::e_re;
use crate::error::{domain, Result};
use crate::fourier::nearest_distance_sq;
use crate::scalar::Real;
use crate::zi::{reduced_residues_mod, GaussianInt};
use crate::Gi;

/// Coefficients `c_n` supported on `0 < |n|² <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector<F> {
    entries: Vec<(Gi, Complex<F>)>,
    n: F,
}

impl<F: Real> CoefficientVector<F> {
    pub fn new(entries: Vec<(Gi, Complex<F>)>, n: F) -> Result<Self> {
        if !(n >= F::one()) {
            return domain("N must be at least 1");
        }
        for (k, _) in &entries {
            let nk = F::lit(k.norm() as f64);
            if k.is_zero() || nk > n {
                return domain(format!("index {k} outside 0 < |n|² <= {n}"));
            }
        }
        Ok(CoefficientVector { entries, n })
    }

    pub fn zeros(n: F) -> Result<Self> {
        Self::new(Vec::new(), n)
    }

    pub fn entries(&self) -> &[(Gi, Complex<F>)] {
        &self.entries
    }

    pub fn bound(&self) -> F {
        self.n
    }

    /// `‖c‖² = Σ |c_n|²`.
    pub fn norm_sq(&self) -> F {
        self.entries.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    pub fn support_len(&self) -> usize {
        self.entries.iter().filter(|(_, c)| !c.is_zero()).count()
    }
}

/// Gaussian integers `n` with `0 < |n|² <= N`.
pub fn index_set(n: f64) -> Vec<Gi> {
    let r = n.sqrt().floor() as i64;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let z = Gi::new(x, y);
            if !z.is_zero() && (z.norm() as f64) <= n {
                out.push(z);
            }
        }
    }
    out
}

/// `S(α, N) = Σ c_n e(Re(α n))`.
pub fn trig_poly<F: Real>(coeffs: &CoefficientVector<F>, alpha: Complex<F>, n: F) -> Result<Complex<F>> {
    if coeffs.n > n {
        for (k, _) in &coeffs.entries {
            if F::lit(k.norm() as f64) > n {
                return domain(format!("index {k} outside 0 < |n|² <= {n}"));
            }
        }
    }
    Ok(eval_poly(coeffs, alpha))
}

fn eval_poly<F: Real>(coeffs: &CoefficientVector<F>, alpha: Complex<F>) -> Complex<F> {
    let mut acc = Complex::zero();
    for (k, c) in &coeffs.entries {
        acc += *c * e_re(alpha * k.to_complex::<F>());
    }
    acc
}

/// `M(δ) = max_r #{p : ‖α_p - α_r‖² < δ}`.
pub fn spacing_m<F: Real>(delta: F, points: &[Complex<F>]) -> Result<usize> {
    if !(delta > F::zero() && delta <= F::lit(0.5)) {
        return domain(format!("delta = {delta} outside (0, 1/2]"));
    }
    let m = points
        .par_iter()
        .map(|a| points.iter().filter(|b| nearest_distance_sq(**b - *a) < delta).count())
        .max()
        .unwrap_or(0);
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SieveReport<F> {
    pub lhs: F,
    pub rhs: F,
    pub ratio: F,
    /// The spacing count used on the right (general case) or the number of points.
    pub m: usize,
}

impl<F: Real> SieveReport<F> {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

fn ratio<F: Real>(lhs: F, rhs: F) -> F {
    if rhs > F::zero() {
        lhs / rhs
    } else {
        F::zero()
    }
}

/// `Σ_r |S(α_r, N)|²`, summed in point order.
pub fn mean_square<F: Real>(coeffs: &CoefficientVector<F>, points: &[Complex<F>]) -> F {
    let vals: Vec<F> = points.par_iter().map(|a| eval_poly(coeffs, *a).norm_sqr()).collect();
    vals.into_iter().sum()
}

/// A point set, coefficients and spacing parameter for the general inequality.
#[derive(Clone, Debug)]
pub struct SieveInstance<F> {
    pub points: Vec<Complex<F>>,
    pub coeffs: CoefficientVector<F>,
    pub delta: F,
}

/// `Σ_r |S(α_r,N)|² <= 16 M(δ) (2N + 1/δ) ‖c‖²`.
pub fn general_sieve_check<F: Real>(inst: &SieveInstance<F>) -> Result<SieveReport<F>> {
    let m = spacing_m(inst.delta, &inst.points)?;
    let lhs = mean_square(&inst.coeffs, &inst.points);
    let n = inst.coeffs.bound();
    let rhs = F::lit(16.0) * F::lit(m as f64) * (F::lit(2.0) * n + inst.delta.recip()) * inst.coeffs.norm_sq();
    Ok(SieveReport { lhs, rhs, ratio: ratio(lhs, rhs), m })
}

/// A Farey-type fraction `a/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FareyPoint {
    pub a: Gi,
    pub q: Gi,
}

impl FareyPoint {
    pub fn value<F: Real>(&self) -> Complex<F> {
        self.a.to_complex::<F>() / self.q.to_complex::<F>()
    }
}

/// Moduli `q ≡ 0 mod d` (every associate) with `0 < |q|² <= Q`, sorted by norm.
pub fn farey_moduli(q_max: f64, d: &Gi) -> Result<Vec<Gi>> {
    if d.is_zero() {
        return domain("d must be nonzero");
    }
    let dn = d.norm() as f64;
    let mut out: Vec<Gi> = index_set(q_max / dn).into_iter().map(|t| t * *d).collect();
    out.sort_by_key(|q| (q.norm(), q.re, q.im));
    Ok(out)
}

/// All pairs `(a mod q, q)` with `d | q`, `0 < |q|² <= Q`, `(a, q) ~ 1`.
pub fn farey_fractions(q_max: f64, d: &Gi) -> Result<Vec<FareyPoint>> {
    let mut out = Vec::new();
    for q in farey_moduli(q_max, d)? {
        for a in reduced_residues_mod(&q)? {
            out.push(FareyPoint { a, q });
        }
    }
    Ok(out)
}

/// The points `a/q` of [`farey_fractions`].
pub fn farey_points<F: Real>(q_max: F, d: &Gi) -> Result<Vec<Complex<F>>> {
    if !(q_max >= F::one()) {
        return domain("Q must be at least 1");
    }
    Ok(farey_fractions(q_max.to_f64_lossy(), d)?.iter().map(|p| p.value()).collect())
}

/// `Σ_{q, a} |S(a/q, N)|² <= 64 (2N + Q²/|d|²) ‖c‖²`.
pub fn special_sieve_check<F: Real>(q_max: F, d: &Gi, coeffs: &CoefficientVector<F>) -> Result<SieveReport<F>> {
    let points = farey_points(q_max, d)?;
    let lhs = mean_square(coeffs, &points);
    let n = coeffs.bound();
    let dn = F::lit(d.norm() as f64);
    let rhs = F::lit(64.0) * (F::lit(2.0) * n + q_max * q_max / dn) * coeffs.norm_sq();
    Ok(SieveReport { lhs, rhs, ratio: ratio(lhs, rhs), m: points.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpacingReport {
    /// Pairs of fractions compared.
    pub pairs: u64,
    /// Pairs that coincide modulo `Z[i]`.
    pub coincident: u64,
    /// Pairs of distinct points violating `‖α - β‖² >= |d|²/Q²`.
    pub violations: u64,
    /// Smallest `‖α - β‖²` among distinct points, as an exact fraction.
    pub min_num: i128,
    pub min_den: i128,
}

/// Checks the Farey spacing `‖a₁/q₁ - a₂/q₂‖² >= |d|²/Q²` in exact integer
/// arithmetic for integral `Q`.
pub fn farey_spacing_exact(q_max: i64, d: &Gi) -> Result<SpacingReport> {
    let fr = farey_fractions(q_max as f64, d)?;
    let wide = |z: &Gi| GaussianInt::<i128>::new(z.re as i128, z.im as i128);
    let fr: Vec<(GaussianInt<i128>, GaussianInt<i128>)> = fr.iter().map(|p| (wide(&p.a), wide(&p.q))).collect();
    let dn = d.norm() as i128;
    let qq = (q_max as i128) * (q_max as i128);
    let per_row: Vec<SpacingReport> = (0..fr.len())
        .into_par_iter()
        .map(|i| {
            let mut rep = SpacingReport { pairs: 0, coincident: 0, violations: 0, min_num: 1, min_den: 0 };
            let (a1, q1) = fr[i];
            for &(a2, q2) in &fr[i + 1..] {
                rep.pairs += 1;
                let num = a1 * q2 - a2 * q1;
                let den = q1 * q2;
                let rho = num.reduce(&den);
                let rn = rho.norm();
                if rn == 0 {
                    rep.coincident += 1;
                    continue;
                }
                let dd = den.norm();
                if rn * qq < dn * dd {
                    rep.violations += 1;
                }
                if rep.min_den == 0 || rn * rep.min_den < rep.min_num * dd {
                    rep.min_num = rn;
                    rep.min_den = dd;
                }
            }
            rep
        })
        .collect();
    let mut total = SpacingReport { pairs: 0, coincident: 0, violations: 0, min_num: 1, min_den: 0 };
    for r in per_row {
        total.pairs += r.pairs;
        total.coincident += r.coincident;
        total.violations += r.violations;
        if r.min_den != 0 && (total.min_den == 0 || r.min_num * total.min_den < total.min_num * r.min_den) {
            total.min_num = r.min_num;
            total.min_den = r.min_den;
        }
    }
    Ok(total)
}

/// Random coefficients on `0 < |n|² <= N`; each index kept with probability `density`.
pub fn random_coefficients<F: Real, R: Rng + ?Sized>(rng: &mut R, n: F, density: f64) -> Result<CoefficientVector<F>> {
    let mut entries = Vec::new();
    for k in index_set(n.to_f64_lossy()) {
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            let c = Complex::new(F::lit(rng.gen_range(-1.0..1.0)), F::lit(rng.gen_range(-1.0..1.0)));
            entries.push((k, c));
        }
    }
    CoefficientVector::new(entries, n)
}

/// Random points, a share of them clustered around a few centres.
pub fn random_points<F: Real, R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Complex<F>> {
    let centres: Vec<(f64, f64)> = (0..3).map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
    (0..count)
        .map(|_| {
            let (x, y) = if rng.gen_bool(0.5) {
                let (cx, cy) = centres[rng.gen_range(0..centres.len())];
                (cx + rng.gen_range(-0.02..0.02), cy + rng.gen_range(-0.02..0.02))
            } else {
                (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
            };
            Complex::new(F::lit(x), F::lit(y))
        })
        .collect()
}

/// A random instance of the general inequality with `N <= n_max` and at most `r_max` points.
pub fn random_general_instance<F: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n_max: f64,
    r_max: usize,
) -> Result<SieveInstance<F>> {
    let n = rng.gen_range(1.0..=n_max.max(1.0));
    let density = rng.gen_range(0.2..1.0);
    let coeffs = random_coefficients(rng, F::lit(n), density)?;
    let count = rng.gen_range(1..=r_max.max(1));
    let points = random_points(rng, count);
    let delta = F::lit(rng.gen_range(1e-3..=0.5));
    Ok(SieveInstance { points, coeffs, delta })
}

#[derive(Clone, Debug)]
pub struct SpecialInstance<F> {
    pub q_max: F,
    pub d: Gi,
    pub coeffs: CoefficientVector<F>,
}

/// A random instance of the special inequality with `Q <= q_max`, `N <= n_max`.
pub fn random_special_instance<F: Real, R: Rng + ?Sized>(
    rng: &mut R,
    q_max: f64,
    n_max: f64,
) -> Result<SpecialInstance<F>> {
    let q = rng.gen_range(1.0..=q_max.max(1.0));
    let d = loop {
        let d = Gi::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        if !d.is_zero() && (d.norm() as f64) <= q {
            break d;
        }
    };
    let n = rng.gen_range(1.0..=n_max.max(1.0));
    let density = rng.gen_range(0.2..1.0);
    let coeffs = random_coefficients(rng, F::lit(n), density)?;
    Ok(SpecialInstance { q_max: F::lit(q), d, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_small_cases() {
        let z = Complex::new(0.0, 0.0);
        assert_eq!(spacing_m(0.25, &[z]).unwrap(), 1);
        assert_eq!(spacing_m(0.25, &[z, Complex::new(0.5, 0.5)]).unwrap(), 1);
        assert_eq!(spacing_m(0.25, &[z, z]).unwrap(), 2);
        assert!(spacing_m(0.6, &[z]).is_err());
        assert!(spacing_m(0.0, &[z]).is_err());
    }

    #[test]
    fn farey_unit_level() {
        assert_eq!(farey_points(1.0, &Gi::one()).unwrap().len(), 4);
        assert!(farey_points(1.0, &Gi::new(2, 0)).unwrap().is_empty());
        assert!(farey_points(1.0, &Gi::zero()).is_err());
    }

    #[test]
    fn support_is_validated() {
        assert!(CoefficientVector::new(vec![(Gi::new(2, 0), Complex::new(1.0, 0.0))], 3.0).is_err());
        assert!(CoefficientVector::new(vec![(Gi::zero(), Complex::new(1.0, 0.0))], 3.0).is_err());
    }
}
