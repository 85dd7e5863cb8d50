//! Weighted sums of Kloosterman sums over several Gaussian-integer ranges.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::char_sums::ModulusTable;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::weights::{annular_weight, Radial};
use crate::zi::{coprime, inv_mod};
use crate::Gi;

/// Coefficient data indexed by a Gaussian integer.
pub type CoeffFn<F> = Arc<dyn Fn(&Gi) -> Complex<F> + Send + Sync>;
/// A function of a pair `(r, s)`.
pub type PairFn<F> = Arc<dyn Fn(&Gi, &Gi) -> Complex<F> + Send + Sync>;
/// A function of a real variable, such as `g(|p|²)`.
pub type ScalarFn<F> = Arc<dyn Fn(F) -> Complex<F> + Send + Sync>;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Gaussian integers with `lo < |z|² <= hi`, sorted by `(norm, re, im)`.
pub fn annulus(lo: f64, hi: f64) -> Vec<Gi> {
    let r = hi.max(0.0).sqrt().floor() as i64;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let z = Gi::new(x, y);
            let n = z.norm() as f64;
            if n > lo && n <= hi {
                out.push(z);
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), z.re, z.im));
    out
}

/// Gaussian integers with `lo <= |z|² <= hi`.
pub fn closed_annulus(lo: f64, hi: f64) -> Vec<Gi> {
    let mut out = annulus(lo - 0.5, hi);
    out.retain(|z| z.norm() as f64 >= lo);
    out
}

/// Constant coefficient `1`.
pub fn ones<F: Real>() -> CoeffFn<F> {
    Arc::new(|_| Complex::new(F::one(), F::zero()))
}

/// Kloosterman values cached per modulus class.
///
/// `S(u, v; c) = S(εu, εv; εc)` for a unit `ε`, so values are stored under the
/// canonical associate `εc` with `εu`, `εv` reduced modulo it.
#[derive(Default)]
pub struct KloostermanMemo<F> {
    tables: HashMap<Gi, ModulusTable<F>>,
    values: HashMap<(Gi, Gi, Gi), Complex<F>>,
    hits: u64,
}

impl<F: Real> KloostermanMemo<F> {
    pub fn new() -> Self {
        KloostermanMemo { tables: HashMap::new(), values: HashMap::new(), hits: 0 }
    }

    pub fn get(&mut self, u: &Gi, v: &Gi, c: &Gi) -> Result<Complex<F>> {
        if c.is_zero() {
            return domain("modulus must be nonzero");
        }
        let k = c.canonical_rotation();
        let c0 = c.mul_i_pow(k);
        let u0 = u.mul_i_pow(k).reduce(&c0);
        let v0 = v.mul_i_pow(k).reduce(&c0);
        if let Some(v) = self.values.get(&(c0, u0, v0)) {
            self.hits += 1;
            return Ok(*v);
        }
        if !self.tables.contains_key(&c0) {
            self.tables.insert(c0, ModulusTable::new(&c0)?);
        }
        let val = self.tables[&c0].kloosterman(&u0, &v0);
        self.values.insert((c0, u0, v0), val);
        Ok(val)
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Scales and coefficients of the sum `ℛ`.
#[derive(Clone)]
pub struct AggregateSpec<F> {
    pub h: F,
    pub k: F,
    pub l: F,
    pub p: F,
    pub q: F,
    pub delta: F,
    pub theta: CoeffFn<F>,
    pub phi_h: CoeffFn<F>,
    pub upsilon: CoeffFn<F>,
    pub budget: u64,
}

impl<F: Real> AggregateSpec<F> {
    /// All coefficients equal to `1` on their annuli.
    pub fn unit_coefficients(h: F, k: F, l: F, p: F, q: F, delta: F) -> Result<Self> {
        let spec = AggregateSpec {
            h,
            k,
            l,
            p,
            q,
            delta,
            theta: ones(),
            phi_h: ones(),
            upsilon: ones(),
            budget: DEFAULT_BUDGET,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("H", self.h), ("K", self.k), ("L", self.l), ("P", self.p), ("Q", self.q)] {
            if !(v >= F::one()) {
                return domain(format!("{name} = {v} must be at least 1"));
            }
        }
        if !(self.delta > F::zero() && self.delta <= F::one()) {
            return domain("delta must lie in (0, 1]");
        }
        Ok(())
    }

    fn ranges(&self) -> Ranges {
        let ann = |z: F| annulus(z.to_f64_lossy() / 2.0, z.to_f64_lossy());
        Ranges { h: ann(self.h), k: ann(self.k), l: ann(self.l), p: ann(self.p), q: ann(self.q) }
    }

    /// `P Q H K (L Σ |Υ_ℓ|²)^{1/2}`.
    pub fn trivial_bound(&self) -> F {
        let l2: F = annulus(self.l.to_f64_lossy() / 2.0, self.l.to_f64_lossy())
            .iter()
            .map(|z| (self.upsilon)(z).norm_sqr())
            .sum();
        self.p * self.q * self.h * self.k * (self.l * l2).sqrt()
    }
}

struct Ranges {
    h: Vec<Gi>,
    k: Vec<Gi>,
    l: Vec<Gi>,
    p: Vec<Gi>,
    q: Vec<Gi>,
}

/// Precomputed annular weight values `ω(Z; z)` on a range.
fn weights_on<F: Real>(z: F, pts: &[Gi]) -> Result<Vec<F>> {
    let w = annular_weight(z)?;
    Ok(pts.iter().map(|x| w.eval(F::lit(x.norm() as f64).sqrt()).re).collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RSumReport<F> {
    pub value: Complex<F>,
    /// Terms of the five-fold sum with nonzero weight.
    pub terms: u64,
    pub trivial: F,
    pub ratio: F,
    /// Distinct Kloosterman values computed (memoized order only).
    pub distinct: usize,
}

/// Evaluation strategy for [`r_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Nested loops `p, q, h, k, ℓ` with one residue table per `(p, q)`.
    Direct,
    /// Group `(p, q)` by the ideal `pqO` and reuse `S(hk, ℓ; pq)` across them.
    ByModulus,
}

struct Prepared<F> {
    h: Vec<(Gi, Complex<F>)>,
    k: Vec<(Gi, F)>,
    l: Vec<(Gi, Complex<F>)>,
    p: Vec<(Gi, Complex<F>)>,
    q: Vec<(Gi, F)>,
}

fn prepare<F: Real>(spec: &AggregateSpec<F>) -> Result<Prepared<F>> {
    spec.validate()?;
    let r = spec.ranges();
    let wh = weights_on(spec.h, &r.h)?;
    let wk = weights_on(spec.k, &r.k)?;
    let wl = weights_on(spec.l, &r.l)?;
    let wp = weights_on(spec.p, &r.p)?;
    let wq = weights_on(spec.q, &r.q)?;
    let keep = |v: Vec<(Gi, Complex<F>)>| v.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>();
    let keep_r = |v: Vec<(Gi, F)>| v.into_iter().filter(|(_, c)| *c != F::zero()).collect::<Vec<_>>();
    let h = keep(r.h.iter().zip(&wh).map(|(z, w)| (*z, (spec.phi_h)(z) * *w)).collect());
    let k = keep_r(r.k.iter().zip(&wk).map(|(z, w)| (*z, *w)).collect());
    let l = keep(r.l.iter().zip(&wl).map(|(z, w)| (*z, (spec.upsilon)(z) * *w)).collect());
    let p = keep(
        r.p.iter()
            .zip(&wp)
            .map(|(z, w)| (*z, (spec.theta)(z) * *w / F::lit(z.norm() as f64)))
            .collect(),
    );
    let q = keep_r(r.q.iter().zip(&wq).map(|(z, w)| (*z, *w / F::lit(z.norm() as f64))).collect());
    let terms = [h.len(), k.len(), l.len(), p.len(), q.len()].iter().map(|&n| n as u64).product::<u64>();
    if terms > spec.budget {
        return Err(Error::Resource(format!("{terms} terms exceed the budget of {}", spec.budget)));
    }
    Ok(Prepared { h, k, l, p, q })
}

/// `ℛ = Σ_p θ_p |p|⁻² Σ_q |q|⁻² Σ_h φ_h Σ_k Σ_ℓ S(hk, ℓ; pq) φ(h,k,ℓ,p,q) Υ_ℓ`
/// with `φ` the product of the five annular weights.
pub fn r_sum<F: Real>(spec: &AggregateSpec<F>, order: Order) -> Result<RSumReport<F>> {
    let pr = prepare(spec)?;
    let terms = (pr.h.len() * pr.k.len() * pr.l.len() * pr.p.len() * pr.q.len()) as u64;
    let (value, distinct) = match order {
        Order::Direct => (r_direct(&pr)?, 0),
        Order::ByModulus => r_by_modulus(&pr)?,
    };
    let trivial = spec.trivial_bound();
    let ratio = if trivial > F::zero() { value.norm() / trivial } else { F::zero() };
    Ok(RSumReport { value, terms, trivial, ratio, distinct })
}

fn inner_hkl<F: Real>(pr: &Prepared<F>, mut s: impl FnMut(&Gi, &Gi) -> Result<Complex<F>>) -> Result<Complex<F>> {
    let mut acc = Complex::zero();
    for (h, ch) in &pr.h {
        for (k, wk) in &pr.k {
            let hk = *h * *k;
            for (l, cl) in &pr.l {
                acc += *ch * *cl * *wk * s(&hk, l)?;
            }
        }
    }
    Ok(acc)
}

fn r_direct<F: Real>(pr: &Prepared<F>) -> Result<Complex<F>> {
    let parts: Vec<Result<Complex<F>>> = pr
        .p
        .par_iter()
        .map(|(p, cp)| {
            let mut acc = Complex::zero();
            for (q, wq) in &pr.q {
                let table = ModulusTable::<F>::new(&(*p * *q))?;
                acc += *cp * *wq * inner_hkl(pr, |u, v| Ok(table.kloosterman(u, v)))?;
            }
            Ok(acc)
        })
        .collect();
    parts.into_iter().sum()
}

fn r_by_modulus<F: Real>(pr: &Prepared<F>) -> Result<(Complex<F>, usize)> {
    // canonical modulus -> [(rotation, weight of (p, q))]
    let mut groups: HashMap<Gi, Vec<(u32, Complex<F>)>> = HashMap::new();
    for (p, cp) in &pr.p {
        for (q, wq) in &pr.q {
            let c = *p * *q;
            let k = c.canonical_rotation();
            groups.entry(c.mul_i_pow(k)).or_default().push((k, *cp * *wq));
        }
    }
    let mut keys: Vec<Gi> = groups.keys().copied().collect();
    keys.sort_by_key(|z| (z.norm(), z.re, z.im));
    let parts: Vec<Result<(Complex<F>, usize)>> = keys
        .par_iter()
        .map(|c0| {
            let mut memo = KloostermanMemo::<F>::new();
            let mut acc = Complex::zero();
            for (k, wt) in &groups[c0] {
                let c = c0.mul_i_pow(4 - k % 4);
                acc += *wt * inner_hkl(pr, |u, v| memo.get(u, v, &c))?;
            }
            Ok((acc, memo.len()))
        })
        .collect();
    let mut total = Complex::zero();
    let mut distinct = 0;
    for part in parts {
        let (v, d) = part?;
        total += v;
        distinct += d;
    }
    Ok((total, distinct))
}

/// `ℬ(R, S)`: pairs with `R/2 < |r|² <= R`, `S/2 < |s|² <= S`, `(r, s) ~ 1`.
pub fn enumerate_b(r: f64, s: f64) -> Vec<(Gi, Gi)> {
    let rs = annulus(r / 2.0, r);
    let ss = annulus(s / 2.0, s);
    let mut out = Vec::new();
    for a in &rs {
        for b in &ss {
            if coprime(a, b) {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// Data of the sum `Λ`.
#[derive(Clone)]
pub struct CuspSumSpec<F> {
    pub r: F,
    pub s: F,
    pub n: F,
    pub l: F,
    pub p: F,
    pub b: PairFn<F>,
    pub a: CoeffFn<F>,
    pub big_a: CoeffFn<F>,
    /// `g(x)`, read on `P/2 <= x <= P`.
    pub g: ScalarFn<F>,
    pub budget: u64,
}

impl<F: Real> CuspSumSpec<F> {
    /// `b`, `a_n`, `A(ℓ)` and `g` all identically `1`.
    pub fn unit_coefficients(r: F, s: F, n: F, l: F, p: F) -> Result<Self> {
        let spec = CuspSumSpec {
            r,
            s,
            n,
            l,
            p,
            b: Arc::new(|_, _| Complex::new(F::one(), F::zero())),
            a: ones(),
            big_a: ones(),
            g: Arc::new(|_| Complex::new(F::one(), F::zero())),
            budget: DEFAULT_BUDGET,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("R", self.r), ("S", self.s), ("N", self.n), ("L", self.l), ("P", self.p)] {
            if !(v >= F::one()) {
                return domain(format!("{name} = {v} must be at least 1"));
            }
        }
        let q = self.r * self.s;
        if q < self.n.sqrt() || q < self.l.sqrt() {
            return domain(format!("RS = {q} is below max(sqrt N, sqrt L)"));
        }
        Ok(())
    }

    /// `X = P S √R / (4π² √(L N))`.
    pub fn x_parameter(&self) -> F {
        let four_pi2 = F::lit(4.0) * F::PI() * F::PI();
        self.p * self.s * self.r.sqrt() / (four_pi2 * (self.l * self.n).sqrt())
    }

    fn p_range(&self) -> Vec<Gi> {
        closed_annulus(self.p.to_f64_lossy() / 2.0, self.p.to_f64_lossy())
    }

    fn n_range(&self) -> Vec<Gi> {
        annulus(self.n.to_f64_lossy() / 4.0, self.n.to_f64_lossy())
    }

    fn l_range(&self) -> Vec<Gi> {
        annulus(self.l.to_f64_lossy() / 2.0, self.l.to_f64_lossy())
    }
}

/// `K_{r,s}(n, ℓ) = Σ_{p ≠ 0, (p,r)~1} g(|p|²) S(r* n, ℓ; p s)`, the sum over
/// `P/2 <= |p|² <= P`.
pub fn k_rs<F: Real>(r: &Gi, s: &Gi, n: &Gi, l: &Gi, p_scale: F, g: &dyn Fn(F) -> Complex<F>) -> Result<Complex<F>> {
    if r.is_zero() || s.is_zero() {
        return domain("r and s must be nonzero");
    }
    if !coprime(r, s) {
        return domain(format!("({r}, {s}) not coprime"));
    }
    let mut acc = Complex::zero();
    for p in closed_annulus(p_scale.to_f64_lossy() / 2.0, p_scale.to_f64_lossy()) {
        if !coprime(&p, r) {
            continue;
        }
        let gv = g(F::lit(p.norm() as f64));
        if gv.is_zero() {
            continue;
        }
        let w = p * *s;
        let rs = inv_mod(r, &w)?;
        acc += gv * ModulusTable::<F>::new(&w)?.kloosterman(&(rs * *n), l);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaReport<F> {
    pub value: Complex<F>,
    pub pairs: usize,
    pub terms: u64,
    pub x: F,
}

/// Loop order for [`lambda_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaOrder {
    /// `(r, s)`, then `n`, `ℓ`, then the `p` sum inside `K_{r,s}`.
    PairsFirst,
    /// `(r, s)`, then `p` (one residue table per `ps`), then `ℓ`, `n`.
    ModulusFirst,
}

/// `Λ = Σ_{(r,s) ∈ ℬ(R,S)} b(r,s) Σ_{N/4 < |n|² <= N} a_n Σ_{L/2 < |ℓ|² <= L} A(ℓ) K_{r,s}(n, ℓ)`.
pub fn lambda_sum<F: Real>(spec: &CuspSumSpec<F>, order: LambdaOrder) -> Result<LambdaReport<F>> {
    spec.validate()?;
    let pairs = enumerate_b(spec.r.to_f64_lossy(), spec.s.to_f64_lossy());
    let ns = spec.n_range();
    let ls = spec.l_range();
    let ps = spec.p_range();
    let terms = (pairs.len() * ns.len() * ls.len() * ps.len()) as u64;
    if terms > spec.budget {
        return Err(Error::Resource(format!("{terms} terms exceed the budget of {}", spec.budget)));
    }
    let g = spec.g.as_ref();
    let parts: Vec<Result<Complex<F>>> = pairs
        .par_iter()
        .map(|(r, s)| {
            let b = (spec.b)(r, s);
            if b.is_zero() {
                return Ok(Complex::zero());
            }
            let mut acc = Complex::zero();
            match order {
                LambdaOrder::PairsFirst => {
                    for n in &ns {
                        let an = (spec.a)(n);
                        for l in &ls {
                            acc += an * (spec.big_a)(l) * k_rs(r, s, n, l, spec.p, g)?;
                        }
                    }
                }
                LambdaOrder::ModulusFirst => {
                    for p in &ps {
                        if !coprime(p, r) {
                            continue;
                        }
                        let gv = g(F::lit(p.norm() as f64));
                        if gv.is_zero() {
                            continue;
                        }
                        let w = *p * *s;
                        let table = ModulusTable::<F>::new(&w)?;
                        let rs = inv_mod(r, &w)?;
                        let mut inner = Complex::zero();
                        for l in &ls {
                            let al = (spec.big_a)(l);
                            for n in &ns {
                                inner += al * (spec.a)(n) * table.kloosterman(&(rs * *n), l);
                            }
                        }
                        acc += gv * inner;
                    }
                }
            }
            Ok(b * acc)
        })
        .collect();
    let value = parts.into_iter().sum::<Result<Complex<F>>>()?;
    Ok(LambdaReport { value, pairs: pairs.len(), terms, x: spec.x_parameter() })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelSumReport<F> {
    pub value: Complex<F>,
    /// Moduli `c ∈ qO` with `2π|√(mn)/c|` in the support of `f`.
    pub visited: usize,
    /// Visited moduli with a nonzero term.
    pub nonzero: usize,
    /// `|c|²` bounds implied by the support.
    pub window: (F, F),
    /// Smallest and largest `|c|²` visited.
    pub visited_range: Option<(i64, i64)>,
}

/// `Σ_{c ∈ qO - {0}} S(m, n; c) |c|⁻² f(2π √(mn) / c)` for `f(z) = φ(|z|)`.
pub fn level_sum<F: Real>(m: &Gi, n: &Gi, q: &Gi, f: &dyn Radial<F>) -> Result<LevelSumReport<F>> {
    if m.is_zero() || n.is_zero() || q.is_zero() {
        return domain("m, n and q must be nonzero");
    }
    let (lo, hi) = f.support();
    if !(lo > F::zero() && hi > lo) {
        return domain("f must be supported in a compact subset of (0, ∞)");
    }
    let two_pi = F::lit(2.0) * F::PI();
    let mn_abs = F::lit((*m * *n).norm() as f64).sqrt().sqrt();
    // |z| = 2π |mn|^{1/2} / |c|
    let c_lo = two_pi * mn_abs / hi;
    let c_hi = two_pi * mn_abs / lo;
    let window = (c_lo * c_lo, c_hi * c_hi);
    let qn = q.norm() as f64;
    let ts = closed_annulus(window.0.to_f64_lossy() / qn - 1e-9, window.1.to_f64_lossy() / qn + 1e-9);
    let cs: Vec<Gi> = ts
        .into_iter()
        .map(|t| t * *q)
        .filter(|c| {
            let a = two_pi * mn_abs / F::lit(c.norm() as f64).sqrt();
            a >= lo && a <= hi
        })
        .collect();
    let vals: Vec<Result<Complex<F>>> = cs
        .par_iter()
        .map(|c| {
            let a = two_pi * mn_abs / F::lit(c.norm() as f64).sqrt();
            let fv = f.eval(a);
            if fv.is_zero() {
                return Ok(Complex::zero());
            }
            let s = ModulusTable::<F>::new(c)?.kloosterman(m, n);
            Ok(s * fv / F::lit(c.norm() as f64))
        })
        .collect();
    let mut value = Complex::zero();
    let mut nonzero = 0;
    for v in vals {
        let v = v?;
        if !v.is_zero() {
            nonzero += 1;
        }
        value += v;
    }
    let visited_range = cs.iter().map(|c| c.norm()).fold(None, |acc: Option<(i64, i64)>, x| match acc {
        None => Some((x, x)),
        Some((a, b)) => Some((a.min(x), b.max(x))),
    });
    Ok(LevelSumReport { value, visited: cs.len(), nonzero, window, visited_range })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearReport<F> {
    pub sum: Complex<F>,
    /// `Σ |terms|`.
    pub abs_sum: F,
    /// `H K`.
    pub trivial: F,
    /// `|sum| / (H K)`.
    pub ratio: F,
}

/// `Σ_{H/2<|h|²<=H} Σ_{K/2<|k|²<=K} α(h) β(k) |hk|^{iu} S(h, k; c)`.
pub fn bilinear_ratio<F: Real>(
    alpha: &dyn Fn(&Gi) -> Complex<F>,
    beta: &dyn Fn(&Gi) -> Complex<F>,
    h_scale: F,
    k_scale: F,
    u: F,
    c: &Gi,
) -> Result<BilinearReport<F>> {
    let table = ModulusTable::<F>::new(c)?;
    let hs: Vec<(Gi, Complex<F>)> = annulus(h_scale.to_f64_lossy() / 2.0, h_scale.to_f64_lossy())
        .into_iter()
        .map(|h| (h, alpha(&h)))
        .filter(|(_, a)| !a.is_zero())
        .collect();
    let ks: Vec<(Gi, Complex<F>)> = annulus(k_scale.to_f64_lossy() / 2.0, k_scale.to_f64_lossy())
        .into_iter()
        .map(|k| (k, beta(&k)))
        .filter(|(_, b)| !b.is_zero())
        .collect();
    // |z|^{iu} = e^{iu ln|z|}
    let twist = |z: &Gi| Complex::from_polar(F::one(), u * F::lit(0.5) * F::lit(z.norm() as f64).ln());
    let mut sum = Complex::zero();
    let mut abs_sum = F::zero();
    for (h, a) in &hs {
        let ah = *a * twist(h);
        for (k, b) in &ks {
            let t = ah * *b * twist(k) * table.kloosterman(h, k);
            sum += t;
            abs_sum += t.norm();
        }
    }
    let trivial = h_scale * k_scale;
    Ok(BilinearReport { sum, abs_sum, trivial, ratio: sum.norm() / trivial })
}

/// A smooth coefficient `α(h) = ω(H; h)` on the annulus of scale `H`.
pub fn smooth_coefficient<F: Real>(scale: F) -> Result<CoeffFn<F>> {
    let w = annular_weight(scale)?;
    Ok(Arc::new(move |z: &Gi| w.eval(F::lit(z.norm() as f64).sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_small_cases() {
        assert_eq!(enumerate_b(1.0, 1.0).len(), 16);
        assert_eq!(enumerate_b(2.0, 1.0).len(), 16);
        assert!(enumerate_b(0.9, 1.0).is_empty());
        assert!(enumerate_b(2.0, 2.0).is_empty());
    }

    #[test]
    fn k_rs_unit_example() {
        let one = Gi::one();
        let g = |_: f64| Complex::new(1.0, 0.0);
        let v = k_rs(&one, &one, &one, &one, 2.0, &g).unwrap();
        assert!((v - Complex::new(8.0, 0.0)).norm() < 1e-12);
        let zero = |_: f64| Complex::new(0.0, 0.0);
        assert_eq!(k_rs(&one, &one, &one, &one, 2.0, &zero).unwrap(), Complex::zero());
    }

    #[test]
    fn memo_rotates_modulus() {
        let mut memo = KloostermanMemo::<f64>::new();
        let c = Gi::new(-2, 3);
        for (u, v) in [(Gi::new(1, 2), Gi::new(3, -1)), (Gi::new(0, 1), Gi::new(5, 5))] {
            let direct = ModulusTable::<f64>::new(&c).unwrap().kloosterman(&u, &v);
            assert!((memo.get(&u, &v, &c).unwrap() - direct).norm() < 1e-12);
        }
    }
}
