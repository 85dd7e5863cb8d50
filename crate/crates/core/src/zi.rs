//! Arithmetic in the Gaussian integers Z[i].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;

use crate::error::{domain, Result};
use crate::scalar::{Int, Real};

/// An element `re + im*i` of Z[i].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianInt<I> {
    pub re: I,
    pub im: I,
}

impl<I: Int> GaussianInt<I> {
    pub fn new(re: I, im: I) -> Self {
        GaussianInt { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussianInt::new(I::lit(re), I::lit(im))
    }

    pub fn zero() -> Self {
        GaussianInt::new(I::zero(), I::zero())
    }

    pub fn one() -> Self {
        GaussianInt::new(I::one(), I::zero())
    }

    pub fn i() -> Self {
        GaussianInt::new(I::zero(), I::one())
    }

    /// The units `1, i, -1, -i` in that order.
    pub fn units() -> [Self; 4] {
        let one = Self::one();
        let i = Self::i();
        [one.clone(), i.clone(), -one, -i]
    }

    pub fn norm(&self) -> I {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conj(&self) -> Self {
        GaussianInt::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        let (a, b) = (self.re.clone(), self.im.clone());
        match k % 4 {
            0 => GaussianInt::new(a, b),
            1 => GaussianInt::new(-b, a),
            2 => GaussianInt::new(-a, -b),
            _ => GaussianInt::new(b, -a),
        }
    }

    /// The four associates `z, iz, -z, -iz`.
    pub fn associates(&self) -> [Self; 4] {
        [self.mul_i_pow(0), self.mul_i_pow(1), self.mul_i_pow(2), self.mul_i_pow(3)]
    }

    /// Exponent `k` such that `i^k * self` is canonical, i.e. has `re > 0, im >= 0`.
    /// Returns 0 for zero.
    pub fn canonical_rotation(&self) -> u32 {
        if self.is_zero() {
            return 0;
        }
        (0..4)
            .find(|&k| {
                let z = self.mul_i_pow(k);
                z.re.is_positive() && !z.im.is_negative()
            })
            .expect("some rotation lands in the first quadrant")
    }

    /// The associate with `re > 0` and `im >= 0`; zero maps to itself.
    pub fn canonical(&self) -> Self {
        self.mul_i_pow(self.canonical_rotation())
    }

    pub fn is_associate(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let n = self.norm();
        let t = other.clone() * self.conj();
        (t.re % n.clone()).is_zero() && (t.im % n).is_zero()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let t = self.clone() * d.conj();
        let (qr, rr) = t.re.div_rem(&n);
        let (qi, ri) = t.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussianInt::new(qr, qi))
        } else {
            None
        }
    }

    /// Quotient rounded to the nearest lattice point, ties broken by `floor(x + 1/2)`.
    pub fn div_round(&self, d: &Self) -> Self {
        let n = d.norm();
        let t = self.clone() * d.conj();
        GaussianInt::new(round_half_up(&t.re, &n), round_half_up(&t.im, &n))
    }

    /// The residue `self - round(self/w) w`, the representative of `self mod wO`
    /// used throughout the crate. Reduction is idempotent.
    pub fn reduce(&self, w: &Self) -> Self {
        if w.is_zero() {
            return self.clone();
        }
        self.clone() - self.div_round(w) * w.clone()
    }

    pub fn congruent(&self, other: &Self, w: &Self) -> bool {
        w.divides(&(self.clone() - other.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::new(to_real(&self.re), to_real(&self.im))
    }
}

pub(crate) fn to_real<I: Int, F: Real>(x: &I) -> F {
    F::from_f64(x.to_f64().expect("integer fits in f64")).expect("finite")
}

fn round_half_up<I: Int>(num: &I, den: &I) -> I {
    let two = I::lit(2);
    (two.clone() * num.clone() + den.clone()).div_floor(&(two * den.clone()))
}

impl<I: Int> fmt::Display for GaussianInt<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<I: Int> Add for GaussianInt<I> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianInt::new(self.re + o.re, self.im + o.im)
    }
}

impl<I: Int> Sub for GaussianInt<I> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianInt::new(self.re - o.re, self.im - o.im)
    }
}

impl<I: Int> Mul for GaussianInt<I> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianInt::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re * o.im + self.im * o.re,
        )
    }
}

impl<I: Int> Neg for GaussianInt<I> {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl<I: Int> From<I> for GaussianInt<I> {
    fn from(x: I) -> Self {
        GaussianInt::new(x, I::zero())
    }
}

/// Canonical highest common factor of `a` and `b`.
pub fn gcd<I: Int>(a: &GaussianInt<I>, b: &GaussianInt<I>) -> Result<GaussianInt<I>> {
    if a.is_zero() && b.is_zero() {
        return domain("gcd(0, 0) is undefined");
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.reduce(&y);
        x = y;
        y = r;
    }
    Ok(x.canonical())
}

/// Whether `(a, b) ~ 1`.
pub fn coprime<I: Int>(a: &GaussianInt<I>, b: &GaussianInt<I>) -> bool {
    matches!(gcd(a, b), Ok(g) if g.is_unit())
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g` and `g` a (non-canonical) gcd.
fn ext_euclid<I: Int>(
    a: &GaussianInt<I>,
    b: &GaussianInt<I>,
) -> (GaussianInt<I>, GaussianInt<I>, GaussianInt<I>) {
    let zero = GaussianInt::zero();
    let one = GaussianInt::one();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut x0, mut x1) = (one.clone(), zero.clone());
    let (mut y0, mut y1) = (zero, one);
    while !r1.is_zero() {
        let q = r0.div_round(&r1);
        let r2 = r0 - q.clone() * r1.clone();
        let x2 = x0 - q.clone() * x1.clone();
        let y2 = y0 - q * y1.clone();
        r0 = r1;
        r1 = r2;
        x0 = x1;
        x1 = x2;
        y0 = y1;
        y1 = y2;
    }
    (r0, x0, y0)
}

/// Solves `r u - s t = 1` for coprime nonzero `r, s`.
pub fn bezout<I: Int>(
    r: &GaussianInt<I>,
    s: &GaussianInt<I>,
) -> Result<(GaussianInt<I>, GaussianInt<I>)> {
    if r.is_zero() || s.is_zero() {
        return domain("bezout requires nonzero arguments");
    }
    let (g, x, y) = ext_euclid(r, s);
    if !g.is_unit() {
        return domain(format!("bezout: ({r}, {s}) are not coprime"));
    }
    // g^{-1} = conj(g) for a unit
    let gi = g.conj();
    let u = x * gi.clone();
    let t = -(y * gi);
    Ok((u, t))
}

/// Unit times a product of canonical prime powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<I> {
    pub unit: GaussianInt<I>,
    pub primes: Vec<(GaussianInt<I>, u32)>,
}

impl<I: Int> Factorization<I> {
    pub fn reconstruct(&self) -> GaussianInt<I> {
        self.primes
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Number of distinct prime ideals.
    pub fn omega(&self) -> usize {
        self.primes.len()
    }
}

fn isqrt<I: Int>(n: &I) -> I {
    n.sqrt()
}

/// Canonical Gaussian prime of norm `p` for a rational prime `p ≡ 1 mod 4`
/// (the one with `re > im`).
fn split_prime<I: Int>(p: &I) -> GaussianInt<I> {
    let mut a = I::one();
    loop {
        let rest = p.clone() - a.clone() * a.clone();
        let b = isqrt(&rest);
        if b.clone() * b.clone() == rest && !b.is_zero() {
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            return GaussianInt::new(hi, lo);
        }
        a = a + I::one();
    }
}

fn strip<I: Int>(n: &mut GaussianInt<I>, p: &GaussianInt<I>) -> u32 {
    let mut e = 0;
    while let Some(q) = n.div_exact(p) {
        *n = q;
        e += 1;
    }
    e
}

/// Factorization by trial division of the norm.
pub fn factorize<I: Int>(n: &GaussianInt<I>) -> Result<Factorization<I>> {
    if n.is_zero() {
        return domain("cannot factor 0");
    }
    let mut rest = n.clone();
    let mut primes = Vec::new();
    let two = I::lit(2);
    let four = I::lit(4);
    let three = I::lit(3);
    let mut norm = rest.norm();
    let mut p = two.clone();
    while p.clone() * p.clone() <= norm {
        if (norm.clone() % p.clone()).is_zero() {
            let cands: Vec<GaussianInt<I>> = if p == two {
                vec![GaussianInt::new(I::one(), I::one())]
            } else if p.clone() % four.clone() == three {
                vec![GaussianInt::from(p.clone())]
            } else {
                let g = split_prime(&p);
                let h = GaussianInt::new(g.im.clone(), g.re.clone());
                vec![g, h]
            };
            for g in cands {
                let e = strip(&mut rest, &g);
                if e > 0 {
                    primes.push((g, e));
                }
            }
            norm = rest.norm();
        }
        p = p + I::one();
    }
    if !norm.is_one() {
        // remaining element has prime norm, hence is itself prime
        let g = rest.canonical();
        let e = strip(&mut rest, &g);
        primes.push((g, e));
    }
    debug_assert!(rest.is_unit());
    primes.sort_by(|(a, _), (b, _)| {
        (a.norm(), a.re.clone(), a.im.clone()).cmp(&(b.norm(), b.re.clone(), b.im.clone()))
    });
    Ok(Factorization { unit: rest, primes })
}

pub fn is_gaussian_prime<I: Int>(z: &GaussianInt<I>) -> bool {
    if z.is_zero() || z.is_unit() {
        return false;
    }
    match factorize(z) {
        Ok(f) => f.primes.len() == 1 && f.primes[0].1 == 1,
        Err(_) => false,
    }
}

/// Möbius function on nonzero Gaussian integers.
pub fn moebius<I: Int>(n: &GaussianInt<I>) -> Result<i32> {
    let f = factorize(n)?;
    if f.primes.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.omega() % 2 == 0 { 1 } else { -1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorMode {
    /// Every divisor, all four associates included.
    AllAssociates,
    /// One canonical representative per associate class.
    OnePerClass,
}

/// Divisors of `n`, sorted by `(norm, re, im)`.
pub fn divisors<I: Int>(n: &GaussianInt<I>, mode: DivisorMode) -> Result<Vec<GaussianInt<I>>> {
    let f = factorize(n)?;
    let mut out = vec![GaussianInt::one()];
    for (p, e) in &f.primes {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut pk = GaussianInt::one();
            for _ in 0..=*e {
                next.push((d.clone() * pk.clone()).canonical());
                pk = pk * p.clone();
            }
        }
        out = next;
    }
    if mode == DivisorMode::AllAssociates {
        out = out.iter().flat_map(|d| d.associates()).collect();
    }
    out.sort_by(|a, b| (a.norm(), a.re.clone(), a.im.clone()).cmp(&(b.norm(), b.re.clone(), b.im.clone())));
    Ok(out)
}

/// A complete residue system modulo `wO`, made of reduced representatives.
pub fn residues_mod<I: Int>(w: &GaussianInt<I>) -> Result<Vec<GaussianInt<I>>> {
    if w.is_zero() {
        return domain("modulus must be nonzero");
    }
    let n = w.norm();
    let b = isqrt(&n) + I::one();
    let mut out = Vec::new();
    let mut x = -b.clone();
    while x <= b {
        let mut y = -b.clone();
        while y <= b {
            let z = GaussianInt::new(x.clone(), y.clone());
            if z.reduce(w) == z {
                out.push(z);
            }
            y = y + I::one();
        }
        x = x + I::one();
    }
    Ok(out)
}

/// Residues coprime to `w`.
pub fn reduced_residues_mod<I: Int>(w: &GaussianInt<I>) -> Result<Vec<GaussianInt<I>>> {
    Ok(residues_mod(w)?.into_iter().filter(|d| coprime(d, w)).collect())
}

/// Inverse of `d` modulo `wO`, as a reduced representative.
pub fn inv_mod<I: Int>(d: &GaussianInt<I>, w: &GaussianInt<I>) -> Result<GaussianInt<I>> {
    if w.is_zero() {
        return domain("modulus must be nonzero");
    }
    if w.is_unit() {
        return Ok(GaussianInt::zero());
    }
    if d.is_zero() {
        return domain(format!("0 is not invertible mod {w}"));
    }
    let (g, x, _) = ext_euclid(d, w);
    if !g.is_unit() {
        return domain(format!("{d} is not invertible mod {w}"));
    }
    Ok((x * g.conj()).reduce(w))
}

/// Number of Gaussian primes `ϖ`, all associates counted, with `x/2 < |ϖ|² <= x`.
pub fn gaussian_prime_count(x: f64) -> u64 {
    if !(x >= 2.0) {
        return 0;
    }
    let hi = x.floor() as i64;
    let b = (hi as f64).sqrt().floor() as i64 + 1;
    let mut count = 0;
    for a in -b..=b {
        for c in -b..=b {
            let n = a * a + c * c;
            if n > hi || (n as f64) <= x / 2.0 {
                continue;
            }
            if is_gaussian_prime(&GaussianInt::<i64>::new(a, c)) {
                count += 1;
            }
        }
    }
    count
}

/// Index of the congruence subgroup of level `r`: `|r|² Π_{ϖ | r} (1 + 1/|ϖ|²)`.
pub fn index_gamma0<I: Int>(r: &GaussianInt<I>) -> Result<I> {
    let f = factorize(r)?;
    let mut acc = Ratio::from_integer(r.norm());
    for (p, _) in &f.primes {
        let np = p.norm();
        acc = acc * Ratio::new(np.clone() + I::one(), np);
    }
    debug_assert!(acc.is_integer());
    Ok(acc.to_integer())
}
