//! Additive characters, Kloosterman sums and Ramanujan-type sums over Z[i].

use num_complex::Complex;
use num_rational::Ratio;

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::zi::{
    coprime, divisors, gcd, inv_mod, moebius, reduced_residues_mod, residues_mod, factorize,
    DivisorMode,
};
use crate::Gi;

/// `exp(2πi x)`.
pub fn e<F: Real>(x: F) -> Complex<F> {
    let t = F::TAU() * (x - x.round());
    Complex::new(t.cos(), t.sin())
}

/// `e(Re z)`.
pub fn e_re<F: Real>(z: Complex<F>) -> Complex<F> {
    e(z.re)
}

/// A unimodular value together with its exact phase in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharacterValue<F> {
    pub value: Complex<F>,
    pub exact_phase: Ratio<i64>,
}

/// `exp(2πi num/den)` computed from the reduced phase.
pub fn e_rational<F: Real>(num: i64, den: i64) -> CharacterValue<F> {
    assert!(den != 0, "zero denominator");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let phase = Ratio::new(num.rem_euclid(den), den);
    CharacterValue { value: root_of_unity(*phase.numer(), *phase.denom()), exact_phase: phase }
}

/// `exp(2πi k/n)` for `0 <= k < n`, exact at multiples of a quarter turn.
fn root_of_unity<F: Real>(k: i64, n: i64) -> Complex<F> {
    let one = F::one();
    let zero = F::zero();
    if (4 * k) % n == 0 {
        return match (4 * k) / n {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        };
    }
    // fold into (-1/2, 1/2] so the argument stays small
    let k = if 2 * k > n { k - n } else { k };
    let t = F::TAU() * F::lit(k as f64) / F::lit(n as f64);
    Complex::new(t.cos(), t.sin())
}

/// `e(Re(a / w))` with the phase `Re(a conj w) / |w|²` kept exact.
pub fn e_re_exact<F: Real>(a: &Gi, w: &Gi) -> Result<CharacterValue<F>> {
    if w.is_zero() {
        return domain("e_re_exact: zero denominator");
    }
    let a = a.reduce(w);
    let num = (a * w.conj()).re;
    Ok(e_rational(num, w.norm()))
}

/// Reduced residues of a fixed modulus with their inverses and a table of
/// `|w|²`-th roots of unity. Lookups are exact in the phase.
#[derive(Clone, Debug)]
pub struct ModulusTable<F> {
    w: Gi,
    n: i64,
    pairs: Vec<(Gi, Gi)>,
    roots: Vec<Complex<F>>,
}

impl<F: Real> ModulusTable<F> {
    pub fn new(w: &Gi) -> Result<Self> {
        if w.is_zero() {
            return domain("modulus must be nonzero");
        }
        let n = w.norm();
        let pairs = reduced_residues_mod(w)?
            .into_iter()
            .map(|d| {
                let ds = inv_mod(&d, w).expect("reduced residue is invertible");
                (d, ds)
            })
            .collect();
        let roots = (0..n).map(|k| root_of_unity(k, n)).collect();
        Ok(ModulusTable { w: *w, n, pairs, roots })
    }

    pub fn modulus(&self) -> &Gi {
        &self.w
    }

    /// Number of reduced residues.
    pub fn phi(&self) -> usize {
        self.pairs.len()
    }

    /// Numerator of the phase of `e(Re(z / w))` in `[0, |w|²)`.
    #[inline]
    pub fn phase(&self, z: &Gi) -> i64 {
        (z.reduce(&self.w) * self.w.conj()).re.rem_euclid(self.n)
    }

    #[inline]
    pub fn e(&self, z: &Gi) -> Complex<F> {
        self.roots[self.phase(z) as usize]
    }

    pub fn kloosterman(&self, u: &Gi, v: &Gi) -> Complex<F> {
        let u = u.reduce(&self.w);
        let v = v.reduce(&self.w);
        let wc = self.w.conj();
        let mut acc = Complex::new(F::zero(), F::zero());
        for (d, ds) in &self.pairs {
            let z = (u * *ds + v * *d) * wc;
            acc += self.roots[z.re.rem_euclid(self.n) as usize];
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KloostermanResult<F> {
    pub value: Complex<F>,
    pub modulus: Gi,
    pub term_count: usize,
}

/// `S(u, v; w) = Σ_{d mod w, (d,w)~1} e(Re((u d* + v d)/w))`.
pub fn kloosterman<F: Real>(u: &Gi, v: &Gi, w: &Gi) -> Result<KloostermanResult<F>> {
    let t = ModulusTable::<F>::new(w)?;
    Ok(KloostermanResult { value: t.kloosterman(u, v), modulus: *w, term_count: t.phi() })
}

fn cusp_checks(p: &Gi, s: &Gi, r: &Gi) -> Result<()> {
    if p.is_zero() || r.is_zero() || s.is_zero() {
        return domain("kloosterman_cusp: p, r, s must be nonzero");
    }
    if !coprime(p, r) {
        return domain(format!("kloosterman_cusp: ({p}, {r}) not coprime"));
    }
    if !coprime(r, s) {
        return domain(format!("kloosterman_cusp: ({r}, {s}) not coprime"));
    }
    Ok(())
}

/// `S(r* ω, ω'; p s)` with `r r* ≡ 1 mod psO`.
pub fn kloosterman_cusp<F: Real>(
    omega: &Gi,
    omega2: &Gi,
    p: &Gi,
    s: &Gi,
    r: &Gi,
) -> Result<KloostermanResult<F>> {
    cusp_checks(p, s, r)?;
    let w = *p * *s;
    let rs = inv_mod(r, &w)?;
    kloosterman(&(rs * *omega), omega2, &w)
}

/// As [`kloosterman_cusp`] with a caller-chosen inverse `r_star`.
pub fn kloosterman_cusp_with_inverse<F: Real>(
    omega: &Gi,
    omega2: &Gi,
    p: &Gi,
    s: &Gi,
    r: &Gi,
    r_star: &Gi,
) -> Result<KloostermanResult<F>> {
    cusp_checks(p, s, r)?;
    let w = *p * *s;
    if !(*r * *r_star).congruent(&Gi::one(), &w) {
        return domain(format!("{r_star} is not an inverse of {r} mod {w}"));
    }
    kloosterman(&(*r_star * *omega), omega2, &w)
}

/// `Σ_{n mod m} e(Re((a - b) n / m))`.
pub fn char_orthogonality<F: Real>(m: &Gi, a: &Gi, b: &Gi) -> Result<Complex<F>> {
    let t = ModulusTable::<F>::new(m)?;
    let ab = *a - *b;
    Ok(residues_mod(m)?.iter().map(|n| t.e(&(ab * *n))).sum())
}

/// `c_q(b, h; k)` by direct summation over `a mod q`, `(a,q)~1`, `ab ≡ h`.
pub fn ramanujan_c<F: Real>(q: &Gi, b: &Gi, h: &Gi, k: &Gi) -> Result<Complex<F>> {
    let t = ModulusTable::<F>::new(q)?;
    let mut acc = Complex::new(F::zero(), F::zero());
    for (a, _) in &t.pairs {
        if (*a * *b).congruent(h, q) {
            acc += t.e(&(*a * *k));
        }
    }
    Ok(acc)
}

/// `c_q(b, h; k)` through the divisor-sum reduction.
pub fn ramanujan_c_closed<F: Real>(q: &Gi, b: &Gi, h: &Gi, k: &Gi) -> Result<Complex<F>> {
    if q.is_zero() {
        return domain("modulus must be nonzero");
    }
    let c = gcd(b, q)?;
    if c != gcd(h, q)? {
        return Ok(Complex::new(F::zero(), F::zero()));
    }
    let qc = q.div_exact(&c).expect("c | q");
    let hc = h.div_exact(&c).expect("c | h");
    let g = gcd(&c, k)?;
    let mut acc = Complex::new(F::zero(), F::zero());
    for t in divisors(&g, DivisorMode::AllAssociates)? {
        let ct = c.div_exact(&t).expect("t | c");
        if !coprime(&ct, &qc) {
            continue;
        }
        let mu = moebius(&ct)?;
        if mu == 0 {
            continue;
        }
        let kt = k.div_exact(&t).expect("t | k");
        let bt = b.div_exact(&t).expect("t | b");
        let bs = match inv_mod(&bt, &qc) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let ch = e_re_exact::<F>(&(hc * kt * bs), &qc)?;
        acc += ch.value * F::lit((mu as i64 * t.norm()) as f64);
    }
    Ok(acc / F::lit(4.0))
}

/// `c_q(0, 0; k) = μ(q/(q,k)) |(q,k)|² Π (1 - 1/|ϖ|²)`, the product over primes
/// dividing `(q,k)` but not `q/(q,k)`.
pub fn ramanujan_c00<F: Real>(q: &Gi, k: &Gi) -> Result<F> {
    if q.is_zero() {
        return domain("modulus must be nonzero");
    }
    let g = gcd(q, k)?;
    let qg = q.div_exact(&g).expect("g | q");
    let mu = moebius(&qg)?;
    if mu == 0 {
        return Ok(F::zero());
    }
    let mut acc = Ratio::from_integer(mu as i64 * g.norm());
    for (p, _) in factorize(&g)?.primes {
        if !p.divides(&qg) {
            let np = p.norm();
            acc *= Ratio::new(np - 1, np);
        }
    }
    Ok(F::lit(*acc.numer() as f64) / F::lit(*acc.denom() as f64))
}

/// 4 if both vanish, 2 if `ω' = ±ω ≠ 0`, else 0.
pub fn delta_symbol(omega: &Gi, omega2: &Gi) -> i32 {
    if omega.is_zero() && omega2.is_zero() {
        4
    } else if *omega2 == *omega || *omega2 == -*omega {
        2
    } else {
        0
    }
}
