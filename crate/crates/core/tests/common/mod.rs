//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the residue, inverse or Kloosterman code of the library.

#![allow(dead_code)]

use gsk_core::{Gi, C64};

/// `m | a` by the definition: `a conj(m) ≡ 0 mod |m|²` componentwise.
pub fn divides(m: (i64, i64), a: (i64, i64)) -> bool {
    let n = m.0 * m.0 + m.1 * m.1;
    if n == 0 {
        return a == (0, 0);
    }
    let re = a.0 * m.0 + a.1 * m.1;
    let im = a.1 * m.0 - a.0 * m.1;
    re % n == 0 && im % n == 0
}

pub fn mul(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn sub(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 - b.0, a.1 - b.1)
}

/// One representative per class of `O/wO`, drawn from the box `[0, |w|²)²`.
pub fn classes(w: (i64, i64)) -> Vec<(i64, i64)> {
    let n = w.0 * w.0 + w.1 * w.1;
    let mut reps: Vec<(i64, i64)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if reps.iter().all(|r| !divides(w, sub((x, y), *r))) {
                reps.push((x, y));
                if reps.len() as i64 == n {
                    return reps;
                }
            }
        }
    }
    reps
}

/// Units of `O/wO` paired with an inverse found by search.
pub fn units_with_inverse(w: (i64, i64)) -> Vec<((i64, i64), (i64, i64))> {
    let reps = classes(w);
    let mut out = Vec::new();
    for &d in &reps {
        if let Some(&ds) = reps.iter().find(|&&e| divides(w, sub(mul(d, e), (1, 0)))) {
            out.push((d, ds));
        }
    }
    out
}

/// `e(Re(a / w))` with the phase taken as the exact fraction `Re(a conj w) / |w|²`.
pub fn e_frac(a: (i64, i64), w: (i64, i64)) -> C64 {
    let n = w.0 * w.0 + w.1 * w.1;
    let num = (a.0 * w.0 + a.1 * w.1).rem_euclid(n);
    let t = std::f64::consts::TAU * num as f64 / n as f64;
    C64::new(t.cos(), t.sin())
}

pub fn kloosterman_oracle(u: &Gi, v: &Gi, w: &Gi) -> C64 {
    let w = (w.re, w.im);
    let mut acc = C64::new(0.0, 0.0);
    for (d, ds) in units_with_inverse(w) {
        let a = mul((u.re, u.im), ds);
        let b = mul((v.re, v.im), d);
        acc += e_frac((a.0 + b.0, a.1 + b.1), w);
    }
    acc
}

/// `c_q(b, h; k)` by its definition.
pub fn ramanujan_oracle(q: &Gi, b: &Gi, h: &Gi, k: &Gi) -> C64 {
    let w = (q.re, q.im);
    let mut acc = C64::new(0.0, 0.0);
    for (a, _) in units_with_inverse(w) {
        if divides(w, sub(mul(a, (b.re, b.im)), (h.re, h.im))) {
            acc += e_frac(mul(a, (k.re, k.im)), w);
        }
    }
    acc
}

/// All nonzero Gaussian integers with `|z|² <= n`.
pub fn ball(n: i64) -> Vec<Gi> {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let z = Gi::new(x, y);
            if !z.is_zero() && z.norm() <= n {
                out.push(z);
            }
        }
    }
    out
}

pub fn is_rational_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Gaussian primality: prime norm, or an associate of a rational prime `≡ 3 (4)`.
pub fn is_prime_oracle(z: &Gi) -> bool {
    let n = z.norm();
    if is_rational_prime(n) {
        return true;
    }
    let (a, b) = (z.re.abs(), z.im.abs());
    let p = if a == 0 { b } else if b == 0 { a } else { return false };
    is_rational_prime(p) && p % 4 == 3
}

/// Unit group of `O/wO` found by search, reused across many evaluations.
pub struct OracleTable {
    w: (i64, i64),
    units: Vec<((i64, i64), (i64, i64))>,
}

impl OracleTable {
    pub fn new(w: &Gi) -> Self {
        let w = (w.re, w.im);
        OracleTable { w, units: units_with_inverse(w) }
    }

    pub fn kloosterman(&self, u: &Gi, v: &Gi) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &(d, ds) in &self.units {
            let a = mul((u.re, u.im), ds);
            let b = mul((v.re, v.im), d);
            acc += e_frac((a.0 + b.0, a.1 + b.1), self.w);
        }
        acc
    }

    /// Some inverse of `r`, if `r` is a unit mod `w`.
    pub fn inverse(&self, r: &Gi) -> Option<Gi> {
        self.units
            .iter()
            .find(|(d, _)| divides(self.w, sub((r.re, r.im), *d)))
            .map(|(_, ds)| Gi::new(ds.0, ds.1))
    }
}

/// `|P¹(O/rO)|`: primitive pairs `(c, d) mod r` counted up to unit scaling.
pub fn projective_line_size(r: &Gi) -> i64 {
    let w = (r.re, r.im);
    let reps = classes(w);
    let units = units_with_inverse(w).len() as i64;
    let mut primitive = 0;
    for &c in &reps {
        for &d in &reps {
            // (c, d, r) ~ 1 iff c x + d y hits 1 mod r for some x, y
            let hit = reps.iter().any(|&x| {
                reps.iter().any(|&y| {
                    let s = mul(c, x);
                    let t = mul(d, y);
                    divides(w, (s.0 + t.0 - 1, s.1 + t.1))
                })
            });
            if hit {
                primitive += 1;
            }
        }
    }
    primitive / units
}
