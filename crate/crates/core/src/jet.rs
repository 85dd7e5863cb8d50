//! Truncated Taylor series ("jets") for exact derivatives of composite weights.
//!
//! A jet of order `n` at a point stores `c[k] = f^{(k)}(x0) / k!` for `k <= n`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Scalars a jet can carry.
pub trait JetScalar:
    Copy
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
}

impl<F: Real> JetScalar for F {
    fn from_f64(x: f64) -> Self {
        F::lit(x)
    }
    fn exp(self) -> Self {
        num_traits::Float::exp(self)
    }
    fn ln(self) -> Self {
        num_traits::Float::ln(self)
    }
}

impl<F: Real> JetScalar for Complex<F> {
    fn from_f64(x: f64) -> Self {
        Complex::new(F::lit(x), F::zero())
    }
    fn exp(self) -> Self {
        Complex::exp(self)
    }
    fn ln(self) -> Self {
        Complex::ln(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    pub c: Vec<T>,
}

impl<T: JetScalar> Jet<T> {
    pub fn constant(x: T, order: usize) -> Self {
        let mut c = vec![T::zero(); order + 1];
        c[0] = x;
        Jet { c }
    }

    /// The identity map at `x`.
    pub fn var(x: T, order: usize) -> Self {
        let mut j = Self::constant(x, order);
        if order > 0 {
            j.c[1] = T::one();
        }
        j
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(T::zero(), order)
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    /// The `k`-th derivative at the base point.
    pub fn deriv(&self, k: usize) -> T {
        let mut f = T::one();
        for m in 2..=k {
            f = f * T::from_f64(m as f64);
        }
        self.c.get(k).copied().unwrap_or_else(T::zero) * f
    }

    pub fn map<U: JetScalar>(&self, f: impl Fn(T) -> U) -> Jet<U> {
        Jet { c: self.c.iter().map(|&x| f(x)).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        Jet { c: self.c.iter().map(|&x| x * s).collect() }
    }

    pub fn add_const(&self, s: T) -> Self {
        let mut j = self.clone();
        j.c[0] = j.c[0] + s;
        j
    }

    pub fn recip(&self) -> Self {
        let n = self.c.len();
        let a = &self.c;
        let mut b = vec![T::zero(); n];
        b[0] = T::one() / a[0];
        for k in 1..n {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + a[j] * b[k - j];
            }
            b[k] = -(s * b[0]);
        }
        Jet { c: b }
    }

    pub fn exp(&self) -> Self {
        let n = self.c.len();
        let a = &self.c;
        let mut b = vec![T::zero(); n];
        b[0] = a[0].exp();
        for k in 1..n {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + T::from_f64(j as f64) * a[j] * b[k - j];
            }
            b[k] = s / T::from_f64(k as f64);
        }
        Jet { c: b }
    }

    pub fn ln(&self) -> Self {
        let n = self.c.len();
        let a = &self.c;
        let mut b = vec![T::zero(); n];
        b[0] = a[0].ln();
        for k in 1..n {
            let mut s = T::zero();
            for j in 1..k {
                s = s + T::from_f64(j as f64) * b[j] * a[k - j];
            }
            b[k] = (a[k] - s / T::from_f64(k as f64)) / a[0];
        }
        Jet { c: b }
    }

    /// Composition `g ∘ self`, where `outer[k] = g^{(k)}(self(x0)) / k!`.
    pub fn compose(&self, outer: &[T]) -> Self {
        let n = self.c.len();
        let mut h = self.clone();
        h.c[0] = T::zero();
        let mut out = Self::zero(n - 1);
        // Horner in the shifted inner series
        for k in (0..n.min(outer.len())).rev() {
            out = &out * &h;
            out.c[0] = out.c[0] + outer[k];
        }
        out
    }
}

impl<'a, T: JetScalar> Add for &'a Jet<T> {
    type Output = Jet<T>;
    fn add(self, o: &Jet<T>) -> Jet<T> {
        Jet { c: self.c.iter().zip(&o.c).map(|(&a, &b)| a + b).collect() }
    }
}

impl<'a, T: JetScalar> Sub for &'a Jet<T> {
    type Output = Jet<T>;
    fn sub(self, o: &Jet<T>) -> Jet<T> {
        Jet { c: self.c.iter().zip(&o.c).map(|(&a, &b)| a - b).collect() }
    }
}

impl<'a, T: JetScalar> Mul for &'a Jet<T> {
    type Output = Jet<T>;
    fn mul(self, o: &Jet<T>) -> Jet<T> {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![T::zero(); n];
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] = c[i + j] + self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }
}

impl<T: JetScalar> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        Jet { c: self.c.into_iter().map(|x| -x).collect() }
    }
}
