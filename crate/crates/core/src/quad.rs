//! Adaptive Gauss–Kronrod quadrature (21-point rule, global subdivision).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Values that can be integrated: real or complex.
pub trait QuadValue<F: Real>:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<F, Output = Self> + Send + Sync
{
    fn magnitude(&self) -> F;
}

impl<F: Real> QuadValue<F> for F {
    fn magnitude(&self) -> F {
        self.abs()
    }
}

impl<F: Real> QuadValue<F> for Complex<F> {
    fn magnitude(&self) -> F {
        self.norm()
    }
}

/// Accuracy targets for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { abs_tol: 1e-10, rel_tol: 1e-12, max_intervals: 2000 }
    }
}

impl QuadSpec {
    pub fn abs(tol: f64) -> Self {
        QuadSpec { abs_tol: tol, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult<V, F> {
    pub value: V,
    pub error: F,
    pub evals: usize,
    pub intervals: usize,
}

/// One 21-point Kronrod panel with its embedded 10-point Gauss estimate.
pub fn gk21<F: Real, V: QuadValue<F>>(f: &impl Fn(F) -> V, a: F, b: F) -> (V, F) {
    let half = F::lit(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = f(c);
    let mut rk = fc * F::lit(WGK[10]);
    let mut rg = V::zero();
    for j in 0..10 {
        let dx = h * F::lit(XGK[j]);
        let s = f(c - dx) + f(c + dx);
        rk = rk + s * F::lit(WGK[j]);
        if j % 2 == 1 {
            rg = rg + s * F::lit(WG[j / 2]);
        }
    }
    let value = rk * h;
    let err = ((rk - rg) * h).magnitude();
    (value, err)
}

struct Panel<F, V> {
    a: F,
    b: F,
    value: V,
    err: F,
}

impl<F: Real, V> PartialEq for Panel<F, V> {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl<F: Real, V> Eq for Panel<F, V> {}
impl<F: Real, V> PartialOrd for Panel<F, V> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<F: Real, V> Ord for Panel<F, V> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.partial_cmp(&o.err).unwrap_or(Ordering::Equal)
    }
}

/// Integrates `f` over `[a, b]`, starting from the panels cut at `breaks`.
pub fn integrate_with_breaks<F: Real, V: QuadValue<F>>(
    f: impl Fn(F) -> V,
    a: F,
    b: F,
    breaks: &[F],
    spec: QuadSpec,
) -> Result<QuadResult<V, F>> {
    let mut cuts = vec![a];
    cuts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    cuts.dedup();
    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    for w in cuts.windows(2) {
        let (value, err) = gk21(&f, w[0], w[1]);
        evals += 21;
        heap.push(Panel { a: w[0], b: w[1], value, err });
    }
    let abs_tol = F::lit(spec.abs_tol);
    let rel_tol = F::lit(spec.rel_tol);
    loop {
        let (total, err) = heap
            .iter()
            .fold((V::zero(), F::zero()), |(s, e), p| (s + p.value, e + p.err));
        let target = abs_tol.max(rel_tol * total.magnitude());
        if err <= target {
            return Ok(QuadResult { value: total, error: err, evals, intervals: heap.len() });
        }
        if heap.len() >= spec.max_intervals {
            return Err(Error::Numerical(format!(
                "quadrature did not converge: error {:e} after {} panels",
                err.to_f64_lossy(),
                heap.len()
            )));
        }
        let worst = heap.pop().expect("nonempty");
        let m = (worst.a + worst.b) * F::lit(0.5);
        if !(m > worst.a && m < worst.b) {
            return Err(Error::Numerical("quadrature interval underflow".into()));
        }
        for (lo, hi) in [(worst.a, m), (m, worst.b)] {
            let (value, err) = gk21(&f, lo, hi);
            evals += 21;
            heap.push(Panel { a: lo, b: hi, value, err });
        }
    }
}

pub fn integrate<F: Real, V: QuadValue<F>>(
    f: impl Fn(F) -> V,
    a: F,
    b: F,
    spec: QuadSpec,
) -> Result<QuadResult<V, F>> {
    integrate_with_breaks(f, a, b, &[], spec)
}

/// Uniform breakpoints of spacing at most `h` strictly inside `(a, b)`.
pub fn uniform_breaks<F: Real>(a: F, b: F, h: F) -> Vec<F> {
    if !(h > F::zero()) || !(b > a) {
        return Vec::new();
    }
    let n = ((b - a) / h).ceil().to_usize().unwrap_or(1).max(1);
    let step = (b - a) / F::lit(n as f64);
    (1..n).map(|k| a + step * F::lit(k as f64)).collect()
}
