//! Verification suites. Each suite is a list of named jobs; jobs run in a
//! rayon pool and the report is sorted by check name.

use std::time::Instant;

use clap::ValueEnum;
use gsk_core::aggregates::*;
use gsk_core::char_sums::*;
use gsk_core::fourier::*;
use gsk_core::ktransform::*;
use gsk_core::sieve::*;
use gsk_core::weights::*;
use gsk_core::zi::*;
use gsk_core::{Gi, C64};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::Settings;
use crate::report::{Check, Report};
use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Poisson,
    Sieve,
    Ktransform,
    Aggregates,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Poisson => "poisson",
            Suite::Sieve => "sieve",
            Suite::Ktransform => "ktransform",
            Suite::Aggregates => "aggregates",
            Suite::All => "all",
        }
    }
}

/// What a job measured, before it is named and timed.
pub struct Measure {
    ok: bool,
    lhs: f64,
    rhs: f64,
    defect: f64,
    tolerance: f64,
}

impl Measure {
    /// Passes when `defect <= tolerance`.
    fn within(lhs: f64, rhs: f64, defect: f64, tolerance: f64) -> Self {
        Measure { ok: defect <= tolerance, lhs, rhs, defect, tolerance }
    }

    /// Exact equality of counts.
    fn count(lhs: usize, rhs: usize) -> Self {
        Measure::within(lhs as f64, rhs as f64, (lhs as f64 - rhs as f64).abs(), 0.0)
    }
}

type JobFn = Box<dyn FnOnce() -> gsk_core::Result<Measure> + Send>;

pub struct Job {
    name: String,
    reference: &'static str,
    run: JobFn,
}

fn job(name: impl Into<String>, reference: &'static str, run: impl FnOnce() -> gsk_core::Result<Measure> + Send + 'static) -> Job {
    Job { name: name.into(), reference, run: Box::new(run) }
}

pub fn jobs(suite: Suite, s: &Settings) -> Vec<Job> {
    match suite {
        Suite::Identities => identities(s),
        Suite::Poisson => poisson(s),
        Suite::Sieve => sieve(s),
        Suite::Ktransform => ktransform(s),
        Suite::Aggregates => aggregates(s),
        Suite::All => [Suite::Identities, Suite::Poisson, Suite::Sieve, Suite::Ktransform, Suite::Aggregates]
            .into_iter()
            .flat_map(|x| jobs(x, s))
            .collect(),
    }
}

/// Runs every job of `suite` on a pool of `settings.workers` threads
/// (0 picks the rayon default).
pub fn run_suite(suite: Suite, settings: &Settings) -> Result<Report, UsageError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.workers)
        .build()
        .map_err(|e| UsageError(format!("cannot start worker pool: {e}")))?;
    let list = jobs(suite, settings);
    let mut checks: Vec<Check> = pool.install(|| {
        list.into_par_iter()
            .map(|j| {
                let t = Instant::now();
                let out = (j.run)();
                let millis = t.elapsed().as_millis() as u64;
                let mut c = match out {
                    Ok(m) => Check::with_status(&j.name, j.reference, m.ok, m.lhs, m.rhs, m.defect, m.tolerance),
                    Err(e) => {
                        eprintln!("{}: {e}", j.name);
                        Check::with_status(&j.name, j.reference, false, f64::NAN, f64::NAN, f64::NAN, 0.0)
                    }
                };
                c.millis = millis;
                c
            })
            .collect()
    });
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report { suite: suite.name().to_string(), seed: settings.seed, checks })
}

/// Nonzero Gaussian integers with `|z|² <= n`.
pub fn ball(n: i64) -> Vec<Gi> {
    annulus(0.0, n as f64)
}

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn k_sum(u: &Gi, v: &Gi, w: &Gi) -> gsk_core::Result<C64> {
    Ok(kloosterman::<f64>(u, v, w)?.value)
}

/// `|P¹(O/rO)|` by counting primitive pairs and dividing by the unit count.
fn projective_line_brute(r: &Gi) -> gsk_core::Result<i64> {
    let res = residues_mod(r)?;
    let mut units = 0i64;
    let mut pairs = 0i64;
    for a in &res {
        if coprime(a, r) {
            units += 1;
        }
        for b in &res {
            // over a unit modulus the single pair (0, 0) is primitive
            if r.is_unit() || (!(a.is_zero() && b.is_zero()) && coprime(&gcd(a, b)?, r)) {
                pairs += 1;
            }
        }
    }
    Ok(pairs / units)
}

fn identities(s: &Settings) -> Vec<Job> {
    let tol = s.tol.exact;
    let n_max = s.max_norm;
    let mut out = Vec::new();
    for q in ball(n_max) {
        out.push(job(format!("identities/ramanujan_closed/q={q}"), "c_q(b,h;k) closed form = direct sum over reduced residues", move || {
            let res = residues_mod(&q)?;
            let n = q.norm() as f64;
            let (mut worst, mut l1, mut r1) = (0.0f64, 0.0, 0.0);
            for b in &res {
                for h in &res {
                    for k in &res {
                        let brute = ramanujan_c::<f64>(&q, b, h, k)?;
                        let closed = ramanujan_c_closed::<f64>(&q, b, h, k)?;
                        worst = worst.max((brute - closed).norm() / n);
                        l1 += closed.norm();
                        r1 += brute.norm();
                    }
                }
            }
            Ok(Measure::within(l1, r1, worst, tol))
        }));
    }
    let seed = s.seed;
    out.push(job("identities/ramanujan_c00", "c_q(0,0;k) = S(k,0;q)", move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut worst, mut l1, mut r1) = (0.0f64, 0.0, 0.0);
        for q in ball(n_max) {
            for _ in 0..20 {
                let k = Gi::new(rng.gen_range(-15..16), rng.gen_range(-15..16));
                let a = ramanujan_c00::<f64>(&q, &k)?;
                let b = k_sum(&k, &Gi::zero(), &q)?.re;
                worst = worst.max((a - b).abs());
                l1 += a.abs();
                r1 += b.abs();
            }
        }
        Ok(Measure::within(l1, r1, worst, tol))
    }));

    // seeded triples shared by the Kloosterman checks
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b6c);
    let ws = ball(100);
    let pick = |rng: &mut ChaCha8Rng| Gi::new(rng.gen_range(-25..26), rng.gen_range(-25..26));
    let triples: Vec<[Gi; 5]> = (0..s.trials)
        .map(|_| {
            let w = ws[rng.gen_range(0..ws.len())];
            [pick(&mut rng), pick(&mut rng), w, pick(&mut rng), pick(&mut rng)]
        })
        .collect();
    type Ident = fn(&[Gi; 5], C64) -> gsk_core::Result<f64>;
    let idents: [(&str, &'static str, Ident); 6] = [
        ("symmetry", "S(u,v;w) = S(v,u;w)", |t, x| Ok((x - k_sum(&t[1], &t[0], &t[2])?).norm())),
        ("reality", "Im S(u,v;w) = 0", |_, x| Ok(x.im.abs())),
        ("periodicity", "S(u+tw,v+tw;w) = S(u,v;w)", |t, x| {
            let (u, v, w, a) = (t[0], t[1], t[2], t[3]);
            let d1 = (x - k_sum(&(u + a * w), &v, &w)?).norm();
            Ok(d1.max((x - k_sum(&u, &(v + a * w), &w)?).norm()))
        }),
        ("modulus_sign", "S(u,v;-w) = S(u,v;w)", |t, x| Ok((x - k_sum(&t[0], &t[1], &-t[2])?).norm())),
        ("unit_rotation", "S(eu,ev;ew) = S(u,v;w) for units e", |t, x| {
            let mut d: f64 = 0.0;
            for e in 1..4 {
                d = d.max((x - k_sum(&t[0].mul_i_pow(e), &t[1].mul_i_pow(e), &t[2].mul_i_pow(e))?).norm());
            }
            Ok(d)
        }),
        ("inverse_shift", "S(m p*,b;a) = S(m,b p*;a) for (p,a) = 1", |t, _| {
            let (u, v, w, p) = (t[0], t[1], t[2], t[4]);
            if p.is_zero() || !coprime(&p, &w) {
                return Ok(0.0);
            }
            let ps = inv_mod(&p, &w)?;
            Ok((k_sum(&(u * ps), &v, &w)? - k_sum(&u, &(v * ps), &w)?).norm())
        }),
    ];
    for (name, reference, f) in idents {
        let ts = triples.clone();
        out.push(job(format!("identities/kloosterman_{name}"), reference, move || {
            let (mut worst, mut l1) = (0.0f64, 0.0);
            for t in &ts {
                let x = k_sum(&t[0], &t[1], &t[2])?;
                worst = worst.max(f(t, x)?);
                l1 += x.norm();
            }
            Ok(Measure::within(l1, l1, worst, tol))
        }));
    }

    out.push(job("identities/moebius_sum", "sum of mu(d) over divisors d of n (all associates) = 4 [n unit]", move || {
        let mut bad = 0usize;
        let all = ball(50 * n_max);
        for n in &all {
            let sum: i32 = divisors(n, DivisorMode::AllAssociates)?.iter().map(moebius).sum::<gsk_core::Result<i32>>()?;
            if sum != if n.is_unit() { 4 } else { 0 } {
                bad += 1;
            }
        }
        Ok(Measure::count(all.len() - bad, all.len()))
    }));
    out.push(job("identities/residue_count", "|O/wO| = |w|²", move || {
        let (mut got, mut want) = (0usize, 0usize);
        for w in ball(5 * n_max) {
            got += residues_mod(&w)?.len();
            want += w.norm() as usize;
        }
        Ok(Measure::count(got, want))
    }));
    out.push(job("identities/index_gamma0", "[Gamma : Gamma0(r)] = |P¹(O/rO)|", move || {
        let (mut got, mut want) = (0usize, 0usize);
        for r in ball(n_max.min(40)) {
            got += index_gamma0(&r)? as usize;
            want += projective_line_brute(&r)? as usize;
        }
        Ok(Measure::count(got, want))
    }));
    out.push(job("identities/prime_count", "P(2) = 4 and P(9) = 12", || {
        let (p2, p9) = (gaussian_prime_count(2.0), gaussian_prime_count(9.0));
        let ok = p2 == 4 && p9 == 12;
        Ok(Measure { ok, lhs: p2 as f64, rhs: p9 as f64, defect: (p2 as f64 - 4.0).abs() + (p9 as f64 - 12.0).abs(), tolerance: 0.0 })
    }));
    out
}

fn poisson(s: &Settings) -> Vec<Job> {
    let tol = s.tol.quadrature;
    let taus = [c(0.0, 0.0), c(0.3, 0.7), c(0.49, 0.49), c(1.1, -0.2)];
    let mut out = Vec::new();
    for (fname, cutoff, tail) in [("gaussian", 4.5, 1e-10), ("modulated_gaussian", 4.5, 1e-10), ("log_annulus", 24.0, 1e-8)] {
        for tau in taus {
            out.push(job(
                format!("poisson/{fname}/tau={}{:+}i", tau.re, tau.im),
                "sum over n of f(n) e(Re(tau n)) = sum over xi of f^(xi - tau)",
                move || {
                    let spec = FourierSpec::default();
                    let r = match fname {
                        "gaussian" => poisson_check(&Gaussian, tau, cutoff, tail, &spec)?,
                        "modulated_gaussian" => poisson_check(&ModulatedGaussian { beta: c(0.15, 0.05) }, tau, cutoff, tail, &spec)?,
                        _ => {
                            let f = RadialPlane::new(TwistedRadial::new(LogBump { a: 0.5, b: -2.0 }, 1.0, 0.0)?);
                            poisson_check(&f, tau, cutoff, tail, &spec)?
                        }
                    };
                    Ok(Measure::within(r.lhs.norm(), r.rhs.norm(), r.defect, tol))
                },
            ));
        }
    }
    out.push(job("poisson/gaussian_self_dual", "Fourier transform of exp(-pi|x|²) is exp(-pi|w|²)", move || {
        let spec = FourierSpec::default();
        let (mut worst, mut l1, mut r1) = (0.0f64, 0.0, 0.0);
        for k in 0..10 {
            let w = c(0.25 * k as f64 - 1.0, 0.15 * k as f64);
            let v = fourier_c(&Gaussian, w, &spec)?.value;
            let want = (-std::f64::consts::PI * w.norm_sqr()).exp();
            worst = worst.max((v - c(want, 0.0)).norm());
            l1 += v.norm();
            r1 += want;
        }
        Ok(Measure::within(l1, r1, worst, tol))
    }));
    out
}

fn sieve_measure(rep: SieveReport<f64>) -> gsk_core::Result<Measure> {
    let excess = ((rep.lhs - rep.rhs) / rep.rhs.max(f64::MIN_POSITIVE)).max(0.0);
    Ok(Measure { ok: rep.holds(), lhs: rep.lhs, rhs: rep.rhs, defect: excess, tolerance: 0.0 })
}

fn sieve(s: &Settings) -> Vec<Job> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut out = Vec::new();
    let width = s.trials.max(1).to_string().len();
    let reference_general = "sum over r of |S(alpha_r)|² <= (N + 1/delta)-type bound times ||a||² for delta-spaced points";
    let reference_special = "sum over Farey points of |S(a/q)|² <= 64 (2N + Q²/|d|²) ||a||²";
    for k in 0..s.trials {
        let inst = random_general_instance::<f64, _>(&mut rng, 50.0, 60);
        out.push(job(format!("sieve/general/{k:0width$}"), reference_general, move || sieve_measure(general_sieve_check(&inst?)?)));
    }
    for k in 0..s.trials {
        let inst = random_special_instance::<f64, _>(&mut rng, 30.0, 50.0);
        out.push(job(format!("sieve/special/{k:0width$}"), reference_special, move || {
            let i = inst?;
            sieve_measure(special_sieve_check(i.q_max, &i.d, &i.coeffs)?)
        }));
    }
    for d in [Gi::one(), Gi::new(1, 1), Gi::new(2, 1)] {
        out.push(job(format!("sieve/farey_spacing/d={d}"), "||a1/q1 - a2/q2||² >= |d|²/Q² for distinct Farey points, exact", move || {
            let rep = farey_spacing_exact(30, &d)?;
            let gap = rep.min_num as f64 / rep.min_den as f64;
            let bound = d.norm() as f64 / 900.0;
            Ok(Measure { ok: rep.violations == 0, lhs: gap, rhs: bound, defect: rep.violations as f64, tolerance: 0.0 })
        }));
    }
    out
}

fn default_grid(s: &Settings, key: &str, default: &[f64]) -> Vec<f64> {
    s.grid(key, default)
}

pub const NU_GRID: [f64; 5] = [0.05, 0.1, 0.2, 0.3, 0.5];
pub const X_GRID: [f64; 6] = [4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0];

pub fn t_grid() -> Vec<f64> {
    (0..=28).map(|k| 1.0 + 0.25 * k as f64).collect()
}

fn ktransform(s: &Settings) -> Vec<Job> {
    let mut out = Vec::new();
    let grid = [
        SpectralPoint::real(0.1, 0),
        SpectralPoint::real(0.2, 0),
        SpectralPoint::imag(1.0, 0),
        SpectralPoint::imag(2.0, 1),
        SpectralPoint::imag(1.0, 2),
    ];
    let (cross, exact, quad) = (s.tol.cross, s.tol.exact, s.tol.quadrature);
    for pt in grid {
        out.push(job(
            format!("ktransform/series_vs_quadrature/nu={}{:+}i,p={}", pt.nu.re, pt.nu.im, pt.p),
            "KF(nu,p) by the Mellin series = KF(nu,p) by 2-D quadrature",
            move || {
                let phi = test_function_fx(16.0)?;
                let a = k_transform_series(&phi, pt)?.value;
                let b = k_transform_quad(&phi, pt)?.value;
                Ok(Measure::within(a.norm(), b.norm(), (a - b).norm() / b.norm(), cross))
            },
        ));
    }
    out.push(job("ktransform/symmetry", "KF(nu,p) = KF(-nu,-p) = KF(nu,-p) = KF(-nu,p)", move || {
        let phi = test_function_fx(16.0)?;
        let (mut worst, mut l1) = (0.0f64, 0.0);
        for pt in grid {
            let a = k_transform_series(&phi, pt)?.value;
            l1 += a.norm();
            for o in [SpectralPoint::new(-pt.nu, pt.p), SpectralPoint::new(pt.nu, -pt.p), SpectralPoint::new(-pt.nu, -pt.p)] {
                let b = k_transform_series(&phi, o)?.value;
                worst = worst.max((a - b).norm() / a.norm().max(1.0));
            }
        }
        Ok(Measure::within(l1, l1, worst, exact))
    }));
    out.push(job("ktransform/mellin_derivative", "(s)_j M(phi)(s) = (-2)^j M(r^j phi^(j))(s+j), j <= 3", move || {
        let phi = test_function_fx(16.0)?;
        let bump = annular_weight(3.0)?;
        let bumps: [&dyn Radial<f64>; 2] = [&phi, &bump];
        let (mut worst, mut l1, mut r1) = (0.0f64, 0.0, 0.0);
        for b in bumps {
            for z in [c(0.5, 0.0), c(1.0, 0.0), c(1.5, 1.0)] {
                let base = m_transform(b, z)?.value;
                for j in 1..=3u32 {
                    let d = DerivativeRadial::new(b, j as usize);
                    let lhs = pochhammer(z, j) * base;
                    let rhs = m_transform(&d, z + j as f64)?.value * (-2.0f64).powi(j as i32);
                    worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
                    l1 += lhs.norm();
                    r1 += rhs.norm();
                }
            }
        }
        Ok(Measure::within(l1, r1, worst, quad))
    }));
    let nus = default_grid(s, "nu", &NU_GRID);
    let xs = default_grid(s, "x", &X_GRID);
    out.push(job("ktransform/growth_sandwich", "KF_X(nu,0) / (min(1+|log X|, 1/nu) X^nu) has max/min <= 100", move || {
        let cells = bound_profile(&nus, &xs)?;
        let lo = cells.iter().map(|c| c.ratio).fold(f64::MAX, f64::min);
        let hi = cells.iter().map(|c| c.ratio).fold(f64::MIN, f64::max);
        Ok(Measure { ok: lo > 0.0 && hi / lo <= 100.0, lhs: lo, rhs: hi, defect: hi / lo, tolerance: 100.0 })
    }));
    let ts = default_grid(s, "t", &t_grid());
    out.push(job("ktransform/imaginary_decay", "(1+t)^4 |KF_X(it,0)| varies by at most two orders of magnitude", move || {
        let prof = imaginary_profile(16.0, &ts)?;
        let lo = prof.iter().map(|p| p.2).fold(f64::MAX, f64::min);
        let hi = prof.iter().map(|p| p.2).fold(f64::MIN, f64::max);
        Ok(Measure { ok: lo > 0.0 && hi / lo <= 100.0, lhs: lo, rhs: hi, defect: hi / lo, tolerance: 100.0 })
    }));
    out
}

fn aggregates(s: &Settings) -> Vec<Job> {
    let tol = s.tol.exact;
    let rel = |a: C64, b: C64| (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    let mut out = Vec::new();
    for (name, h, k, l, p, q) in [("reference", 2.0, 4.0, 4.0, 8.0, 16.0), ("wide", 2.5, 5.5, 5.5, 9.5, 17.0)] {
        out.push(job(format!("aggregates/r_sum_orders/{name}"), "R summed directly = R grouped by modulus pq", move || {
            let spec = AggregateSpec::unit_coefficients(h, k, l, p, q, 0.5)?;
            let a = r_sum(&spec, Order::Direct)?;
            let b = r_sum(&spec, Order::ByModulus)?;
            Ok(Measure::within(a.value.norm(), b.value.norm(), rel(a.value, b.value), tol))
        }));
    }
    for (r, s2, n, l, p) in [(1.0, 1.0, 1.0, 1.0, 2.0), (2.0, 2.0, 4.0, 4.0, 4.0), (5.0, 2.0, 16.0, 16.0, 8.0)] {
        out.push(job(format!("aggregates/lambda_orders/B({r},{s2})"), "Lambda summed pairs-first = Lambda summed modulus-first", move || {
            let spec = CuspSumSpec::unit_coefficients(r, s2, n, l, p)?;
            let x = lambda_sum(&spec, LambdaOrder::PairsFirst)?;
            let y = lambda_sum(&spec, LambdaOrder::ModulusFirst)?;
            Ok(Measure::within(x.value.norm(), y.value.norm(), rel(x.value, y.value), tol))
        }));
    }
    out.push(job("aggregates/level_sum_window", "moduli visited by the level sum = moduli with 2 pi/|c| in supp f", || {
        let f = test_function_fx(16.0)?;
        let (lo, hi) = f.support();
        let one = Gi::one();
        let rep = level_sum(&one, &one, &one, &f)?;
        let tau = std::f64::consts::TAU;
        let want = ball(4000)
            .iter()
            .filter(|z| {
                let x = tau / (z.norm() as f64).sqrt();
                x >= lo && x <= hi
            })
            .count();
        Ok(Measure::count(rep.visited, want))
    }));
    out.push(job("aggregates/level_sum_value", "level sum = direct sum of S(m,n;c)|c|^-2 f(2 pi sqrt(mn)/c) over c in qO", move || {
        let f = test_function_fx(16.0)?;
        let (m, n, q) = (Gi::new(1, 1), Gi::new(2, -1), Gi::new(1, 1));
        let rep = level_sum(&m, &n, &q, &f)?;
        let scale = std::f64::consts::TAU * ((m * n).norm() as f64).sqrt().sqrt();
        let (lo, hi) = f.support();
        let mut direct = c(0.0, 0.0);
        let bound = (scale / lo).powi(2) / q.norm() as f64 + 1.0;
        for t in annulus(0.0, bound) {
            let cc = t * q;
            let x = scale / (cc.norm() as f64).sqrt();
            if x >= lo && x <= hi {
                direct += kloosterman::<f64>(&m, &n, &cc)?.value * f.eval(x) / cc.norm() as f64;
            }
        }
        Ok(Measure::within(rep.value.norm(), direct.norm(), rel(rep.value, direct), tol))
    }));
    out
}
