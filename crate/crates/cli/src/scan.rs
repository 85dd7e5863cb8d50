//! Parameter scans: tables of measured values over a grid, with no pass/fail.

use gsk_core::aggregates::{annulus, r_sum, AggregateSpec, Order};
use gsk_core::char_sums::kloosterman;
use gsk_core::fourier::{fourier_c, FourierSpec, RadialPlane};
use gsk_core::ktransform::{bound_profile, imaginary_profile};
use gsk_core::sieve::{random_coefficients, special_sieve_check};
use gsk_core::weights::{LogBump, TwistedRadial};
use gsk_core::Gi;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Settings;
use crate::report::Table;
use crate::suites::{t_grid, Suite, NU_GRID, X_GRID};
use crate::UsageError;

fn table(scan: &str, columns: &[&str], rows: Vec<Vec<f64>>) -> Table {
    Table { scan: scan.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows }
}

pub fn run_scan(suite: Suite, s: &Settings) -> Result<Table, ScanError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(s.workers)
        .build()
        .map_err(|e| UsageError(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match suite {
        Suite::Ktransform => ktransform(s),
        Suite::Identities => identities(s),
        Suite::Poisson => poisson(s),
        Suite::Sieve => sieve(s),
        Suite::Aggregates => aggregates(s),
        Suite::All => Err(UsageError("scan needs a single suite".into()).into()),
    })
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error(transparent)]
    Usage(#[from] UsageError),
    #[error(transparent)]
    Core(#[from] gsk_core::Error),
}

/// Growth profile over `ν × X`; with `--t`, the imaginary-axis profile at `X = 16` instead.
fn ktransform(s: &Settings) -> Result<Table, ScanError> {
    if s.grids.contains_key("t") {
        let rows = imaginary_profile(16.0, &s.grid("t", &t_grid()))?.into_iter().map(|(t, v, n)| vec![t, v, n]).collect();
        return Ok(table("ktransform_imaginary", &["t", "abs_kf", "normalized"], rows));
    }
    let cells = bound_profile(&s.grid("nu", &NU_GRID), &s.grid("x", &X_GRID))?;
    let rows = cells.iter().map(|c| vec![c.nu, c.x, c.value, c.normalizer, c.ratio]).collect();
    Ok(table("ktransform_growth", &["nu", "x", "kf", "normalizer", "ratio"], rows))
}

/// `max |S(1,1;w)|` over moduli of each norm, against `|w|`.
fn identities(s: &Settings) -> Result<Table, ScanError> {
    let norms = s.grid("n", &[5.0, 25.0, 65.0, 125.0, 169.0]);
    let mut rows = Vec::new();
    for n in norms {
        let ws: Vec<Gi> = annulus(n - 0.5, n).into_iter().filter(|w| w.norm() as f64 == n).collect();
        let mut worst: f64 = 0.0;
        for w in &ws {
            worst = worst.max(kloosterman::<f64>(&Gi::one(), &Gi::one(), w)?.value.norm());
        }
        rows.push(vec![n, ws.len() as f64, worst, worst / n.sqrt()]);
    }
    Ok(table("kloosterman_size", &["norm", "moduli", "max_abs_s", "max_abs_s_over_abs_w"], rows))
}

/// `|f̂(w)|` of the log-annulus weight along the real axis.
fn poisson(s: &Settings) -> Result<Table, ScanError> {
    let f = RadialPlane::new(TwistedRadial::new(LogBump { a: 0.5, b: -2.0 }, 1.0, 0.0)?);
    let spec = FourierSpec::default();
    let mut rows = Vec::new();
    for w in s.grid("w", &[0.0, 0.5, 1.0, 2.0, 4.0, 8.0]) {
        let v = fourier_c(&f, Complex::new(w, 0.0), &spec)?.value;
        rows.push(vec![w, v.norm()]);
    }
    Ok(table("fourier_decay", &["w", "abs_fourier"], rows))
}

/// Ratio of the Farey large sieve over `Q × N` with seeded coefficients and `d = 1`.
fn sieve(s: &Settings) -> Result<Table, ScanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut rows = Vec::new();
    for q in s.grid("q", &[2.0, 5.0, 10.0, 20.0, 30.0]) {
        for n in s.grid("n", &[5.0, 20.0, 50.0]) {
            let coeffs = random_coefficients(&mut rng, n, 0.6)?;
            let r = special_sieve_check(q, &Gi::one(), &coeffs)?;
            rows.push(vec![q, n, r.lhs, r.rhs, r.ratio]);
        }
    }
    Ok(table("farey_sieve", &["q", "n", "lhs", "rhs", "ratio"], rows))
}

/// `|ℛ|` against the trivial bound at scales `(x, x, x, 2x, 4x)`.
fn aggregates(s: &Settings) -> Result<Table, ScanError> {
    let mut rows = Vec::new();
    for x in s.grid("x", &[2.5, 3.0, 5.0, 6.0]) {
        let spec = AggregateSpec::unit_coefficients(x, x, x, 2.0 * x, 4.0 * x, 0.5)?;
        let r = r_sum(&spec, Order::ByModulus)?;
        rows.push(vec![x, r.terms as f64, r.value.norm(), r.trivial, r.ratio]);
    }
    Ok(table("r_sum_size", &["scale", "terms", "abs_r", "trivial", "ratio"], rows))
}
