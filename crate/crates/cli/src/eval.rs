//! Single evaluations, each printed as one JSON object.

use clap::{Subcommand, ValueEnum};
use gsk_core::aggregates::level_sum;
use gsk_core::char_sums::{kloosterman, ramanujan_c, ramanujan_c_closed};
use gsk_core::ktransform::{k_transform_quad, k_transform_series, SpectralPoint};
use gsk_core::weights::test_function_fx;
use gsk_core::{Gi, C64};
use serde_json::{json, Value};

use crate::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Quadrature,
}

#[derive(Debug, Subcommand)]
pub enum Eval {
    /// S(u, v; w).
    Kloosterman {
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        u: Gi,
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        v: Gi,
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        w: Gi,
    },
    /// c_q(b, h; k) by the direct sum and by the closed form.
    Ramanujan {
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        q: Gi,
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        b: Gi,
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        h: Gi,
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        k: Gi,
    },
    /// KF_X(ν, p) for the standard test function F_X.
    Ktransform {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        nu: C64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long = "x", visible_alias = "X", default_value_t = 16.0)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
    },
    /// Σ_{c ∈ qO} S(m, n; c) |c|⁻² F_X(2π √(mn) / c).
    LevelSum {
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        m: Gi,
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        n: Gi,
        #[arg(long, value_parser = parse::gaussian, allow_hyphen_values = true)]
        q: Gi,
        #[arg(long = "x", visible_alias = "X", default_value_t = 16.0)]
        x: f64,
    },
}

fn cx(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn run(e: &Eval) -> gsk_core::Result<Value> {
    Ok(match e {
        Eval::Kloosterman { u, v, w } => {
            let r = kloosterman::<f64>(u, v, w)?;
            json!({
                "eval": "kloosterman",
                "u": u.to_string(), "v": v.to_string(), "w": w.to_string(),
                "value": cx(r.value),
                "terms": r.term_count,
            })
        }
        Eval::Ramanujan { q, b, h, k } => {
            let direct = ramanujan_c::<f64>(q, b, h, k)?;
            let closed = ramanujan_c_closed::<f64>(q, b, h, k)?;
            json!({
                "eval": "ramanujan",
                "q": q.to_string(), "b": b.to_string(), "h": h.to_string(), "k": k.to_string(),
                "direct": cx(direct),
                "closed": cx(closed),
                "defect": (direct - closed).norm(),
            })
        }
        Eval::Ktransform { nu, p, x, method } => {
            let phi = test_function_fx(*x)?;
            let pt = SpectralPoint::new(*nu, *p);
            let r = match method {
                Method::Series => k_transform_series(&phi, pt)?,
                Method::Quadrature => k_transform_quad(&phi, pt)?,
            };
            json!({
                "eval": "ktransform",
                "nu": cx(*nu), "p": p, "x": x,
                "method": match method { Method::Series => "series", Method::Quadrature => "quadrature" },
                "value": cx(r.value),
                "terms": r.truncation_terms,
                "est_error": r.est_error,
            })
        }
        Eval::LevelSum { m, n, q, x } => {
            let f = test_function_fx(*x)?;
            let r = level_sum(m, n, q, &f)?;
            json!({
                "eval": "level-sum",
                "m": m.to_string(), "n": n.to_string(), "q": q.to_string(), "x": x,
                "value": cx(r.value),
                "visited": r.visited,
                "nonzero": r.nonzero,
                "window": [r.window.0, r.window.1],
            })
        }
    })
}
