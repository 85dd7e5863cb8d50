//! Flat `key = value` configuration files and the settings they feed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::report::Format;
use crate::UsageError;

/// Tolerances shared by every suite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Exact identities evaluated in floating point.
    pub exact: f64,
    /// Quadrature-based identities.
    pub quadrature: f64,
    /// Series against quadrature.
    pub cross: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { exact: 1e-9, quadrature: 1e-6, cross: 1e-5 }
    }
}

/// Everything a suite or scan needs.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub max_norm: i64,
    pub trials: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    pub tol: Tolerances,
    /// Grid lists used by scans, keyed by flag name.
    pub grids: BTreeMap<String, Vec<f64>>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_norm: 40,
            trials: 500,
            seed: 42,
            out: None,
            format: Format::Json,
            workers: 0,
            tol: Tolerances::default(),
            grids: BTreeMap::new(),
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_flat(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| UsageError(format!("config line {}: expected key = value", k + 1)))?;
        let key = key.trim().replace('-', "_");
        if key.is_empty() {
            return Err(UsageError(format!("config line {}: empty key", k + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    parse_flat(&text)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, UsageError> {
    v.parse().map_err(|_| UsageError(format!("{key}: cannot parse {v:?}")))
}

/// A comma list of numbers, or `a..b` for powers of 4 from `a` to `b`.
pub fn parse_grid(key: &str, v: &str) -> Result<Vec<f64>, UsageError> {
    if let Some((a, b)) = v.split_once("..") {
        let (a, b): (f64, f64) = (num(key, a.trim())?, num(key, b.trim())?);
        if !(a > 0.0 && b >= a) {
            return Err(UsageError(format!("{key}: bad range {v:?}")));
        }
        let mut out = Vec::new();
        let mut x = a;
        while x <= b * (1.0 + 1e-12) {
            out.push(x);
            x *= 4.0;
        }
        return Ok(out);
    }
    let vals: Vec<f64> = v.split(',').map(|s| num(key, s.trim())).collect::<Result<_, _>>()?;
    if vals.is_empty() {
        return Err(UsageError(format!("{key}: empty list")));
    }
    Ok(vals)
}

impl Settings {
    /// Applies one key; unknown keys are usage errors.
    pub fn apply(&mut self, key: &str, v: &str) -> Result<(), UsageError> {
        match key {
            "max_norm" => self.max_norm = num(key, v)?,
            "trials" => self.trials = num(key, v)?,
            "seed" => self.seed = num(key, v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "format" => self.format = v.parse()?,
            "workers" => self.workers = num(key, v)?,
            "tol_exact" => self.tol.exact = num(key, v)?,
            "tol_quadrature" => self.tol.quadrature = num(key, v)?,
            "tol_cross" => self.tol.cross = num(key, v)?,
            "nu" | "x" | "t" | "tau" | "q" | "n" | "w" => {
                self.grids.insert(key.to_string(), parse_grid(key, v)?);
            }
            _ => return Err(UsageError(format!("unknown setting {key:?}"))),
        }
        self.validate()
    }

    pub fn apply_all(&mut self, map: &BTreeMap<String, String>) -> Result<(), UsageError> {
        for (k, v) in map {
            self.apply(k, v)?;
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), UsageError> {
        if self.max_norm < 1 {
            return Err(UsageError("max_norm must be at least 1".into()));
        }
        for (name, t) in [("tol_exact", self.tol.exact), ("tol_quadrature", self.tol.quadrature), ("tol_cross", self.tol.cross)] {
            if !(t > 0.0) {
                return Err(UsageError(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn grid(&self, key: &str, default: &[f64]) -> Vec<f64> {
        self.grids.get(key).cloned().unwrap_or_else(|| default.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_file_and_overrides() {
        let map = parse_flat("# comment\nseed = 7\nmax-norm=12  # trailing\n\nnu = 0.1, 0.2\n").unwrap();
        let mut s = Settings::default();
        s.apply_all(&map).unwrap();
        assert_eq!((s.seed, s.max_norm), (7, 12));
        assert_eq!(s.grid("nu", &[]), vec![0.1, 0.2]);
        s.apply("seed", "9").unwrap();
        assert_eq!(s.seed, 9);
        assert!(parse_flat("seed 7").is_err());
        assert!(s.apply("colour", "red").is_err());
        assert!(s.apply("tol_exact", "-1").is_err());
    }

    #[test]
    fn power_ranges() {
        assert_eq!(parse_grid("x", "4..4096").unwrap(), vec![4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0]);
        assert!(parse_grid("x", "8..2").is_err());
    }
}
