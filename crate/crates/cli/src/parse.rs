//! `a+bi` literals for Gaussian integers and complex numbers.

use std::str::FromStr;

use gsk_core::{Gi, C64};

use crate::UsageError;

/// Splits `a+bi`, `a-bi`, `bi`, `i`, `-i` or `a` into real and imaginary text.
fn split(s: &str) -> Option<(&str, &str)> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Some((s, "0"));
    };
    // the sign that starts the imaginary part; skip a leading sign and exponents
    let bytes = body.as_bytes();
    let mut cut = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            cut = Some(k);
            break;
        }
    }
    match cut {
        Some(k) => Some((&body[..k], &body[k..])),
        None => Some(("0", body)),
    }
}

fn part<T: FromStr + From<i8>>(s: &str) -> Option<T> {
    match s {
        "" | "+" => Some(T::from(1)),
        "-" => Some(T::from(-1)),
        _ => s.strip_prefix('+').unwrap_or(s).parse().ok(),
    }
}

pub fn gaussian(s: &str) -> Result<Gi, UsageError> {
    let bad = || UsageError(format!("cannot parse Gaussian integer {s:?} (expected a+bi)"));
    let (re, im) = split(s).ok_or_else(bad)?;
    let re: i64 = if re.is_empty() { return Err(bad()) } else { re.parse().map_err(|_| bad())? };
    let im: i64 = part(im).ok_or_else(bad)?;
    Ok(Gi::new(re, im))
}

pub fn complex(s: &str) -> Result<C64, UsageError> {
    let bad = || UsageError(format!("cannot parse complex number {s:?} (expected a+bi)"));
    let (re, im) = split(s).ok_or_else(bad)?;
    let re: f64 = if re.is_empty() { return Err(bad()) } else { re.parse().map_err(|_| bad())? };
    let im: f64 = part(im).ok_or_else(bad)?;
    Ok(C64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_literals() {
        for (s, want) in [
            ("3", Gi::new(3, 0)),
            ("-2", Gi::new(-2, 0)),
            ("i", Gi::new(0, 1)),
            ("-i", Gi::new(0, -1)),
            ("4i", Gi::new(0, 4)),
            ("1+i", Gi::new(1, 1)),
            ("2-3i", Gi::new(2, -3)),
            ("-2-i", Gi::new(-2, -1)),
            (" 5+12i ", Gi::new(5, 12)),
        ] {
            assert_eq!(gaussian(s).unwrap(), want, "{s}");
        }
        for s in ["", "x", "1+", "1.5+i", "1+2j", "+"] {
            assert!(gaussian(s).is_err(), "{s}");
        }
        for z in [Gi::new(0, 0), Gi::new(7, -1), Gi::new(-3, 4), Gi::new(0, -9)] {
            assert_eq!(gaussian(&z.to_string()).unwrap(), z);
        }
    }

    #[test]
    fn complex_literals() {
        assert_eq!(complex("0.3+0.7i").unwrap(), C64::new(0.3, 0.7));
        assert_eq!(complex("1e-3-2.5e1i").unwrap(), C64::new(1e-3, -25.0));
        assert_eq!(complex("0.25").unwrap(), C64::new(0.25, 0.0));
        assert_eq!(complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert!(complex("abc").is_err());
    }
}
