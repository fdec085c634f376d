//! Scalars: exact rationals for polyhedral paths, tolerance-tagged floats
//! for spectral and general-p paths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps values in lowest terms with a
/// positive denominator, which is exactly the invariant we need.
pub type Rational = BigRational;

/// Tolerance for spectral (eigenvalue) decisions.
pub const SPECTRAL_TOL: f64 = 1e-9;
/// Tolerance for the randomized definition-level oracle on float paths.
pub const ORACLE_TOL: f64 = 1e-7;
/// Relative tolerance for eigendecomposition reconstruction.
pub const RECON_TOL: f64 = 1e-10;

/// A scalar that is either exact or carries the tolerance policy under which
/// it was produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Approx { value: f64, tol: f64 },
}

impl Scalar {
    pub fn approx(value: f64) -> Self {
        Scalar::Approx { value, tol: SPECTRAL_TOL }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => rational_to_f64(q),
            Scalar::Approx { value, .. } => *value,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Approx { .. } => None,
        }
    }

    /// Equality under the scalar's own policy: exact on rationals, within
    /// tolerance on approximations.
    pub fn eq_policy(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (a, b) => {
                let tol = a.tol().max(b.tol());
                (a.to_f64() - b.to_f64()).abs() <= tol
            }
        }
    }

    fn tol(&self) -> f64 {
        match self {
            Scalar::Rational(_) => 0.0,
            Scalar::Approx { tol, .. } => *tol,
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Approx { value, .. } => write!(f, "{value}"),
        }
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Values outside f64 range do not occur at the scales we work at.
        if q.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY }
    })
}

/// Parse a rational from "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let make_err = || Error::Parse(format!("invalid rational {s:?}; expected \"p\" or \"p/q\""));
    match s.split_once('/') {
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| make_err())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| make_err())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s).map_err(|_| make_err())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let q = parse_rational("6/4").unwrap();
        assert_eq!(q, rat(3, 2));
        assert_eq!(format_rational(&q), "3/2");
        // negative denominators normalize to positive ones
        let q = parse_rational("1/-2").unwrap();
        assert_eq!(q, rat(-1, 2));
        assert_eq!(format_rational(&q), "-1/2");
        assert_eq!(format_rational(&parse_rational("-7").unwrap()), "-7");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn scalar_policy_equality() {
        assert!(Scalar::Rational(rat(1, 2)).eq_policy(&Scalar::Rational(rat(2, 4))));
        assert!(Scalar::approx(0.5).eq_policy(&Scalar::approx(0.5 + 1e-12)));
        assert!(!Scalar::approx(0.5).eq_policy(&Scalar::approx(0.5 + 1e-6)));
    }
}
