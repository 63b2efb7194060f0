//! Exact rational scalars and their extension by the two infinities.
//!
//! Everything in this crate reduces to comparisons and affine arithmetic
//! over `Q`; no floating point is used anywhere in the computational path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// Shorthand constructor from an integer pair; reduces to lowest terms.
pub fn q(numer: i64, denom: i64) -> Q {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand constructor for an integer rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn half(x: &Q) -> Q {
    x / qi(2)
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn min_q(a: Q, b: Q) -> Q {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_q(a: Q, b: Q) -> Q {
    if a >= b {
        a
    } else {
        b
    }
}

/// Canonical text form `numer/denom`, denominator always present and positive.
pub fn q_to_text(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `n` or `n/d`; the denominator must be nonzero.
pub fn q_from_text(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// A rational extended with the two infinities. Used for vertical
/// endpoints of open boxes, whose fibers may be unbounded, and as the
/// codomain of the sup-metrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtQ {
    NegInf,
    Fin(Q),
    PosInf,
}

impl ExtQ {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            ExtQ::Fin(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtQ::Fin(_))
    }

    pub fn expect_finite(&self) -> &Q {
        self.finite().expect("value is infinite")
    }

    /// Addition that rejects the indeterminate form ∞ + (−∞).
    pub fn try_add(&self, other: &ExtQ) -> Result<ExtQ> {
        use ExtQ::*;
        match (self, other) {
            (Fin(a), Fin(b)) => Ok(Fin(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::IndeterminateArithmetic),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    pub fn try_sub(&self, other: &ExtQ) -> Result<ExtQ> {
        self.try_add(&other.clone().negate())
    }

    pub fn negate(self) -> ExtQ {
        match self {
            ExtQ::NegInf => ExtQ::PosInf,
            ExtQ::PosInf => ExtQ::NegInf,
            ExtQ::Fin(x) => ExtQ::Fin(-x),
        }
    }

    pub fn min(self, other: ExtQ) -> ExtQ {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtQ) -> ExtQ {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Canonical text form; infinities are symbolic.
    pub fn to_text(&self) -> String {
        match self {
            ExtQ::NegInf => "-inf".to_string(),
            ExtQ::PosInf => "inf".to_string(),
            ExtQ::Fin(x) => q_to_text(x),
        }
    }

    pub fn from_text(s: &str) -> Option<ExtQ> {
        match s {
            "inf" => Some(ExtQ::PosInf),
            "-inf" => Some(ExtQ::NegInf),
            _ => q_from_text(s).map(ExtQ::Fin),
        }
    }
}

impl From<Q> for ExtQ {
    fn from(x: Q) -> ExtQ {
        ExtQ::Fin(x)
    }
}

impl PartialOrd for ExtQ {
    fn partial_cmp(&self, other: &ExtQ) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtQ {
    fn cmp(&self, other: &ExtQ) -> Ordering {
        use ExtQ::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Rough decimal rendering for plot output; the exact value stays rational.
pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer();
    let d = x.denom();
    // Scale down huge integers before converting.
    let digits = n.to_string().len().max(d.to_string().len());
    if digits > 15 {
        let shift = BigInt::from(10u32).pow((digits - 15) as u32);
        let n2 = n / &shift;
        let d2 = d / &shift;
        if d2.is_zero() {
            return 0.0;
        }
        return bigint_f64(&n2) / bigint_f64(&d2);
    }
    bigint_f64(n) / bigint_f64(d)
}

fn bigint_f64(x: &BigInt) -> f64 {
    x.to_string().parse().unwrap_or(0.0)
}

pub fn one() -> Q {
    Q::one()
}

pub fn zero() -> Q {
    Q::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extq_order() {
        assert!(ExtQ::NegInf < ExtQ::Fin(qi(-1000)));
        assert!(ExtQ::Fin(qi(1000)) < ExtQ::PosInf);
        assert!(ExtQ::Fin(q(1, 3)) < ExtQ::Fin(q(1, 2)));
    }

    #[test]
    fn extq_indeterminate_sum_is_rejected() {
        assert_eq!(
            ExtQ::PosInf.try_add(&ExtQ::NegInf),
            Err(Error::IndeterminateArithmetic)
        );
        assert_eq!(
            ExtQ::PosInf.try_add(&ExtQ::Fin(qi(5))),
            Ok(ExtQ::PosInf)
        );
    }

    #[test]
    fn rational_text_round_trip() {
        let x = q(-7, 3);
        assert_eq!(q_to_text(&x), "-7/3");
        assert_eq!(q_from_text("-7/3"), Some(x));
        assert_eq!(q_from_text("4"), Some(qi(4)));
        assert_eq!(q_from_text("1/0"), None);
    }
}
