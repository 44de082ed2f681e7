//! Scalar fields.
//!
//! Two fields are supported: exact rationals ([`BigRational`]) and
//! double-precision complex numbers ([`Complex64`]). Everything else in the
//! crate is written against the [`Scalar`] trait, so mixing fields inside one
//! computation is rejected by the type checker.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{NumAssign, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default rank/zero threshold for the approximate field.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Exact,
    Approx,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Exact => "rational",
            FieldKind::Approx => "complex64",
        }
    }
}

/// Field tag plus the zero threshold used by elimination.
///
/// The tolerance is always `0` for the exact field and strictly positive for
/// the approximate one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldContext {
    kind: FieldKind,
    tolerance: f64,
}

impl FieldContext {
    pub const fn exact() -> Self {
        Self {
            kind: FieldKind::Exact,
            tolerance: 0.0,
        }
    }

    pub fn approx(tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "approximate tolerance must be a positive finite number, got {tolerance}"
            )));
        }
        Ok(Self {
            kind: FieldKind::Approx,
            tolerance,
        })
    }

    /// The default context for a scalar type.
    pub fn of<T: Scalar>() -> Self {
        match T::KIND {
            FieldKind::Exact => Self::exact(),
            FieldKind::Approx => Self {
                kind: FieldKind::Approx,
                tolerance: DEFAULT_TOLERANCE,
            },
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_exact(&self) -> bool {
        self.kind == FieldKind::Exact
    }

    /// Fails when the context does not describe the field of `T`.
    pub fn ensure_matches<T: Scalar>(&self) -> Result<()> {
        if self.kind == T::KIND {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                expected: T::KIND.name(),
                found: self.kind.name(),
            })
        }
    }
}

/// A field element usable by every algorithm in the crate.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + NumAssign
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    const KIND: FieldKind;

    fn from_i64(n: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// The exact rational value, when the field is exact.
    fn to_rational(&self) -> Option<BigRational>;

    fn to_complex(&self) -> Complex64;

    /// The value as a field element, when representable.
    fn from_complex(z: Complex64) -> Option<Self>;

    /// Absolute value as a double (used for pivoting and scaling).
    fn magnitude(&self) -> f64;

    /// Exact zero test for rationals; `|x| <= tol` for the approximate field.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Canonical textual form (`p/q` for rationals).
    fn render(&self) -> String;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }
}

impl Scalar for BigRational {
    const KIND: FieldKind = FieldKind::Exact;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_complex(_z: Complex64) -> Option<Self> {
        None
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for Complex64 {
    const KIND: FieldKind = FieldKind::Approx;

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn from_complex(z: Complex64) -> Option<Self> {
        Some(z)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn render(&self) -> String {
        render_complex(*self)
    }
}

/// `a`, `bi` or `a+bi` with shortest round-trip formatting of each part.
pub fn render_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) if im < 0.0 => format!("{re}-{}i", -im),
        _ => format!("{re}+{im}i"),
    }
}

/// Parses `p`, `-p` or `p/q` into a reduced rational. A zero denominator is an
/// error rather than a panic.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational scalar {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!(
            "malformed rational scalar {text:?}: zero denominator"
        )));
    }
    Ok(BigRational::new(num, den))
}
