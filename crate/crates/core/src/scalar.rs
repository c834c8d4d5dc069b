//! Coefficient scalars: exact Gaussian rationals or complex doubles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients with absolute value at or below this are dropped in float mode.
pub const FLOAT_CHOP: f64 = 1e-12;

/// An element `re + i·im` of ℚ(i). Both parts are kept reduced by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }

    pub fn from_int(k: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(k)), BigRational::zero())
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_fraction(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad fraction `{s}`")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad fraction `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical `p/q` (or `p`) rendering; inverse of [`parse_fraction`] on reduced input.
pub fn format_fraction(q: &BigRational) -> String {
    q.to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Exact => f.write_str("exact"),
            ScalarMode::Float => f.write_str("float"),
        }
    }
}

/// A coefficient in one of the two scalar modes.
///
/// Arithmetic between scalars of different modes panics; algebra-level
/// operations check modes up front and report [`Error::MixedModes`].
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(GaussRat),
    Float(Complex64),
}

impl Scalar {
    pub fn zero(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(GaussRat::zero()),
            ScalarMode::Float => Scalar::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(mode: ScalarMode) -> Self {
        Scalar::from_i64(mode, 1)
    }

    pub fn from_i64(mode: ScalarMode, k: i64) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(GaussRat::from_int(k)),
            ScalarMode::Float => Scalar::Float(Complex64::new(k as f64, 0.0)),
        }
    }

    pub fn from_ratio(mode: ScalarMode, p: i64, q: i64) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(GaussRat::from_ratio(p, q)),
            ScalarMode::Float => Scalar::Float(Complex64::new(p as f64 / q as f64, 0.0)),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Exact(_) => ScalarMode::Exact,
            Scalar::Float(_) => ScalarMode::Float,
        }
    }

    /// Exact zero test; float values are compared against [`FLOAT_CHOP`].
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(z) => z.norm() <= FLOAT_CHOP,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(q) => q.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&GaussRat> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    /// Multiplies by a real factor given as a float; exact scalars must get an
    /// integral factor of one, which is all group providers ever need.
    pub fn scale_real(&self, factor: f64) -> Result<Self> {
        match self {
            Scalar::Exact(q) => {
                if factor == 1.0 {
                    Ok(Scalar::Exact(q.clone()))
                } else {
                    Err(Error::Internal(format!(
                        "irrational rescaling {factor} requested in exact mode"
                    )))
                }
            }
            Scalar::Float(z) => Ok(Scalar::Float(z * factor)),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Exact(q) => q.inv().map(Scalar::Exact),
            Scalar::Float(z) => {
                if z.norm() == 0.0 {
                    None
                } else {
                    Some(Scalar::Float(z.inv()))
                }
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => panic!("mixed scalar modes"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => panic!("mixed scalar modes"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => panic!("mixed scalar modes"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(z) => write!(f, "{z}"),
        }
    }
}
