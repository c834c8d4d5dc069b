use std::ops::{Mul, Sub};

use num::{BigInt, Integer, Signed, Zero};

/// Gaussian integer `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    pub fn one() -> Self {
        GaussInt::new(BigInt::from(1), BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient, or `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &GaussInt) -> Option<GaussInt> {
        if other.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&other.re);
            let (qi, ri) = self.im.div_rem(&other.re);
            return (rr.is_zero() && ri.is_zero()).then(|| GaussInt::new(qr, qi));
        }
        let n = other.norm();
        let re = &self.re * &other.re + &self.im * &other.im;
        let im = &self.im * &other.re - &self.re * &other.im;
        let (qr, rr) = re.div_rem(&n);
        let (qi, ri) = im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| GaussInt::new(qr, qi))
    }

    pub fn abs_key(&self) -> BigInt {
        self.norm().abs()
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt::new(&self.re * &o.re, BigInt::zero());
        }
        GaussInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Sub for &GaussInt {
    type Output = GaussInt;
    fn sub(self, o: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re - &o.re, &self.im - &o.im)
    }
}
