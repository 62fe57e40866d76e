//! Minimal double-double arithmetic (~31 significant digits), used where
//! plain f64 conditioning is the binding constraint: the QR iteration on
//! the non-normal Hessenberg truncations.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn renorm(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        // one Newton step on a f64 seed doubles the digits
        let approx = self.hi.sqrt();
        let y = Dd::from_f64(approx);
        let r = (self - y * y) / Dd::from_f64(2.0 * approx);
        y + r
    }

    /// |self| with the sign of `sign`, matching f64::copysign semantics.
    pub fn copysign(self, sign: Dd) -> Dd {
        let negative = sign.hi < 0.0 || (sign.hi == 0.0 && sign.lo < 0.0);
        if negative {
            -self.abs()
        } else {
            self.abs()
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        Dd::renorm(s, e + self.lo + rhs.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        Dd::renorm(p, e + self.hi * rhs.lo + self.lo * rhs.hi)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - Dd::from_f64(q1) * rhs;
        let q2 = r.hi / rhs.hi;
        let r2 = r - Dd::from_f64(q2) * rhs;
        let q3 = r2.hi / rhs.hi;
        Dd::renorm(q1, q2 + q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

/// Complex double-double, just enough for polynomial evaluation inside the
/// multiprecision root-finding fallback.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from_f64(re: f64, im: f64) -> CDd {
        CDd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    pub fn to_c64(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }

    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    pub fn div(self, o: CDd) -> CDd {
        let den = o.re * o.re + o.im * o.im;
        CDd {
            re: (self.re * o.re + self.im * o.im) / den,
            im: (self.im * o.re - self.re * o.im) / den,
        }
    }

    pub fn norm_sqr_f64(self) -> f64 {
        (self.re * self.re + self.im * self.im).to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_beats_double() {
        // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80; f64 drops the last term
        let x = Dd::from_f64(1.0) + Dd::from_f64(2.0f64.powi(-40));
        let sq = x * x;
        let err = sq - Dd::from_f64(1.0) - Dd::from_f64(2.0f64.powi(-39));
        assert!((err.to_f64() - 2.0f64.powi(-80)).abs() < 1e-40);
    }

    #[test]
    fn sqrt_division_roundtrip() {
        let x = Dd::from_f64(17.0) / Dd::from_f64(7.0);
        let s = x.sqrt();
        let back = s * s - x;
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn ordering_and_signs() {
        let a = Dd::from_f64(1.0);
        let tiny = Dd {
            hi: 1.0,
            lo: 1e-20,
        };
        assert!(tiny > a);
        assert_eq!(Dd::from_f64(-2.0).abs().to_f64(), 2.0);
        assert_eq!(Dd::from_f64(3.0).copysign(Dd::from_f64(-1.0)).to_f64(), -3.0);
    }
}
