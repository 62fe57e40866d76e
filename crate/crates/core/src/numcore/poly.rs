//! Dense univariate polynomials over a scalar backend.
//!
//! Coefficients are stored in ascending degree order with a nonzero leading
//! coefficient; the zero polynomial is the empty coefficient vector and
//! reports degree −1. All arithmetic is exact on the rational backend.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Rat, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree with the zero polynomial encoded as −1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `x^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Poly<T> {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: &T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Composition with an affine map: returns `p(alpha x + beta)`.
    pub fn compose_affine(&self, alpha: &T, beta: &T) -> Poly<T> {
        let inner = Poly::new(vec![beta.clone(), alpha.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Product with `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly<T> {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }
}

impl Poly<Rat> {
    /// Lossy conversion of every coefficient to `f64`.
    pub fn to_f64_poly(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    /// Double-double split of the exact coefficients: hi is the rounded
    /// f64 value, lo the rounded remainder, so hi + lo carries ~32 digits.
    pub fn to_dd(&self) -> (Vec<f64>, Vec<f64>) {
        let mut hi = Vec::with_capacity(self.coeffs.len());
        let mut lo = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let h = Scalar::to_f64(c);
            let rem = if h.is_finite() {
                match Rat::from_float(h) {
                    Some(hr) => Scalar::to_f64(&(c.clone() - hr)),
                    None => 0.0,
                }
            } else {
                0.0
            };
            hi.push(h);
            lo.push(rem);
        }
        (hi, lo)
    }

    /// Evaluates at a float point after coefficient conversion.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_poly().eval(&x)
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    /// Renders in descending powers, e.g. `x^2 - 12/25 x + 3/100`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag == "1";
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag} x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag} x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::scalar::{rat, rint};
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> Poly<Rat> {
        Poly::new(coeffs.iter().map(|&c| rint(c)).collect())
    }

    #[test]
    fn zero_polynomial_has_degree_minus_one() {
        assert_eq!(Poly::<Rat>::zero().degree(), -1);
        assert_eq!(p(&[0, 0, 0]).degree(), -1);
        assert_eq!(p(&[5]).degree(), 0);
        assert_eq!((&p(&[1, 1]) - &p(&[0, 1])).degree(), 0);
    }

    #[test]
    fn arithmetic_matches_hand_results() {
        // (1 + x)(1 - x) = 1 - x^2
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        // (1 + 2x)' = 2
        assert_eq!(p(&[1, 2]).derivative(), p(&[2]));
        assert_eq!(p(&[3, 0, 1]).eval(&rint(2)), rint(7));
    }

    #[test]
    fn compose_affine_expands() {
        // p(x) = x^2, p(2x + 1) = 4x^2 + 4x + 1
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.compose_affine(&rint(2), &rint(1)), p(&[1, 4, 4]));
        // degree preserved under nonzero alpha
        let q = p(&[1, -3, 0, 5]);
        assert_eq!(q.compose_affine(&rat(1, 2), &rat(-1, 3)).degree(), 3);
    }

    #[test]
    fn display_exact() {
        let q = Poly::new(vec![rat(3, 100), rat(-12, 25), rint(1)]);
        assert_eq!(q.to_string(), "x^2 - 12/25 x + 3/100");
        assert_eq!(Poly::<Rat>::zero().to_string(), "0");
        assert_eq!(Poly::new(vec![rat(-1, 6), rint(1)]).to_string(), "x - 1/6");
    }

    proptest! {
        /// Exact product rule: (p q)' = p' q + p q' identically, degree up to 20.
        #[test]
        fn product_rule_holds_exactly(
            pc in proptest::collection::vec(-50i64..50, 1..21),
            qc in proptest::collection::vec(-50i64..50, 1..21),
        ) {
            let (pp, qq) = (p(&pc), p(&qc));
            let lhs = (&pp * &qq).derivative();
            let rhs = &(&pp.derivative() * &qq) + &(&pp * &qq.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        /// Affine composition is a ring homomorphism on evaluation points.
        #[test]
        fn compose_affine_consistent_with_eval(
            pc in proptest::collection::vec(-20i64..20, 1..10),
            x in -10i64..10, al in -5i64..5, be in -5i64..5,
        ) {
            let pp = p(&pc);
            let composed = pp.compose_affine(&rint(al), &rint(be));
            prop_assert_eq!(composed.eval(&rint(x)), pp.eval(&(rint(al) * rint(x) + rint(be))));
        }
    }
}
