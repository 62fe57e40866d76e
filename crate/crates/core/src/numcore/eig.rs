//! Eigenvalues of banded Hessenberg matrices by the shifted QR algorithm
//! (Francis double-shift with deflation, Wilkinson's formulation), with
//! Parlett-Reinsch balancing.
//!
//! The iteration is generic over the working precision: the plain f64 path
//! serves well-conditioned spectra, while the double-double path handles
//! the strongly non-normal truncations whose small eigenvalues are beyond
//! f64 (their condition numbers grow exponentially with the order).

use num_complex::Complex64;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use super::dd::Dd;
use crate::error::{Error, Result};

/// The scalar operations the QR iteration needs.
pub trait QrReal:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn copysign(self, sign: Self) -> Self;
    /// Unit roundoff of the representation.
    fn eps() -> Self;
}

impl QrReal for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn copysign(self, sign: Self) -> Self {
        f64::copysign(self, sign)
    }
    fn eps() -> Self {
        f64::EPSILON
    }
}

impl QrReal for Dd {
    fn zero() -> Self {
        Dd::ZERO
    }
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn copysign(self, sign: Self) -> Self {
        Dd::copysign(self, sign)
    }
    fn eps() -> Self {
        // 2^-104, the double-double unit roundoff
        Dd::from_f64(4.93e-32)
    }
}

struct Mat<T> {
    n: usize,
    d: Vec<T>,
}

impl<T: QrReal> Index<(isize, isize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (isize, isize)) -> &T {
        &self.d[i as usize * self.n + j as usize]
    }
}

impl<T: QrReal> IndexMut<(isize, isize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (isize, isize)) -> &mut T {
        &mut self.d[i as usize * self.n + j as usize]
    }
}

fn validate_and_transpose<T: QrReal>(h: &[Vec<f64>]) -> Result<Mat<T>> {
    let n = h.len();
    for (i, row) in h.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Domain(format!(
                "matrix is not square: row {i} has length {} in an order-{n} matrix",
                row.len()
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if j > i + 1 && v != 0.0 {
                return Err(Error::Domain(format!(
                    "not lower-Hessenberg: nonzero entry at ({i}, {j})"
                )));
            }
        }
    }
    // transpose: the spectrum is invariant and QR wants upper Hessenberg
    let mut a = Mat {
        n,
        d: vec![T::zero(); n * n],
    };
    for i in 0..n {
        for j in 0..n {
            a.d[j * n + i] = T::from_f64(h[i][j]);
        }
    }
    Ok(a)
}

/// Eigenvalues of a real lower-Hessenberg matrix (upper bandwidth 1) in
/// plain double precision.
pub fn hessenberg_eigenvalues(h: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    let mut a = validate_and_transpose::<f64>(h)?;
    if a.n == 0 {
        return Ok(Vec::new());
    }
    balance(&mut a);
    hqr(a)
}

/// Same algorithm carried in double-double arithmetic; use when the
/// eigenvalue condition numbers exceed what f64 can resolve.
pub fn hessenberg_eigenvalues_dd(h: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    let mut a = validate_and_transpose::<Dd>(h)?;
    if a.n == 0 {
        return Ok(Vec::new());
    }
    balance(&mut a);
    hqr(a)
}

/// Parlett-Reinsch balancing: diagonal similarity with powers of two until
/// every row/column pair has comparable 1-norms. Exact in both precisions
/// and can improve non-normal eigenvalue condition by orders of magnitude.
fn balance<T: QrReal>(a: &mut Mat<T>) {
    let n = a.n as isize;
    let radix = T::from_f64(2.0);
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + a[(j, i)].abs();
                    r = r + a[(i, j)].abs();
                }
            }
            if c > T::zero() && r > T::zero() {
                let mut g = r / radix;
                let mut f = T::from_f64(1.0);
                let s = c + r;
                let mut c_var = c;
                while c_var < g {
                    f = f * radix;
                    c_var = c_var * sqrdx;
                }
                g = r * radix;
                while c_var > g {
                    f = f / radix;
                    c_var = c_var / sqrdx;
                }
                if (c_var + r) / f < T::from_f64(0.95) * s {
                    done = false;
                    let g = T::from_f64(1.0) / f;
                    for j in 0..n {
                        a[(i, j)] = a[(i, j)] * g;
                    }
                    for j in 0..n {
                        a[(j, i)] = a[(j, i)] * f;
                    }
                }
            }
        }
    }
}

fn hqr<T: QrReal>(mut a: Mat<T>) -> Result<Vec<Complex64>> {
    let n = a.n as isize;
    let eps = T::eps();
    let zero = T::zero();
    let mut eig: Vec<Complex64> = Vec::with_capacity(a.n);

    let mut anorm = zero;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm = anorm + a[(i, j)].abs();
        }
    }
    if !(anorm > zero) {
        return Ok(vec![Complex64::new(0.0, 0.0); a.n]);
    }

    let mut nn = n - 1;
    let mut t = zero;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            // look for a single small subdiagonal element
            let mut l = nn;
            while l >= 1 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if !(s > zero) {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= eps * s {
                    a[(l, l - 1)] = zero;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nn, nn)];
            if l == nn {
                eig.push(Complex64::new((x + t).to_f64(), 0.0));
                nn -= 1;
                break;
            }
            let mut y = a[(nn - 1, nn - 1)];
            let mut w = a[(nn, nn - 1)] * a[(nn - 1, nn)];
            if l == nn - 1 {
                let p = T::from_f64(0.5) * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x = x + t;
                if q >= zero {
                    let z = p + z.copysign(p);
                    let r1 = x + z;
                    let r2 = if z.to_f64() != 0.0 { x - w / z } else { r1 };
                    eig.push(Complex64::new(r1.to_f64(), 0.0));
                    eig.push(Complex64::new(r2.to_f64(), 0.0));
                } else {
                    eig.push(Complex64::new((x + p).to_f64(), z.to_f64()));
                    eig.push(Complex64::new((x + p).to_f64(), -z.to_f64()));
                }
                nn -= 2;
                break;
            }

            if its == 40 {
                return Err(Error::QrNoConvergence { iterations: its });
            }
            if its == 10 || its == 20 || its == 30 {
                // exceptional shift
                t = t + x;
                for i in 0..=nn {
                    a[(i, i)] = a[(i, i)] - x;
                }
                let s = a[(nn, nn - 1)].abs() + a[(nn - 1, nn - 2)].abs();
                y = T::from_f64(0.75) * s;
                x = y;
                w = T::from_f64(-0.4375) * s * s;
            }
            its += 1;

            // form the shift and find two consecutive small subdiagonals
            let mut m = nn - 2;
            let (mut p, mut q, mut r) = (zero, zero, zero);
            while m >= l {
                let z = a[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - rr - ss;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                if s.to_f64() != 0.0 {
                    p = p / s;
                    q = q / s;
                    r = r / s;
                }
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[(i, i - 2)] = zero;
                if i != m + 2 {
                    a[(i, i - 3)] = zero;
                }
            }

            // double QR step on rows l..=nn and columns m..=nn
            for k in m..nn {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k != nn - 1 { a[(k + 2, k - 1)] } else { zero };
                    x = p.abs() + q.abs() + r.abs();
                    if x.to_f64() != 0.0 {
                        p = p / x;
                        q = q / x;
                        r = r / x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s.to_f64() == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p = p + s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q = q / p;
                r = r / p;
                for j in k..=nn {
                    let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                    if k != nn - 1 {
                        pp = pp + r * a[(k + 2, j)];
                        a[(k + 2, j)] = a[(k + 2, j)] - pp * z;
                    }
                    a[(k + 1, j)] = a[(k + 1, j)] - pp * y;
                    a[(k, j)] = a[(k, j)] - pp * x;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=mmin {
                    let mut pp = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k != nn - 1 {
                        pp = pp + z * a[(i, k + 2)];
                        a[(i, k + 2)] = a[(i, k + 2)] - pp * r;
                    }
                    a[(i, k + 1)] = a[(i, k + 1)] - pp * q;
                    a[(i, k)] = a[(i, k)] - pp;
                }
            }
        }
    }
    eig.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let e = hessenberg_eigenvalues(&[vec![0.4]]).unwrap();
        assert_eq!(e.len(), 1);
        assert!((e[0].re - 0.4).abs() < 1e-15 && e[0].im == 0.0);
    }

    #[test]
    fn two_by_two_against_quadratic_formula() {
        // lower-Hessenberg [[b0, 1], [a1, b1]]: eigenvalues solve
        // (x - b0)(x - b1) - a1 = 0
        let (b0, b1, a1) = (0.5, 0.25, 0.1);
        let e = hessenberg_eigenvalues(&[vec![b0, 1.0], vec![a1, b1]]).unwrap();
        let disc = ((b0 - b1) * (b0 - b1) + 4.0 * a1).sqrt();
        let lo = 0.5 * (b0 + b1 - disc);
        let hi = 0.5 * (b0 + b1 + disc);
        assert!((e[0].re - lo).abs() < 1e-14);
        assert!((e[1].re - hi).abs() < 1e-14);
    }

    #[test]
    fn complex_rotation_pair() {
        let e = hessenberg_eigenvalues(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert!(e[0].re.abs() < 1e-14 && (e[0].im.abs() - 1.0).abs() < 1e-14);
        assert!((e[0].im + e[1].im).abs() < 1e-14);
    }

    #[test]
    fn transposed_companion_matches_known_roots() {
        // transpose of the companion matrix of (x-.2)(x-.5)(x-.9)
        let c0 = -0.2 * 0.5 * 0.9;
        let c1 = 0.2 * 0.5 + 0.2 * 0.9 + 0.5 * 0.9;
        let c2 = -(0.2 + 0.5 + 0.9);
        let m = vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![-c0, -c1, -c2],
        ];
        for eigs in [
            hessenberg_eigenvalues(&m).unwrap(),
            hessenberg_eigenvalues_dd(&m).unwrap(),
        ] {
            for (got, want) in eigs.iter().zip([0.2, 0.5, 0.9]) {
                assert!((got.re - want).abs() < 1e-12, "{got} vs {want}");
                assert!(got.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_wide_band() {
        let m = vec![
            vec![1.0, 2.0, 3.0],
            vec![1.0, 1.0, 1.0],
            vec![0.0, 1.0, 1.0],
        ];
        assert!(hessenberg_eigenvalues(&m).is_err());
    }
}
