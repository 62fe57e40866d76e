//! Special-function kernels: Gamma, digamma, Pochhammer symbols, Gauss'
//! 2F1 on [0,1), terminating generalized hypergeometric sums, and the
//! entire 0F2 with its positive zeros.
//!
//! The 2F1 evaluator sums the defining series for arguments up to 1/2 and
//! switches to the z -> 1-z connection formulas above that, including the
//! logarithmic expansions when the exponent difference is an integer.


use crate::error::{Error, Result};
use crate::numcore::poly::Poly;
use crate::numcore::scalar::Scalar;

/// Stop summing once two consecutive terms fall below this times the
/// partial sum; a single small term may just be a zero crossing.
const SERIES_EPS: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 2_000_000;

// Lanczos coefficients, g = 7, n = 9 (GSL set). Relative error ~1e-14
// over the positive real axis.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(pi x) with argument reduction: exact subtraction of the nearest
/// integer keeps full relative accuracy near the zeros, where the naive
/// `(PI * x).sin()` loses seven digits.
pub fn sinpi(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let s = (std::f64::consts::PI * f).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn cospi(x: f64) -> f64 {
    let n = x.round();
    let f = x - n;
    let c = (std::f64::consts::PI * f).cos();
    if (n as i64) % 2 == 0 {
        c
    } else {
        -c
    }
}

/// Natural log of Gamma for positive argument.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires positive argument, got {x}");
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        return (std::f64::consts::PI / sinpi(x)).ln() - ln_gamma(1.0 - x);
    }
    let xx = x - 1.0;
    let mut t = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        t += c / (xx + i as f64);
    }
    let w = xx + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (xx + 0.5) * w.ln() - w + t.ln()
}

/// Gamma on the real line; NaN at the poles (non-positive integers).
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        if x > 171.6 {
            return f64::INFINITY;
        }
        return ln_gamma(x).exp();
    }
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    std::f64::consts::PI / (sinpi(x) * gamma(1.0 - x))
}

/// 1/Gamma, entire: returns 0 at the poles of Gamma.
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    let g = gamma(x);
    if g.is_finite() {
        1.0 / g
    } else {
        0.0
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 1e-12 && (x - x.round()).abs() < 1e-12
}

/// Digamma (logarithmic derivative of Gamma).
pub fn digamma(x: f64) -> f64 {
    if x <= 0.0 {
        if is_nonpositive_integer(x) {
            return f64::NAN;
        }
        let pi = std::f64::consts::PI;
        return digamma(1.0 - x) - pi * cospi(x) / sinpi(x);
    }
    let mut value = 0.0;
    let mut y = x;
    while y < 10.0 {
        value -= 1.0 / y;
        y += 1.0;
    }
    // asymptotic series with Bernoulli coefficients
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    value += y.ln() - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                + inv2
                    * (-1.0 / 120.0
                        + inv2
                            * (1.0 / 252.0
                                + inv2
                                    * (-1.0 / 240.0
                                        + inv2
                                            * (1.0 / 132.0
                                                + inv2 * (-691.0 / 32760.0))))));
    value
}

/// Rising factorial (z)_n = z (z+1) ... (z+n-1); exact on the rational
/// backend, (z)_0 = 1.
pub fn pochhammer<T: Scalar>(z: &T, n: usize) -> T {
    let mut acc = T::one();
    let mut factor = z.clone();
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

/// log |(z)_n| for z > 0 via Gamma ratios, safe for large shifts.
pub fn ln_pochhammer(z: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    ln_gamma(z + n as f64) - ln_gamma(z)
}

/// Parameters of a generalized hypergeometric series.
#[derive(Debug, Clone)]
pub struct HypParams {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl HypParams {
    /// Rejects denominator parameters at the poles (non-positive integers).
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>) -> Result<Self> {
        for &d in &denominator {
            if is_nonpositive_integer(d) {
                return Err(Error::Domain(format!(
                    "denominator parameter {d} is a non-positive integer"
                )));
            }
        }
        Ok(HypParams {
            numerator,
            denominator,
        })
    }
}

fn nonpositive_int_as_usize(x: f64) -> Option<usize> {
    if x <= 1e-12 && (x - x.round()).abs() < 1e-12 {
        Some((-x.round()) as usize)
    } else {
        None
    }
}

/// Plain series sum of 2F1 at |z| < 1; caller ensures sensible arguments.
fn series_2f1(alpha: f64, beta: f64, gamma_p: f64, z: f64) -> Result<f64> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut small = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (alpha + kf) * (beta + kf) / ((gamma_p + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.abs() <= SERIES_EPS * sum.abs().max(1e-300) {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence {
        what: "2F1 series",
        iterations: SERIES_MAX_TERMS,
        best: sum,
    })
}

/// Terminating 2F1 with alpha = -n; valid for any argument.
fn terminating_2f1(n: usize, beta: f64, gamma_p: f64, z: f64) -> f64 {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..n {
        let kf = k as f64;
        term *= (-(n as f64) + kf) * (beta + kf) / ((gamma_p + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    sum
}

/// A&S 15.3.10: exponent difference zero, in powers of w = 1-z.
fn log_case_m0(alpha: f64, beta: f64, w: f64) -> f64 {
    let lnw = w.ln();
    let mut coeff = 1.0f64; // (alpha)_n (beta)_n / (n!)^2
    let mut sum = 0.0f64;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        let bracket =
            2.0 * digamma(nf + 1.0) - digamma(alpha + nf) - digamma(beta + nf) - lnw;
        let term = coeff * bracket;
        sum += term;
        if n > 2 && term.abs() <= SERIES_EPS * sum.abs().max(1e-300) {
            break;
        }
        coeff *= (alpha + nf) * (beta + nf) / ((nf + 1.0) * (nf + 1.0)) * w;
    }
    gamma(alpha + beta) * recip_gamma(alpha) * recip_gamma(beta) * sum
}

/// A&S 15.3.11: positive integer exponent difference m, in powers of w = 1-z.
fn log_case_m_pos(alpha: f64, beta: f64, m: usize, w: f64) -> f64 {
    let mf = m as f64;
    let gam_c = gamma(alpha + beta + mf);

    // finite prefix
    let mut prefix = 0.0f64;
    let mut coeff = 1.0f64; // (alpha)_n (beta)_n / (n! (1-m)_n)
    for n in 0..m {
        prefix += coeff;
        let nf = n as f64;
        if n + 1 < m {
            coeff *= (alpha + nf) * (beta + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
        }
    }
    let first =
        gamma(mf) * gam_c * recip_gamma(alpha + mf) * recip_gamma(beta + mf) * prefix;

    // infinite logarithmic part
    let lnw = w.ln();
    let mut sum = 0.0f64;
    // (alpha+m)_n (beta+m)_n / (n! (n+m)!) with (m)! folded in at n = 0
    let mut coeff = recip_gamma(mf + 1.0);
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        let bracket = lnw - digamma(nf + 1.0) - digamma(nf + mf + 1.0)
            + digamma(alpha + mf + nf)
            + digamma(beta + mf + nf);
        let term = coeff * bracket;
        sum += term;
        if n > 2 && term.abs() <= SERIES_EPS * sum.abs().max(1e-300) {
            break;
        }
        coeff *= (alpha + mf + nf) * (beta + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let second = sign * gam_c * recip_gamma(alpha) * recip_gamma(beta) * w.powi(m as i32) * sum;

    first - second
}

/// Two-term connection formula for non-integer exponent difference s.
fn connection_generic(alpha: f64, beta: f64, gamma_p: f64, s: f64, w: f64) -> Result<f64> {
    let t1 = gamma(gamma_p) * gamma(s) * recip_gamma(gamma_p - alpha) * recip_gamma(gamma_p - beta);
    let t2 = gamma(gamma_p) * gamma(-s) * recip_gamma(alpha) * recip_gamma(beta);
    let f1 = series_2f1(alpha, beta, 1.0 - s, w)?;
    let f2 = series_2f1(gamma_p - alpha, gamma_p - beta, 1.0 + s, w)?;
    Ok(t1 * f1 + w.powf(s) * t2 * f2)
}

/// Gauss hypergeometric function for real parameters and z in [0, 1).
///
/// Direct series for z <= 1/2; z -> 1-z connection above, with the
/// logarithmic expansion when gamma - alpha - beta is an exact integer and
/// a Richardson-extrapolated parameter perturbation when it is merely close
/// to one.
pub fn gauss_2f1(alpha: f64, beta: f64, gamma_p: f64, z: f64) -> Result<f64> {
    gauss_2f1_wc(alpha, beta, gamma_p, z, 1.0 - z)
}

/// [`gauss_2f1`] with the complement 1 - z supplied exactly by the caller.
///
/// The connection-formula expansions run in powers of the complement, so an
/// exact `zc` keeps full relative accuracy for arguments arbitrarily close
/// to 1 (where `1.0 - z` would round to zero).
pub fn gauss_2f1_wc(alpha: f64, beta: f64, gamma_p: f64, z: f64, zc: f64) -> Result<f64> {
    if is_nonpositive_integer(gamma_p) {
        return Err(Error::Domain(format!(
            "2F1 denominator parameter {gamma_p} is a non-positive integer"
        )));
    }
    if z < 0.0 || zc <= 0.0 {
        return Err(Error::Domain(format!("2F1 argument {z} outside [0, 1)")));
    }
    // terminating cases are polynomials, valid everywhere
    if let Some(n) = nonpositive_int_as_usize(alpha) {
        return Ok(terminating_2f1(n, beta, gamma_p, z));
    }
    if let Some(n) = nonpositive_int_as_usize(beta) {
        return Ok(terminating_2f1(n, alpha, gamma_p, z));
    }
    if z <= 0.5 {
        return series_2f1(alpha, beta, gamma_p, z);
    }

    let w = zc;
    let s = gamma_p - alpha - beta;
    let m = s.round();
    if (s - m).abs() < 1e-12 {
        // exact integer exponent difference: logarithmic expansion
        if m >= 0.0 {
            return Ok(if m == 0.0 {
                log_case_m0(alpha, beta, w)
            } else {
                log_case_m_pos(alpha, beta, m as usize, w)
            });
        }
        // negative integer: Euler transform flips the sign of s
        let inner = gauss_2f1_wc(gamma_p - alpha, gamma_p - beta, gamma_p, z, zc)?;
        return Ok(w.powf(s) * inner);
    }
    if (s - m).abs() < 1e-6 {
        // near-integer: evaluate at two parameter perturbations pushed away
        // from the pole and Richardson-extrapolate back
        let dir = if s >= m { 1.0 } else { -1.0 };
        let eps = 5e-6 * dir;
        let f1 = connection_generic(alpha, beta, gamma_p + eps, s + eps, w)?;
        let f2 = connection_generic(alpha, beta, gamma_p + 2.0 * eps, s + 2.0 * eps, w)?;
        return Ok(2.0 * f1 - f2);
    }
    connection_generic(alpha, beta, gamma_p, s, w)
}

/// k-th derivative of z -> 2F1(alpha, beta; gamma; z), by the parameter
/// raising rule d/dz 2F1 = (alpha beta / gamma) 2F1(alpha+1, beta+1; gamma+1).
pub fn gauss_2f1_deriv(alpha: f64, beta: f64, gamma_p: f64, z: f64, k: usize) -> Result<f64> {
    gauss_2f1_deriv_wc(alpha, beta, gamma_p, z, 1.0 - z, k)
}

/// [`gauss_2f1_deriv`] with an exact complement, see [`gauss_2f1_wc`].
pub fn gauss_2f1_deriv_wc(
    alpha: f64,
    beta: f64,
    gamma_p: f64,
    z: f64,
    zc: f64,
    k: usize,
) -> Result<f64> {
    let kf = k as f64;
    let mut pre = 1.0;
    for i in 0..k {
        let i = i as f64;
        pre *= (alpha + i) * (beta + i) / (gamma_p + i);
    }
    Ok(pre * gauss_2f1_wc(alpha + kf, beta + kf, gamma_p + kf, z, zc)?)
}

/// Terminating pFq: the upper parameter -n is implicit, `upper` and `lower`
/// hold the remaining parameters. Exact on the rational backend.
///
/// sum_{i=0..n} (-n)_i prod (upper)_i / (prod (lower)_i i!) z^i
pub fn terminating_pfq<T: Scalar>(upper: &[T], lower: &[T], n: usize, z: &T) -> Result<T> {
    let poly = terminating_pfq_poly(upper, lower, n)?;
    Ok(poly.eval(z))
}

/// Coefficient vector (in z) of the terminating pFq above.
pub fn terminating_pfq_poly<T: Scalar>(upper: &[T], lower: &[T], n: usize) -> Result<Poly<T>> {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut term = T::one();
    coeffs.push(term.clone());
    for i in 0..n {
        let fi = T::from_int(i as i64);
        let mut num = T::from_int(-(n as i64)) + fi.clone();
        for u in upper {
            num = num * (u.clone() + fi.clone());
        }
        let mut den = fi.clone() + T::one();
        for l in lower {
            let factor = l.clone() + fi.clone();
            if factor.is_zero() {
                return Err(Error::Domain(format!(
                    "terminating pFq: denominator parameter {l} hits zero at term {}",
                    i + 1
                )));
            }
            den = den * factor;
        }
        term = term * num * (T::one() / den);
        coeffs.push(term.clone());
    }
    Ok(Poly::new(coeffs))
}

/// The entire function 0F2(-; a, b; z), summed to full precision.
pub fn entire_0f2(a: f64, b: f64, z: f64) -> f64 {
    assert!(
        !is_nonpositive_integer(a) && !is_nonpositive_integer(b),
        "0F2 denominator parameters must avoid non-positive integers"
    );
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation against cancellation
    let mut small = 0;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        term *= z / ((a + nf) * (b + nf) * (nf + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= SERIES_EPS * sum.abs().max(1e-300) {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}

/// First `count` positive zeros of z -> 0F2(-; a, b; -z), ascending.
///
/// The zeros are asymptotically equally spaced in u = z^(1/3), so the scan
/// walks u with a step far below that spacing, brackets each sign change and
/// refines by bisection plus a Newton step.
pub fn smallest_zeros_0f2(a: f64, b: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain("count must be >= 1".into()));
    }
    let f = |z: f64| entire_0f2(a, b, -z);
    let df = |z: f64| -entire_0f2(a + 1.0, b + 1.0, -z) / (a * b);

    let u_max = 8.0 + 3.0 * (count as f64 + 2.0);
    let du = 0.005;
    let mut zeros = Vec::with_capacity(count);
    let mut u = du;
    let mut prev_u = 0.0f64;
    let mut prev_f = f(0.0); // = 1
    while u <= u_max && zeros.len() < count {
        let z = u * u * u;
        let fz = f(z);
        if prev_f.signum() != fz.signum() && fz != 0.0 {
            // bisection bracket in z
            let (mut lo, mut hi) = (prev_u.powi(3), z);
            let mut flo = prev_f;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-14 * hi {
                    break;
                }
            }
            let mut root = 0.5 * (lo + hi);
            for _ in 0..3 {
                let d = df(root);
                if d != 0.0 {
                    let step = f(root) / d;
                    if step.is_finite() && step.abs() < 1.0 {
                        root -= step;
                    }
                }
            }
            zeros.push(root);
        }
        prev_u = u;
        prev_f = fz;
        u += du;
    }
    if zeros.len() < count {
        return Err(Error::BracketSearchExhausted {
            scanned_to: u_max.powi(3),
            found: zeros.len(),
        });
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::scalar::{approx_eq, rat, rint, Rat};

    #[test]
    fn gamma_basics() {
        assert!(approx_eq(gamma(1.0), 1.0, 1e-14));
        assert!(approx_eq(gamma(5.0), 24.0, 1e-14));
        assert!(approx_eq(gamma(0.5), std::f64::consts::PI.sqrt(), 1e-13));
        assert!(gamma(-1.0).is_nan());
        assert_eq!(recip_gamma(-3.0), 0.0);
        // ln gamma stays accurate for large shifted parameters
        assert!(approx_eq(ln_gamma(500.0), 2605.115_850_361_733_9, 1e-13));
    }

    #[test]
    fn digamma_against_known_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!(approx_eq(digamma(1.0), -euler, 1e-13));
        assert!(approx_eq(digamma(2.0), 1.0 - euler, 1e-13));
        assert!(approx_eq(
            digamma(0.5),
            -euler - 2.0 * std::f64::consts::LN_2,
            1e-13
        ));
    }

    #[test]
    fn pochhammer_cases() {
        // (z)_0 = 1 for any z
        assert_eq!(pochhammer(&rat(7, 3), 0), rint(1));
        // (1)_n = n!
        assert_eq!(pochhammer(&rint(1), 5), rint(120));
        // (1/2)_3 = 15/8 by hand
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert!(approx_eq(pochhammer(&0.5f64, 3), 15.0 / 8.0, 1e-15));
    }

    #[test]
    fn gauss_2f1_at_zero_is_one() {
        assert_eq!(gauss_2f1(0.3, 1.7, 2.2, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn gauss_2f1_log_closed_form() {
        // 2F1(1,1;2;z) = -ln(1-z)/z; at z = 1/2 this is 2 ln 2
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!(approx_eq(v, 2.0 * std::f64::consts::LN_2, 1e-14), "{v}");
        // and past the series/connection switch
        let z = 0.8;
        let v = gauss_2f1(1.0, 1.0, 2.0, z).unwrap();
        assert!(approx_eq(v, -(1.0 - z).ln() / z, 1e-13), "{v}");
    }

    #[test]
    fn gauss_2f1_limit_at_one() {
        // 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)) for c-a-b > 0
        let (a, b, c) = (0.4, 0.7, 3.6);
        let want = gamma(c) * gamma(c - a - b) * recip_gamma(c - a) * recip_gamma(c - b);
        let got = gauss_2f1(a, b, c, 1.0 - 1e-10).unwrap();
        assert!(approx_eq(got, want, 1e-9), "{got} vs {want}");
    }

    #[test]
    fn connection_agrees_with_series_noninteger() {
        // both routes valid for z slightly above 1/2
        for &(a, b, c) in &[(0.3, 1.1, 2.07), (1.4, 0.9, 3.33), (0.25, 0.35, 1.9)] {
            for &z in &[0.55, 0.65, 0.75] {
                let direct = series_2f1(a, b, c, z).unwrap();
                let conn = gauss_2f1(a, b, c, z).unwrap();
                assert!(approx_eq(direct, conn, 1e-12), "({a},{b},{c},{z}): {direct} vs {conn}");
            }
        }
    }

    #[test]
    fn connection_agrees_with_series_integer_cases() {
        // exponent difference m = 0, 1, 2, 3: logarithmic expansions
        for m in 0..4 {
            let (a, b) = (0.45, 1.3);
            let c = a + b + m as f64;
            for &z in &[0.55, 0.7, 0.85] {
                let direct = series_2f1(a, b, c, z).unwrap();
                let log_form = gauss_2f1(a, b, c, z).unwrap();
                assert!(
                    approx_eq(direct, log_form, 1e-12),
                    "m={m}, z={z}: {direct} vs {log_form}"
                );
            }
        }
    }

    #[test]
    fn near_integer_perturbation_path() {
        // exponent difference 1 + 1e-9 forces the Richardson branch
        let (a, b) = (0.45, 1.3);
        let c = a + b + 1.0 + 1e-9;
        let direct = series_2f1(a, b, c, 0.6).unwrap();
        let got = gauss_2f1(a, b, c, 0.6).unwrap();
        assert!(approx_eq(direct, got, 1e-7), "{direct} vs {got}");
    }

    #[test]
    fn negative_integer_exponent_difference() {
        let (a, b) = (1.45, 2.3);
        let c = a + b - 2.0; // s = -2
        let direct = series_2f1(a, b, c, 0.7).unwrap();
        let got = gauss_2f1(a, b, c, 0.7).unwrap();
        assert!(approx_eq(direct, got, 1e-11), "{direct} vs {got}");
    }

    #[test]
    fn euler_transformation_symmetry() {
        // 2F1(c-b, d-b; delta; 1-x) = x^{b-a} 2F1(d-a, c-a; delta; 1-x)
        let (a, b, c, d) = (1.0, 2.0, 3.0, 4.0);
        let delta = c + d - a - b;
        for &x in &[0.12, 0.37, 0.58, 0.9] {
            let lhs = gauss_2f1(c - b, d - b, delta, 1.0 - x).unwrap();
            let rhs = x.powf(b - a) * gauss_2f1(d - a, c - a, delta, 1.0 - x).unwrap();
            assert!(approx_eq(lhs, rhs, 1e-12), "x={x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn contiguous_relations_from_pearson_proof() {
        // alpha F(alpha+1; gamma+1) = gamma F - (gamma - alpha) F(gamma+1)
        // ((gamma-alpha)/gamma) w F(gamma+1) = F(beta-1) - (1-w) F
        let cases = [
            (1.2, 2.3, 4.1, 0.3),
            (0.7, 1.9, 3.5, 0.45),
            (2.0, 2.0, 4.5, 0.2),
        ];
        for (alpha, beta, gam, w) in cases {
            let f = gauss_2f1(alpha, beta, gam, w).unwrap();
            let f_g1 = gauss_2f1(alpha, beta, gam + 1.0, w).unwrap();
            let f_a1_g1 = gauss_2f1(alpha + 1.0, beta, gam + 1.0, w).unwrap();
            let f_bm1 = gauss_2f1(alpha, beta - 1.0, gam, w).unwrap();
            let r1 = alpha * f_a1_g1 - (gam * f - (gam - alpha) * f_g1);
            assert!(r1.abs() < 1e-12 * f.abs().max(1.0), "relation 1: {r1}");
            let r2 = (gam - alpha) / gam * w * f_g1 - (f_bm1 - (1.0 - w) * f);
            assert!(r2.abs() < 1e-12 * f.abs().max(1.0), "relation 2: {r2}");
        }
    }

    #[test]
    fn terminating_pfq_small_cases() {
        // n = 0: empty product
        let one: Rat = terminating_pfq::<Rat>(&[rint(3)], &[rint(2)], 0, &rat(1, 2)).unwrap();
        assert_eq!(one, rint(1));
        // 2F2 with n = 1: 1 - c z / (a b)
        let (a, b, c) = (rint(2), rint(5), rint(3));
        let z = rat(1, 4);
        let got = terminating_pfq(&[c.clone()], &[a.clone(), b.clone()], 1, &z).unwrap();
        let want = rint(1) - c * z / (a * b);
        assert_eq!(got, want);
    }

    #[test]
    fn terminating_pfq_rational_matches_float() {
        let upper = [rat(7, 2), rat(9, 4)];
        let lower = [rat(4, 3), rat(5, 3)];
        let exact = terminating_pfq(&upper, &lower, 6, &rat(3, 7)).unwrap();
        let fupper: Vec<f64> = upper.iter().map(Scalar::to_f64).collect();
        let flower: Vec<f64> = lower.iter().map(Scalar::to_f64).collect();
        let float = terminating_pfq(&fupper, &flower, 6, &(3.0 / 7.0)).unwrap();
        assert!(approx_eq(exact.to_f64(), float, 1e-12));
    }

    #[test]
    fn pfq_denominator_hit_reported() {
        // lower parameter -2 is reached at term 3
        let err = terminating_pfq_poly::<Rat>(&[rint(1)], &[rint(-2)], 5, );
        assert!(err.is_err());
    }

    #[test]
    fn entire_0f2_series_values() {
        assert_eq!(entire_0f2(1.3, 2.7, 0.0), 1.0);
        // (1)_n (1)_n n! = (n!)^3: 1 + z + z^2/8 + z^3/216
        let z = 0.37f64;
        let want = 1.0 + z + z * z / 8.0 + z * z * z / 216.0 + z.powi(4) / 13824.0
            + z.powi(5) / 1_728_000.0;
        assert!(approx_eq(entire_0f2(1.0, 1.0, z), want, 1e-9));
    }

    #[test]
    fn entire_0f2_changes_sign() {
        // 0F2(-; 4/3, 5/3; -z) starts at 1 and must cross zero
        let f = |z: f64| entire_0f2(4.0 / 3.0, 5.0 / 3.0, -z);
        assert!(f(0.0) > 0.0);
        let mut crossed = false;
        let mut z = 0.5;
        while z < 200.0 {
            if f(z) < 0.0 {
                crossed = true;
                break;
            }
            z += 0.5;
        }
        assert!(crossed, "no sign change found on (0, 200)");
    }

    #[test]
    fn smallest_zeros_validate_and_order() {
        let zeros = smallest_zeros_0f2(4.0 / 3.0, 5.0 / 3.0, 3).unwrap();
        assert_eq!(zeros.len(), 3);
        for w in zeros.windows(2) {
            assert!(w[0] < w[1], "zeros not increasing: {zeros:?}");
        }
        for &z in &zeros {
            let v = entire_0f2(4.0 / 3.0, 5.0 / 3.0, -z);
            assert!(v.abs() < 1e-10, "0F2 at claimed zero {z}: {v}");
        }
    }

    #[test]
    fn first_zero_against_dense_scan() {
        // brute-force sign scan at step 1e-4 brackets the first zero
        let (a, b) = (4.0 / 3.0, 5.0 / 3.0);
        let f = |z: f64| entire_0f2(a, b, -z);
        let lo;
        let mut prev = f(0.0);
        let mut z = 1e-4;
        loop {
            let v = f(z);
            if prev.signum() != v.signum() {
                lo = z - 1e-4;
                break;
            }
            prev = v;
            z += 1e-4;
            assert!(z < 1e3, "scan exhausted");
        }
        let refined = smallest_zeros_0f2(a, b, 1).unwrap()[0];
        assert!(
            refined > lo && refined < lo + 2e-4,
            "refined {refined} not inside brute bracket [{lo}, {}]",
            lo + 2e-4
        );
    }

    #[test]
    fn hyp_params_validation() {
        assert!(HypParams::new(vec![1.0], vec![0.5, 2.0]).is_ok());
        assert!(HypParams::new(vec![1.0], vec![-3.0]).is_err());
    }
}
