//! Type I polynomial pairs (A_n, B_n) and functions Q_n = A_n w0 + B_n w1
//! on the step line: generation by the rising operator, exact
//! orthogonality and normalization via moments, the Rodrigues formula as a
//! float cross-check, and the derivative relation between shifted families.
//!
//! The pair is generated by pure polynomial algebra on exact rationals:
//! (A_{n+1}, B_{n+1}) at (a,b;c,d) comes from (A_n, B_n) at the shifted
//! quadruple (a+1, b+1; d+1, c+2) through
//!
//!   A_{n+1} = c(c+1)d/(n a b) [ -(b A + x A')/(c-b)
//!                               + (d+1) x (d B + x B')/((b+1)(d-a)) ]
//!   B_{n+1} = (c+1)d/(n a)    [ (c A + x A')/(c-b)
//!                               - (d+1)(a B + x B')/((b+1)(d-a)) ]
//!
//! which is the operator the matrix Pearson system induces. The recursion
//! preserves the normalization int x^n Q_{n+1} dx = 1 exactly.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numcore::poly::Poly;
use crate::numcore::scalar::{rint, Rat, Scalar};
use crate::weights::{moment, weight_deriv_any, weight_deriv_raw, Params};

/// Type I pair for the index of length n, tagged with its parameters.
///
/// deg A_n = floor((n-1)/2) and deg B_n = floor(n/2) - 1 exactly (B_1 is
/// the zero polynomial, degree -1).
#[derive(Debug, Clone)]
pub struct TypeIPair {
    pub n: usize,
    pub params: Params,
    pub a_poly: Poly<Rat>,
    pub b_poly: Poly<Rat>,
}

fn rising_step(
    q: &Params,
    k: usize,
    a_in: &Poly<Rat>,
    b_in: &Poly<Rat>,
) -> (Poly<Rat>, Poly<Rat>) {
    let (a, b, c, d) = (q.a().clone(), q.b().clone(), q.c().clone(), q.d().clone());
    let one = Rat::one();
    let x: Poly<Rat> = Poly::x();
    let da = a_in.derivative();
    let db = b_in.derivative();
    let ba_xda = &a_in.scale(&b) + &(&x * &da);
    let db_xdb = &b_in.scale(&d) + &(&x * &db);
    let ca_xda = &a_in.scale(&c) + &(&x * &da);
    let ab_xdb = &b_in.scale(&a) + &(&x * &db);

    let inv_cb = one.clone() / (c.clone() - b.clone());
    let d1_factor = (d.clone() + one.clone())
        / ((b.clone() + one.clone()) * (d.clone() - a.clone()));
    let nf = rint(k as i64);

    let a_pref = c.clone() * (c.clone() + one.clone()) * d.clone()
        / (nf.clone() * a.clone() * b.clone());
    let a_next = (&(&x * &db_xdb).scale(&d1_factor) - &ba_xda.scale(&inv_cb)).scale(&a_pref);

    let b_pref = (c.clone() + one) * d / (nf * a);
    let b_next = (&ca_xda.scale(&inv_cb) - &ab_xdb.scale(&d1_factor)).scale(&b_pref);
    (a_next, b_next)
}

/// The pair (A_n, B_n) for n >= 1 by the rising-operator recursion from
/// (A_1, B_1) = (1, 0), exact. Every intermediate shifted quadruple is
/// validated; a failure names the stage.
pub fn typei_pair(p: &Params, n: usize) -> Result<TypeIPair> {
    if n == 0 {
        return Err(Error::Domain("type I pairs start at n = 1".into()));
    }
    let mut ladder = vec![p.clone()];
    for stage in 1..n {
        let next = ladder[stage - 1].shifted_pearson().map_err(|e| {
            Error::InvalidParams(format!(
                "type I recursion stage {stage} has invalid shifted parameters: {e}"
            ))
        })?;
        ladder.push(next);
    }
    let mut a_poly = Poly::one();
    let mut b_poly = Poly::zero();
    for k in 1..n {
        let q = &ladder[n - 1 - k];
        let (an, bn) = rising_step(q, k, &a_poly, &b_poly);
        a_poly = an;
        b_poly = bn;
    }
    Ok(TypeIPair {
        n,
        params: p.clone(),
        a_poly,
        b_poly,
    })
}

/// Exact moment pairing of x^k with Q_n = A_n w0 + B_n w1.
fn pairing(p: &Params, pair: &TypeIPair, k: usize) -> Rat {
    let mut acc = Rat::zero();
    for (i, ci) in pair.a_poly.coeffs().iter().enumerate() {
        acc = acc + ci.clone() * moment(p, k + i, 0);
    }
    for (i, ci) in pair.b_poly.coeffs().iter().enumerate() {
        acc = acc + ci.clone() * moment(p, k + i, 1);
    }
    acc
}

/// Exact type I conditions: int x^k Q_n = 0 for k <= n-2, and the
/// normalization int x^(n-1) Q_n (returned; the recursion preserves 1).
/// The first nonzero low pairing is reported with (k, value).
pub fn typei_orthogonality_check(p: &Params, n: usize) -> Result<Rat> {
    let pair = typei_pair(p, n)?;
    for k in 0..n.saturating_sub(1) {
        let v = pairing(p, &pair, k);
        if !v.is_zero() {
            return Err(Error::CheckFailed(format!(
                "type I pairing at k = {k} is {v}, expected 0 (n = {n})"
            )));
        }
    }
    Ok(pairing(p, &pair, n - 1))
}

/// Degree sharpness of the pair: deg A_n = floor((n-1)/2) and
/// deg B_n = floor(n/2) - 1, with nonzero leading coefficients.
pub fn typei_degree_check(p: &Params, n: usize) -> Result<()> {
    let pair = typei_pair(p, n)?;
    let want_a = ((n as i64) - 1).div_euclid(2);
    let want_b = (n as i64).div_euclid(2) - 1;
    if pair.a_poly.degree() != want_a {
        return Err(Error::CheckFailed(format!(
            "deg A_{n} = {}, expected {want_a}",
            pair.a_poly.degree()
        )));
    }
    if pair.b_poly.degree() != want_b {
        return Err(Error::CheckFailed(format!(
            "deg B_{n} = {}, expected {want_b}",
            pair.b_poly.degree()
        )));
    }
    Ok(())
}

/// Pointwise type I function Q_n(x) = A_n(x) w0(x) + B_n(x) w1(x).
pub fn typei_function_eval(p: &Params, n: usize, x: f64) -> Result<f64> {
    let pair = typei_pair(p, n)?;
    typei_function_eval_pair(p, &pair, x)
}

/// Same with a precomputed pair (callers evaluating on a grid).
pub fn typei_function_eval_pair(p: &Params, pair: &TypeIPair, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (0,1)")));
    }
    let w0 = weight_deriv_any(p, x, 0, 0)?;
    let w1 = weight_deriv_any(p, x, 1, 0)?;
    Ok(pair.a_poly.eval_f64(x) * w0 + pair.b_poly.eval_f64(x) * w1)
}

/// Rodrigues route: Q_{n+1}(x) = ((-1)^n / n!) D^n W(x; a+n, b+n;
/// c + floor((n+1)/2) + n, d + floor(n/2) + n), with the derivative taken
/// by the trinomial Leibniz rule. Returns the value and a cancellation
/// error estimate (the Leibniz terms alternate; near the endpoints they
/// nearly cancel).
pub fn rodrigues_eval(p: &Params, n: usize, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (0,1)")));
    }
    if n > 6 {
        return Err(Error::Domain(
            "rodrigues_eval supports n <= 6 (Leibniz expansion cost)".into(),
        ));
    }
    let nf = n as f64;
    let a = p.a_f64() + nf;
    let b = p.b_f64() + nf;
    let c = p.c_f64() + ((n + 1) / 2) as f64 + nf;
    let d = p.d_f64() + (n / 2) as f64 + nf;
    let deriv = weight_deriv_raw(a, b, c, d, x, 1.0 - x, n)?;
    let mut factorial = 1.0;
    for k in 1..=n {
        factorial *= k as f64;
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let value = sign / factorial * deriv;
    // cancellation estimate: the n-th derivative of a weight of unit mass
    // has scale ~ n! / min(x, 1-x)^n near the endpoints
    let endpoint = x.min(1.0 - x);
    let term_scale = factorial / endpoint.powi(n as i32);
    let err_est = 1e-15 * term_scale / factorial;
    Ok((value, err_est))
}

/// Residual of the derivative relation
/// D Q_n(x; a+1,b+1; d+1,c+2) = -n Q_{n+1}(x; a,b; c,d),
/// with the left side assembled from analytic weight derivatives.
/// Returns (residual, scale).
pub fn typei_derivative_relation_residual(p: &Params, n: usize, x: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Domain("derivative relation needs n >= 1".into()));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (0,1)")));
    }
    let shifted = p.shifted_pearson()?;
    let pair_s = typei_pair(&shifted, n)?;
    let w0 = weight_deriv_any(&shifted, x, 0, 0)?;
    let w1 = weight_deriv_any(&shifted, x, 1, 0)?;
    let dw0 = weight_deriv_any(&shifted, x, 0, 1)?;
    let dw1 = weight_deriv_any(&shifted, x, 1, 1)?;
    let a_val = pair_s.a_poly.eval_f64(x);
    let b_val = pair_s.b_poly.eval_f64(x);
    let da_val = pair_s.a_poly.derivative().eval_f64(x);
    let db_val = pair_s.b_poly.derivative().eval_f64(x);
    let lhs = da_val * w0 + a_val * dw0 + db_val * w1 + b_val * dw1;
    let rhs = -(n as f64) * typei_function_eval(p, n + 1, x)?;
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    Ok((lhs - rhs, scale))
}

/// Number of sign changes of Q_n on (0,1): 2000-point grid with bisection
/// refinement; crossings closer than 1e-9 collapse to one.
pub fn sign_changes(p: &Params, n: usize) -> Result<usize> {
    let pair = typei_pair(p, n)?;
    let m = 2000usize;
    let mut crossings: Vec<f64> = Vec::new();
    let mut prev_x = 1.0 / (m as f64 + 1.0);
    let mut prev_f = typei_function_eval_pair(p, &pair, prev_x)?;
    for i in 2..=m {
        let x = i as f64 / (m as f64 + 1.0);
        let f = typei_function_eval_pair(p, &pair, x)?;
        if prev_f != 0.0 && f != 0.0 && prev_f.signum() != f.signum() {
            let (mut lo, mut hi, mut flo) = (prev_x, x, prev_f);
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                let fm = typei_function_eval_pair(p, &pair, mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            crossings.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = f;
    }
    crossings.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(crossings.len())
}
