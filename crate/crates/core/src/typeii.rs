//! Type II (2-orthogonal) polynomials on the step line: the explicit
//! terminating-3F2 construction, the third-order recurrence and its
//! branched-continued-fraction coefficients, the banded Hessenberg matrix
//! and its bidiagonal factorization, zeros with two independent oracles,
//! and the differential, orthogonality, special-case and confluence checks.
//!
//! Everything algebraic runs on exact rationals; only zero finding and the
//! large-degree evaluation helpers go through floats.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hyperfun::{pochhammer, terminating_pfq_poly};
use crate::numcore::eig::hessenberg_eigenvalues_dd;
use crate::numcore::poly::Poly;
use crate::numcore::roots::{compensated_eval_dd, newton_polish_dd, poly_roots_dd};
use crate::numcore::scalar::{rat, rint, Rat, Scalar};
use crate::weights::{moment, Params};

fn floor_half(n: i64) -> i64 {
    n.div_euclid(2)
}

fn binom(n: usize, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * rint((n - i) as i64) / rint((i + 1) as i64);
    }
    acc
}

fn rat_pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

// ---------------------------------------------------------------------------
// explicit construction
// ---------------------------------------------------------------------------

/// Coefficient tau_{n,j} of x^(n-j) in the monic polynomial P_n:
/// binom(n,j) (-1)^j (a+n-j)_j (b+n-j)_j /
/// ((c+floor(n/2)+n-j)_j (d+floor((n-1)/2)+n-j)_j).
fn tau(p: &Params, n: usize, j: usize) -> Rat {
    let c1 = p.c().clone() + rint(floor_half(n as i64));
    let d1 = p.d().clone() + rint(floor_half(n as i64 - 1));
    let nj = rint((n - j) as i64);
    let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
    sign * binom(n, j)
        * pochhammer(&(p.a().clone() + nj.clone()), j)
        * pochhammer(&(p.b().clone() + nj.clone()), j)
        / (pochhammer(&(c1 + nj.clone()), j) * pochhammer(&(d1 + nj), j))
}

/// Monic type II polynomial P_n(x; a,b; c,d) from the terminating 3F2
/// expansion over the canonical basis; exact.
pub fn typeii_coeffs(p: &Params, n: usize) -> Poly<Rat> {
    let mut coeffs = vec![Rat::zero(); n + 1];
    for j in 0..=n {
        coeffs[n - j] = tau(p, n, j);
    }
    Poly::new(coeffs)
}

// ---------------------------------------------------------------------------
// recurrence coefficients
// ---------------------------------------------------------------------------

/// c'_n = c + k if n = 2k - 1, d + k if n = 2k; defined for n >= -1 with
/// c'_{-1} = c.
pub fn cprime(p: &Params, n: i64) -> Rat {
    if n.rem_euclid(2) == 0 {
        p.d().clone() + rint(n.div_euclid(2))
    } else {
        p.c().clone() + rint((n + 1).div_euclid(2))
    }
}

/// Branched-continued-fraction coefficient lambda_k; lambda_0 = lambda_1 = 0
/// and lambda_k > 0 for k >= 2, with lambda_k -> 4/27.
pub fn lambda_k(p: &Params, k: usize) -> Rat {
    let n = (k / 3) as i64;
    let nf = rint(n);
    let one = Rat::one();
    let cp = cprime(p, n);
    let cpm = cprime(p, n - 1);
    match k % 3 {
        0 => {
            nf.clone() * (p.b().clone() + nf.clone() - one.clone())
                * (cp.clone() - p.a().clone() - one.clone())
                / ((cp.clone() + nf.clone() - rint(2))
                    * (cp + nf.clone() - one.clone())
                    * (cpm + nf - one))
        }
        1 => {
            nf.clone() * (p.a().clone() + nf.clone()) * (cpm.clone() - p.b().clone())
                / ((cp + nf.clone() - one.clone())
                    * (cpm.clone() + nf.clone() - one)
                    * (cpm + nf))
        }
        _ => {
            (p.a().clone() + nf.clone()) * (p.b().clone() + nf.clone()) * (cp.clone() - one.clone())
                / ((cp.clone() + nf.clone() - one) * (cp + nf.clone()) * (cpm + nf))
        }
    }
}

/// beta_n reconstructed from the lambda sequence (primary route):
/// beta_n = lambda_{3n} + lambda_{3n+1} + lambda_{3n+2}.
pub fn beta_n(p: &Params, n: usize) -> Rat {
    lambda_k(p, 3 * n) + lambda_k(p, 3 * n + 1) + lambda_k(p, 3 * n + 2)
}

/// alpha_n for n >= 1, from alpha_{m+1} = lambda_{3m+1} lambda_{3m+3}
/// + lambda_{3m+2} lambda_{3m+3} + lambda_{3m+2} lambda_{3m+4}.
pub fn alpha_n(p: &Params, n: usize) -> Rat {
    assert!(n >= 1, "alpha_n defined for n >= 1");
    let m = 3 * (n - 1);
    lambda_k(p, m + 1) * lambda_k(p, m + 3)
        + lambda_k(p, m + 2) * lambda_k(p, m + 3)
        + lambda_k(p, m + 2) * lambda_k(p, m + 4)
}

/// gamma_n for n >= 1, from gamma_{m+1} = lambda_{3m+2} lambda_{3m+4}
/// lambda_{3m+6}.
pub fn gamma_n(p: &Params, n: usize) -> Rat {
    assert!(n >= 1, "gamma_n defined for n >= 1");
    let m = 3 * (n - 1);
    lambda_k(p, m + 2) * lambda_k(p, m + 4) * lambda_k(p, m + 6)
}

/// beta_n by the direct two-term formula (cross-check route).
pub fn beta_direct(p: &Params, n: usize) -> Rat {
    let ni = n as i64;
    let nf = rint(ni);
    let one = Rat::one();
    let cpm = cprime(p, ni - 1);
    let cp = cprime(p, ni);
    let t1 = (nf.clone() + one.clone()) * (p.a().clone() + nf.clone()) * (p.b().clone() + nf.clone())
        / ((cpm.clone() + nf.clone()) * (cp.clone() + nf.clone()));
    let t2 = nf.clone() * (p.a().clone() + nf.clone() - one.clone())
        * (p.b().clone() + nf.clone() - one.clone())
        / ((cpm + nf.clone() - one) * (cp + nf - rint(2)));
    t1 - t2
}

/// alpha_n by the direct three-term formula (cross-check route), n >= 1.
pub fn alpha_direct(p: &Params, n: usize) -> Rat {
    assert!(n >= 1);
    let ni = n as i64 - 1;
    let nf = rint(ni);
    let one = Rat::one();
    let two = rint(2);
    let cpm = cprime(p, ni - 1);
    let cp = cprime(p, ni);
    let an = p.a().clone() + nf.clone();
    let bn = p.b().clone() + nf.clone();
    let lead = (nf.clone() + one.clone()) * an.clone() * bn.clone()
        / ((cpm.clone() + nf.clone()) * (cp.clone() + nf.clone()));
    let inner = nf.clone() * (an.clone() - one.clone()) * (bn.clone() - one.clone())
        / (two.clone()
            * (cpm.clone() + nf.clone() - one.clone())
            * (cp.clone() + nf.clone() - one.clone()))
        - (nf.clone() + one.clone()) * an.clone() * bn.clone()
            / ((cpm.clone() + nf.clone()) * (cp.clone() + nf.clone()))
        + (nf.clone() + two.clone()) * (an + one.clone()) * (bn + one.clone())
            / (two * (cpm + nf.clone() + one.clone()) * (cp + nf + one));
    lead * inner
}

/// gamma_n by the direct product formula (cross-check route), n >= 1.
pub fn gamma_direct(p: &Params, n: usize) -> Rat {
    assert!(n >= 1);
    let ni = n as i64 - 1;
    let nf = rint(ni);
    let one = Rat::one();
    let cpm = cprime(p, ni - 1);
    let cp = cprime(p, ni);
    pochhammer(&(nf.clone() + one.clone()), 2)
        * pochhammer(&(p.a().clone() + nf.clone()), 2)
        * pochhammer(&(p.b().clone() + nf.clone()), 2)
        * (cp.clone() - one.clone())
        * (cp.clone() - p.a().clone())
        * (cp.clone() - p.b().clone())
        / (pochhammer(&(cpm + nf.clone()), 3)
            * pochhammer(&(cp.clone() + nf.clone()), 3)
            * pochhammer(&(cp + nf - one), 3))
}

/// Recurrence data up to n_max: beta_0..beta_{n_max}, alpha_1..alpha_{n_max}
/// and gamma_1..gamma_{n_max} (index 0 of alpha/gamma is an unused zero),
/// lambda_0..lambda_{3 n_max + 6}, and c'_0..c'_{n_max}.
#[derive(Debug, Clone)]
pub struct RecCoeffs {
    pub beta: Vec<Rat>,
    pub alpha: Vec<Rat>,
    pub gamma: Vec<Rat>,
    pub lambda: Vec<Rat>,
    pub cprime: Vec<Rat>,
}

/// Builds all recurrence data from the lambda route (the direct formulas
/// remain available as [`beta_direct`], [`alpha_direct`], [`gamma_direct`]).
pub fn recurrence_coeffs(p: &Params, n_max: usize) -> RecCoeffs {
    let beta = (0..=n_max).map(|n| beta_n(p, n)).collect();
    let mut alpha = vec![Rat::zero()];
    let mut gamma = vec![Rat::zero()];
    for n in 1..=n_max {
        alpha.push(alpha_n(p, n));
        gamma.push(gamma_n(p, n));
    }
    let lambda = (0..=3 * n_max + 6).map(|k| lambda_k(p, k)).collect();
    let cp = (0..=n_max).map(|n| cprime(p, n as i64)).collect();
    RecCoeffs {
        beta,
        alpha,
        gamma,
        lambda,
        cprime: cp,
    }
}

/// Exact equality of the lambda-route and direct-route coefficients for all
/// n <= n_max, plus the sign facts lambda_0 = lambda_1 = 0 < lambda_k; the
/// first failing identity is reported.
pub fn lambda_identity_check(p: &Params, n_max: usize) -> Result<()> {
    if !lambda_k(p, 0).is_zero() || !lambda_k(p, 1).is_zero() {
        return Err(Error::CheckFailed(
            "lambda_0 and lambda_1 must vanish".into(),
        ));
    }
    for n in 0..=n_max {
        if beta_n(p, n) != beta_direct(p, n) {
            return Err(Error::CheckFailed(format!(
                "beta identity fails at n = {n}: lambda route {} vs direct {}",
                beta_n(p, n),
                beta_direct(p, n)
            )));
        }
        if n >= 1 {
            if alpha_n(p, n) != alpha_direct(p, n) {
                return Err(Error::CheckFailed(format!("alpha identity fails at n = {n}")));
            }
            if gamma_n(p, n) != gamma_direct(p, n) {
                return Err(Error::CheckFailed(format!("gamma identity fails at n = {n}")));
            }
            if !gamma_n(p, n).is_positive() {
                return Err(Error::CheckFailed(format!(
                    "gamma_{n} is not positive: {}",
                    gamma_n(p, n)
                )));
            }
        }
        if n >= 2 && !lambda_k(p, n).is_positive() {
            return Err(Error::CheckFailed(format!("lambda_{n} is not positive")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// recurrence construction
// ---------------------------------------------------------------------------

/// P_n built by unrolling P_{k+1} = (x - beta_k) P_k - alpha_k P_{k-1}
/// - gamma_{k-1} P_{k-2} from P_{-2} = P_{-1} = 0, P_0 = 1; exact.
pub fn typeii_by_recurrence(p: &Params, n: usize) -> Poly<Rat> {
    let mut pm2: Poly<Rat> = Poly::zero();
    let mut pm1: Poly<Rat> = Poly::zero();
    let mut pc: Poly<Rat> = Poly::one();
    for k in 0..n {
        let x_minus_beta = Poly::new(vec![-beta_n(p, k), Rat::one()]);
        let mut next = &x_minus_beta * &pc;
        if k >= 1 {
            next = &next - &pm1.scale(&alpha_n(p, k));
        }
        if k >= 2 {
            next = &next - &pm2.scale(&gamma_n(p, k - 1));
        }
        pm2 = pm1;
        pm1 = pc;
        pc = next;
    }
    pc
}

// ---------------------------------------------------------------------------
// Hessenberg matrix, factorization, zeros
// ---------------------------------------------------------------------------

/// The n x n truncated lower-Hessenberg matrix: beta on the diagonal, 1 on
/// the superdiagonal, alpha on the first and gamma on the second
/// subdiagonal.
pub fn hessenberg(p: &Params, n: usize) -> Vec<Vec<Rat>> {
    let mut h = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        h[i][i] = beta_n(p, i);
        if i + 1 < n {
            h[i][i + 1] = Rat::one();
        }
        if i >= 1 {
            h[i][i - 1] = alpha_n(p, i);
        }
        if i >= 2 {
            h[i][i - 2] = gamma_n(p, i - 1);
        }
    }
    h
}

pub fn hessenberg_f64(p: &Params, n: usize) -> Vec<Vec<f64>> {
    hessenberg(p, n)
        .iter()
        .map(|row| row.iter().map(Scalar::to_f64).collect())
        .collect()
}

fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].clone() + a[i][k].clone() * b[k][j].clone();
                }
            }
        }
    }
    out
}

/// Factors H_n = L1 L2 U with unit-lower-bidiagonal L1, L2 and upper
/// bidiagonal U, the nonzero entries drawn from the lambda sequence: L1
/// carries lambda_{3k} and L2 lambda_{3k+1} on the subdiagonal, U carries
/// lambda_{3k+2} on the diagonal and 1 above. The product is verified
/// exactly against H_n and all designated entries must be nonnegative.
pub fn bidiagonal_factorization(
    p: &Params,
    n: usize,
) -> Result<(Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<Vec<Rat>>)> {
    let mut l1 = vec![vec![Rat::zero(); n]; n];
    let mut l2 = vec![vec![Rat::zero(); n]; n];
    let mut u = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        l1[i][i] = Rat::one();
        l2[i][i] = Rat::one();
        u[i][i] = lambda_k(p, 3 * i + 2);
        if i >= 1 {
            l1[i][i - 1] = lambda_k(p, 3 * i);
            l2[i][i - 1] = lambda_k(p, 3 * i + 1);
        }
        if i + 1 < n {
            u[i][i + 1] = Rat::one();
        }
    }
    let product = mat_mul(&mat_mul(&l1, &l2), &u);
    let h = hessenberg(p, n);
    for i in 0..n {
        for j in 0..n {
            if product[i][j] != h[i][j] {
                return Err(Error::CheckFailed(format!(
                    "bidiagonal product differs from H at ({i},{j}): {} vs {}",
                    product[i][j], h[i][j]
                )));
            }
        }
    }
    for (name, m) in [("L1", &l1), ("L2", &l2), ("U", &u)] {
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_negative() {
                    return Err(Error::CheckFailed(format!(
                        "negative entry in {name} at ({i},{j}): {e}"
                    )));
                }
            }
        }
    }
    Ok((l1, l2, u))
}

/// Zeros of P_n together with the residuals of both oracles.
#[derive(Debug, Clone)]
pub struct ZerosReport {
    /// polished zeros, ascending
    pub zeros: Vec<f64>,
    /// |P_n(zero)| from compensated evaluation
    pub poly_residuals: Vec<f64>,
    /// |zero - matching Hessenberg eigenvalue|
    pub eig_residuals: Vec<f64>,
    pub max_disagreement: f64,
}

/// The n zeros of P_n by two independent routes: the Aberth root finder on
/// the exact coefficients, and QR eigenvalues of the Hessenberg truncation.
/// Fails with both lists if the routes disagree beyond `tol`.
pub fn zeros_with_tol(p: &Params, n: usize, tol: f64) -> Result<ZerosReport> {
    if n == 0 {
        return Err(Error::Domain("zeros need n >= 1".into()));
    }
    let poly = typeii_coeffs(p, n);
    let (hi, lo) = poly.to_dd();
    let (dhi, dlo) = poly.derivative().to_dd();
    // route A: simultaneous iteration on the double-double coefficients
    // (by n ~ 30 the clustered small zeros are no longer resolvable from
    // 53-bit coefficients), then a Newton polish against the same exact
    // evaluation. Aberth can leave a stray imaginary residue on tight
    // clusters; the polish starts from the real part and the ordering
    // check below rejects any collapse of a genuine conjugate pair.
    let raw = poly_roots_dd(&hi, &lo)?;
    let dpoly = poly.derivative();
    let mut roots: Vec<f64> = raw
        .iter()
        .map(|r| {
            let x = newton_polish_dd(&hi, &lo, &dhi, &dlo, r.re);
            // the monomial basis is so ill-conditioned near x = 1 at large n
            // that even double-double coefficients leave ~1e-9; two Newton
            // steps on the exact rational coefficients finish the job
            exact_newton_steps(&poly, &dpoly, x, 2)
        })
        .collect();
    roots.sort_by(|x, y| x.total_cmp(y));
    for w in roots.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "coefficient route found non-separated roots of P_{n}: {} and {}",
                w[0], w[1]
            )));
        }
    }

    // route B: eigenvalues of the banded truncation, refined by Newton on
    // the recurrence evaluation (this route never sees the coefficients)
    let eig_real = zeros_by_recurrence(p, n)?;

    let max_disagreement = roots
        .iter()
        .zip(&eig_real)
        .map(|(r, e)| (r - e).abs())
        .fold(0.0f64, f64::max);
    if max_disagreement > tol {
        return Err(Error::OracleDisagreement {
            roots,
            eigenvalues: eig_real,
            max_diff: max_disagreement,
        });
    }
    let poly_residuals = roots
        .iter()
        .map(|&r| compensated_eval_dd(&hi, &lo, r).abs())
        .collect();
    let eig_residuals = roots
        .iter()
        .zip(&eig_real)
        .map(|(r, e)| (r - e).abs())
        .collect();
    Ok(ZerosReport {
        zeros: roots,
        poly_residuals,
        eig_residuals,
        max_disagreement,
    })
}

/// Newton iteration evaluated in exact rational arithmetic; the returned
/// point is accurate to the f64 rounding of the true zero once the start is
/// inside the basin.
fn exact_newton_steps(poly: &Poly<Rat>, dpoly: &Poly<Rat>, x0: f64, steps: usize) -> f64 {
    let mut x = x0;
    for _ in 0..steps {
        let Some(xr) = Rat::from_float(x) else {
            return x;
        };
        let dfx = dpoly.eval(&xr);
        if dfx.is_zero() {
            return x;
        }
        let fx = poly.eval(&xr);
        let next = xr - fx / dfx;
        let next_f = Scalar::to_f64(&next);
        if !next_f.is_finite() || (next_f - x).abs() > 0.5 * (1.0 + x.abs()) {
            return x;
        }
        x = next_f;
    }
    x
}

/// [`zeros_with_tol`] at the dual-oracle tolerance 1e-8.
pub fn zeros(p: &Params, n: usize) -> Result<Vec<f64>> {
    Ok(zeros_with_tol(p, n, 1e-8)?.zeros)
}

/// Zeros via the recurrence data only: balanced QR eigenvalues of H_n, each
/// polished by Newton steps on the recurrence-evaluated P_n. Raw QR on this
/// non-normal banded matrix loses accuracy with growing n (eigenvalue
/// condition ~1e6 by n = 20); the polish restores ~1e-15 while staying
/// entirely within the recurrence route.
pub fn zeros_by_recurrence(p: &Params, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("zeros need n >= 1".into()));
    }
    let evaluator = RecurrenceEvaluator::new(p, n + 1);
    // starting approximations: double-double QR while its precision can
    // still separate the clustered small eigenvalues, a graded sign scan
    // beyond that
    let starts: Vec<f64> = if n <= 44 {
        let eigs = hessenberg_eigenvalues_dd(&hessenberg_f64(p, n))?;
        let mut out = Vec::with_capacity(n);
        for e in &eigs {
            if e.im.abs() > 1e-6 {
                return Err(Error::Domain(format!(
                    "Hessenberg eigenvalue of H_{n} has imaginary part {}: {e}",
                    e.im
                )));
            }
            out.push(e.re);
        }
        out
    } else {
        scan_bracket_zeros(&evaluator, n)?
    };
    let mut out = Vec::with_capacity(n);
    for &start in &starts {
        let mut x = start;
        for _ in 0..12 {
            let (pc, d) = evaluator.eval_with_derivative(n, x);
            if d == 0.0 {
                break;
            }
            let step = pc / d;
            if !step.is_finite() || step.abs() > 0.1 {
                break;
            }
            x -= step;
            if step.abs() <= 1e-16 * (1.0 + x.abs()) {
                break;
            }
        }
        out.push(x);
    }
    out.sort_by(|x, y| x.total_cmp(y));
    for w in out.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "recurrence route found non-separated zeros of P_{n}: {} and {}",
                w[0], w[1]
            )));
        }
    }
    Ok(out)
}

/// Brackets all n zeros in (0,1) by sign changes of the recurrence
/// evaluation on a grid graded like the zeros themselves: cube-root spacing
/// near 0 (where x_k ~ k^3/n^3) and square-root spacing near 1.
fn scan_bracket_zeros(evaluator: &RecurrenceEvaluator, n: usize) -> Result<Vec<f64>> {
    let m = 24 * n;
    let mut grid: Vec<f64> = Vec::with_capacity(2 * m);
    for i in 1..=m {
        let u = i as f64 / (m as f64 + 1.0);
        grid.push(0.5 * u * u * u);
        grid.push(1.0 - 0.5 * u * u);
    }
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();
    let mut brackets = Vec::with_capacity(n);
    let mut prev_x = grid[0];
    let (mut prev_f, _) = evaluator.eval_pair(n, prev_x);
    for &x in &grid[1..] {
        let (f, _) = evaluator.eval_pair(n, x);
        if prev_f != 0.0 && f != 0.0 && prev_f.signum() != f.signum() {
            // bisect to locate the zero well inside its Newton basin
            let (mut lo, mut hi, mut flo) = (prev_x, x, prev_f);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let (fm, _) = evaluator.eval_pair(n, mid);
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
                if hi - lo <= 1e-13 * hi.max(1e-3) {
                    break;
                }
            }
            brackets.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = f;
    }
    if brackets.len() != n {
        return Err(Error::BracketSearchExhausted {
            scanned_to: 1.0,
            found: brackets.len(),
        });
    }
    Ok(brackets)
}

// ---------------------------------------------------------------------------
// identity checks
// ---------------------------------------------------------------------------

/// Exact check that P_n solves
/// x^2 (1-x) P''' - x phi P'' + psi_n P' + n lambda_n P = 0, with
/// phi = (c+d+2)x - (a+b+1), psi_n = ((n-1)(c+d+n) - lambda_n)x + ab and
/// lambda_n = (c + floor(n/2))(d + floor((n-1)/2)); the residual must be the
/// zero polynomial.
pub fn ode_check(p: &Params, n: usize) -> Result<()> {
    let pn = typeii_coeffs(p, n);
    let d1 = pn.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let (a, b, c, d) = (p.a().clone(), p.b().clone(), p.c().clone(), p.d().clone());
    let lam =
        (c.clone() + rint(floor_half(n as i64))) * (d.clone() + rint(floor_half(n as i64 - 1)));
    let cd = c + d;
    // x^2 - x^3
    let lead = Poly::new(vec![Rat::zero(), Rat::zero(), Rat::one(), -Rat::one()]);
    let phi = Poly::new(vec![-(a.clone() + b.clone() + Rat::one()), cd.clone() + rint(2)]);
    let x_poly: Poly<Rat> = Poly::x();
    let psi = Poly::new(vec![
        a * b,
        rint(n as i64 - 1) * (cd + rint(n as i64)) - lam.clone(),
    ]);
    let residual = &(&(&lead * &d3) - &(&(&x_poly * &phi) * &d2))
        + &(&(&psi * &d1) + &pn.scale(&(rint(n as i64) * lam)));
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::CheckFailed(format!(
            "third-order ODE residual for n = {n} is nonzero: {residual}"
        )))
    }
}

/// Exact check of the parameter shift under differentiation:
/// D P_{n+1}(x; a,b; c,d) = (n+1) P_n(x; a+1,b+1; d+1,c+2).
pub fn hahn_shift_check(p: &Params, n: usize) -> Result<()> {
    let lhs = typeii_coeffs(p, n + 1).derivative();
    let shifted = p.shifted_pearson()?;
    let rhs = typeii_coeffs(&shifted, n).scale(&rint(n as i64 + 1));
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::CheckFailed(format!(
            "Hahn shift fails at n = {n}: D P_{} = {lhs} vs {rhs}",
            n + 1
        )))
    }
}

/// Exact 2-orthogonality of P_n against both weights via moment algebra:
/// vanishing for n >= 2k + j + 1 and the closed-form value at n = 2k + j.
pub fn orthogonality_check(p: &Params, n: usize) -> Result<()> {
    let pn = typeii_coeffs(p, n);
    let pair_with = |k: usize, j: usize| -> Rat {
        pn.coeffs()
            .iter()
            .enumerate()
            .map(|(i, ci)| ci.clone() * moment(p, k + i, j))
            .fold(Rat::zero(), |acc, t| acc + t)
    };
    for j in 0..2usize {
        let mut k = 0usize;
        while n >= 2 * k + j + 1 {
            let v = pair_with(k, j);
            if !v.is_zero() {
                return Err(Error::CheckFailed(format!(
                    "orthogonality fails at (n,k,j) = ({n},{k},{j}): integral = {v}"
                )));
            }
            k += 1;
        }
    }
    // nonzero value at n = 2k + j
    let (a, b, c, d) = (p.a().clone(), p.b().clone(), p.c().clone(), p.d().clone());
    let one = Rat::one();
    if n % 2 == 0 {
        let k = n / 2;
        let v = pair_with(k, 0);
        let want = pochhammer(&one, 2 * k)
            * pochhammer(&a, 2 * k)
            * pochhammer(&b, 2 * k)
            * pochhammer(&(d.clone() - a.clone()), k)
            * pochhammer(&(d.clone() - b.clone()), k)
            / (pochhammer(&c, 3 * k)
                * pochhammer(&d, 3 * k)
                * pochhammer(&(d.clone() + rint(k as i64) - one.clone()), 2 * k));
        if v != want {
            return Err(Error::CheckFailed(format!(
                "nonzero integral (j=0, k={k}) is {v}, closed form {want}"
            )));
        }
        if !p.is_degenerate() && !want.is_positive() {
            return Err(Error::CheckFailed(format!(
                "closed-form integral (j=0, k={k}) is not positive: {want}"
            )));
        }
    } else {
        let k = (n - 1) / 2;
        let v = pair_with(k, 1);
        let want = pochhammer(&one, 2 * k + 1)
            * pochhammer(&a, 2 * k + 1)
            * pochhammer(&(b.clone() + one.clone()), 2 * k)
            * pochhammer(&(c.clone() - a.clone() + one.clone()), k)
            * pochhammer(&(c.clone() - b.clone()), k + 1)
            / (pochhammer(&(c.clone() + one.clone()), 3 * k + 1)
                * pochhammer(&(c.clone() + rint(k as i64)), 2 * k + 1)
                * pochhammer(&d, 3 * k + 1));
        if v != want {
            return Err(Error::CheckFailed(format!(
                "nonzero integral (j=1, k={k}) is {v}, closed form {want}"
            )));
        }
        if !p.is_degenerate() && !want.is_positive() {
            return Err(Error::CheckFailed(format!(
                "closed-form integral (j=1, k={k}) is not positive: {want}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// special and confluent cases
// ---------------------------------------------------------------------------

/// The 2F2 confluent target: R_n^(eps)(x; a,b; c) =
/// (-1)^n (a)_n (b)_n / (c + floor((n+eps)/2))_n
/// * 2F2(-n, c + floor((n+eps)/2); a, b; x), exact.
pub fn confluent_target(a: &Rat, b: &Rat, c: &Rat, n: usize, eps: usize) -> Result<Poly<Rat>> {
    assert!(eps < 2);
    let c1 = c.clone() + rint(floor_half((n + eps) as i64));
    let body = terminating_pfq_poly(&[c1.clone()], &[a.clone(), b.clone()], n)?;
    let sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
    let pref = sign * pochhammer(a, n) * pochhammer(b, n) / pochhammer(&c1, n);
    Ok(body.scale(&pref))
}

/// One scale row of a confluence run.
#[derive(Debug, Clone)]
pub struct ConfluenceRow {
    pub scale: f64,
    /// coefficientwise distance between s^n P_n(x/s) and the 2F2 limit
    pub distance: f64,
}

/// Checks the confluent limits: for eps = 0 the parameter d is swept along
/// `scales` (d -> infinity, limit R_n^(0)(x;a,b;c)), for eps = 1 the
/// parameter c (limit R_n^(1)(x;a,b;d-1)). The rescaled polynomial
/// s^n P_n(x/s) must approach the target at rate ~ 1/s; distances are
/// computed exactly.
pub fn confluence_check(
    p: &Params,
    n: usize,
    eps: usize,
    scales: &[Rat],
) -> Result<Vec<ConfluenceRow>> {
    assert!(eps < 2);
    if scales.len() < 2 {
        return Err(Error::Domain("need at least two scales".into()));
    }
    let target = if eps == 0 {
        confluent_target(p.a(), p.b(), p.c(), n, 0)?
    } else {
        // R^(1)(x; a,b; d-1) has upper parameter d + floor((n-1)/2)
        confluent_target(p.a(), p.b(), &(p.d().clone() - Rat::one()), n, 1)?
    };
    let mut rows = Vec::with_capacity(scales.len());
    let mut exact_dists: Vec<Rat> = Vec::with_capacity(scales.len());
    for s in scales {
        let swept = if eps == 0 {
            Params::new(p.a().clone(), p.b().clone(), p.c().clone(), s.clone())?
        } else {
            Params::new(p.a().clone(), p.b().clone(), s.clone(), p.d().clone())?
        };
        let pn = typeii_coeffs(&swept, n);
        // s^n P_n(x/s): the coefficient of x^k picks up s^(n-k)
        let mut dist = Rat::zero();
        for k in 0..=n {
            let rescaled = pn.coeff(k) * rat_pow(s, n - k);
            let diff = (rescaled - target.coeff(k)).abs();
            if diff > dist {
                dist = diff;
            }
        }
        rows.push(ConfluenceRow {
            scale: Scalar::to_f64(s),
            distance: Scalar::to_f64(&dist),
        });
        exact_dists.push(dist);
    }
    for i in 1..exact_dists.len() {
        let (prev, curr) = (&exact_dists[i - 1], &exact_dists[i]);
        if prev.is_zero() && curr.is_zero() {
            continue; // n <= 1 is exact at every scale
        }
        if curr >= prev {
            return Err(Error::CheckFailed(format!(
                "confluence distance not decreasing at scale {}: {} then {}",
                rows[i].scale,
                rows[i - 1].distance,
                rows[i].distance
            )));
        }
        // ~1/scale rate, with slack factor 2
        let ratio = scales[i].clone() / scales[i - 1].clone();
        if curr.clone() * ratio > prev.clone() * rint(2) {
            return Err(Error::CheckFailed(format!(
                "confluence distance decays slower than ~1/scale at scale {}",
                rows[i].scale
            )));
        }
    }
    Ok(rows)
}

/// Parameter quadruples of the three cubic components of the threefold
/// symmetric family: k = 0, 1, 2 give
/// (1/3, 2/3; (mu+2)/3, rho/3 + 1), (4/3, 2/3; rho/3 + 1, (mu+5)/3),
/// (4/3, 5/3; (mu+5)/3, rho/3 + 2).
pub fn threefold_component_params(mu: &Rat, rho: &Rat, k: usize) -> Result<Params> {
    if !mu.is_positive() || !rho.is_positive() {
        return Err(Error::InvalidParams(
            "threefold parameters mu, rho must be positive".into(),
        ));
    }
    let (a, b, c, d) = match k {
        0 => (
            rat(1, 3),
            rat(2, 3),
            (mu.clone() + rint(2)) / rint(3),
            rho.clone() / rint(3) + Rat::one(),
        ),
        1 => (
            rat(4, 3),
            rat(2, 3),
            rho.clone() / rint(3) + Rat::one(),
            (mu.clone() + rint(5)) / rint(3),
        ),
        2 => (
            rat(4, 3),
            rat(5, 3),
            (mu.clone() + rint(5)) / rint(3),
            rho.clone() / rint(3) + rint(2),
        ),
        _ => {
            return Err(Error::Domain(format!(
                "component index {k} out of range (0..=2)"
            )))
        }
    };
    Params::new(a, b, c, d)
}

/// Exact check of the d = c + 1/2 reduction: P_n(x; a,b; c,c+1/2) equals
/// (-4)^n (a)_n (b)_n / (2c-1+n)_{2n} 3F2(-n, c+(n-1)/2, c+n/2; a,b; x).
pub fn jacobi_type_check(p: &Params, n: usize) -> Result<()> {
    let half = rat(1, 2);
    if p.d().clone() != p.c().clone() + half {
        return Err(Error::Domain("jacobi_type_check requires d = c + 1/2".into()));
    }
    let lhs = typeii_coeffs(p, n);
    let c2 = p.c().clone() * rint(2);
    let pref_sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
    let pref = pref_sign * rat_pow(&rint(4), n) * pochhammer(p.a(), n) * pochhammer(p.b(), n)
        / pochhammer(&(c2 - Rat::one() + rint(n as i64)), 2 * n);
    let u1 = p.c().clone() + rat(n as i64 - 1, 2);
    let u2 = p.c().clone() + rat(n as i64, 2);
    let rhs = terminating_pfq_poly(&[u1, u2], &[p.a().clone(), p.b().clone()], n)?.scale(&pref);
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::CheckFailed(format!(
            "d = c + 1/2 reduction fails at n = {n}"
        )))
    }
}

/// The constant-coefficient sequence at (4/3, 5/3; 2, 5/2) via its explicit
/// prefactored 3F2 form: ((n+1)(n+2)/2) (-4/27)^n
/// 3F2(-n, (n+3)/2, n/2+2; 4/3, 5/3; x).
pub fn constant_case_explicit(n: usize) -> Result<Poly<Rat>> {
    let pref = rat(((n + 1) * (n + 2)) as i64, 2) * rat_pow(&rat(-4, 27), n);
    let u1 = rat(n as i64 + 3, 2);
    let u2 = rat(n as i64, 2) + rint(2);
    Ok(terminating_pfq_poly(&[u1, u2], &[rat(4, 3), rat(5, 3)], n)?.scale(&pref))
}

/// The constant-case parameter quadruple (4/3, 5/3; 2, 5/2).
pub fn constant_case_params() -> Params {
    Params::new(rat(4, 3), rat(5, 3), rint(2), rat(5, 2)).expect("valid by construction")
}

// ---------------------------------------------------------------------------
// pointwise evaluation by the recurrence (for large degree)
// ---------------------------------------------------------------------------

/// Recurrence coefficients lowered to f64 for pointwise evaluation at large
/// degree, where expanded coefficients would cancel catastrophically.
#[derive(Debug, Clone)]
pub struct RecurrenceEvaluator {
    beta: Vec<f64>,
    alpha: Vec<f64>,
    gamma: Vec<f64>,
}

impl RecurrenceEvaluator {
    /// Prepares coefficients for evaluating P_0 .. P_{n_max}.
    pub fn new(p: &Params, n_max: usize) -> Self {
        let rc = recurrence_coeffs(p, n_max);
        RecurrenceEvaluator {
            beta: rc.beta.iter().map(Scalar::to_f64).collect(),
            alpha: rc.alpha.iter().map(Scalar::to_f64).collect(),
            gamma: rc.gamma.iter().map(Scalar::to_f64).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.beta.len()
    }

    /// (P_n(x), P_{n+1}(x)) for real x; requires n < max_degree.
    pub fn eval_pair(&self, n: usize, x: f64) -> (f64, f64) {
        let (a, b) = self.eval_pair_c64(n, Complex64::new(x, 0.0));
        (a.re, b.re)
    }

    /// (P_n(x), P_n'(x)) by differentiating the recurrence alongside it.
    pub fn eval_with_derivative(&self, n: usize, x: f64) -> (f64, f64) {
        assert!(n < self.max_degree(), "evaluator built with too small n_max");
        let (mut pm2, mut pm1, mut pc) = (0.0f64, 0.0f64, 1.0f64);
        let (mut dm2, mut dm1, mut dc) = (0.0f64, 0.0f64, 0.0f64);
        for k in 0..n {
            let mut next = (x - self.beta[k]) * pc;
            let mut dnext = pc + (x - self.beta[k]) * dc;
            if k >= 1 {
                next -= self.alpha[k] * pm1;
                dnext -= self.alpha[k] * dm1;
            }
            if k >= 2 {
                next -= self.gamma[k - 1] * pm2;
                dnext -= self.gamma[k - 1] * dm2;
            }
            pm2 = pm1;
            pm1 = pc;
            pc = next;
            dm2 = dm1;
            dm1 = dc;
            dc = dnext;
        }
        (pc, dc)
    }

    /// (P_n(x), P_{n+1}(x)) for complex x; requires n < max_degree.
    pub fn eval_pair_c64(&self, n: usize, x: Complex64) -> (Complex64, Complex64) {
        assert!(n < self.max_degree(), "evaluator built with too small n_max");
        let mut pm2 = Complex64::new(0.0, 0.0);
        let mut pm1 = Complex64::new(0.0, 0.0);
        let mut pc = Complex64::new(1.0, 0.0);
        for k in 0..=n {
            let mut next = (x - self.beta[k]) * pc;
            if k >= 1 {
                next -= self.alpha[k] * pm1;
            }
            if k >= 2 {
                next -= self.gamma[k - 1] * pm2;
            }
            pm2 = pm1;
            pm1 = pc;
            pc = next;
        }
        (pm1, pc)
    }
}
