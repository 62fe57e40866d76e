//! Polynomial root finding: Aberth-Ehrlich simultaneous iteration with a
//! double-double multiprecision fallback and a compensated-Horner Newton
//! polish for real roots.

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::poly::Poly;
use crate::error::{Error, Result};



fn horner_complex(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Horner evaluation with error-free transformations (Kahan style).
///
/// Roughly doubles the effective working precision near a simple root,
/// which is what the Newton polish needs to hit 1e-15 relative accuracy.
pub fn compensated_eval(coeffs: &[f64], x: f64) -> f64 {
    let two_prod = |a: f64, b: f64| {
        let p = a * b;
        (p, a.mul_add(b, -p))
    };
    let two_sum = |a: f64, b: f64| {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    };
    let mut p = 0.0;
    let mut err = 0.0;
    for &c in coeffs.iter().rev() {
        let (prod, e1) = two_prod(p, x);
        let (sum, e2) = two_sum(prod, c);
        err = err * x + (e1 + e2);
        p = sum;
    }
    p + err
}

/// Initial approximations from the Newton polygon (Bini's scheme): the
/// upper convex hull of (j, ln|a_j|) yields one annulus per hull edge whose
/// radius estimates the moduli of the roots it carries. Far better than a
/// single circle when root magnitudes span several decades.
fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(j, c)| (j as f64, c.abs().ln()))
        .collect();
    // upper convex hull, left to right (monotone chain)
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // keep only right turns (b below the chord a-p)
            if (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut guesses = Vec::with_capacity(n);
    let golden = 0.45f64;
    for e in hull.windows(2) {
        let (k1, l1) = e[0];
        let (k2, l2) = e[1];
        let count = (k2 - k1).round() as usize;
        let r = ((l1 - l2) / (k2 - k1)).exp().clamp(1e-12, 1e12);
        for i in 0..count {
            let idx = guesses.len();
            let theta = 2.0 * std::f64::consts::PI * (idx as f64) / (count.max(1) as f64)
                + golden * (1.0 + k1);
            guesses.push(Complex64::from_polar(r, theta));
            let _ = i;
        }
    }
    // degenerate hulls (all coefficients equal etc.) still need n guesses
    while guesses.len() < n {
        let idx = guesses.len();
        let theta = 2.0 * std::f64::consts::PI * (idx as f64) / (n as f64) + golden;
        guesses.push(Complex64::from_polar(1.0, theta));
    }
    guesses.truncate(n);
    guesses
}

/// All complex roots of `p` by Aberth-Ehrlich iteration.
///
/// Requires degree >= 1. Roots at the origin are factored out exactly.
/// Stagnation of the double-precision iteration triggers one multiprecision
/// (double-double) retry; if that also stagnates, the error carries the
/// best iterate and the worst residual |p(z)| over it.
pub fn poly_roots(p: &Poly<f64>) -> Result<Vec<Complex64>> {
    if p.degree() < 1 {
        return Err(Error::Domain(format!(
            "poly_roots requires degree >= 1, got {}",
            p.degree()
        )));
    }
    let full = p.coeffs();
    let zeros_at_origin = full.iter().take_while(|c| **c == 0.0).count();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    let coeffs = &full[zeros_at_origin..];
    if coeffs.len() <= 1 {
        return Ok(out);
    }
    let lo = vec![0.0; coeffs.len()];
    let guesses = initial_guesses(coeffs);
    let mut rest = match aberth_core(coeffs, guesses.clone(), 600, |z| horner_complex(coeffs, z)) {
        Ok(r) => r,
        Err(Error::RootStagnation { roots, .. }) => {
            // multiprecision retry from the stagnated iterate
            aberth_core(coeffs, roots, 400, |z| horner_cdd(coeffs, &lo, z))?
        }
        Err(e) => return Err(e),
    };
    out.append(&mut rest);
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// Aberth-Ehrlich with the polynomial carried as exact double-double
/// coefficients; for polynomials whose clustered roots are not resolvable
/// after rounding the coefficients to plain f64.
pub fn poly_roots_dd(hi: &[f64], lo: &[f64]) -> Result<Vec<Complex64>> {
    assert_eq!(hi.len(), lo.len());
    if hi.len() < 2 {
        return Err(Error::Domain("poly_roots_dd requires degree >= 1".into()));
    }
    // cheap double-precision pass first; its iterate (converged or not)
    // seeds the double-double pass, which then needs only a few sweeps
    let seeds = match aberth_core(hi, initial_guesses(hi), 150, |z| horner_complex(hi, z)) {
        Ok(r) => r,
        Err(Error::RootStagnation { roots, .. }) => roots,
        Err(e) => return Err(e),
    };
    let mut out = aberth_core(hi, seeds, 300, |z| horner_cdd(hi, lo, z))?;
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// p and p' at a complex point, evaluated in complex double-double and
/// rounded on return: full relative accuracy of the values themselves.
fn horner_cdd(hi: &[f64], lo: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zc = CDd::from_f64(z.re, z.im);
    let mut p = CDd::from_f64(0.0, 0.0);
    let mut dp = CDd::from_f64(0.0, 0.0);
    for (h, l) in hi.iter().zip(lo).rev() {
        dp = dp.mul(zc).add(p);
        let c = CDd {
            re: Dd::from_f64(*h) + Dd::from_f64(*l),
            im: Dd::ZERO,
        };
        p = p.mul(zc).add(c);
    }
    let (pre, pim) = p.to_c64();
    let (dre, dim) = dp.to_c64();
    (Complex64::new(pre, pim), Complex64::new(dre, dim))
}

fn aberth_core<F>(
    coeffs: &[f64],
    guesses: Vec<Complex64>,
    max_iters: usize,
    eval: F,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> (Complex64, Complex64),
{
    let n = coeffs.len() - 1;
    let mut z = guesses;
    debug_assert_eq!(z.len(), n);

    let mut converged = false;
    for _ in 0..max_iters {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (pv, dv) = eval(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() == 0.0 {
                // off a critical point: nudge and retry next sweep
                z[i] += Complex64::new(1e-8, 1e-8);
                continue;
            } else {
                pv / dv
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for k in 0..n {
                if k != i {
                    let d = z[i] - z[k];
                    if d.norm() > 0.0 {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let w = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            z[i] -= w;
            if !z[i].re.is_finite() || !z[i].im.is_finite() {
                // rescue a diverged iterate onto a fresh starting point
                let theta = 2.6 * (i as f64 + 1.0);
                z[i] = Complex64::from_polar(0.7, theta);
                max_step = 1.0;
                continue;
            }
            max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 5e-16 {
            converged = true;
            break;
        }
    }

    // final Newton sharpening, two sweeps
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let (pv, dv) = eval(*zi);
            if dv.norm() > 0.0 {
                let step = pv / dv;
                if step.norm() < 1.0 {
                    *zi -= step;
                }
            }
        }
    }

    let residual = z
        .iter()
        .map(|&zi| eval(zi).0.norm())
        .fold(0.0f64, f64::max);
    let scale = coeffs.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    if !converged && residual > 1e-8 * scale {
        return Err(Error::RootStagnation { roots: z, residual });
    }
    Ok(z)
}

/// Horner evaluation of a polynomial carried to double-double precision as
/// (hi, lo) coefficient pairs: the hi part goes through the compensated
/// scheme, the lo correction in plain arithmetic. This removes the
/// coefficient-rounding floor when polishing roots of exactly known
/// polynomials.
pub fn compensated_eval_dd(hi: &[f64], lo: &[f64], x: f64) -> f64 {
    let low: f64 = lo.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    compensated_eval(hi, x) + low
}

/// Newton polish of a simple real root using double-double coefficients of
/// the polynomial and its derivative.
pub fn newton_polish_dd(hi: &[f64], lo: &[f64], dhi: &[f64], dlo: &[f64], x0: f64) -> f64 {
    let mut x = x0;
    for _ in 0..4 {
        let fx = compensated_eval_dd(hi, lo, x);
        let dfx = compensated_eval_dd(dhi, dlo, x);
        if dfx == 0.0 {
            break;
        }
        let step = fx / dfx;
        if !step.is_finite() || step.abs() > 0.5 * (1.0 + x.abs()) {
            break;
        }
        x -= step;
        if step.abs() <= 1e-17 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

/// Roots of a polynomial known to have only real simple roots; each root is
/// polished by Newton steps on the compensated-Horner evaluation.
pub fn real_roots_polished(p: &Poly<f64>) -> Result<Vec<f64>> {
    let complex_roots = poly_roots(p)?;
    let scale = p.coeffs().iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    for r in &complex_roots {
        if r.im.abs() > 1e-7 * (1.0 + r.re.abs()) {
            return Err(Error::Domain(format!(
                "expected real roots, found {} + {}i (coefficient scale {scale:e})",
                r.re, r.im
            )));
        }
    }
    let coeffs = p.coeffs();
    let dp = p.derivative();
    let dcoeffs = dp.coeffs();
    let mut out: Vec<f64> = complex_roots
        .iter()
        .map(|r| {
            let mut x = r.re;
            for _ in 0..3 {
                let fx = compensated_eval(coeffs, x);
                let dfx = compensated_eval(dcoeffs, x);
                if dfx == 0.0 {
                    break;
                }
                let step = fx / dfx;
                if !step.is_finite() || step.abs() > 0.5 * (1.0 + x.abs()) {
                    break;
                }
                x -= step;
            }
            x
        })
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    Ok(out)
}
