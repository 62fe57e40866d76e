//! The hypergeometric weight pair on (0,1): validation, evaluation with
//! analytic derivatives, exact moments, the Nikishin S-fraction for the
//! weight ratio, and residual checks for the scalar ODE and the matrix
//! Pearson system.
//!
//! The first weight is w0 = W(x; a,b; c,d), the second w1 = W(x; a,b+1;
//! c+1,d), where
//!
//! W(x; a,b; c,d) = G(c)G(d)/(G(a)G(b)G(delta))
//!                  * x^(a-1) (1-x)^(delta-1) 2F1(c-b, d-b; delta; 1-x)
//!
//! with delta = c+d-a-b. Both are probability densities whose moments are
//! exact Pochhammer ratios.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hyperfun::{gauss_2f1_deriv_wc, gauss_2f1_wc, ln_gamma, pochhammer};
use crate::numcore::scalar::{rint, Rat, Scalar};

/// Validated parameter quadruple (a, b; c, d) with delta = c + d - a - b.
///
/// Strict admissibility is min{c,d} > max{a,b} with all parameters
/// positive. The Jacobi-Pineiro boundary (c = a and/or d = b + 1), where
/// the weights degenerate to pure powers, is admitted only through
/// [`Params::new_allow_degenerate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
    delta: Rat,
    degenerate: bool,
}

impl Params {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        Self::build(a, b, c, d, false)
    }

    /// Admits the boundary cases c = a and/or d = b + 1 of the strict
    /// inequality; general theorems are not claimed there, but the weights
    /// stay well defined (they collapse to Beta-type densities).
    pub fn new_allow_degenerate(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        Self::build(a, b, c, d, true)
    }

    fn build(a: Rat, b: Rat, c: Rat, d: Rat, allow_degenerate: bool) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
            if !v.is_positive() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        let delta = c.clone() + d.clone() - a.clone() - b.clone();
        let min_cd = if c <= d { c.clone() } else { d.clone() };
        let max_ab = if a >= b { a.clone() } else { b.clone() };
        let strict = min_cd > max_ab;
        let boundary = c == a || d == b.clone() + Rat::one();
        if !strict {
            if !(allow_degenerate && boundary) {
                return Err(Error::InvalidParams(format!(
                    "min{{c,d}} = {min_cd} must exceed max{{a,b}} = {max_ab}"
                )));
            }
            if !delta.is_positive() {
                return Err(Error::InvalidParams(format!(
                    "delta = c+d-a-b = {delta} must be positive"
                )));
            }
        }
        Ok(Params {
            a,
            b,
            c,
            d,
            delta,
            degenerate: !strict,
        })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }
    pub fn b(&self) -> &Rat {
        &self.b
    }
    pub fn c(&self) -> &Rat {
        &self.c
    }
    pub fn d(&self) -> &Rat {
        &self.d
    }
    pub fn delta(&self) -> &Rat {
        &self.delta
    }

    /// True when admitted through the allow-degenerate boundary.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn a_f64(&self) -> f64 {
        Scalar::to_f64(&self.a)
    }
    pub fn b_f64(&self) -> f64 {
        Scalar::to_f64(&self.b)
    }
    pub fn c_f64(&self) -> f64 {
        Scalar::to_f64(&self.c)
    }
    pub fn d_f64(&self) -> f64 {
        Scalar::to_f64(&self.d)
    }
    pub fn delta_f64(&self) -> f64 {
        Scalar::to_f64(&self.delta)
    }

    /// Parameter quadruple (a', b'; c', d') of weight component `which`.
    pub fn component(&self, which: usize) -> (Rat, Rat, Rat, Rat) {
        assert!(which < 2, "which must be 0 or 1");
        if which == 0 {
            (
                self.a.clone(),
                self.b.clone(),
                self.c.clone(),
                self.d.clone(),
            )
        } else {
            (
                self.a.clone(),
                self.b.clone() + Rat::one(),
                self.c.clone() + Rat::one(),
                self.d.clone(),
            )
        }
    }

    /// The Pearson/Hahn shift target (a+1, b+1; d+1, c+2).
    pub fn shifted_pearson(&self) -> Result<Params> {
        Params::new(
            self.a.clone() + Rat::one(),
            self.b.clone() + Rat::one(),
            self.d.clone() + Rat::one(),
            self.c.clone() + rint(2),
        )
    }
}

/// Spec-level constructor: validates and computes delta.
pub fn validate_params(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Params> {
    Params::new(a, b, c, d)
}

// ---------------------------------------------------------------------------
// evaluation with analytic derivatives
// ---------------------------------------------------------------------------

fn falling(p: f64, i: usize) -> f64 {
    let mut acc = 1.0;
    for k in 0..i {
        acc *= p - k as f64;
    }
    acc
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// j-th derivative of W(x; a,b;c,d) for a raw parameter quadruple, by the
/// trinomial Leibniz rule over x^(a-1) (1-x)^(delta-1) F(1-x), with the 2F1
/// derivatives taken by parameter raising (never finite differences).
///
/// `xc` must be 1 - x, passed separately so (1-x) powers keep full relative
/// accuracy near the right endpoint.
pub fn weight_deriv_raw(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    x: f64,
    xc: f64,
    j: usize,
) -> Result<f64> {
    if !(x > 0.0 && xc > 0.0) {
        return Err(Error::Domain(format!("x = {x} outside (0,1)")));
    }
    // W is symmetric in (a,b); swapping makes the 2F1 factor collapse to 1
    // on the degenerate boundaries c = a or d = a
    let (a, b) = if (c - a).abs() < 1e-14 || (d - a).abs() < 1e-14 {
        (b, a)
    } else {
        (a, b)
    };
    let delta = c + d - a - b;
    let norm = (ln_gamma(c) + ln_gamma(d) - ln_gamma(a) - ln_gamma(b) - ln_gamma(delta)).exp();
    let (u, v, w) = (c - b, d - b, delta);
    let p_exp = a - 1.0;
    let q_exp = delta - 1.0;

    // F^(k)(1-x) for k = 0..=j; the complement of the argument 1-x is x
    let mut fk = Vec::with_capacity(j + 1);
    for k in 0..=j {
        fk.push(gauss_2f1_deriv_wc(u, v, w, xc, x, k)?);
    }

    let mut sum = 0.0;
    for i in 0..=j {
        for jj in 0..=(j - i) {
            let k = j - i - jj;
            let mult = factorial(j) / (factorial(i) * factorial(jj) * factorial(k));
            let x_part = falling(p_exp, i) * x.powf(p_exp - i as f64);
            let sign_jj = if jj % 2 == 0 { 1.0 } else { -1.0 };
            let xc_part = sign_jj * falling(q_exp, jj) * xc.powf(q_exp - jj as f64);
            let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += mult * x_part * xc_part * sign_k * fk[k];
        }
    }
    Ok(norm * sum)
}

/// Weight component or one of its first two analytic derivatives.
pub fn weight_eval(p: &Params, x: f64, which: usize, deriv_order: usize) -> Result<f64> {
    assert!(deriv_order <= 2, "deriv_order must be 0, 1 or 2");
    weight_deriv_any(p, x, which, deriv_order)
}

/// Like [`weight_eval`] but with unrestricted derivative order (the
/// Rodrigues formula differentiates repeatedly).
pub fn weight_deriv_any(p: &Params, x: f64, which: usize, j: usize) -> Result<f64> {
    let (a, b, c, d) = p.component(which);
    weight_deriv_raw(
        Scalar::to_f64(&a),
        Scalar::to_f64(&b),
        Scalar::to_f64(&c),
        Scalar::to_f64(&d),
        x,
        1.0 - x,
        j,
    )
}

/// Evaluation with an exact complement, for use inside quadrature.
pub fn weight_eval_xc(p: &Params, x: f64, xc: f64, which: usize) -> Result<f64> {
    let (a, b, c, d) = p.component(which);
    weight_deriv_raw(
        Scalar::to_f64(&a),
        Scalar::to_f64(&b),
        Scalar::to_f64(&c),
        Scalar::to_f64(&d),
        x,
        xc,
        0,
    )
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

/// Exact n-th moment of weight `which`: (a')_n (b')_n / ((c')_n (d')_n).
pub fn moment(p: &Params, n: usize, which: usize) -> Rat {
    let (a, b, c, d) = p.component(which);
    pochhammer(&a, n) * pochhammer(&b, n) / (pochhammer(&c, n) * pochhammer(&d, n))
}

// ---------------------------------------------------------------------------
// Nikishin S-fraction for the weight ratio
// ---------------------------------------------------------------------------

/// g-sequence of the modified S-fraction: g_0 = 0,
/// g_{2k+1} = (c-b+k)/(delta+2k), g_{2k+2} = (d-b+k)/(delta+2k+1).
pub fn g_coefficient(p: &Params, n: usize) -> Rat {
    if n == 0 {
        return Rat::zero();
    }
    let two = rint(2);
    if n % 2 == 1 {
        let k = rint(((n - 1) / 2) as i64);
        (p.c.clone() - p.b.clone() + k.clone()) / (p.delta.clone() + two * k)
    } else {
        let k = rint(((n - 2) / 2) as i64);
        (p.d.clone() - p.b.clone() + k.clone()) / (p.delta.clone() + two * k + Rat::one())
    }
}

/// Partial numerators: alpha_0 = b/c, alpha_n = (1 - g_{n-1}) g_n for n >= 1.
///
/// The leading coefficient equals the ratio of the two normalizing
/// constants, G(c)G(b+1)/(G(c+1)G(b)) = b/c, which is also the value of the
/// whole fraction at x = 1.
pub fn sfraction_alpha(p: &Params, n: usize) -> Rat {
    if n == 0 {
        return p.b.clone() / p.c.clone();
    }
    (Rat::one() - g_coefficient(p, n - 1)) * g_coefficient(p, n)
}

/// Depth-truncated modified S-fraction for w0(x)/w1(x), evaluated by
/// backward recurrence from the truncation point with z = x - 1.
pub fn ratio_sfraction(p: &Params, x: f64, depth: usize) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (0,1]")));
    }
    if depth == 0 {
        return Err(Error::Domain("depth must be >= 1".into()));
    }
    let z = x - 1.0;
    // a zero denominator inside a truncation is escaped by deepening
    'depths: for dep in depth..depth + 8 {
        let mut acc = 1.0f64;
        for n in (1..=dep).rev() {
            if acc == 0.0 {
                continue 'depths;
            }
            let alpha = Scalar::to_f64(&sfraction_alpha(p, n));
            acc = 1.0 + alpha * z / acc;
        }
        if acc != 0.0 {
            return Ok(Scalar::to_f64(&sfraction_alpha(p, 0)) / acc);
        }
    }
    Err(Error::NoConvergence {
        what: "S-fraction truncation (zero denominators)",
        iterations: depth + 8,
        best: f64::NAN,
    })
}

/// Doubles the truncation depth until two successive values agree to 1e-12;
/// returns the value and the depth that reached it.
pub fn ratio_sfraction_converged(p: &Params, x: f64) -> Result<(f64, usize)> {
    let mut depth = 32;
    let mut prev = ratio_sfraction(p, x, depth)?;
    while depth <= 100_000 {
        depth *= 2;
        let next = ratio_sfraction(p, x, depth)?;
        if (next - prev).abs() <= 1e-12 * next.abs().max(1.0) {
            return Ok((next, depth));
        }
        prev = next;
    }
    Err(Error::NoConvergence {
        what: "S-fraction depth doubling",
        iterations: 100_000,
        best: prev,
    })
}

/// Direct route for the same ratio:
/// (b/c) 2F1(c-b, d-b; delta; 1-x) / 2F1(c-b, d-b-1; delta; 1-x).
pub fn weight_ratio_direct(p: &Params, x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (0,1]")));
    }
    let (b, c, d) = (p.b_f64(), p.c_f64(), p.d_f64());
    let delta = p.delta_f64();
    let num = gauss_2f1_wc(c - b, d - b, delta, 1.0 - x, x)?;
    let den = gauss_2f1_wc(c - b, d - b - 1.0, delta, 1.0 - x, x)?;
    Ok(b / c * num / den)
}

// ---------------------------------------------------------------------------
// differential structure
// ---------------------------------------------------------------------------

/// Residual and term scale of the second-order weight ODE
/// (1-x) x^2 W'' + ((c+d-5)x - (a+b-3)) x W' + ((a-1)(b-1) - (c-2)(d-2)x) W
/// at `x`, assembled from the analytic derivatives.
pub fn weight_ode_residual(p: &Params, x: f64) -> Result<(f64, f64)> {
    weight_ode_residual_raw(p.a_f64(), p.b_f64(), p.c_f64(), p.d_f64(), x)
}

/// Same residual for a raw quadruple (used to exercise shifted weights).
pub fn weight_ode_residual_raw(a: f64, b: f64, c: f64, d: f64, x: f64) -> Result<(f64, f64)> {
    let xc = 1.0 - x;
    let w0 = weight_deriv_raw(a, b, c, d, x, xc, 0)?;
    let w1 = weight_deriv_raw(a, b, c, d, x, xc, 1)?;
    let w2 = weight_deriv_raw(a, b, c, d, x, xc, 2)?;
    let t1 = (1.0 - x) * x * x * w2;
    let t2 = ((c + d - 5.0) * x - (a + b - 3.0)) * x * w1;
    let t3 = ((a - 1.0) * (b - 1.0) - (c - 2.0) * (d - 2.0) * x) * w0;
    let scale = t1.abs() + t2.abs() + t3.abs();
    Ok((t1 + t2 + t3, scale.max(f64::MIN_POSITIVE)))
}

/// Residuals of the two matrix Pearson identities at a point.
#[derive(Debug, Clone)]
pub struct PearsonCheck {
    /// componentwise residual of x Phi(x) Wbar = Wbar(a+1,b+1; d+1,c+2)
    pub shift_residual: [f64; 2],
    pub shift_scale: [f64; 2],
    /// componentwise residual of D(x Phi Wbar) + Psi Wbar = 0
    pub ode_residual: [f64; 2],
    pub ode_scale: [f64; 2],
}

impl PearsonCheck {
    /// Worst residual relative to its term scale.
    pub fn worst_relative(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            worst = worst.max(self.shift_residual[i].abs() / self.shift_scale[i]);
            worst = worst.max(self.ode_residual[i].abs() / self.ode_scale[i]);
        }
        worst
    }
}

/// Verifies the parameter-shift identity and the first-order matrix system
/// at `x`, using analytic weight derivatives throughout.
pub fn pearson_checks(p: &Params, x: f64) -> Result<PearsonCheck> {
    let (a, b, c, d) = (p.a_f64(), p.b_f64(), p.c_f64(), p.d_f64());
    if (c - b).abs() < 1e-14 || (d - a).abs() < 1e-14 {
        return Err(Error::Domain(
            "Pearson matrices need c != b and d != a".into(),
        ));
    }
    let xc = 1.0 - x;
    let w = [weight_deriv_any(p, x, 0, 0)?, weight_deriv_any(p, x, 1, 0)?];
    let dw = [weight_deriv_any(p, x, 0, 1)?, weight_deriv_any(p, x, 1, 1)?];

    let denom1 = a * b * (b + 1.0) * (d - a);
    let phi = [
        [
            c * (c + 1.0) * d / (a * b * (c - b)),
            -(c + 1.0) * d / (a * (c - b)),
        ],
        [
            -c * (c + 1.0) * d * (d + 1.0) * x / denom1,
            (c + 1.0) * d * (d + 1.0) / (a * (b + 1.0) * (d - a)),
        ],
    ];
    // only the (1,0) entry of Phi carries x
    let dphi_10 = -c * (c + 1.0) * d * (d + 1.0) / denom1;
    let psi = [
        [
            -c * (c + 1.0) * d / (a * (c - b)),
            c * (c + 1.0) * d / (a * (c - b)),
        ],
        [
            c * (c + 1.0) * d * d * (d + 1.0) * x / denom1,
            -(c + 1.0) * d * (d + 1.0) / ((b + 1.0) * (d - a)),
        ],
    ];

    // shift identity: x Phi Wbar = [W(a+1,b+1;d+1,c+2), W(a+1,b+2;d+2,c+2)]
    let lhs0 = x * (phi[0][0] * w[0] + phi[0][1] * w[1]);
    let lhs1 = x * (phi[1][0] * w[0] + phi[1][1] * w[1]);
    let rhs0 = weight_deriv_raw(a + 1.0, b + 1.0, d + 1.0, c + 2.0, x, xc, 0)?;
    let rhs1 = weight_deriv_raw(a + 1.0, b + 2.0, d + 2.0, c + 2.0, x, xc, 0)?;
    let shift_residual = [lhs0 - rhs0, lhs1 - rhs1];
    let shift_scale = [
        lhs0.abs().max(rhs0.abs()).max(f64::MIN_POSITIVE),
        lhs1.abs().max(rhs1.abs()).max(f64::MIN_POSITIVE),
    ];

    // differential identity, expanded with the product rule:
    // Phi Wbar + x Phi' Wbar + x Phi Wbar' + Psi Wbar = 0
    let mut ode_residual = [0.0f64; 2];
    let mut ode_scale = [0.0f64; 2];
    for i in 0..2 {
        let t_phi = phi[i][0] * w[0] + phi[i][1] * w[1];
        let t_dphi = if i == 1 { x * dphi_10 * w[0] } else { 0.0 };
        let t_phi_dw = x * (phi[i][0] * dw[0] + phi[i][1] * dw[1]);
        let t_psi = psi[i][0] * w[0] + psi[i][1] * w[1];
        ode_residual[i] = t_phi + t_dphi + t_phi_dw + t_psi;
        ode_scale[i] = t_phi
            .abs()
            .max(t_dphi.abs())
            .max(t_phi_dw.abs())
            .max(t_psi.abs())
            .max(f64::MIN_POSITIVE);
    }

    Ok(PearsonCheck {
        shift_residual,
        shift_scale,
        ode_residual,
        ode_scale,
    })
}
