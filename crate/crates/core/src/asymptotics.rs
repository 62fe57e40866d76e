//! Asymptotic laws shared with the Jacobi-Pineiro family: the ratio limit
//! rho(x) off [0,1], the limiting zero density and its cached CDF, the
//! Kolmogorov comparison of empirical zero distributions, the Mehler-Heine
//! scaling near the origin, and the n^3 x_k scaled-zero limits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperfun::{entire_0f2, ln_pochhammer, smallest_zeros_0f2};
use crate::numcore::quad::tanh_sinh_integrate2;
use crate::typeii::{zeros_by_recurrence, RecurrenceEvaluator};
use crate::weights::Params;

/// Limits of the recurrence coefficients: (4/9, 16/243, 64/19683).
pub const BETA_LIMIT: f64 = 4.0 / 9.0;
pub const ALPHA_LIMIT: f64 = 16.0 / 243.0;
pub const GAMMA_LIMIT: f64 = 64.0 / 19683.0;

fn on_cut(x: Complex64) -> bool {
    x.im == 0.0 && (0.0..=1.0).contains(&x.re)
}

/// Roots of the limit cubic gamma r^3 + alpha r^2 - (x - beta) r + 1 = 0
/// by Durand-Kerner iteration (complex coefficients, always three roots).
fn limit_cubic_roots(x: Complex64) -> [Complex64; 3] {
    let c2 = Complex64::new(ALPHA_LIMIT / GAMMA_LIMIT, 0.0);
    let c1 = -(x - BETA_LIMIT) / GAMMA_LIMIT;
    let c0 = Complex64::new(1.0 / GAMMA_LIMIT, 0.0);
    let eval = |r: Complex64| ((r + c2) * r + c1) * r + c0;
    let mut z = [
        Complex64::new(0.4, 0.9),
        Complex64::new(-1.1, 0.3),
        Complex64::new(0.7, -1.2),
    ];
    // scale the starting triple to the coefficient-based root bound
    let bound = 1.0 + c2.norm().max(c1.norm()).max(c0.norm());
    for zi in z.iter_mut() {
        *zi *= bound.powf(1.0 / 3.0);
    }
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        for i in 0..3 {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..3 {
                if k != i {
                    denom *= z[i] - z[k];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let w = eval(z[i]) / denom;
            z[i] -= w;
            max_step = max_step.max(w.norm());
        }
        if max_step < 1e-15 * (1.0 + z.iter().map(|v| v.norm()).fold(0.0, f64::max)) {
            break;
        }
    }
    z
}

/// Ratio limit rho(x) = lim P_n(x)/P_{n+1}(x) for x outside [0,1].
///
/// The closed form stacks three cube roots whose branches the certificate
/// pins down: among the nine combinations, the returned value is the one
/// that satisfies the limit cubic gamma rho^3 + alpha rho^2 - (x-beta) rho
/// + 1 = 0 and is its smallest-modulus root (the root with rho ~ 1/x decay,
/// which ratio convergence selects). Fails listing all candidates if none
/// matches to 1e-10.
pub fn ratio_rho(x: Complex64) -> Result<Complex64> {
    if on_cut(x) {
        return Err(Error::Domain(format!(
            "ratio limit is defined off the cut [0,1], got {x}"
        )));
    }
    // the attracting root: smallest modulus among the three cubic roots
    let roots = limit_cubic_roots(x);
    let target = roots
        .iter()
        .copied()
        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("three roots");

    // nine branch combinations of the closed form
    let one_minus_x = Complex64::new(1.0, 0.0) - x;
    let s = one_minus_x.sqrt();
    let u0 = (-Complex64::new(1.0, 0.0) + s).cbrt();
    let v0 = (-Complex64::new(1.0, 0.0) - s).cbrt();
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let e23 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let e43 = Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI / 3.0);
    let x13 = x.cbrt();
    let mut candidates = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let u = u0 * omega.powu(i);
            let v = v0 * omega.powu(j);
            let val = 6.75 * (1.5 * x13 * (e43 * u + e23 * v) - 1.0);
            candidates.push(val);
        }
    }
    let tol = 1e-10 * target.norm().max(1.0);
    let matched: Vec<Complex64> = candidates
        .iter()
        .copied()
        .filter(|c| (c - target).norm() <= tol)
        .collect();
    if matched.is_empty() {
        return Err(Error::CheckFailed(format!(
            "no branch of the closed form matches the attracting cubic root {target} at x = {x}; \
             candidates: {candidates:?}"
        )));
    }
    Ok(matched[0])
}

/// Residual of the selected branch in the limit cubic (certificate checkics).
pub fn ratio_cubic_residual(x: Complex64) -> Result<f64> {
    let r = ratio_rho(x)?;
    let res = GAMMA_LIMIT * r.powu(3) + ALPHA_LIMIT * r.powu(2) - (x - BETA_LIMIT) * r
        + Complex64::new(1.0, 0.0);
    Ok(res.norm())
}

/// Empirical ratio P_n(x)/P_{n+1}(x) evaluated through the recurrence.
pub fn ratio_empirical(p: &Params, n: usize, x: Complex64) -> Complex64 {
    let ev = RecurrenceEvaluator::new(p, n + 1);
    let (pn, pn1) = ev.eval_pair_c64(n, x);
    pn / pn1
}

/// Pointwise limiting zero density
/// (sqrt(3)/4 pi) ((1+sqrt(1-x))^(1/3) + (1-sqrt(1-x))^(1/3))
/// / (x^(2/3) sqrt(1-x)) on (0,1).
pub fn zero_density(x: f64) -> Result<f64> {
    zero_density_xc(x, 1.0 - x)
}

fn zero_density_xc(x: f64, xc: f64) -> Result<f64> {
    if !(x > 0.0 && xc > 0.0) {
        return Err(Error::Domain(format!("density defined on (0,1), got {x}")));
    }
    let s = xc.sqrt();
    let num = (1.0 + s).cbrt() + (1.0 - s).cbrt();
    Ok(3.0f64.sqrt() / (4.0 * std::f64::consts::PI) * num / (x.powf(2.0 / 3.0) * s))
}

/// Same value through an algebraically different arrangement: the sum of
/// cube roots is the largest real root of t^3 - 3 x^(1/3) t - 2 = 0.
pub fn zero_density_alt(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("density defined on (0,1), got {x}")));
    }
    let c = x.cbrt();
    // Newton from t = 2, which is above the largest root for x in (0,1)
    let mut t = 2.0f64;
    for _ in 0..60 {
        let f = t * t * t - 3.0 * c * t - 2.0;
        let df = 3.0 * t * t - 3.0 * c;
        let step = f / df;
        t -= step;
        if step.abs() < 1e-16 * t.abs() {
            break;
        }
    }
    let s = (1.0 - x).sqrt();
    Ok(3.0f64.sqrt() / (4.0 * std::f64::consts::PI) * t / (x.powf(2.0 / 3.0) * s))
}

/// Cached cumulative distribution of the limiting zero density: a
/// 4096-interval table on an endpoint-clustered grid, each increment from
/// double-exponential quadrature, with monotone linear interpolation.
#[derive(Debug, Clone)]
pub struct DensityTable {
    grid: Vec<f64>,
    cdf: Vec<f64>,
}

impl DensityTable {
    pub fn build(intervals: usize) -> Result<DensityTable> {
        assert!(intervals >= 8);
        let n = intervals;
        // Chebyshev-extrema spacing clusters points at both singular ends
        let grid: Vec<f64> = (0..=n)
            .map(|i| 0.5 * (1.0 - (std::f64::consts::PI * i as f64 / n as f64).cos()))
            .collect();
        let mut cdf = Vec::with_capacity(n + 1);
        cdf.push(0.0);
        let mut acc = 0.0;
        for w in grid.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let width = hi - lo;
            let (inc, _) = tanh_sinh_integrate2(
                |t, tc| {
                    // x = lo + width t with complement assembled from the
                    // accurate side: 1 - x = (1 - hi) + width (1 - t)
                    let x = lo + width * t;
                    let xc = (1.0 - hi) + width * tc;
                    zero_density_xc(x, xc).unwrap_or(0.0) * width
                },
                1e-11,
            )?;
            acc += inc;
            cdf.push(acc);
        }
        Ok(DensityTable { grid, cdf })
    }

    /// Total mass (should be 1 to ~1e-8; checked by callers and tests).
    pub fn total(&self) -> f64 {
        *self.cdf.last().expect("nonempty")
    }

    /// Monotone piecewise-linear CDF lookup.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return self.total();
        }
        let idx = self.grid.partition_point(|&g| g <= x);
        // grid[idx-1] <= x < grid[idx]
        let (lo, hi) = (self.grid[idx - 1], self.grid[idx]);
        let (clo, chi) = (self.cdf[idx - 1], self.cdf[idx]);
        let t = if hi > lo { (x - lo) / (hi - lo) } else { 0.0 };
        clo + t * (chi - clo)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }
}

/// Kolmogorov sup-distance between the empirical distribution of the zeros
/// of P_n and the limit CDF.
pub fn empirical_vs_limit(p: &Params, n: usize, table: &DensityTable) -> Result<f64> {
    if n < 10 {
        return Err(Error::Domain("empirical comparison needs n >= 10".into()));
    }
    let zeros = zeros_by_recurrence(p, n)?;
    let nf = n as f64;
    let mut sup = 0.0f64;
    for (i, &z) in zeros.iter().enumerate() {
        let f = table.cdf(z);
        sup = sup.max((i as f64 + 1.0) / nf - f).max(f - i as f64 / nf);
    }
    Ok(sup)
}

/// One evaluation of the Mehler-Heine scaling at z:
/// (-1)^n (c + floor(n/2))_n (d + floor((n-1)/2))_n / ((a)_n (b)_n)
/// * P_n(z / n^3), with the prefactor in log space, against the limit
/// 0F2(-; a, b; -z/4).
pub fn mehler_heine_scaled(p: &Params, evaluator: &RecurrenceEvaluator, n: usize, z: f64) -> f64 {
    let (a, b, c, d) = (p.a_f64(), p.b_f64(), p.c_f64(), p.d_f64());
    let ln_pre = ln_pochhammer(c + (n / 2) as f64, n)
        + ln_pochhammer(d + ((n as i64 - 1).div_euclid(2)) as f64, n)
        - ln_pochhammer(a, n)
        - ln_pochhammer(b, n);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let x = z / (n as f64).powi(3);
    let (pn, _) = evaluator.eval_pair(n, x);
    sign * (ln_pre + pn.abs().max(f64::MIN_POSITIVE).ln()).exp() * pn.signum()
}

/// Sup over `z_samples` of |scaled P_n - 0F2 limit|.
pub fn mehler_heine_check(p: &Params, n: usize, z_samples: &[f64]) -> Result<f64> {
    if n < 4 {
        return Err(Error::Domain("Mehler-Heine scaling needs n >= 4".into()));
    }
    let evaluator = RecurrenceEvaluator::new(p, n + 1);
    let (a, b) = (p.a_f64(), p.b_f64());
    let mut sup = 0.0f64;
    for &z in z_samples {
        let scaled = mehler_heine_scaled(p, &evaluator, n, z);
        let limit = entire_0f2(a, b, -z / 4.0);
        sup = sup.max((scaled - limit).abs());
    }
    Ok(sup)
}

/// Scaled-zero table: n^3 x_k^(n) along `n_list`, with the limit 4 f_k.
#[derive(Debug, Clone)]
pub struct ScaledZeroReport {
    /// (n, n^3 x_k) rows in the order requested
    pub rows: Vec<(usize, f64)>,
    /// 4 f_k, the claimed limit
    pub limit: f64,
}

pub fn scaled_zero_limit(p: &Params, k: usize, n_list: &[usize]) -> Result<ScaledZeroReport> {
    if k == 0 {
        return Err(Error::Domain("zero index k starts at 1".into()));
    }
    for &n in n_list {
        if k > n {
            return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
        }
    }
    let f = smallest_zeros_0f2(p.a_f64(), p.b_f64(), k)?;
    let limit = 4.0 * f[k - 1];
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let zs = zeros_by_recurrence(p, n)?;
        rows.push((n, (n as f64).powi(3) * zs[k - 1]));
    }
    Ok(ScaledZeroReport { rows, limit })
}
