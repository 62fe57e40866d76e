//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Exact claims run in rational arithmetic; analytic residuals carry the
//! stated tolerances; asymptotic claims are monotone-trend assertions over
//! the stated degree ladders. The parameter grid is
//! (1,2;3,4), (1/2,3/2;2,5/2), (4/3,5/3;2,5/2), (1,1;2,5/2).

use std::time::Instant;

use num_complex::Complex64;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mophyp::asymptotics::{
    empirical_vs_limit, mehler_heine_check, ratio_cubic_residual, ratio_empirical, ratio_rho,
    scaled_zero_limit, DensityTable,
};
use mophyp::numcore::scalar::{approx_eq, rat, rint, Rat, Scalar};
use mophyp::typei;
use mophyp::typeii;
use mophyp::weights::{self, Params};

fn grid() -> Vec<(&'static str, Params)> {
    vec![
        (
            "(1,2;3,4)",
            Params::new(rint(1), rint(2), rint(3), rint(4)).unwrap(),
        ),
        (
            "(1/2,3/2;2,5/2)",
            Params::new(rat(1, 2), rat(3, 2), rint(2), rat(5, 2)).unwrap(),
        ),
        (
            "(4/3,5/3;2,5/2)",
            Params::new(rat(4, 3), rat(5, 3), rint(2), rat(5, 2)).unwrap(),
        ),
        (
            "(1,1;2,5/2)",
            Params::new(rint(1), rint(1), rint(2), rat(5, 2)).unwrap(),
        ),
    ]
}

#[test]
fn criterion_01_exact_orthogonality() {
    let start = Instant::now();
    for (name, p) in grid() {
        for n in 0..=12 {
            typeii::orthogonality_check(&p, n)
                .unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() <= 60,
        "exact orthogonality exceeded 60 s: {elapsed:?}"
    );
    println!("[PASS] criterion 1: exact type II orthogonality (incl. closed-form nonzero integrals), grid, n <= 12, in {elapsed:?}");
}

#[test]
fn criterion_02_route_equivalence() {
    for (name, p) in grid() {
        for n in 0..=20 {
            assert_eq!(
                typeii::typeii_coeffs(&p, n),
                typeii::typeii_by_recurrence(&p, n),
                "{name}: explicit vs recurrence route at n = {n}"
            );
        }
    }
    println!("[PASS] criterion 2: 3F2 coefficients == recurrence-generated coefficients exactly, grid, n <= 20");
}

#[test]
fn criterion_03_lambda_identities() {
    for (name, p) in grid() {
        typeii::lambda_identity_check(&p, 30).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let pc = typeii::constant_case_params();
    for n in 0..=30 {
        assert_eq!(typeii::beta_n(&pc, n), rat(4, 9));
        assert_eq!(typeii::alpha_n(&pc, n + 1), rat(16, 243));
        assert_eq!(typeii::gamma_n(&pc, n + 1), rat(64, 19683));
    }
    println!("[PASS] criterion 3: beta/alpha/gamma reconstructed from lambda exactly (n <= 30); constant case attains 4/9, 16/243, 64/19683 at every n");
}

#[test]
fn criterion_04_third_order_ode() {
    for (name, p) in grid() {
        for n in 0..=15 {
            typeii::ode_check(&p, n).unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
        }
    }
    println!("[PASS] criterion 4: third-order ODE residual is the zero polynomial, grid, n <= 15");
}

#[test]
fn criterion_05_hahn_shifts() {
    for (name, p) in grid() {
        for n in 0..=15 {
            typeii::hahn_shift_check(&p, n).unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
        }
        for n in 1..=6 {
            for i in 1..=10 {
                let x = i as f64 / 11.0;
                let (r, s) = typei::typei_derivative_relation_residual(&p, n, x)
                    .unwrap_or_else(|e| panic!("{name} n={n} x={x}: {e}"));
                assert!(
                    r.abs() <= 1e-8 * s,
                    "{name} n={n} x={x}: residual {r} vs scale {s}"
                );
            }
        }
    }
    println!("[PASS] criterion 5: D P_(n+1) = (n+1) P_n(a+1,b+1;d+1,c+2) exactly (n <= 15); type I derivative relation <= 1e-8 at 10 interior points (n <= 6)");
}

#[test]
fn criterion_06_type_i() {
    for (name, p) in grid() {
        for n in 1..=8 {
            let norm = typei::typei_orthogonality_check(&p, n)
                .unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
            assert_eq!(norm, Rat::one(), "{name} n={n}: normalization");
            typei::typei_degree_check(&p, n).unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
            assert_eq!(
                typei::sign_changes(&p, n).unwrap(),
                n - 1,
                "{name}: sign changes of Q_{n}"
            );
        }
        for n in 0..=4 {
            for i in 1..=10 {
                let x = i as f64 / 11.0;
                let (rod, _) = typei::rodrigues_eval(&p, n, x).unwrap();
                let q = typei::typei_function_eval(&p, n + 1, x).unwrap();
                assert!(
                    approx_eq(rod, q, 1e-8),
                    "{name} n={n} x={x}: rodrigues {rod} vs operator {q}"
                );
            }
        }
    }
    println!("[PASS] criterion 6: type I exact vanishing + unit normalization (n <= 8), sharp degrees, n-1 sign changes, Rodrigues vs rising operator <= 1e-8 (n <= 4)");
}

#[test]
fn criterion_07_pearson_and_weight_ode() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, p) in grid() {
        for _ in 0..20 {
            let x: f64 = rng.random_range(0.02..0.98);
            let (r, s) = weights::weight_ode_residual(&p, x).unwrap();
            assert!(
                r.abs() <= 1e-9 * s,
                "{name} x={x}: weight ODE residual {r} vs scale {s}"
            );
            let chk = weights::pearson_checks(&p, x).unwrap();
            assert!(
                chk.worst_relative() <= 1e-9,
                "{name} x={x}: Pearson residual {:?}",
                chk
            );
        }
    }
    println!("[PASS] criterion 7: Pearson system and weight ODE residuals <= 1e-9 at 20 random points per grid cell");
}

#[test]
fn criterion_08_nikishin_sfraction() {
    for (name, p) in grid() {
        for i in 1..=9 {
            let x = 0.1 + 0.8 * (i as f64 - 1.0) / 8.0;
            let (cf, _depth) = weights::ratio_sfraction_converged(&p, x).unwrap();
            let direct = weights::weight_ratio_direct(&p, x).unwrap();
            assert!(
                approx_eq(cf, direct, 1e-10),
                "{name} x={x}: fraction {cf} vs direct ratio {direct}"
            );
        }
        for n in 1..=200 {
            let g = weights::g_coefficient(&p, n);
            assert!(
                g > Rat::from_int(0) && g < Rat::one(),
                "{name}: g_{n} = {g} outside (0,1)"
            );
        }
    }
    println!("[PASS] criterion 8: depth-doubled S-fraction matches the direct weight ratio <= 1e-10 on (0.1, 0.9); g_n in (0,1) for n >= 1");
}

#[test]
fn criterion_09_zeros() {
    for (name, p) in grid() {
        let mut prev: Option<Vec<f64>> = None;
        for n in 1..=40 {
            let rep = typeii::zeros_with_tol(&p, n, 1e-8)
                .unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
            let z = rep.zeros;
            assert!(
                z[0] > 0.0 && z[n - 1] < 1.0,
                "{name} n={n}: zeros leave (0,1)"
            );
            if let Some(zp) = &prev {
                for i in 0..zp.len() {
                    assert!(
                        z[i] < zp[i] && zp[i] < z[i + 1],
                        "{name}: interlacing fails between n={} and n={n} at i={i}",
                        n - 1
                    );
                }
            }
            prev = Some(z);
        }
        for n in 1..=15 {
            typeii::bidiagonal_factorization(&p, n)
                .unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
        }
    }
    println!("[PASS] criterion 9: dual-oracle zeros <= 1e-8 up to n = 40, all in (0,1), interlacing; bidiagonal factorization exact with nonnegative entries (n <= 15)");
}

#[test]
fn criterion_10_asymptotics() {
    let start = Instant::now();
    let p = Params::new(rint(1), rint(2), rint(3), rint(4)).unwrap();

    // Kolmogorov distance decreasing along n in {20, 40, 80}
    let table = DensityTable::build(2048).unwrap();
    assert!((table.total() - 1.0).abs() <= 1e-8);
    let mut last = f64::INFINITY;
    let mut ks = Vec::new();
    for n in [20usize, 40, 80] {
        let d = empirical_vs_limit(&p, n, &table).unwrap();
        assert!((0.0..=1.0).contains(&d));
        assert!(d < last, "KS distance not decreasing at n={n}: {d} vs {last}");
        ks.push(d);
        last = d;
    }

    // Mehler-Heine sup error on [0, 40] decreasing along n in {16, 32, 64}
    let samples: Vec<f64> = (0..=80).map(|i| 0.5 * i as f64).collect();
    let mut last = f64::INFINITY;
    let mut mh = Vec::new();
    for n in [16usize, 32, 64] {
        let e = mehler_heine_check(&p, n, &samples).unwrap();
        assert!(e < last, "MH error not decreasing at n={n}: {e} vs {last}");
        mh.push(e);
        last = e;
    }

    // scaled first zero along n in {40, 80, 160}
    let rep = scaled_zero_limit(&p, 1, &[40, 80, 160]).unwrap();
    let errs: Vec<f64> = rep.rows.iter().map(|&(_, v)| (v - rep.limit).abs()).collect();
    assert!(
        errs[1] < errs[0] && errs[2] < errs[1],
        "scaled-zero errors not decreasing: {errs:?}"
    );

    // branch certificate and empirical ratio at 10 points off [0,1]
    let points = [
        Complex64::new(-1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(1.5, 0.0),
        Complex64::new(0.5, 0.8),
        Complex64::new(0.5, -0.8),
        Complex64::new(-0.4, 0.5),
        Complex64::new(1.3, 0.6),
        Complex64::new(0.0, -1.0),
    ];
    for &x in &points {
        let res = ratio_cubic_residual(x).unwrap();
        assert!(res <= 1e-10, "cubic residual {res} at {x}");
        let gap = (ratio_empirical(&p, 120, x) - ratio_rho(x).unwrap()).norm();
        assert!(gap <= 2e-2, "P_120/P_121 vs rho at {x}: gap {gap}");
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() <= 120,
        "asymptotics exceeded 120 s: {elapsed:?}"
    );
    println!("[PASS] criterion 10: KS {ks:?} decreasing; MH sup {mh:?} decreasing; |n^3 x_1 - 4 f_1| {errs:?} decreasing; rho certificate <= 1e-10 and ratio gap <= 2e-2 at 10 points, in {elapsed:?}");
}

#[test]
fn criterion_11_confluence() {
    let scales = [rint(100), rint(1000), rint(10000)];
    for (name, p) in [
        (
            "(1,2;3,4)",
            Params::new(rint(1), rint(2), rint(3), rint(4)).unwrap(),
        ),
        (
            "(1/2,3/2;2,5/2)",
            Params::new(rat(1, 2), rat(3, 2), rint(2), rat(5, 2)).unwrap(),
        ),
    ] {
        for eps in 0..2usize {
            for n in 0..=8usize {
                typeii::confluence_check(&p, n, eps, &scales)
                    .unwrap_or_else(|e| panic!("{name} eps={eps} n={n}: {e}"));
            }
        }
    }
    println!("[PASS] criterion 11: rescaled P_n -> 2F2 limit with ~1/scale coefficient distance along {{1e2, 1e3, 1e4}}, n <= 8, both confluences");
}

#[test]
fn criterion_12_degenerations() {
    // Jacobi-Pineiro boundary: c = a, d = b+1 collapses the weights to
    // b x^(b-1) and a x^(a-1)
    let p = Params::new_allow_degenerate(rint(1), rint(2), rint(1), rint(3)).unwrap();
    for i in 1..=19 {
        let x = i as f64 / 20.0;
        let w0 = weights::weight_eval(&p, x, 0, 0).unwrap();
        assert!(approx_eq(w0, 2.0 * x, 1e-12), "w0({x}) = {w0}");
        let w1 = weights::weight_eval(&p, x, 1, 0).unwrap();
        assert!(approx_eq(w1, 1.0, 1e-12), "w1({x}) = {w1}");
    }
    // type II orthogonality still holds there via the moment algebra
    for n in 0..=8 {
        typeii::orthogonality_check(&p, n).unwrap();
    }

    // threefold mapping (mu, rho) = (1, 3/2), k = 2 reproduces the
    // constant-coefficient quadruple and its recurrence
    let comp = typeii::threefold_component_params(&rint(1), &rat(3, 2), 2).unwrap();
    assert_eq!(comp, typeii::constant_case_params());
    for n in 0..=30 {
        assert_eq!(typeii::beta_n(&comp, n), rat(4, 9));
        assert_eq!(typeii::alpha_n(&comp, n + 1), rat(16, 243));
        assert_eq!(typeii::gamma_n(&comp, n + 1), rat(64, 19683));
    }
    println!("[PASS] criterion 12: Jacobi-Pineiro boundary weights are b x^(b-1), a x^(a-1) (<= 1e-12) with exact orthogonality; threefold (1, 3/2, k=2) reproduces the constant case and its recurrence");
}
