use mophyp::numcore::poly::Poly;
use mophyp::numcore::roots::poly_roots_dd;
use mophyp::numcore::scalar::{rat, rint, Rat, Scalar};
use mophyp::typeii::{typeii_coeffs, zeros_by_recurrence};
use mophyp::weights::Params;

fn exact_abs(poly: &Poly<Rat>, x: f64) -> f64 {
    let xr = Rat::from_float(x).unwrap();
    Scalar::to_f64(&poly.eval(&xr)).abs()
}

fn main() {
    let p = Params::new(rat(4, 3), rat(5, 3), rint(2), rat(5, 2)).unwrap();
    let n = 40;
    let poly = typeii_coeffs(&p, n);
    let (hi, lo) = poly.to_dd();
    let raw = poly_roots_dd(&hi, &lo).unwrap();
    let route_b = zeros_by_recurrence(&p, n).unwrap();
    for i in [30usize, 32, 35, 37] {
        let pa = exact_abs(&poly, raw[i].re);
        let pb = exact_abs(&poly, route_b[i]);
        println!(
            "{i:2}: |P_exact(A)| {pa:.3e}  |P_exact(B)| {pb:.3e}  -> {} is closer",
            if pa < pb { "A (coefficients)" } else { "B (recurrence)" }
        );
    }
    // also check coefficient magnitudes for scale
    let m = hi.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    println!("max |coeff| = {m:.3e}");
}
