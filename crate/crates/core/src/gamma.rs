//! Stirling-type estimates for `log|Γ|` quotients and `Re ψ`, plus
//! reference evaluators used to check them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};

/// `B_2, B_4, ..., B_20`.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const SHIFT_RADIUS: f64 = 20.0;

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return domain(format!("Gamma has a pole at {}", z.re));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return domain("non-finite argument");
    }
    Ok(())
}

/// `log Γ(z)` by upward recurrence until `|z| > 20`, then the Stirling series
/// with `terms` Bernoulli corrections (at most 10). The imaginary part is
/// determined modulo `2π`.
pub fn reference_log_gamma(z: Complex64, terms: usize) -> Result<Complex64> {
    check_pole(z)?;
    let terms = terms.min(BERNOULLI.len());
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() <= SHIFT_RADIUS || w.re < 0.0 {
        shift += w.ln();
        w += 1.0;
    }
    let lw = w.ln();
    let mut s = (w - 0.5) * lw - w + 0.5 * (2.0 * PI).ln();
    let w2 = w * w;
    let mut wp = w;
    for (k, b) in BERNOULLI.iter().take(terms).enumerate() {
        let k = (k + 1) as f64;
        s += b / (2.0 * k * (2.0 * k - 1.0)) / wp;
        wp *= w2;
    }
    Ok(s - shift)
}

/// `ψ(z) = Γ'/Γ(z)` by the same recurrence and the asymptotic series.
pub fn reference_digamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() <= SHIFT_RADIUS || w.re < 0.0 {
        shift += 1.0 / w;
        w += 1.0;
    }
    let mut s = w.ln() - 0.5 / w;
    let w2 = w * w;
    let mut wp = w2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        s -= b / (2.0 * k) / wp;
        wp *= w2;
    }
    Ok(s - shift)
}

/// Explicit form of `log|Γ(x₁+iy)/Γ(x₂+iy)|` with its error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaQuotientResult {
    pub main_term: f64,
    pub r_bound: f64,
}

pub fn log_gamma_quotient(x1: f64, x2: f64, y: f64) -> Result<GammaQuotientResult> {
    if !(x1 > 0.0 && x2 > 0.0) {
        return domain("log_gamma_quotient needs x1, x2 > 0");
    }
    if y == 0.0 || !y.is_finite() {
        return domain("log_gamma_quotient needs y != 0");
    }
    let n1 = x1 * x1 + y * y;
    let n2 = x2 * x2 + y * y;
    let main_term = (x1 - 0.5) * 0.5 * n1.ln() - (x2 - 0.5) * 0.5 * n2.ln()
        + (x1 - x2) * (y * y - x1 * x2) / (12.0 * n1 * n2)
        + x1 * x2 * (x2 - x1) / (y * y + x1 * x2);
    let r_bound = (x2 - x1).abs().powi(3) / (y * y) + 1.0 / (90.0 * y.abs().powi(3));
    Ok(GammaQuotientResult { main_term, r_bound })
}

/// `log|z|` and the bound on `|Re ψ(z) − log|z||`.
pub fn digamma_real_estimate(z: Complex64) -> Result<(f64, f64)> {
    if !(z.re > 0.0) {
        return domain("digamma_real_estimate needs Re z > 0");
    }
    let a = z.norm();
    let a2 = a * a;
    let bound = (z.re + 1.0 / 6.0 + 2f64.sqrt() / (15.0 * a2)) / (2.0 * a2);
    Ok((a.ln(), bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!(reference_log_gamma(c(1.0, 0.0), 10).unwrap().norm() < 1e-14);
        assert!(reference_log_gamma(c(2.0, 0.0), 10).unwrap().norm() < 1e-14);
        let h = reference_log_gamma(c(0.5, 0.0), 10).unwrap();
        assert!((h.re - 0.5 * PI.ln()).abs() < 1e-14);
        // log 10! = log Γ(11)
        let f: f64 = (1..=10).map(|k| (k as f64).ln()).sum();
        assert!((reference_log_gamma(c(11.0, 0.0), 10).unwrap().re - f).abs() < 1e-13);
    }

    #[test]
    fn poles_rejected() {
        assert!(reference_log_gamma(c(0.0, 0.0), 10).is_err());
        assert!(reference_log_gamma(c(-3.0, 0.0), 10).is_err());
        assert!(reference_log_gamma(c(-3.0, 1e-3), 10).is_ok());
    }

    #[test]
    fn recurrence_holds() {
        for &(x, y) in &[(0.3, 0.0), (0.7, 3.0), (2.5, -40.0), (0.01, 700.0), (5.0, 0.2)] {
            let z = c(x, y);
            let d = reference_log_gamma(z + 1.0, 10).unwrap() - reference_log_gamma(z, 10).unwrap() - z.ln();
            let k = (d.im / (2.0 * PI)).round();
            assert!(d.re.abs() < 1e-12 && (d.im - 2.0 * PI * k).abs() < 1e-10, "z = {z}: {d}");
        }
    }

    #[test]
    fn digamma_known_values() {
        // ψ(1) = −γ, ψ(1/2) = −γ − 2 log 2
        let g = crate::EULER_GAMMA;
        assert!((reference_digamma(c(1.0, 0.0)).unwrap().re + g).abs() < 1e-14);
        assert!((reference_digamma(c(0.5, 0.0)).unwrap().re + g + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ is the derivative of log Γ
        let z = c(0.8, 12.0);
        let h = 1e-5;
        let num = (reference_log_gamma(z + h, 10).unwrap() - reference_log_gamma(z - h, 10).unwrap()) / (2.0 * h);
        assert!((num - reference_digamma(z).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn quotient_identical_arguments() {
        let r = log_gamma_quotient(1.0, 1.0, 5.0).unwrap();
        assert_eq!(r.main_term, 0.0);
        assert!(r.r_bound > 0.0);
        assert!(log_gamma_quotient(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn quotient_examples_within_bound() {
        for &(x1, x2, y) in &[(2.5, 0.75, 100.0), (1.25, 0.3, 10.0)] {
            let r = log_gamma_quotient(x1, x2, y).unwrap();
            let exact = reference_log_gamma(c(x1, y), 10).unwrap().re - reference_log_gamma(c(x2, y), 10).unwrap().re;
            assert!((exact - r.main_term).abs() <= r.r_bound, "{x1} {x2} {y}");
        }
    }

    #[test]
    fn digamma_examples_within_bound() {
        for z in [c(10.0, 0.0), c(1.0, 100.0), c(0.5, 5.0)] {
            let (l, b) = digamma_real_estimate(z).unwrap();
            assert!((reference_digamma(z).unwrap().re - l).abs() <= b, "z = {z}");
        }
        assert!(digamma_real_estimate(c(0.0, 3.0)).is_err());
    }

    #[test]
    fn arctan_remainder() {
        for i in -200..=200 {
            let u = i as f64 * 0.037;
            assert!((u.atan() - u).abs() <= u.abs().powi(3) + 1e-16);
        }
    }
}
