//! Desk-scale reference values of `ζ(s)` by Euler–Maclaurin summation.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::kahan::KahanComplex;

/// `B_2, B_4, ..., B_22`.
const BERNOULLI: [f64; 11] = [
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
    854513.0 / 138.0,
];

/// Number of Bernoulli corrections kept; the last entry only feeds the
/// remainder bound.
const CORRECTIONS: usize = 10;

const MAX_HEIGHT: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaValue {
    pub value: Complex64,
    /// `log ζ(s)` on the branch continued horizontally from `Re s = 3`.
    pub log: Complex64,
    pub tail_bound: f64,
    pub converged: bool,
    pub terms: usize,
}

/// Default length of the direct sum at height `t`.
pub fn default_terms(t: f64) -> usize {
    (t.abs() + 50.0).ceil() as usize
}

/// `ζ(s)` with `n` direct terms and ten Bernoulli corrections. Returns the
/// value and a bound on the Euler–Maclaurin remainder.
pub fn zeta_em(s: Complex64, n: usize) -> Result<(Complex64, f64)> {
    if !(s.re > 0.0) {
        return domain(format!("Euler-Maclaurin evaluation needs Re s > 0, got {s}"));
    }
    if (s - 1.0).norm() < 1e-12 {
        return domain("zeta has a pole at s = 1");
    }
    let n = n.max(2);
    let mut acc = KahanComplex::default();
    for k in 1..n {
        acc.add((-s * (k as f64).ln()).exp());
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_s = (-s * ln_n).exp();
    acc.add(n_s * nf / (s - 1.0));
    acc.add(n_s * 0.5);
    // poch = s(s+1)...(s+2k-2), power = N^{-s-2k+1}.
    let mut poch = s;
    let mut power = n_s / nf;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI.iter().take(CORRECTIONS).enumerate() {
        acc.add(poch * power * (b / fact));
        let j = 2.0 * k as f64;
        poch *= (s + j + 1.0) * (s + j + 2.0);
        power /= nf * nf;
        fact *= (j + 3.0) * (j + 4.0);
    }
    let kk = 2.0 * CORRECTIONS as f64;
    let next = poch.norm() * power.norm() * BERNOULLI[CORRECTIONS].abs() / fact;
    let tail = next * (s + kk + 1.0).norm() / (s.re + kk + 1.0);
    Ok((acc.value(), tail))
}

/// `ζ(σ+it)` and its logarithm for `σ ≥ 1/2`, `|t| ≤ 10⁴`. The branch of the
/// logarithm is fixed at `Re s = 3`, where `|ζ − 1| < 1`, and followed
/// horizontally.
pub fn zeta_reference(sigma: f64, t: f64, terms: Option<usize>) -> Result<ZetaValue> {
    if !(sigma >= 0.5 && sigma.is_finite()) {
        return domain(format!("zeta reference needs sigma >= 1/2, got {sigma}"));
    }
    if !(t.abs() <= MAX_HEIGHT) {
        return domain(format!("zeta reference needs |t| <= {MAX_HEIGHT}, got {t}"));
    }
    let n = terms.unwrap_or_else(|| default_terms(t));
    let eval = |x: f64| zeta_em(Complex64::new(x, t), n);
    let (value, tail) = eval(sigma)?;
    if value.norm() <= tail {
        return domain(format!("zeta({sigma}+{t}i) is indistinguishable from zero"));
    }
    let log = if sigma >= 3.0 {
        value.ln()
    } else {
        let mut x = 3.0;
        let (z, _) = eval(x)?;
        let mut arg = z.arg();
        let mut prev = z;
        let mut step = 0.05;
        while x > sigma {
            let nx = (x - step).max(sigma);
            let (z, _) = eval(nx)?;
            let d = (z / prev).arg();
            if d.abs() > 0.5 && step > 1e-6 {
                step *= 0.5;
                continue;
            }
            arg += d;
            prev = z;
            x = nx;
            step = (step * 2.0).min(0.05);
        }
        Complex64::new(value.norm().ln(), arg)
    };
    let rel = tail / value.norm();
    Ok(ZetaValue { value, log, tail_bound: tail, converged: rel < 1e-12, terms: n })
}

/// `log ζ(x)` for real `x > 1`.
pub fn log_zeta_real(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return domain(format!("log zeta needs x > 1, got {x}"));
    }
    let (z, _) = zeta_em(Complex64::new(x, 0.0), 64)?;
    Ok(z.re.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_values() {
        let z2 = zeta_reference(2.0, 0.0, None).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-14);
        assert!(z2.tail_bound < 1e-14);
        let z4 = zeta_em(Complex64::new(4.0, 0.0), 30).unwrap().0;
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn first_zero_is_small() {
        // First nontrivial zero ordinate.
        let z = zeta_em(Complex64::new(0.5, 14.134725141734693), 80).unwrap();
        assert!(z.0.norm() < 1e-13, "{}", z.0);
    }

    #[test]
    fn term_count_is_immaterial() {
        let a = zeta_reference(0.7, 321.5, None).unwrap();
        let b = zeta_reference(0.7, 321.5, Some(900)).unwrap();
        assert!((a.value - b.value).norm() < 1e-11);
        assert!((a.log - b.log).norm() < 1e-11);
    }

    #[test]
    fn log_branch_matches_euler_product() {
        // On Re s = 3 the Euler product converges fast; compare log ζ there
        // and check the continued branch is continuous in sigma.
        let t = 40.0;
        let primes = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
        let s = Complex64::new(3.0, t);
        let mut lp = Complex64::new(0.0, 0.0);
        for &p in &primes {
            lp -= (1.0 - (-s * (p as f64).ln()).exp()).ln();
        }
        let z = zeta_reference(3.0, t, None).unwrap();
        assert!((z.log - lp).norm() < 2e-4);
        let a = zeta_reference(0.75, t, None).unwrap();
        let b = zeta_reference(0.76, t, None).unwrap();
        assert!((a.log.im - b.log.im).abs() < 0.1);
    }

    #[test]
    fn log_zeta_five_halves() {
        assert!((log_zeta_real(2.5).unwrap() - 1.341_487_257_250_917_2f64.ln()).abs() < 1e-14);
    }
}
