//! The base function `f_σ`, its extremal minorant `g_Δ` and majorant `m_Δ`,
//! and their Fourier transforms.
//!
//! With `A = 2Δ` and `B = (σ−½)Δ` write `F(y) = log((y²+A²)/(y²+B²))`, so that
//! `F(Δx) = f_σ(x)`. Then `g_Δ(z) = G(Δz)` and `m_Δ(z) = M(Δz)` where `G`
//! interpolates `F` and `F'` at the half-integers and `M` does the same at
//! the integers.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::kahan::{KahanComplex, KahanSum};
use crate::quad;

/// Below this distance from an interpolation node the matching term is
/// evaluated through its Taylor expansion.
pub const NODE_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { abs_tol: 1e-12, max_terms: 1_000_000 }
    }
}

impl TruncationPolicy {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || max_terms == 0 {
            return domain(format!("bad truncation policy: abs_tol={abs_tol}, max_terms={max_terms}"));
        }
        Ok(TruncationPolicy { abs_tol, max_terms })
    }
}

/// A truncated series value with a rigorous bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue<T> {
    pub value: T,
    pub tail_bound: f64,
    pub converged: bool,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalContext {
    pub sigma: f64,
    pub delta: f64,
    pub truncation: TruncationPolicy,
}

pub fn f_sigma(sigma: f64, x: f64) -> f64 {
    let c = sigma - 0.5;
    let c2 = c * c;
    ((4.0 - c2) / (c2 + x * x)).ln_1p()
}

pub fn f_sigma_prime(sigma: f64, x: f64) -> f64 {
    let c = sigma - 0.5;
    let c2 = c * c;
    let x2 = x * x;
    -2.0 * x * (4.0 - c2) / ((4.0 + x2) * (c2 + x2))
}

/// `δ(ξ)` from the estimate `|sin(πξ)/(πξ)|² ≤ δ(ξ)e^{2π|Im ξ|}/(1+|ξ|²)`.
pub fn delta_factor(xi: Complex64) -> f64 {
    if xi.norm() < 1.0 {
        1.0
    } else {
        2.0 / (PI * PI)
    }
}

/// `sin(πz)/(πz)`.
pub fn sinc(z: Complex64) -> Complex64 {
    let pz = z * PI;
    if z.norm() < NODE_RADIUS {
        1.0 - pz * pz / 6.0
    } else {
        pz.sin() / pz
    }
}

fn sinc_sq(z: Complex64) -> Complex64 {
    if z.norm() < NODE_RADIUS {
        let pz = z * PI;
        1.0 - pz * pz / 3.0
    } else {
        let s = sinc(z);
        s * s
    }
}

/// `(e^{−2πuc} − e^{−4πu})/u` for `u ≥ 0`, with its limit at `u = 0`.
fn hat_kernel(u: f64, c: f64) -> f64 {
    if u == 0.0 {
        2.0 * PI * (2.0 - c)
    } else if u < 1.0 {
        ((-2.0 * PI * u * c).exp_m1() - (-4.0 * PI * u).exp_m1()) / u
    } else {
        ((-2.0 * PI * u * c).exp() - (-4.0 * PI * u).exp()) / u
    }
}

/// Sum `Σ_{|y| ≥ y1, y ∈ y1 + Z} 1/y⁴` over both signs is bounded by twice
/// this; callers fold the factor into their constants.
fn inv4_tail(y1: f64) -> f64 {
    1.0 / y1.powi(4) + 1.0 / (3.0 * y1.powi(3))
}

impl ExtremalContext {
    pub fn new(sigma: f64, delta: f64) -> Result<Self> {
        Self::with_policy(sigma, delta, TruncationPolicy::default())
    }

    pub fn with_policy(sigma: f64, delta: f64, truncation: TruncationPolicy) -> Result<Self> {
        if !(sigma > 0.5 && sigma <= 1.0) {
            return domain(format!("sigma must lie in (1/2, 1], got {sigma}"));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return domain(format!("Delta must be positive, got {delta}"));
        }
        Ok(ExtremalContext { sigma, delta, truncation })
    }

    fn a(&self) -> f64 {
        2.0 * self.delta
    }

    fn b(&self) -> f64 {
        (self.sigma - 0.5) * self.delta
    }

    /// `A² − B²`; `F(y) ≤ cap/y²` and `|F'(y)| ≤ 2·cap/|y|³`.
    fn cap(&self) -> f64 {
        let (a, b) = (self.a(), self.b());
        a * a - b * b
    }

    pub fn f(&self, x: f64) -> f64 {
        f_sigma(self.sigma, x)
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        f_sigma_prime(self.sigma, x)
    }

    /// `F_Δ(y) = f_σ(y/Δ)`.
    pub fn big_f(&self, y: f64) -> f64 {
        let b = self.b();
        (self.cap() / (b * b + y * y)).ln_1p()
    }

    pub fn big_f_prime(&self, y: f64) -> f64 {
        let (a, b) = (self.a(), self.b());
        let y2 = y * y;
        -2.0 * y * self.cap() / ((a * a + y2) * (b * b + y2))
    }

    /// Number of symmetric terms needed so that the tail beyond `|y| ≥ k + shift`
    /// is below `abs_tol`, given the prefactor modulus `pref`.
    fn plan_terms(&self, w_abs: f64, pref: f64, shift: f64) -> (usize, f64, bool) {
        let tol = self.truncation.abs_tol;
        let scale = 16.0 * self.cap() * pref;
        let tail = |k: usize| {
            let y1 = k as f64 + shift;
            if y1 < 2.0 * w_abs {
                f64::INFINITY
            } else {
                scale * inv4_tail(y1)
            }
        };
        let k_min = (2.0 * w_abs).ceil() as usize + 1;
        let mut k = if scale > 0.0 {
            ((scale / (3.0 * tol)).cbrt().ceil() as usize).max(k_min)
        } else {
            k_min
        };
        while tail(k) > tol && k < self.truncation.max_terms {
            k = (k + k / 8 + 1).min(self.truncation.max_terms);
        }
        let k = k.min(self.truncation.max_terms);
        let t = tail(k);
        (k, t, t <= tol)
    }

    /// `G_Δ(w)` from the interpolation series.
    pub fn big_g(&self, w: Complex64) -> SeriesValue<Complex64> {
        let k0 = w.re.floor();
        let y0 = k0 + 0.5;
        let eps = w - y0;
        let s = (eps * PI).sin();
        let pref = s * s / (PI * PI);
        let (k, tail, converged) = self.plan_terms(w.norm(), pref.norm(), 0.5);
        let n0 = k0 as i64 + 1;
        let k = k as i64;
        let mut acc = KahanComplex::default();
        for n in (-k + 1)..=k {
            if n == n0 {
                continue;
            }
            let y = n as f64 - 0.5;
            let d = w - y;
            acc.add(self.big_f(y) / (d * d) + self.big_f_prime(y) / d);
        }
        let node = sinc_sq(eps) * (self.big_f(y0) + eps * self.big_f_prime(y0));
        SeriesValue { value: pref * acc.value() + node, tail_bound: tail, converged, terms: 2 * k as usize }
    }

    /// `M_Δ(w)` from the interpolation series.
    pub fn big_m(&self, w: Complex64) -> SeriesValue<Complex64> {
        let n0 = w.re.round();
        let eps = w - n0;
        let s = (eps * PI).sin();
        let pref = s * s / (PI * PI);
        let (k, tail, converged) = self.plan_terms(w.norm(), pref.norm(), 1.0);
        let n0 = n0 as i64;
        let k = k as i64;
        let mut acc = KahanComplex::default();
        for n in -k..=k {
            if n == n0 {
                continue;
            }
            let y = n as f64;
            let d = w - y;
            acc.add(self.big_f(y) / (d * d) + self.big_f_prime(y) / d);
        }
        let y0 = n0 as f64;
        let node = sinc_sq(eps) * (self.big_f(y0) + eps * self.big_f_prime(y0));
        SeriesValue { value: pref * acc.value() + node, tail_bound: tail, converged, terms: 2 * k as usize + 1 }
    }

    pub fn g_delta(&self, z: Complex64) -> SeriesValue<Complex64> {
        self.big_g(z * self.delta)
    }

    pub fn m_delta(&self, z: Complex64) -> SeriesValue<Complex64> {
        self.big_m(z * self.delta)
    }

    pub fn g_delta_real(&self, x: f64) -> SeriesValue<f64> {
        let v = self.g_delta(Complex64::new(x, 0.0));
        SeriesValue { value: v.value.re, tail_bound: v.tail_bound, converged: v.converged, terms: v.terms }
    }

    pub fn m_delta_real(&self, x: f64) -> SeriesValue<f64> {
        let v = self.m_delta(Complex64::new(x, 0.0));
        SeriesValue { value: v.value.re, tail_bound: v.tail_bound, converged: v.converged, terms: v.terms }
    }

    /// `F_Δ(w)` continued off the real line; analytic away from `±i[B, A]`.
    pub fn big_f_complex(&self, w: Complex64) -> Complex64 {
        let (a, b) = (self.a(), self.b());
        let w2 = w * w;
        ((w2 + a * a) / (w2 + b * b)).ln()
    }

    fn weighted_integral(&self, w: Complex64, weight: fn(f64) -> f64) -> Complex64 {
        let (a, b) = (self.a(), self.b());
        let w2 = w * w;
        let kernel = |s: f64| 2.0 * s / (w2 + s * s) * weight(s);
        let split = [b, (b + a) * 0.5, a];
        let mut pts: Vec<f64> = split.to_vec();
        let r = w.re.abs();
        if r > b && r < a {
            pts.insert(1, r);
            pts.sort_by(f64::total_cmp);
        }
        let re = quad::integrate_pieces(|s| kernel(s).re, &pts, 1e-15, 1e-13, 4000);
        let im = if w.im == 0.0 {
            0.0
        } else {
            quad::integrate_pieces(|s| kernel(s).im, &pts, 1e-15, 1e-13, 4000).value
        };
        Complex64::new(re.value, im)
    }

    /// `G_Δ(w) = F(w) − cos²(πw) ∫_B^A 2s/((w²+s²)cosh²(πs)) ds`.
    ///
    /// Independent of the interpolation series and much cheaper for large `|w|`.
    pub fn big_g_integral(&self, w: Complex64) -> Complex64 {
        let eps = w - (w.re.floor() + 0.5);
        let s = (eps * PI).sin();
        let cos2 = s * s;
        let j = self.weighted_integral(w, |s| {
            let ch = (PI * s).cosh();
            1.0 / (ch * ch)
        });
        self.big_f_complex(w) - cos2 * j
    }

    /// `M_Δ(w) = F(w) + sin²(πw) ∫_B^A 2s/((w²+s²)sinh²(πs)) ds`.
    pub fn big_m_integral(&self, w: Complex64) -> Complex64 {
        let eps = w - w.re.round();
        let s = (eps * PI).sin();
        let sin2 = s * s;
        let k = self.weighted_integral(w, |s| {
            let sh = (PI * s).sinh();
            1.0 / (sh * sh)
        });
        self.big_f_complex(w) + sin2 * k
    }

    pub fn g_integral(&self, z: Complex64) -> Complex64 {
        self.big_g_integral(z * self.delta)
    }

    pub fn m_integral(&self, z: Complex64) -> Complex64 {
        self.big_m_integral(z * self.delta)
    }

    pub fn g_integral_real(&self, x: f64) -> f64 {
        self.g_integral(Complex64::new(x, 0.0)).re
    }

    pub fn m_integral_real(&self, x: f64) -> f64 {
        self.m_integral(Complex64::new(x, 0.0)).re
    }

    /// A constant `c` with `|g_Δ(x)| ≤ c/x²` for every real `x ≠ 0`.
    ///
    /// From the integral form: `|G(w)| ≤ (A²−B² + ∫_0^∞ 2s/cosh²(πs) ds)/w²`
    /// and the integral equals `2 log 2/π²`.
    pub fn g_decay_constant(&self) -> f64 {
        let d = self.delta;
        (self.cap() + 2.0 * std::f64::consts::LN_2 / (PI * PI)) / (d * d)
    }

    /// A constant `c` with `0 ≤ m_Δ(x) ≤ c/x²` for every real `x ≠ 0`.
    pub fn m_decay_constant(&self) -> f64 {
        let (a, b, d) = (self.a(), self.b(), self.delta);
        let k = quad::integrate(
            |s| {
                let sh = (PI * s).sinh();
                2.0 * s / (sh * sh)
            },
            b,
            a,
            1e-14,
            1e-12,
            2000,
        );
        (self.cap() + k.value + k.error) / (d * d)
    }

    fn hat_series(&self, xi: f64, alternating: bool) -> SeriesValue<f64> {
        let a = xi.abs();
        let d = self.delta;
        if a > d {
            return SeriesValue { value: 0.0, tail_bound: 0.0, converged: true, terms: 0 };
        }
        let c = self.sigma - 0.5;
        let r = (-2.0 * PI * d * c).exp();
        // Σ_{k≥K} (k+1)(h(a_k) + h(b_k)) ≤ (2 + r)/Δ · r^K/(1 − r) for K ≥ 1.
        let tail = |k: usize| (2.0 + r) / d * r.powi(k as i32) / (1.0 - r);
        let mut acc = KahanSum::new();
        let mut k = 0usize;
        loop {
            let kf = k as f64;
            let t = (kf + 1.0) * (hat_kernel(a + kf * d, c) - hat_kernel((kf + 2.0) * d - a, c));
            acc.add(if alternating && k % 2 == 1 { -t } else { t });
            k += 1;
            let tb = tail(k);
            if tb <= self.truncation.abs_tol {
                return SeriesValue { value: acc.value(), tail_bound: tb, converged: true, terms: k };
            }
            if k >= self.truncation.max_terms {
                return SeriesValue { value: acc.value(), tail_bound: tb, converged: false, terms: k };
            }
        }
    }

    /// Fourier transform of `g_Δ`, supported on `[−Δ, Δ]`.
    pub fn ghat(&self, xi: f64) -> SeriesValue<f64> {
        self.hat_series(xi, true)
    }

    /// Fourier transform of `m_Δ`, supported on `[−Δ, Δ]`.
    pub fn mhat(&self, xi: f64) -> SeriesValue<f64> {
        self.hat_series(xi, false)
    }

    /// `ĝ_Δ(0) = 2π(5/2 − σ − (1/(πΔ))log((1+e^{−(2σ−1)πΔ})/(1+e^{−4πΔ})))`.
    pub fn ghat_zero_closed(&self) -> f64 {
        let (s, d) = (self.sigma, self.delta);
        let l = (-(2.0 * s - 1.0) * PI * d).exp().ln_1p() - (-4.0 * PI * d).exp().ln_1p();
        2.0 * PI * (2.5 - s - l / (PI * d))
    }

    /// The companion closed form for `m̂_Δ(0)` obtained by flipping the sign of
    /// the log term in [`Self::ghat_zero_closed`]. It does not agree with the
    /// series [`Self::mhat`] at `ξ = 0`; see [`Self::mhat_zero_exact`].
    pub fn mhat_zero_closed(&self) -> f64 {
        let (s, d) = (self.sigma, self.delta);
        let l = (-(2.0 * s - 1.0) * PI * d).exp().ln_1p() - (-4.0 * PI * d).exp().ln_1p();
        2.0 * PI * (2.5 - s + l / (PI * d))
    }

    /// `m̂_Δ(0) = 2π(5/2 − σ) + (2/Δ)log((1−e^{−4πΔ})/(1−e^{−(2σ−1)πΔ}))`,
    /// the telescoped value of the series at `ξ = 0`. It also equals
    /// `∫ m_Δ(x) dx` computed from the integral representation.
    pub fn mhat_zero_exact(&self) -> f64 {
        let (s, d) = (self.sigma, self.delta);
        let l = (-(-4.0 * PI * d).exp()).ln_1p() - (-(-(2.0 * s - 1.0) * PI * d).exp()).ln_1p();
        2.0 * PI * (2.5 - s) + 2.0 / d * l
    }

    /// Upper bounds for `(1/2π)|ĝ_Δ(log n/2π)|` and `(1/2π)|m̂_Δ(log n/2π)|`
    /// valid for `2 ≤ n ≤ x = e^{2πΔ}`.
    pub fn ghat_mhat_pointwise_bounds(&self, n: u64) -> Result<(f64, f64)> {
        let x = (2.0 * PI * self.delta).exp();
        let nf = n as f64;
        if n < 2 || nf > x {
            return domain(format!("need 2 <= n <= e^(2 pi Delta) = {x}, got n = {n}"));
        }
        let c = self.sigma - 0.5;
        let (ln_n, ln_x) = (nf.ln(), 2.0 * PI * self.delta);
        let xc = x.powf(c);
        let nc = nf.powf(c);
        let core = 1.0 / (nc * ln_n) - nc / ((2.0 * ln_x - ln_n) * xc * xc);
        let tail = 1.0 / (nf * nf * ln_n) + 3.0 / (nf * nf * (x * x - 1.0) * ln_x);
        let g = core - (1.0 / nc - nc / (xc * xc)) / ((xc + 1.0) * ln_x) + tail;
        let m = xc / (xc - 1.0) * core + tail;
        Ok((g, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn f_sigma_values() {
        assert!((f_sigma(0.75, 0.0) - 2.0 * 8f64.ln()).abs() < 1e-14);
        let ctx = ExtremalContext::new(0.6, 2.5).unwrap();
        for &x in &[0.0, 0.3, 1.7, 40.0] {
            assert!((ctx.big_f(2.5 * x) - ctx.f(x)).abs() < 1e-14);
            assert!((ctx.big_f_prime(2.5 * x) - ctx.f_prime(x) / 2.5).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_context() {
        assert!(ExtremalContext::new(0.5, 1.0).is_err());
        assert!(ExtremalContext::new(1.1, 1.0).is_err());
        assert!(ExtremalContext::new(0.7, 0.0).is_err());
    }

    #[test]
    fn node_interpolation() {
        let ctx = ExtremalContext::new(0.75, 2.0).unwrap();
        for n in -5i64..=5 {
            let y = n as f64 - 0.5;
            let g = ctx.big_g(c(y));
            assert!((g.value.re - ctx.big_f(y)).abs() < 1e-9, "n={n}");
            let m = ctx.big_m(c(n as f64));
            assert!((m.value.re - ctx.big_f(n as f64)).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn node_branch_is_continuous() {
        let ctx = ExtremalContext::new(0.8, 1.3).unwrap();
        let y = 3.5;
        let lin = |e: f64| ctx.big_f(y) + e * ctx.big_f_prime(y);
        for &e in &[0.0, 0.5e-6, -0.9e-6, 1.1e-6, 2e-6] {
            let g = ctx.big_g(c(y + e)).value.re;
            assert!((g - lin(e)).abs() < 1e-11, "eps={e}: {}", g - lin(e));
        }
    }

    #[test]
    fn series_matches_integral_representation() {
        let ctx = ExtremalContext::new(0.7, 1.5).unwrap();
        for &w in &[0.3, 1.7, 12.4, -5.2, 80.0] {
            let s = ctx.big_g(c(w));
            let i = ctx.big_g_integral(c(w));
            assert!((s.value.re - i.re).abs() < 1e-10, "G at {w}: {} vs {}", s.value.re, i.re);
            let s = ctx.big_m(c(w));
            let i = ctx.big_m_integral(c(w));
            assert!((s.value.re - i.re).abs() < 1e-10, "M at {w}");
        }
        for &(re, im) in &[(3.2, 0.4), (-7.0, 1.1), (0.2, 0.05)] {
            let w = Complex64::new(re, im);
            let s = ctx.big_g(w).value;
            let i = ctx.big_g_integral(w);
            assert!((s - i).norm() < 1e-9 * (1.0 + i.norm()), "G at {w}: {s} vs {i}");
            let s = ctx.big_m(w).value;
            let i = ctx.big_m_integral(w);
            assert!((s - i).norm() < 1e-9 * (1.0 + i.norm()), "M at {w}: {s} vs {i}");
        }
    }

    #[test]
    fn hat_zero_forms() {
        for &(s, d) in &[(0.55, 0.5), (0.75, 1.0), (1.0, 8.0)] {
            let ctx = ExtremalContext::new(s, d).unwrap();
            assert!((ctx.ghat(0.0).value - ctx.ghat_zero_closed()).abs() < 1e-10);
            assert!((ctx.mhat(0.0).value - ctx.mhat_zero_exact()).abs() < 1e-10);
        }
        let ctx = ExtremalContext::new(0.75, 1.0).unwrap();
        assert!((ctx.ghat(0.0).value - 10.617848).abs() < 1e-6);
        assert!((ctx.mhat(0.0).value - 11.46165).abs() < 1e-5);
        assert!((ctx.mhat_zero_closed() - 11.37330).abs() < 1e-5);
    }

    #[test]
    fn hat_support_and_edge() {
        let ctx = ExtremalContext::new(0.9, 1.2).unwrap();
        assert_eq!(ctx.ghat(1.3).value, 0.0);
        let e = ctx.ghat(1.2);
        assert!(e.value.is_finite() && e.converged);
        assert!(ctx.mhat(-1.2).value.is_finite());
    }

    #[test]
    fn pointwise_bound_domain() {
        let ctx = ExtremalContext::new(0.8, 1.0).unwrap();
        assert!(ctx.ghat_mhat_pointwise_bounds(1).is_err());
        assert!(ctx.ghat_mhat_pointwise_bounds(536).is_err());
        let (g, m) = ctx.ghat_mhat_pointwise_bounds(7).unwrap();
        assert!(g > 0.0 && m > 0.0);
    }

    #[test]
    fn delta_factor_cases() {
        assert_eq!(delta_factor(c(0.5)), 1.0);
        assert!((delta_factor(c(2.0)) - 2.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn decay_constants_dominate() {
        for &(s, d) in &[(0.6, 0.5), (0.75, 1.0), (0.95, 3.0)] {
            let ctx = ExtremalContext::new(s, d).unwrap();
            let (cg, cm) = (ctx.g_decay_constant(), ctx.m_decay_constant());
            for k in 0..400 {
                let x = 0.05 * 1.03f64.powi(k);
                assert!(ctx.g_integral_real(x).abs() * x * x <= cg * (1.0 + 1e-12), "g at {x}");
                let m = ctx.m_integral_real(x);
                assert!(m >= -1e-12 && m * x * x <= cm * (1.0 + 1e-12), "m at {x}");
            }
        }
    }
}
