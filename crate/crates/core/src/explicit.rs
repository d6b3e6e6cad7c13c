//! The Guinand–Weil explicit formula, the zero-sum identity for
//! `log|L(σ+it)|` with its error interval, and bounds for the gamma, pole and
//! prime-power pieces of the formula.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::extremal::{f_sigma, ExtremalContext};
use crate::gamma::{digamma_real_estimate, reference_digamma, reference_log_gamma};
use crate::kahan::{ksum, KahanSum};
use crate::lfunc::{ConjectureProfile, DerivedInvariants, Oracle, SelbergDescriptor};
use crate::prime_sums::{i4_bound, Estimate, Kind, SumMode};
use crate::primes::{MangoldtTable, SIEVE_CAP};
use crate::quad;
use crate::zeros::ZeroDataset;
use crate::zeta::zeta_reference;

/// Zero-counting constant `C` in the crude estimate `N(u) ≤ C·u·log u`.
pub const ZERO_COUNT_C: f64 = 2.0;

/// Length of the Dirichlet series used for `log L(5/2+it)`.
pub const LOG_L_TERMS: u64 = 1_000_000;

const CHUNK: usize = 256;

/// A named hypothesis and whether it holds.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct Check {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, satisfied: bool, detail: String) -> Self {
        Check { name: name.into(), satisfied, detail }
    }

    /// `lhs ≥ rhs`.
    pub fn ge(name: &str, lhs: f64, rhs: f64) -> Self {
        Check::new(name, lhs >= rhs, format!("{lhs} >= {rhs}"))
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.satisfied)
}

fn failed(checks: &[Check]) -> Result<()> {
    let bad: Vec<String> = checks.iter().filter(|c| !c.satisfied).map(|c| format!("{} ({})", c.name, c.detail)).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        domain(format!("hypotheses fail: {}", bad.join("; ")))
    }
}

// ---- zero sums ------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroSum {
    pub value: f64,
    pub truncation_bound: f64,
    pub zeros_used: usize,
}

/// `∫_T^∞ C u log u · 4c/(u−a)³ du`, which bounds `Σ_{γ>T} 2c/(γ−a)²` when
/// `N(u) ≤ C u log u`.
fn zero_tail(c: f64, a: f64, big_t: f64) -> f64 {
    // Substituting w = 1/(u−a) leaves 4cC(1 + a w) log(a + 1/w) on (0, 1/(T−a)].
    let r = quad::integrate(
        |w| 4.0 * c * ZERO_COUNT_C * (1.0 + a * w) * (a + 1.0 / w).ln(),
        0.0,
        1.0 / (big_t - a),
        1e-15,
        1e-10,
        2000,
    );
    r.value + r.error
}

/// `Σ_γ (h(t−γ) + h(t+γ))` over the listed ordinates `γ ≤ complete_to`, with a
/// bound for the zeros above `complete_to` given `|h(u)| ≤ decay/u²`.
pub fn zero_sum_with<H>(zeros: &ZeroDataset, t: f64, decay: f64, h: H) -> Result<ZeroSum>
where
    H: Fn(f64) -> f64 + Sync,
{
    let a = t.abs();
    let big_t = zeros.complete_to;
    if !(2.0 * a + 1.0 <= big_t) {
        return Err(Error::Incomplete(format!(
            "zero table complete to {big_t} does not cover |t| = {a} with margin (need complete_to >= 2|t| + 1)"
        )));
    }
    let gs = zeros.complete();
    let partial: Vec<f64> = gs
        .par_chunks(CHUNK)
        .map(|c| {
            let mut k = KahanSum::new();
            for &g in c {
                k.add(h(t - g) + h(t + g));
            }
            k.value()
        })
        .collect();
    Ok(ZeroSum { value: ksum(partial), truncation_bound: zero_tail(decay, a, big_t), zeros_used: gs.len() })
}

/// `Σ_γ h(t−γ)` for `h = g_Δ` or `m_Δ`.
pub fn zero_sum(ctx: &ExtremalContext, zeros: &ZeroDataset, t: f64, kind: Kind) -> Result<ZeroSum> {
    match kind {
        Kind::G => zero_sum_with(zeros, t, ctx.g_decay_constant(), |x| ctx.g_integral_real(x)),
        Kind::M => zero_sum_with(zeros, t, ctx.m_decay_constant(), |x| ctx.m_integral_real(x)),
    }
}

/// `Σ_γ f_σ(t−γ)`.
pub fn zero_sum_f(zeros: &ZeroDataset, sigma: f64, t: f64) -> Result<ZeroSum> {
    let c = sigma - 0.5;
    zero_sum_with(zeros, t, 4.0 - c * c, |x| f_sigma(sigma, x))
}

// ---- the Guinand–Weil formula ------------------------------------------------------

fn hat(ctx: &ExtremalContext, kind: Kind, xi: f64) -> (f64, f64) {
    let s = match kind {
        Kind::G => ctx.ghat(xi),
        Kind::M => ctx.mhat(xi),
    };
    (s.value, s.tail_bound)
}

fn h_complex(ctx: &ExtremalContext, kind: Kind, z: Complex64) -> Complex64 {
    match kind {
        Kind::G => ctx.g_integral(z),
        Kind::M => ctx.m_integral(z),
    }
}

fn h_real(ctx: &ExtremalContext, kind: Kind, x: f64) -> f64 {
    match kind {
        Kind::G => ctx.g_integral_real(x),
        Kind::M => ctx.m_integral_real(x),
    }
}

/// `E_1(x) = ∫_x^∞ e^{−u}/u du` for `x ≥ 1`.
fn exp_integral_e1(x: f64) -> f64 {
    quad::integrate(|u| (-u).exp() / u, x, x + 60.0, 1e-18, 1e-13, 400).value
}

/// `∫ h(u) Re ψ(a + ib + iλ(t−u)) du` through the Fourier side of `h`:
/// `∫_0^∞ (ĥ(0)e^{−x}/x − e^{−ax}cos((b+λt)x) ĥ(λx/2π)/(1−e^{−x})) dx`.
pub fn gamma_integral(ctx: &ExtremalContext, kind: Kind, lambda: f64, mu: Complex64, t: f64) -> Result<(f64, f64)> {
    let a = lambda / 2.0 + mu.re;
    if !(a > 0.0 && lambda > 0.0) {
        return domain("gamma integral needs lambda/2 + Re mu > 0");
    }
    let omega = mu.im + lambda * t;
    let h0 = hat(ctx, kind, 0.0).0;
    let big_x = 2.0 * PI * ctx.delta / lambda;
    let integrand = |x: f64| {
        let (hv, _) = hat(ctx, kind, lambda * x / (2.0 * PI));
        h0 * (-x).exp() / x - (-a * x).exp() * (omega * x).cos() * hv / (-(-x).exp_m1())
    };
    let pieces = ((big_x * omega.abs() / (2.0 * PI)).ceil() as usize + 1).min(200_000);
    let pts: Vec<f64> = (0..=pieces).map(|k| big_x * k as f64 / pieces as f64).collect();
    let r = quad::integrate_pieces(integrand, &pts, 1e-11, 1e-12, 200);
    if !r.converged {
        return Err(Error::NotConverged(format!("gamma integral at t = {t}: error {}", r.error)));
    }
    let tail = if big_x >= 1.0 { h0 * exp_integral_e1(big_x) } else { return domain("need 2 pi Delta >= lambda") };
    Ok((r.value + tail, r.error))
}

/// The same integral by direct quadrature in `u` over `[−U, U]`, with the
/// digamma from the reference evaluator. Returns the value and a bound for
/// the quadrature error plus the two tails.
pub fn gamma_integral_direct(
    ctx: &ExtremalContext,
    kind: Kind,
    lambda: f64,
    mu: Complex64,
    t: f64,
    u_max: f64,
) -> Result<(f64, f64)> {
    let a = lambda / 2.0 + mu.re;
    if !(u_max >= 2.0 * t.abs() + 10.0) {
        return domain("u_max must exceed 2|t| + 10");
    }
    let f = |u: f64| {
        let z = Complex64::new(a, mu.im + lambda * (t - u));
        h_real(ctx, kind, u) * reference_digamma(z).map(|p| p.re).unwrap_or(f64::NAN)
    };
    let step = 0.5 / ctx.delta;
    let n = (2.0 * u_max / step).ceil() as usize;
    let mut pts: Vec<f64> = (0..=n).map(|k| -u_max + 2.0 * u_max * k as f64 / n as f64).collect();
    pts.push(t);
    pts.sort_by(f64::total_cmp);
    let r = quad::integrate_pieces(f, &pts, 1e-9, 1e-10, 100);
    let c = match kind {
        Kind::G => ctx.g_decay_constant(),
        Kind::M => ctx.m_decay_constant(),
    };
    // |Re ψ(z)| ≤ log|z| + bound, and |z| ≤ 2λ|u| + K beyond u_max.
    let k = a + mu.im.abs() + lambda * t.abs() + 1.0;
    let zmax = Complex64::new(k, 2.0 * lambda * u_max);
    let (_, eb) = digamma_real_estimate(zmax)?;
    let tail = 2.0 * c * (((2.0 * lambda + k / u_max) * u_max).ln() + 1.0 + eb) / u_max;
    Ok((r.value, r.error + tail))
}

/// `Λ_L(n)` with a shared sieve for the built-in oracles.
fn lambda_l(oracle: &Oracle, table: &MangoldtTable, n: u64) -> Result<Complex64> {
    Ok(match oracle {
        Oracle::Zeta => Complex64::new(table.lambda(n), 0.0),
        Oracle::Dirichlet(chi) => chi.value(n) * table.lambda(n),
        Oracle::Table { .. } => oracle.lambda(n)?,
    })
}

fn shared_table() -> &'static MangoldtTable {
    static T: OnceLock<MangoldtTable> = OnceLock::new();
    T.get_or_init(|| MangoldtTable::new(LOG_L_TERMS).expect("sieve below cap"))
}

fn table_for(n: u64) -> Result<std::borrow::Cow<'static, MangoldtTable>> {
    if n <= LOG_L_TERMS {
        Ok(std::borrow::Cow::Borrowed(shared_table()))
    } else if n <= SIEVE_CAP {
        Ok(std::borrow::Cow::Owned(MangoldtTable::new(n)?))
    } else {
        domain(format!("prime sum up to {n} beyond sieve cap {SIEVE_CAP}"))
    }
}

/// The right-hand side of the explicit formula, term by term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GuinandWeil {
    /// `2 m_L Re h(t − i/2)`.
    pub pole: f64,
    /// `(log Q/π) ĥ(0)`.
    pub conductor: f64,
    /// `(1/π) Σ n^{−1/2} Re(conj(Λ(n)) ĥ(log n/2π) e^{it log n})`, subtracted.
    pub prime: f64,
    /// `(1/π) Σ_j λ_j ∫ h(u) Re ψ(λ_j/2 + μ_j + iλ_j(t−u)) du`.
    pub gamma: f64,
    pub rhs: f64,
    /// Series tails and quadrature error estimates.
    pub error: f64,
}

pub fn guinand_weil_rhs(desc: &SelbergDescriptor, ctx: &ExtremalContext, kind: Kind, t: f64) -> Result<GuinandWeil> {
    let m_l = desc.pole_order as f64;
    let pole = if m_l == 0.0 { 0.0 } else { 2.0 * m_l * h_complex(ctx, kind, Complex64::new(t, -0.5)).re };
    let (h0, h0_tail) = hat(ctx, kind, 0.0);
    let conductor = desc.q_factor.ln() / PI * h0;
    let x = (2.0 * PI * ctx.delta).exp();
    let n_max = x.floor() as u64;
    let table = table_for(n_max.max(2))?;
    let mut acc = KahanSum::new();
    let mut err = h0_tail * desc.q_factor.ln().abs() / PI;
    for n in 2..=n_max {
        let lam = lambda_l(&desc.oracle, &table, n)?;
        if lam.norm() == 0.0 {
            continue;
        }
        let ln_n = (n as f64).ln();
        let (hv, tail) = hat(ctx, kind, ln_n / (2.0 * PI));
        let phase = Complex64::from_polar(1.0, t * ln_n);
        acc.add((lam.conj() * hv * phase).re / (n as f64).sqrt());
        err += lam.norm() * tail / (n as f64).sqrt() / PI;
    }
    let prime = acc.value() / PI;
    let mut g = KahanSum::new();
    for gf in &desc.gamma_factors {
        let (v, e) = gamma_integral(ctx, kind, gf.lambda, gf.mu, t)?;
        g.add(gf.lambda * v);
        err += gf.lambda * e / PI;
    }
    let gamma = g.value() / PI;
    let rhs = ksum([pole, conductor, -prime, gamma]);
    Ok(GuinandWeil { pole, conductor, prime, gamma, rhs, error: err })
}

/// Zero side against the right-hand side of the explicit formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GwBalance {
    pub zero_side: ZeroSum,
    pub rhs: GuinandWeil,
    pub residual: f64,
    pub tolerance: f64,
    pub balanced: bool,
}

pub fn guinand_weil_balance(
    desc: &SelbergDescriptor,
    ctx: &ExtremalContext,
    zeros: &ZeroDataset,
    kind: Kind,
    t: f64,
    quad_tol: f64,
) -> Result<GwBalance> {
    let zero_side = zero_sum(ctx, zeros, t, kind)?;
    let rhs = guinand_weil_rhs(desc, ctx, kind, t)?;
    let residual = zero_side.value - rhs.rhs;
    let tolerance = zero_side.truncation_bound + rhs.error + quad_tol;
    Ok(GwBalance { zero_side, rhs, residual, tolerance, balanced: residual.abs() <= tolerance })
}

// ---- the log-modulus identity ----------------------------------------------------------

/// Bounds for the remainder `L` in
/// `log|L(σ+it)| = (5/4−σ/2) log τ − ½Σ f_σ(t−γ) + log|L(5/2+it)| + L`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LInterval {
    pub l_up: f64,
    pub l_down: f64,
    pub components: BTreeMap<String, f64>,
}

/// `|t| ≥ b⁺ + √((1+a⁺)(5/2+a⁺))`.
pub fn identity_condition(inv: &DerivedInvariants, t: f64) -> Check {
    let need = inv.b_plus + ((1.0 + inv.a_plus) * (2.5 + inv.a_plus)).sqrt();
    Check::ge("|t| >= b+ + sqrt((1+a+)(5/2+a+))", t.abs(), need)
}

pub fn l_interval(desc: &SelbergDescriptor, t: f64) -> Result<LInterval> {
    let inv = desc.invariants()?;
    let c = identity_condition(&inv, t);
    failed(std::slice::from_ref(&c))?;
    let (d, ap, bp, lm, f) = (inv.d, inv.a_plus, inv.b_plus, inv.lambda_minus, inv.f as f64);
    let m_l = desc.pole_order as f64;
    let at = t.abs();
    let tb = at - bp;
    let q = 15.0 / (4.0 * t * t);
    let l1 = m_l / 2.0 * (17.0 / (2.0 * t * t) + q * q).ln_1p();
    let l2_up = d * (1.25 * ((2.5 + ap + bp) / at).ln_1p() - 0.5 * (-bp / at).ln_1p());
    let l2_down = d * (1.25 * (-bp / at).ln_1p() - 0.5 * ((1.0 + ap + bp) / at).ln_1p());
    let g2 = 0.5 * (((2.5 + ap) / tb).powi(2)).ln_1p();
    let l3_up = g2 * desc.gamma_factors.iter().map(|g| (g.mu.re - 0.5).max(0.0)).sum::<f64>();
    let l3_down = g2 * desc.gamma_factors.iter().map(|g| (g.mu.re - 0.5).min(0.0)).sum::<f64>();
    let l4_up = (4.0 * d + f / (6.0 * lm) + f / (45.0 * lm.powi(3) * tb)) / (tb * tb);
    let l4_down = -(d * (ap * ap + 3.5 * ap + 6.5) + f / (45.0 * lm.powi(3) * tb)) / (tb * tb);
    let components: BTreeMap<String, f64> = [
        ("L1", l1),
        ("L2_up", l2_up),
        ("L2_down", l2_down),
        ("L3_up", l3_up),
        ("L3_down", l3_down),
        ("L4_up", l4_up),
        ("L4_down", l4_down),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(LInterval { l_up: l1 + l2_up + l3_up + l4_up, l_down: l2_down + l3_down + l4_down, components })
}

/// The remainder `L` evaluated exactly from its definition with `log Γ`.
pub fn l_exact(desc: &SelbergDescriptor, sigma: f64, t: f64) -> Result<f64> {
    let inv = desc.invariants()?;
    let m_l = desc.pole_order as f64;
    let s5 = Complex64::new(2.5, t);
    let s = Complex64::new(sigma, t);
    let ratio = (s5 * (s5 - 1.0)).norm() / (s * (s - 1.0)).norm();
    let mut acc = KahanSum::new();
    acc.add(m_l * ratio.ln());
    acc.add((2.5 - sigma) * desc.q_factor.ln());
    for g in &desc.gamma_factors {
        acc.add(reference_log_gamma(s5 * g.lambda + g.mu, 10)?.re);
        acc.add(-reference_log_gamma(s * g.lambda + g.mu, 10)?.re);
    }
    acc.add(-(1.25 - sigma / 2.0) * inv.tau(t)?.ln());
    Ok(acc.value())
}

/// `log L(5/2+it)` from the series `Σ Λ_L(n)/(n^s log n)` and a bound for the
/// omitted tail.
pub fn log_l_five_halves(desc: &SelbergDescriptor, t: f64) -> Result<(Complex64, f64)> {
    let mut n_max = LOG_L_TERMS;
    if let Some(cap) = desc.oracle.max_n() {
        n_max = n_max.min(cap);
    }
    let table = table_for(n_max)?;
    let s = Complex64::new(2.5, t);
    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    for n in 2..=n_max {
        let lam = lambda_l(&desc.oracle, &table, n)?;
        if lam.norm() == 0.0 {
            continue;
        }
        let ln_n = (n as f64).ln();
        let v = lam / ln_n * (-s * ln_n).exp();
        re.add(v.re);
        im.add(v.im);
    }
    let nf = n_max as f64;
    let tail = match desc.euler_order {
        // |Λ_L(n)|/log n ≤ m for prime powers.
        Some(m) => m as f64 * nf.powf(-1.5) / 1.5,
        None => {
            let th = desc.coeff_bounds.theta;
            desc.coeff_bounds.c_e * nf.powf(th - 1.5) / (1.5 - th)
        }
    };
    Ok((Complex64::new(re.value(), im.value()), tail))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub sigma: f64,
    pub t: f64,
    pub log_tau: f64,
    /// `(5/4 − σ/2) log τ`.
    pub main_term: f64,
    /// `Σ_γ f_σ(t−γ)` over the table.
    pub zero_sum: ZeroSum,
    pub log_l_five_halves: f64,
    pub log_l_five_halves_tail: f64,
    pub interval: LInterval,
    /// `log|L(σ+it)|` when a reference evaluator exists (ζ only).
    pub lhs: Option<f64>,
    /// `lhs − main_term + ½Σ f_σ − log|L(5/2+it)|`, an estimate of `L`.
    pub residual: Option<f64>,
    /// Truncation allowance for the residual: half the zero-sum bound plus
    /// the series tails.
    pub t_trunc: f64,
    pub inside: Option<bool>,
    pub preconditions: Vec<Check>,
}

pub fn log_modulus_identity(desc: &SelbergDescriptor, sigma: f64, t: f64, zeros: &ZeroDataset) -> Result<IdentityReport> {
    let inv = desc.invariants()?;
    let mut pre = vec![
        identity_condition(&inv, t),
        Check::new("1/2 <= sigma <= 1", (0.5..=1.0).contains(&sigma), format!("sigma = {sigma}")),
    ];
    if sigma == 0.5 {
        let hit = zeros.ordinates.iter().any(|&g| (g - t.abs()).abs() < 1e-9);
        pre.push(Check::new("t is not a zero ordinate", !hit, format!("t = {t}")));
    }
    failed(&pre)?;
    let log_tau = inv.tau(t)?.ln();
    let main_term = (1.25 - sigma / 2.0) * log_tau;
    let zs = zero_sum_f(zeros, sigma, t)?;
    let (l52, l52_tail) = log_l_five_halves(desc, t)?;
    let interval = l_interval(desc, t)?;
    let (lhs, lhs_err) = match desc.oracle {
        Oracle::Zeta if sigma >= 0.5 => {
            let z = zeta_reference(sigma, t, None)?;
            (Some(z.log.re), z.tail_bound / z.value.norm())
        }
        _ => (None, 0.0),
    };
    let t_trunc = 0.5 * zs.truncation_bound + l52_tail + lhs_err;
    let residual = lhs.map(|v| ksum([v, -main_term, 0.5 * zs.value, -l52.re]));
    let inside = residual.map(|r| r >= interval.l_down - t_trunc && r <= interval.l_up + t_trunc);
    Ok(IdentityReport {
        sigma,
        t,
        log_tau,
        main_term,
        zero_sum: zs,
        log_l_five_halves: l52.re,
        log_l_five_halves_tail: l52_tail,
        interval,
        lhs,
        residual,
        t_trunc,
        inside,
        preconditions: pre,
    })
}

// ---- bounds for the gamma, pole and prime pieces ------------------------------------------

/// Constants in the pointwise bounds assumed of the test function `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierGammaConfig {
    pub m1: f64,
    pub m1p: f64,
    pub m2: f64,
    pub m2p: f64,
    pub m3: f64,
    pub m3p: f64,
    pub big_m: f64,
    pub big_m2: f64,
    pub a_frak: f64,
    pub b_frak: f64,
}

impl FourierGammaConfig {
    /// The constants proven for `g_Δ` (kind G) or `m_Δ` (kind M), together
    /// with the range of `Δ` where those estimates hold.
    pub fn for_kind(kind: Kind, sigma: f64, delta: f64, a_frak: f64, b_frak: f64) -> Result<(Self, Check)> {
        if !(sigma > 0.5 && sigma <= 1.0 && delta > 0.0) {
            return domain("need 1/2 < sigma <= 1 and Delta > 0");
        }
        if !(a_frak > 0.0 && b_frak > 0.0) {
            return domain("a_frak and b_frak must be positive");
        }
        Ok(match kind {
            Kind::G => (
                FourierGammaConfig {
                    m1: 121.0,
                    m1p: 0.0,
                    m2: 4.0,
                    m2p: 0.0,
                    m3: 28.0,
                    m3p: 0.0,
                    big_m: 1e4 / delta,
                    big_m2: 350.0 / delta,
                    a_frak,
                    b_frak,
                },
                Check::ge("Delta >= 0.8", delta, 0.8),
            ),
            Kind::M => {
                let l = (2.0 / (sigma - 0.5)).ln();
                let k = 4.0 / (PI * PI) * l;
                (
                    FourierGammaConfig {
                        m1: 24.0,
                        m1p: 2.0 * l / (delta * delta),
                        m2: 13.0 + k / (delta * delta),
                        m2p: k,
                        m3: 4.0,
                        m3p: k / (delta * delta),
                        big_m: 17.0,
                        big_m2: 1e4 / delta,
                        a_frak,
                        b_frak,
                    },
                    Check::ge("Delta >= 5", delta, 5.0),
                )
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IHat {
    pub i1: f64,
    pub i2: f64,
    pub checks: Vec<Check>,
}

/// Conditions on `t`, `𝔞`, `𝔟` under which `|I| ≤ Î₁ + Î₂`.
pub fn i_hat_checks(inv: &DerivedInvariants, cfg: &FourierGammaConfig, delta: f64, t: f64) -> Vec<Check> {
    let at = t.abs();
    let (ap, bp) = (inv.a_plus, inv.b_plus);
    vec![
        Check::ge("|t| >= 4(a+ + b+) + 4", at, 4.0 * (ap + bp) + 4.0),
        Check::new(
            "0 < a_frak <= sqrt(Delta |t|)/4",
            cfg.a_frak > 0.0 && cfg.a_frak <= 0.25 * (delta * at).sqrt(),
            format!("a_frak = {}, limit = {}", cfg.a_frak, 0.25 * (delta * at).sqrt()),
        ),
        Check::ge("a_frak sqrt(|t|/Delta) >= M", cfg.a_frak * (at / delta).sqrt(), cfg.big_m),
        Check::ge(
            "|t| - (b_frak/lambda-) sqrt(Delta |t|) - b+ >= M",
            at - cfg.b_frak / inv.lambda_minus * (delta * at).sqrt() - bp,
            cfg.big_m,
        ),
    ]
}

pub fn i_hat_bounds(inv: &DerivedInvariants, cfg: &FourierGammaConfig, delta: f64, t: f64) -> Result<IHat> {
    let at = t.abs();
    if !(at > 0.0 && delta > 0.0) {
        return domain("need t != 0 and Delta > 0");
    }
    let checks = i_hat_checks(inv, cfg, delta, t);
    let (d, ap, bp, lp, lm) = (inv.d, inv.a_plus, inv.b_plus, inv.lambda_plus, inv.lambda_minus);
    let (a, b) = (cfg.a_frak, cfg.b_frak);
    let r = (delta / at).sqrt();
    let s = (delta * at).sqrt();
    let c = ap + bp + 0.5;
    let i1 = d / a * (2.0 * at).ln() * r * (cfg.m2 + cfg.m2p * delta / (3.0 * a * a * at))
        + d * r * (cfg.m1 * (a * s).ln_1p() + cfg.m1p * (a * s).atan()) * (a + c * r) * (1.0 + a / s + c / at);
    let da = delta * at;
    let k1 = lp * (0.5 + ap) + 1.0 / 6.0;
    let first = d / (2.0 * b * b * at)
        * (k1 + 2f64.sqrt() / (15.0 * b * b * da))
        * (cfg.m1 * da.ln_1p() + cfg.m1p * delta * da.atan() + cfg.m2 / da + cfg.m2p / (3.0 * da.powi(3)));
    let big_b = b / lm * s + bp;
    let den = t * t - big_b * big_b;
    let w = (2.0 / lm).powi(2);
    let second = d * (k1 + 2f64.sqrt() / 15.0 * w) * w * big_b / den
        * (cfg.m2 + cfg.m2p * (3.0 * t * t + big_b * big_b) / (3.0 * delta * delta * den * den));
    Ok(IHat { i1, i2: first + second, checks })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct I3I4 {
    pub i3: f64,
    pub i4: Estimate,
    pub checks: Vec<Check>,
}

/// Bounds for the pole term `I₃` and the prime-power term `I₄`.
#[allow(clippy::too_many_arguments)]
pub fn i3_i4_bounds(
    desc: &SelbergDescriptor,
    ctx: &ExtremalContext,
    cfg: &FourierGammaConfig,
    t: f64,
    kind: Kind,
    mode: SumMode,
    profile: Option<&ConjectureProfile>,
    alpha: Option<f64>,
    nu: (f64, f64),
) -> Result<I3I4> {
    let inv = desc.invariants()?;
    let delta = ctx.delta;
    let at = t.abs();
    let mut checks = i_hat_checks(&inv, cfg, delta, t);
    checks.push(Check::ge("|t| >= M2", at, cfg.big_m2));
    let m_l = desc.pole_order as f64;
    let i3 = m_l
        * delta
        * delta
        * (cfg.m3 / (1.0 + delta * at) + cfg.m3p / (1.0 + delta * delta * t * t))
        * (PI * delta).exp();
    let i4 = i4_bound(desc, ctx, mode, kind, profile, alpha, nu)?;
    Ok(I3I4 { i3, i4, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::parse_zeros;

    fn zeros() -> ZeroDataset {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/zeta_zeros_1e4.txt"))
            .expect("fixture");
        parse_zeros(&text, "fixture").unwrap()
    }

    #[test]
    fn interval_signs_and_zeta_condition() {
        let z = SelbergDescriptor::zeta();
        let iv = l_interval(&z, 100.0).unwrap();
        assert!(iv.components["L1"] > 0.0);
        assert!(iv.components["L4_down"] < 0.0);
        assert!(iv.l_down <= 0.0 && 0.0 <= iv.l_up);
        assert!(l_interval(&z, 1.5).is_err());
        assert!(l_interval(&z, 1.59).is_ok());
        let chi = SelbergDescriptor::dirichlet(5, 1).unwrap();
        assert_eq!(l_interval(&chi, 100.0).unwrap().components["L1"], 0.0);
    }

    #[test]
    fn exact_remainder_lies_in_interval() {
        for desc in [SelbergDescriptor::zeta(), SelbergDescriptor::dirichlet(7, 2).unwrap()] {
            for &t in &[3.0, 17.5, 100.0, 2500.0] {
                for &s in &[0.5, 0.75, 1.0] {
                    let iv = l_interval(&desc, t).unwrap();
                    let l = l_exact(&desc, s, t).unwrap();
                    assert!(iv.l_down <= l && l <= iv.l_up, "t={t} s={s}: {} <= {l} <= {}", iv.l_down, iv.l_up);
                }
            }
        }
    }

    #[test]
    fn log_zeta_five_halves_two_ways() {
        let z = SelbergDescriptor::zeta();
        for &t in &[0.0, 14.0, 250.0] {
            let (v, tail) = log_l_five_halves(&z, t).unwrap();
            let r = zeta_reference(2.5, t, None).unwrap();
            assert!((v - r.log).norm() < tail + 1e-12, "t={t}");
        }
    }

    #[test]
    fn identity_residual_matches_exact_remainder() {
        let zs = zeros();
        let z = SelbergDescriptor::zeta();
        let rep = log_modulus_identity(&z, 0.75, 100.0, &zs).unwrap();
        let l = l_exact(&z, 0.75, 100.0).unwrap();
        let r = rep.residual.unwrap();
        assert!(rep.inside.unwrap());
        // The only gap is the omitted zeros above the table.
        assert!(r <= l + 1e-9 && l - r <= rep.t_trunc, "{r} vs {l}, trunc {}", rep.t_trunc);
    }

    #[test]
    fn zero_sum_refuses_uncovered_height() {
        let zs = zeros();
        let ctx = ExtremalContext::new(0.75, 1.0).unwrap();
        assert!(matches!(zero_sum(&ctx, &zs, 6000.0, Kind::G), Err(Error::Incomplete(_))));
    }

    #[test]
    fn truncated_table_within_bound() {
        let full = zeros();
        let mut half = full.clone();
        half.complete_to = 5000.0;
        half.ordinates.retain(|&g| g <= 5000.0);
        for &t in &[100.0, 1500.0] {
            let a = zero_sum_f(&full, 0.75, t).unwrap();
            let b = zero_sum_f(&half, 0.75, t).unwrap();
            assert!(a.value - b.value <= b.truncation_bound && a.value >= b.value);
        }
    }

    #[test]
    fn gamma_integral_two_routes() {
        let ctx = ExtremalContext::new(0.75, 1.0).unwrap();
        for kind in [Kind::G, Kind::M] {
            let (f, fe) = gamma_integral(&ctx, kind, 0.5, Complex64::new(0.0, 0.0), 30.0).unwrap();
            let (d, de) = gamma_integral_direct(&ctx, kind, 0.5, Complex64::new(0.0, 0.0), 30.0, 400.0).unwrap();
            assert!((f - d).abs() <= fe + de, "{kind:?}: {f} vs {d} (allowance {})", fe + de);
            assert!(de < 0.2);
        }
    }

    #[test]
    fn conductor_term_vanishes_for_q_one() {
        let mut z = SelbergDescriptor::zeta();
        z.q_factor = 1.0;
        let ctx = ExtremalContext::new(0.75, 0.5).unwrap();
        assert_eq!(guinand_weil_rhs(&z, &ctx, Kind::G, 50.0).unwrap().conductor, 0.0);
    }

    #[test]
    fn explicit_formula_balances_for_zeta() {
        let zs = zeros();
        let z = SelbergDescriptor::zeta();
        let ctx = ExtremalContext::new(0.75, 1.0).unwrap();
        for &t in &[50.0, 100.0, 500.0] {
            for kind in [Kind::G, Kind::M] {
                let b = guinand_weil_balance(&z, &ctx, &zs, kind, t, 1e-6).unwrap();
                assert!(b.balanced, "t={t} {kind:?}: residual {} tolerance {}", b.residual, b.tolerance);
            }
        }
    }

    #[test]
    fn gamma_error_term_within_hat_bounds() {
        // I = (gamma integral) − ĥ(0)(½ log τ − log Q) is bounded by Î₁ + Î₂.
        let z = SelbergDescriptor::zeta();
        let inv = z.invariants().unwrap();
        let (delta, t) = (5.0, 2000.0);
        let ctx = ExtremalContext::new(0.75, delta).unwrap();
        let (cfg, dcheck) = FourierGammaConfig::for_kind(Kind::M, 0.75, delta, 1.0, 1.0).unwrap();
        assert!(dcheck.satisfied);
        let ih = i_hat_bounds(&inv, &cfg, delta, t).unwrap();
        assert!(all_hold(&ih.checks), "{:?}", ih.checks);
        let (g, _) = gamma_integral(&ctx, Kind::M, 0.5, Complex64::new(0.0, 0.0), t).unwrap();
        let h0 = ctx.mhat(0.0).value;
        let i = 0.5 * g - h0 * (0.5 * inv.tau(t).unwrap().ln() - z.q_factor.ln());
        assert!(i.abs() <= ih.i1 + ih.i2, "{i} vs {}", ih.i1 + ih.i2);
    }

    #[test]
    fn hat_bounds_vanish_with_zero_constants() {
        let inv = SelbergDescriptor::zeta().invariants().unwrap();
        let cfg = FourierGammaConfig {
            m1: 0.0,
            m1p: 0.0,
            m2: 0.0,
            m2p: 0.0,
            m3: 0.0,
            m3p: 0.0,
            big_m: 17.0,
            big_m2: 1.0,
            a_frak: 1.0,
            b_frak: 1.0,
        };
        let ih = i_hat_bounds(&inv, &cfg, 5.0, 2000.0).unwrap();
        assert_eq!((ih.i1, ih.i2), (0.0, 0.0));
        let chi = SelbergDescriptor::dirichlet(5, 1).unwrap();
        let ctx = ExtremalContext::new(0.75, 5.0).unwrap();
        let (cfg, _) = FourierGammaConfig::for_kind(Kind::M, 0.75, 5.0, 1.0, 1.0).unwrap();
        let r = i3_i4_bounds(&chi, &ctx, &cfg, 2000.0, Kind::M, SumMode::Poly, None, None, (0.99, 1.25)).unwrap();
        assert_eq!(r.i3, 0.0);
    }
}
