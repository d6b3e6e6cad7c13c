//! Chebyshev-type sums of `|Λ_L(n)|`, the integrals `A_f`, `B_f`, `C_1`–`C_3`,
//! the helper family `η_1`–`η_5`, `T`, and bounds for the prime-power sum
//! `(1/2π) Σ |Λ_L(n)| n^{−1/2} |ĥ(log n/2π)|`.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::bounds::{a1, a2, a6};
use crate::error::{domain, Error, Result};
use crate::extremal::ExtremalContext;
use crate::kahan::KahanSum;
use crate::lfunc::{ConjectureMode, ConjectureProfile, Oracle, SelbergDescriptor};
use crate::primes::{MangoldtTable, SIEVE_CAP};
use crate::quad;
use crate::EULER_GAMMA;

const QUAD_REL: f64 = 1e-11;
const QUAD_SEGMENTS: usize = 4000;

// ---- ψ̃_L ---------------------------------------------------------------------

/// Running sums `ψ̃_L(n) = Σ_{k≤n} |Λ_L(k)|` for `n ≤ x_max`.
#[derive(Debug, Clone)]
pub struct PsiTildeTable {
    cumulative: Vec<f64>,
}

impl PsiTildeTable {
    pub fn new(desc: &SelbergDescriptor, x_max: f64) -> Result<Self> {
        if !(x_max >= 0.0) {
            return domain("psi_tilde needs x_max >= 0");
        }
        let n = x_max.floor() as u64;
        if n > SIEVE_CAP {
            return domain(format!("x_max = {x_max} beyond sieve cap {SIEVE_CAP}"));
        }
        if let Some(cap) = desc.oracle.max_n() {
            if n > cap {
                return Err(Error::Incomplete(format!("coefficient table ends at n = {cap}, need {n}")));
            }
        }
        let table = MangoldtTable::new(n)?;
        let mut cumulative = vec![0.0; n as usize + 1];
        let mut acc = KahanSum::new();
        for k in 1..=n {
            let l = table.lambda(k);
            let v = match &desc.oracle {
                Oracle::Zeta => l,
                Oracle::Dirichlet(chi) => l * chi.value(k).norm(),
                Oracle::Table { .. } => desc.oracle.lambda(k)?.norm(),
            };
            acc.add(v);
            cumulative[k as usize] = acc.value();
        }
        Ok(Self { cumulative })
    }

    pub fn x_max(&self) -> f64 {
        (self.cumulative.len() - 1) as f64
    }

    pub fn psi_tilde(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return domain("psi_tilde needs x >= 0");
        }
        let k = x.floor() as usize;
        self.cumulative
            .get(k)
            .copied()
            .ok_or_else(|| Error::Domain(format!("x = {x} beyond table limit {}", self.x_max())))
    }
}

pub fn psi_tilde(desc: &SelbergDescriptor, x: f64) -> Result<f64> {
    PsiTildeTable::new(desc, x)?.psi_tilde(x)
}

// ---- estimates with envelopes ------------------------------------------------

/// An `O(·)` term rendered as `envelope_constant × shape`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeTerm {
    pub label: String,
    pub shape: f64,
}

/// An upper bound split into its exact part and its asymptotic envelopes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub main: f64,
    pub envelopes: Vec<EnvelopeTerm>,
    pub envelope_constant: f64,
    pub case: String,
}

impl Estimate {
    fn exact(main: f64, case: &str) -> Self {
        Self { main, envelopes: Vec::new(), envelope_constant: 1.0, case: case.into() }
    }

    fn env(mut self, label: &str, shape: f64) -> Self {
        self.envelopes.push(EnvelopeTerm { label: label.into(), shape });
        self
    }

    fn scaled(mut self, k: f64) -> Self {
        self.main *= k;
        for e in &mut self.envelopes {
            e.shape *= k;
        }
        self
    }

    pub fn with_envelope_constant(mut self, c: f64) -> Self {
        self.envelope_constant = c;
        self
    }

    pub fn envelope_total(&self) -> f64 {
        self.envelope_constant * self.envelopes.iter().map(|e| e.shape).sum::<f64>()
    }

    pub fn total(&self) -> f64 {
        self.main + self.envelope_total()
    }
}

/// Which hypothesis supplies the bound on `ψ̃_L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SumMode {
    General { eps: f64 },
    Conj1,
    Conj2,
    Poly,
}

fn need_profile<'a>(
    mode: SumMode,
    profile: Option<&'a ConjectureProfile>,
) -> Result<&'a ConjectureProfile> {
    let want = match mode {
        SumMode::Conj1 => ConjectureMode::Conj1,
        SumMode::Conj2 => ConjectureMode::Conj2,
        _ => unreachable!(),
    };
    match profile {
        Some(p) if p.mode == want => Ok(p),
        _ => domain(format!("mode {mode:?} needs a conjecture profile of kind {want:?}")),
    }
}

fn euler_order(desc: &SelbergDescriptor) -> Result<f64> {
    desc.euler_order
        .map(f64::from)
        .ok_or_else(|| Error::Domain("polynomial mode needs an Euler product order m".into()))
}

/// Upper bound for `ψ̃_L(x)` in each of the four regimes.
pub fn mangoldt_sum_bound(
    desc: &SelbergDescriptor,
    x: f64,
    mode: SumMode,
    profile: Option<&ConjectureProfile>,
) -> Result<Estimate> {
    if !(x >= 2.0) {
        return domain("mangoldt_sum_bound needs x >= 2");
    }
    let cb = &desc.coeff_bounds;
    let l2 = x.ln().powi(2);
    Ok(match mode {
        SumMode::General { eps } => {
            if !(eps > 0.0 && eps < 0.5) {
                return domain("eps must lie in (0, 1/2)");
            }
            let cr = (cb.c_r)(eps);
            Estimate::exact(cr * x.powf(1.0 + eps), "general").env(
                "(C_R + C_E) x^(1/2 + max(theta, eps)) log^2 x",
                (cr + cb.c_e) * x.powf(0.5 + cb.theta.max(eps)) * l2,
            )
        }
        SumMode::Conj1 => {
            let p = need_profile(mode, profile)?;
            let c1 = (p.c_p1)(x);
            Estimate::exact(c1.sqrt() * x, "conj1")
                .env("sqrt(C_P1 + C_P2) x / sqrt(log x)", (c1 + p.c_p2).sqrt() * x / x.ln().sqrt())
                .env("C_E x^(1/2 + theta) log^2 x", cb.c_e * x.powf(0.5 + cb.theta) * l2)
        }
        SumMode::Conj2 => {
            let p = need_profile(mode, profile)?;
            Estimate::exact((p.c_p1)(x) * x + p.c_p2 * x / x.ln(), "conj2")
                .env("C_E x^(1/2 + theta) log^2 x", cb.c_e * x.powf(0.5 + cb.theta) * l2)
        }
        SumMode::Poly => {
            let m = euler_order(desc)?;
            Estimate::exact(m * (x + x.sqrt() * l2 / (8.0 * PI)), "poly")
        }
    })
}

/// `|ψ(x) − x| ≤ 2√x log² x`.
pub fn psi_error_bound(x: f64) -> f64 {
    2.0 * x.sqrt() * x.ln().powi(2)
}

/// `Σ_{X<n≤Y} 1/n ≤ log(Y/X) + 1/(2Y) + 2(log 2 + γ − 1)/X`.
pub fn harmonic_bound(x: f64, y: f64) -> f64 {
    (y / x).ln() + 0.5 / y + 2.0 * (LN_2 + EULER_GAMMA - 1.0) / x
}

// ---- θ_1, θ_2 ----------------------------------------------------------------

/// `θ_1(u) = (e^u − u − 1)/u²`.
pub fn theta1(u: f64) -> f64 {
    if u.abs() < 0.05 {
        // Σ u^k/(k+2)!
        let mut term = 0.5;
        let mut s = 0.5;
        for k in 1..12 {
            term *= u / (k as f64 + 2.0);
            s += term;
        }
        s
    } else {
        (u.exp_m1() - u) / (u * u)
    }
}

/// `θ_2(u) = (e^u − 1)/u`.
pub fn theta2(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        u.exp_m1() / u
    }
}

/// `∫_a^b θ_2(u) du`.
pub fn theta2_integral(a: f64, b: f64) -> f64 {
    let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
    sign * quad::integrate(theta2, lo, hi, 1e-14, QUAD_REL, QUAD_SEGMENTS).value
}

/// `∫_0^ν θ_1(u) du`.
pub fn theta1_integral(nu: f64) -> f64 {
    quad::integrate(theta1, 0.0, nu, 1e-14, QUAD_REL, QUAD_SEGMENTS).value
}

// ---- A_f, B_f and the second integral ----------------------------------------

/// Pair of quadrature results.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbIntegrals {
    pub a_f: f64,
    pub b_f: f64,
    pub a_err: f64,
    pub b_err: f64,
    pub converged: bool,
}

fn log_pieces(lo: f64, hi: f64) -> Vec<f64> {
    let k = ((hi - lo).ceil() as usize).clamp(1, 64);
    (0..=k).map(|i| lo + (hi - lo) * i as f64 / k as f64).collect()
}

fn check_x_sigma(x: f64, sigma: f64) -> Result<()> {
    if !(x >= 2.0 && x.is_finite()) {
        return domain("need finite x >= 2");
    }
    if !(sigma > 0.5 && sigma <= 1.0) {
        return domain("need sigma in (1/2, 1]");
    }
    Ok(())
}

/// `A_f(x, σ)` and `B_f(x, σ)` by quadrature in `v = log u`; `f_prime` is `f′`.
pub fn a_f_b_f<F: Fn(f64) -> f64>(sigma: f64, x: f64, f_prime: F) -> Result<AbIntegrals> {
    check_x_sigma(x, sigma)?;
    let lx = x.ln();
    let c = 2.0 * sigma - 1.0;
    let pts = log_pieces(LN_2, lx);
    // du = u dv, so u^{−σ} du = e^{(1−σ)v} dv and u^{σ−1} du = e^{σv} dv.
    let ia = |v: f64| {
        let u = v.exp();
        f_prime(u) * (((1.0 - sigma) * v).exp() / v - (sigma * v - c * lx).exp() / (2.0 * lx - v))
    };
    let ib = |v: f64| {
        let u = v.exp();
        f_prime(u) * (((1.0 - sigma) * v).exp() - (sigma * v - c * lx).exp())
    };
    let ra = quad::integrate_pieces(ia, &pts, 1e-13, QUAD_REL, QUAD_SEGMENTS);
    let rb = quad::integrate_pieces(ib, &pts, 1e-13, QUAD_REL, QUAD_SEGMENTS);
    let pre = 1.0 / ((x.powf(sigma - 0.5) + 1.0) * lx);
    Ok(AbIntegrals {
        a_f: ra.value,
        b_f: pre * rb.value,
        a_err: ra.error,
        b_err: pre * rb.error,
        converged: ra.converged && rb.converged,
    })
}

/// The integral `∫_2^x du/(u^σ(2 log x − log u))`, its leading term
/// `x^{1−σ}/((1−σ) log x)` and the bound on their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondIntegral {
    pub integral: f64,
    pub leading: f64,
    pub bound: f64,
}

pub fn second_integral(x: f64, sigma: f64) -> Result<SecondIntegral> {
    if !(x >= 2.0 && sigma < 1.0) {
        return domain("second_integral needs x >= 2 and sigma < 1");
    }
    let lx = x.ln();
    let s = 1.0 - sigma;
    let f = |v: f64| (s * v).exp() / (2.0 * lx - v);
    let integral = quad::integrate_pieces(f, &log_pieces(LN_2, lx), 1e-13, QUAD_REL, QUAD_SEGMENTS).value;
    let xs = x.powf(s);
    let leading = xs / (s * lx);
    let bound = (1.0 + s * lx * lx / (2.0 * lx - LN_2) * (2.0 / x).powf(s)) * xs / (s * s * lx * lx);
    Ok(SecondIntegral { integral, leading, bound })
}

// ---- C_1, C_2, C_3 ------------------------------------------------------------

/// `∫_2^x (ψ(u) − u) h′(u) du` for smooth `h`, exactly in ψ: with ψ constant on
/// `[k, k+1)` the integral equals `Σ ψ(k)(h(k⁺) − h(k)) − [u h]_2^x + ∫_2^x h`.
fn stieltjes_psi<H: Fn(f64) -> f64>(table: &MangoldtTable, x: f64, h: H, h_int: f64) -> f64 {
    let kmax = x.floor() as u64;
    let mut acc = KahanSum::new();
    for k in 2..=kmax {
        let hi = ((k + 1) as f64).min(x);
        if hi > k as f64 {
            acc.add(table.psi(k as f64).unwrap() * (h(hi) - h(k as f64)));
        }
    }
    acc.add(-(x * h(x) - 2.0 * h(2.0)));
    acc.add(h_int);
    acc.value()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CTerms {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// The two ψ-integrals inside `C_1` and `C_3` (before the `C_3` prefactor).
    pub c1_integral: f64,
    pub c3_integral: f64,
}

/// `C_2(x, σ) = 0.35 + 1.17/((x² − 1) log x)`.
pub fn c2(x: f64) -> f64 {
    0.35 + 1.17 / ((x * x - 1.0) * x.ln())
}

/// `C_1`, `C_2`, `C_3` against the true `ψ(u) − u`.
pub fn c_terms(x: f64, sigma: f64, table: &MangoldtTable) -> Result<CTerms> {
    check_x_sigma(x, sigma)?;
    if sigma >= 1.0 {
        return domain("C terms need sigma < 1");
    }
    if x.floor() as u64 > table.n_max() {
        return domain(format!("x = {x} beyond the Mangoldt table"));
    }
    let lx = x.ln();
    let xc = x.powf(2.0 * sigma - 1.0);
    let h1 = |u: f64| u.powf(sigma - 1.0) / (xc * (2.0 * lx - u.ln())) - 1.0 / (u.powf(sigma) * u.ln());
    let h3 = |u: f64| u.powf(-sigma) - u.powf(sigma - 1.0) / xc;
    let pts = log_pieces(LN_2, lx);
    let h1v = |v: f64| {
        let u = v.exp();
        u * h1(u)
    };
    let h3v = |v: f64| {
        let u = v.exp();
        u * h3(u)
    };
    let i1 = quad::integrate_pieces(h1v, &pts, 1e-13, QUAD_REL, QUAD_SEGMENTS).value;
    let i3 = quad::integrate_pieces(h3v, &pts, 1e-13, QUAD_REL, QUAD_SEGMENTS).value;
    let c1_integral = stieltjes_psi(table, x, h1, i1);
    let c3_integral = stieltjes_psi(table, x, h3, i3);
    let c1 = 2f64.powf(1.0 - sigma) / LN_2 - 2f64.powf(sigma) / ((2.0 * lx - LN_2) * xc) + c1_integral;
    let c3 = (-(2f64.powf(1.0 - sigma)) + 2f64.powf(sigma) / xc + c3_integral)
        / ((x.powf(sigma - 0.5) + 1.0) * lx);
    Ok(CTerms { c1, c2: c2(x), c3, c1_integral, c3_integral })
}

/// The partial-summation bound built from `A_{f=u}`, `B_{f=u}` and `C_1`–`C_3`,
/// for `(1/2π) Σ |Λ_L(n)| n^{−1/2} |ĥ(log n/2π)|` with `|Λ_L| ≤ mΛ`.
pub fn abc_bound(x: f64, sigma: f64, m: f64, kind: Kind, table: &MangoldtTable) -> Result<f64> {
    let ab = a_f_b_f(sigma, x, |_| 1.0)?;
    let c = c_terms(x, sigma, table)?;
    let xc = x.powf(sigma - 0.5);
    Ok(m * match kind {
        Kind::G => ab.a_f - ab.b_f + c.c1 + c.c2 + c.c3,
        Kind::M => xc / (xc - 1.0) * (ab.a_f + c.c1) + c.c2,
    })
}

// ---- η_1 ... η_5, T ----------------------------------------------------------

/// Which of the two definitions each η used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EtaCases {
    /// `1 − σ ≤ α/log x` branch for `η_1`, `η_2`, `η_4`.
    pub near_one: bool,
    /// `σ − 1/2 ≤ α/log x` branch for `η_3`, `η_5`.
    pub near_half: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaValues {
    pub eta: [f64; 5],
    pub t: f64,
    pub cases: EtaCases,
}

/// Evaluate `η_1`–`η_5` and `T` with the branches fixed by `cases`. A branch
/// flagged `true` must be admissible for the given `α`.
pub fn eta_with_cases(
    x: f64,
    sigma: f64,
    alpha: Option<f64>,
    nu1: f64,
    nu2: f64,
    cases: EtaCases,
) -> Result<EtaValues> {
    if !(x >= 2.0) {
        return domain("eta needs x >= 2");
    }
    if !(sigma > 0.5 && sigma < 1.0) {
        return domain("eta needs sigma in (1/2, 1)");
    }
    if !(nu1 > 0.0 && nu1 < 1.0 && nu2 > 1.0) {
        return domain("eta needs nu1 in (0, 1) and nu2 > 1");
    }
    let lx = x.ln();
    let s1 = 1.0 - sigma;
    let alpha_ok = |cond: f64| matches!(alpha, Some(a) if a > 0.0 && cond <= a / lx);
    if cases.near_one && !alpha_ok(s1) {
        return domain("the 1 - sigma <= alpha/log x branch does not apply");
    }
    if cases.near_half && !alpha_ok(sigma - 0.5) {
        return domain("the sigma - 1/2 <= alpha/log x branch does not apply");
    }
    let a = alpha.unwrap_or(0.0);
    let p1s = 2f64.powf(s1);
    let (eta1, eta2, eta4) = if cases.near_one {
        (0.0, theta2_integral(0.5 * LN_2, a) + p1s / LN_2, 0.0)
    } else {
        let ss = sigma * s1;
        (
            (2.0 * sigma - 1.0) / ss * x.powf(s1) / lx,
            ((nu2 * sigma).powi(2) + s1 * s1) * x.powf(s1) / (ss * ss * lx * lx)
                + x.powf(s1 / nu2) / (nu1 * nu1)
                + theta1_integral(nu1)
                + (1.0 - sigma * p1s) / (s1 * LN_2),
            sigma * p1s / s1,
        )
    };
    let h = 2f64.powf(sigma - 0.5);
    let c = 2.0 * sigma - 1.0;
    let (eta3, eta5) = if cases.near_half {
        (2.0 * (a + 1.0) * (lx - LN_2), lx.powi(3) / 3.0)
    } else {
        (
            (4.0 / (h * c) - LN_2 / h) / (4.0 * PI),
            s1 * (32.0 + 4.0 * (8.0 * sigma - 4.0) * LN_2 + 4.0 * c * c * LN_2 * LN_2) / (h * c.powi(3)),
        )
    };
    Ok(EtaValues { eta: [eta1, eta2, eta3, eta4, eta5], t: eta2 + eta3, cases })
}

/// All admissible branch combinations for the given `α`.
pub fn admissible_cases(x: f64, sigma: f64, alpha: Option<f64>) -> Vec<EtaCases> {
    let lx = x.ln();
    let ok = |cond: f64| matches!(alpha, Some(a) if a > 0.0 && cond <= a / lx);
    let ones: &[bool] = if ok(1.0 - sigma) { &[false, true] } else { &[false] };
    let halves: &[bool] = if ok(sigma - 0.5) { &[false, true] } else { &[false] };
    let mut out = Vec::new();
    for &near_one in ones {
        for &near_half in halves {
            out.push(EtaCases { near_one, near_half });
        }
    }
    out
}

/// `η_1`–`η_5` and `T` on the general branches, or on the α-branches where they
/// apply. Use [`poly_i4_bound`] to pick the tightest combination.
pub fn eta_t(x: f64, sigma: f64, alpha: Option<f64>, nu1: f64, nu2: f64) -> Result<EtaValues> {
    let lx = x.ln();
    let ok = |cond: f64| matches!(alpha, Some(a) if a > 0.0 && cond <= a / lx);
    let cases = EtaCases { near_one: ok(1.0 - sigma), near_half: ok(sigma - 0.5) };
    eta_with_cases(x, sigma, alpha, nu1, nu2, cases)
}

// ---- the prime-power sum -----------------------------------------------------

/// Minorant `g_Δ` or majorant `m_Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    G,
    M,
}

/// `(1/2π) Σ_{2≤n≤x} w(n) n^{−1/2} |ĥ(log n/2π)|` for the given weights,
/// `x = e^{2πΔ}`; returns the sum and the accumulated series tail bound.
pub fn prime_sum_exact<W: Fn(u64) -> f64>(ctx: &ExtremalContext, kind: Kind, weight: W) -> (f64, f64) {
    let x = (2.0 * PI * ctx.delta).exp();
    let mut acc = KahanSum::new();
    let mut tail = 0.0;
    for n in 2..=(x.floor() as u64) {
        let w = weight(n);
        if w == 0.0 {
            continue;
        }
        let xi = (n as f64).ln() / (2.0 * PI);
        let s = match kind {
            Kind::G => ctx.ghat(xi),
            Kind::M => ctx.mhat(xi),
        };
        let k = w / (n as f64).sqrt() / (2.0 * PI);
        acc.add(k * s.value.abs());
        tail += k * s.tail_bound;
    }
    (acc.value(), tail)
}

/// Explicit bound for the prime-power sum when `|Λ_L| ≤ mΛ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolyI4 {
    pub bound: f64,
    pub eta: EtaValues,
    /// Bounds from every admissible branch combination that was tried.
    pub candidates: usize,
}

/// Explicit bound for `(1/2π) Σ |Λ_L(n)| n^{−1/2} |ĥ(log n/2π)|` under a
/// polynomial Euler product of order `m`. Every admissible branch combination
/// is evaluated and the smallest bound is returned.
///
/// For `kind = G` the right-hand side bounds the sum divided by `m`, so it is
/// multiplied by `m` here. For `kind = M` the same factor `m` is applied, which
/// is what the derivation from `|Λ_L| ≤ mΛ` gives.
pub fn poly_i4_bound(
    x: f64,
    sigma: f64,
    m: f64,
    alpha: Option<f64>,
    nu1: f64,
    nu2: f64,
    kind: Kind,
) -> Result<PolyI4> {
    if kind == Kind::M && x < 4.0 {
        return domain("the majorant bound needs x >= 4");
    }
    let lx = x.ln();
    let xc = x.powf(sigma - 0.5);
    let mut best: Option<PolyI4> = None;
    let cands = admissible_cases(x, sigma, alpha);
    for cases in &cands {
        let e = eta_with_cases(x, sigma, alpha, nu1, nu2, *cases)?;
        let [eta1, _, _, eta4, eta5] = e.eta;
        let b = match kind {
            Kind::G => {
                eta1 * xc / (xc + 1.0) + lx.ln() + e.t + 0.72 + (eta4 + eta5) / ((xc + 1.0) * lx)
            }
            Kind::M => xc / (xc - 1.0) * (eta1 + lx.ln() + e.t - LN_2.ln()) + 0.35,
        } * m;
        if best.map_or(true, |p| b < p.bound) {
            best = Some(PolyI4 { bound: b, eta: e, candidates: cands.len() });
        }
    }
    Ok(best.expect("the general branches are always admissible"))
}

/// Bound for the prime-power sum in any of the four regimes. In the
/// polynomial regime the explicit bound is returned with no envelope.
pub fn i4_bound(
    desc: &SelbergDescriptor,
    ctx: &ExtremalContext,
    mode: SumMode,
    kind: Kind,
    profile: Option<&ConjectureProfile>,
    alpha: Option<f64>,
    nu: (f64, f64),
) -> Result<Estimate> {
    let x = (2.0 * PI * ctx.delta).exp();
    if !(x >= 2.0) {
        return domain("x = e^(2 pi Delta) must be at least 2");
    }
    let sigma = ctx.sigma;
    let lx = x.ln();
    let llx = lx.ln();
    let xc = x.powf(sigma - 0.5);
    let g_fac = xc / (xc + 1.0);
    let m_fac = xc / (xc - 1.0);
    let cb = &desc.coeff_bounds;
    match mode {
        SumMode::Poly => {
            let m = euler_order(desc)?;
            let p = poly_i4_bound(x, sigma, m, alpha, nu.0, nu.1, kind)?;
            let case = format!(
                "poly, near_one={}, near_half={}",
                p.eta.cases.near_one, p.eta.cases.near_half
            );
            Ok(Estimate::exact(p.bound, &case))
        }
        SumMode::General { eps } => {
            if !(eps > 0.0 && eps < 0.5) {
                return domain("eps must lie in (0, 1/2)");
            }
            let cr = (cb.c_r)(eps);
            let lead = a1(cr, eps, sigma)? * x.powf(1.0 - sigma + eps) / lx;
            let e1 = cr * x.powf(1.0 - sigma + eps) / ((1.0 - sigma + eps).powi(2) * lx * lx);
            let e2 = a2(cr + cb.c_e, eps, cb.theta, sigma, x)?;
            let est = match kind {
                Kind::G => Estimate::exact(lead * g_fac + (1.0 + eps) * cr * llx, "general"),
                Kind::M => Estimate::exact(lead + (1.0 + eps) * cr * llx, "general"),
            }
            .env("C_R x^(1-sigma+eps) / ((1-sigma+eps)^2 log^2 x)", e1)
            .env("A_2(C_R + C_E, eps, theta, sigma, x)", e2);
            Ok(if kind == Kind::M { est.scaled(m_fac) } else { est })
        }
        SumMode::Conj1 | SumMode::Conj2 => {
            if sigma >= 1.0 {
                return domain("the conjectural bounds need sigma < 1");
            }
            let p = need_profile(mode, profile)?;
            let (m1, m2, m3, m1_2) = match mode {
                SumMode::Conj1 => {
                    let m2 = ((p.c_p1)(x) + p.c_p2).sqrt();
                    ((p.c_p1)(x).sqrt(), m2, m2 / lx.sqrt(), (p.c_p1)(2.0).sqrt())
                }
                _ => ((p.c_p1)(x), p.c_p2, p.c_p2 / lx, (p.c_p1)(2.0)),
            };
            let near_one = matches!(alpha, Some(a) if a > 0.0 && 1.0 - sigma <= a / lx);
            let a2e = a2(cb.c_e, 0.0, cb.theta, sigma, x)?;
            let mut common = Estimate::exact(m1 * llx, if near_one { "conj, near_one" } else { "conj, otherwise" });
            if kind == Kind::M {
                common = common.env("m_1(2)", m1_2);
            }
            common = common.env("A_2(C_E, 0, theta, sigma, x)", a2e);
            if kind == Kind::M {
                common = common.scaled(m_fac);
            }
            if near_one {
                return Ok(common.env("m_2(x)", m2));
            }
            let lead = a1(m1, 0.0, sigma)? * x.powf(1.0 - sigma) / lx;
            let e1 = m1 * x.powf(1.0 - sigma) / ((1.0 - sigma).powi(2) * lx * lx);
            let e2 = a6(m3, sigma, x)?;
            let (k_lead, k_env) = match kind {
                Kind::G => (g_fac, 1.0),
                Kind::M => (m_fac, m_fac),
            };
            let mut out = common;
            out.main += lead * k_lead;
            Ok(out
                .env("m_1(x) x^(1-sigma) / ((1-sigma)^2 log^2 x)", e1 * k_env)
                .env("A_6(m_3(x), sigma, x)", e2 * k_env))
        }
    }
}
