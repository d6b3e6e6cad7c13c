//! Recomputation of the numerical constants in the bounds for `|g_Δ|` and
//! `|m_Δ|`: finite partial sums of the majorising series are maximised over
//! each region, and the remaining tail is bounded by closed-form estimates.
//!
//! Four lemma families appear:
//!
//! * `M2G_REAL` (121) and `M2G_COMPLEX` (28) bound `|g_Δ|` through `S_g`.
//! * `MURC_REAL` (24) and `MURC_COMPLEX` (4) bound `|m_Δ|` through `S_m`.
//! * `GABS` (4) is the `4/x²` lower bound for `g_Δ` at `|x| ≥ 10⁴/Δ`.
//! * `MUR_REAL` (13) is the `13/(1+x²)` bound for `m_Δ` at `|x| ≥ 17`.
//!
//! All results are floating-point recomputations, not interval certificates.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::extremal::delta_factor;
use crate::kahan::KahanSum;
use crate::maximize::{graded_grid, maximize_on_grid, uniform_grid, MaximizationResult, MaximizeOptions};
use crate::EULER_GAMMA;

/// `log 2 + γ − 1`, the constant in the harmonic-sum estimate.
const HARMONIC_C: f64 = LN_2 + EULER_GAMMA - 1.0;
const ZETA3: f64 = 1.202_056_903_159_594_3;
/// Grid step for bounded regions.
pub const GRID_STEP: f64 = 1e-3;
/// Offset used to approach an excluded endpoint.
const ONE_SIDED: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Lemma {
    #[serde(rename = "M2G_REAL")]
    M2gReal,
    #[serde(rename = "M2G_COMPLEX")]
    M2gComplex,
    #[serde(rename = "MURC_REAL")]
    MurcReal,
    #[serde(rename = "MURC_COMPLEX")]
    MurcComplex,
    #[serde(rename = "GABS")]
    GAbs,
    #[serde(rename = "MUR_REAL")]
    MurReal,
}

impl Lemma {
    pub const ALL: [Lemma; 6] =
        [Lemma::M2gReal, Lemma::M2gComplex, Lemma::MurcReal, Lemma::MurcComplex, Lemma::GAbs, Lemma::MurReal];

    pub fn constant(self) -> f64 {
        match self {
            Lemma::M2gReal => 121.0,
            Lemma::M2gComplex => 28.0,
            Lemma::MurcReal => 24.0,
            Lemma::MurcComplex => 4.0,
            Lemma::GAbs => 4.0,
            Lemma::MurReal => 13.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Lemma::M2gReal => "M2G_REAL",
            Lemma::M2gComplex => "M2G_COMPLEX",
            Lemma::MurcReal => "MURC_REAL",
            Lemma::MurcComplex => "MURC_COMPLEX",
            Lemma::GAbs => "GABS",
            Lemma::MurReal => "MUR_REAL",
        }
    }

    pub fn parse(s: &str) -> Result<Lemma> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .map_or_else(|| domain(format!("unknown lemma '{s}'")), Ok)
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn term(delta: f64, z_abs: f64, xi_abs: f64, k: f64) -> f64 {
    delta * (1.0 + z_abs) / (1.0 + xi_abs * xi_abs) * (4.0 / (k * k) + 8.0 * xi_abs / (k * k * k))
}

fn delta_real(xi_abs: f64) -> f64 {
    if xi_abs < 1.0 {
        1.0
    } else {
        2.0 / (PI * PI)
    }
}

/// Summand of the majorant for `|G_Δ(z)|`, with `ξ₁ = z−n+½`, `ξ₂ = z+n−½`.
pub fn s_g(z: Complex64, n: u64) -> f64 {
    let k = n as f64 - 0.5;
    let r = z.norm();
    let (x1, x2) = ((z - k).norm(), (z + k).norm());
    term(delta_factor(z - k), r, x1, k) + term(delta_factor(z + k), r, x2, k)
}

/// Summand of the majorant for `|M_Δ(z)|`, with `ξ₃ = z−n`, `ξ₄ = z+n`.
pub fn s_m(z: Complex64, n: u64) -> f64 {
    let k = n as f64;
    let r = z.norm();
    let (x3, x4) = ((z - k).norm(), (z + k).norm());
    term(delta_factor(z - k), r, x3, k) + term(delta_factor(z + k), r, x4, k)
}

/// [`s_g`] at a real point `x`.
pub fn s_g_real(x: f64, n: u64) -> f64 {
    let k = n as f64 - 0.5;
    let r = x.abs();
    let (x1, x2) = ((r - k).abs(), r + k);
    term(delta_real(x1), r, x1, k) + term(delta_real(x2), r, x2, k)
}

/// [`s_m`] at a real point `x`.
pub fn s_m_real(x: f64, n: u64) -> f64 {
    let k = n as f64;
    let r = x.abs();
    let (x3, x4) = ((r - k).abs(), r + k);
    term(delta_real(x3), r, x3, k) + term(delta_real(x4), r, x4, k)
}

fn s_bound(coef: f64, r: f64, k: f64) -> f64 {
    let d = r - k;
    coef * (1.0 + r) / (1.0 + d * d) * (4.0 / (k * k) + 8.0 * (r + k) / (k * k * k))
}

/// `S_small` for the `g` family: both `δ` replaced by `2/π²`, valid when
/// `n ≤ |z| − 3/2`.
pub fn s_small_g(r: f64, n: u64) -> f64 {
    s_bound(4.0 / (PI * PI), r, n as f64 - 0.5)
}

/// `S_large` for the `g` family: coefficient `1 + 2/π²`, valid for every `n`.
pub fn s_large_g(r: f64, n: u64) -> f64 {
    s_bound(1.0 + 2.0 / (PI * PI), r, n as f64 - 0.5)
}

pub fn s_small_m(r: f64, n: u64) -> f64 {
    s_bound(4.0 / (PI * PI), r, n as f64)
}

pub fn s_large_m(r: f64, n: u64) -> f64 {
    s_bound(1.0 + 2.0 / (PI * PI), r, n as f64)
}

/// Hurwitz zeta `ζ(s, a)` for real `s > 1`, `a > 0`, by Euler–Maclaurin.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    const B2K: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    let m = 16usize;
    let mut acc = KahanSum::new();
    for k in 0..m {
        acc.add((a + k as f64).powf(-s));
    }
    let x = a + m as f64;
    acc.add(x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s));
    // B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in B2K.iter().enumerate() {
        let p = 2 * j + 2;
        acc.add(b / fact * rising * x.powf(-s - p as f64 + 1.0));
        rising *= (s + p as f64 - 1.0) * (s + p as f64);
        fact *= ((p + 1) * (p + 2)) as f64;
    }
    acc.value()
}

/// `Σ_{n≥1} 1/(n² + a²) = (πa·coth(πa) − 1)/(2a²)`.
fn sum_inv_sq_plus(a: f64) -> f64 {
    let pa = PI * a;
    (pa / pa.tanh() - 1.0) / (2.0 * a * a)
}

/// Which splitting of the tail is used: the `g` family works with `n − ½`,
/// the `m` family with `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TailFamily {
    G,
    M,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailParams {
    pub n: u64,
    pub nu1: f64,
    pub nu2: f64,
    pub family: TailFamily,
    /// Terms evaluated even where their case condition empties the sum.
    /// Each formula is positive, so this only enlarges the bound.
    pub forced: [bool; 5],
}

impl TailParams {
    pub fn new(family: TailFamily, n: u64, nu1: f64, nu2: f64) -> Result<Self> {
        if n == 0 || !(nu1 > 0.0 && nu1 < 1.0) || !(nu2 > 1.0) {
            return domain(format!("tail parameters need N >= 1, 0 < nu1 < 1, nu2 > 1; got N={n}, nu1={nu1}, nu2={nu2}"));
        }
        Ok(TailParams { n, nu1, nu2, family, forced: [false; 5] })
    }

    pub fn forcing(mut self, forced: [bool; 5]) -> Self {
        self.forced = forced;
        self
    }

    fn active(&self, r: f64) -> [bool; 5] {
        let (nf, nu1, nu2) = (self.n as f64, self.nu1, self.nu2);
        let gates = match self.family {
            TailFamily::G => [
                r >= (nf - 0.5) / nu1,
                r >= 1.0 / (1.0 - nu1),
                r >= nf - 0.5,
                r >= 1.0 / (nu2 - 1.0),
                r > 0.0,
            ],
            TailFamily::M => [r > nf / nu1, r > 1.0 / (1.0 - nu1), r > nf - 1.0, r > 1.0 / (nu2 - 1.0), r > 0.0],
        };
        let mut out = [false; 5];
        for i in 0..5 {
            out[i] = gates[i] || self.forced[i];
        }
        out
    }

    /// The five closed-form estimates, without case gating.
    pub fn formulas(&self, r: f64) -> [f64; 5] {
        let (nu1, nu2) = (self.nu1, self.nu2);
        let pi2 = PI * PI;
        let g = self.family == TailFamily::G;
        let shift = if g { 0.5 } else { 1.0 };
        let (z2, z3) = (hurwitz_zeta(2.0, self.n as f64 + shift), hurwitz_zeta(3.0, self.n as f64 + shift));
        let q = 1.0 + (1.0 - nu1).powi(2) * r * r;
        let s1 = 4.0 * (1.0 + 2.0 / pi2) * ((1.0 + r) / q * z2 + 2.0 * (1.0 + nu1) * (1.0 + r) * r / q * z3);
        let extra2 = if g { 1.0 + 1.0 / (2.0 * nu1 * r) } else { 1.0 };
        let s2 = 8.0 / pi2 * (1.0 + 4.0 / nu1) / nu1 * (1.0 + 1.0 / r) * extra2
            * ((1.0 / nu1).ln() + (0.5 + 2.0 / nu1 * HARMONIC_C) / r);
        let s3 = 16.0 * (1.0 + r) / ((r - 1.0) * (r - 1.0)) * (5.0 + 6.0 / (r - 1.0));
        let extra4 = if g { 1.0 + 1.0 / (2.0 * (r + 1.0)) } else { 1.0 };
        let s4 = 8.0 / pi2 * (1.0 + 2.0 * (1.0 + nu2)) * extra4 * (nu2.ln() + (1.0 / (2.0 * nu2) + 2.0 * HARMONIC_C) / r);
        let s5 = 16.0 / pi2 * (1.0 + 2.0 * (1.0 + 1.0 / nu2)) * (1.0 + 1.0 / (nu2 * r)) * (1.0 + r)
            / (nu2 * r * (1.0 + (nu2 - 1.0).powi(2) * r * r));
        [s1, s2, s3, s4, s5]
    }

    /// Estimates with the case conditions applied: inactive terms are 0.
    pub fn bounds(&self, r: f64) -> [f64; 5] {
        let act = self.active(r);
        let f = self.formulas(r);
        let mut out = [0.0; 5];
        for i in 0..5 {
            if act[i] {
                out[i] = f[i];
            }
        }
        out
    }
}

/// Parameters for the tail split of the `4/x²` bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GAbsParams {
    pub n: u64,
    pub nu1: f64,
    pub nu2: f64,
}

impl GAbsParams {
    pub fn new(n: u64, nu1: f64, nu2: f64) -> Result<Self> {
        if n == 0 || n > 9000 || !(nu1 > 0.0 && nu1 < 0.9999) || !(nu2 > 0.5 && nu2 <= 1.0) {
            return domain(format!("need 1 <= N <= 9000, 0 < nu1 < 0.9999, 1/2 < nu2 <= 1; got {n}, {nu1}, {nu2}"));
        }
        Ok(GAbsParams { n, nu1, nu2 })
    }

    pub fn bounds(&self, x: f64) -> [f64; 5] {
        let (nu1, nu2, pi2) = (self.nu1, self.nu2, PI * PI);
        let s1 = 32.0 / (pi2 * (1.0 - nu1).powi(2)) * hurwitz_zeta(2.0, self.n as f64 + 0.5);
        let s2 = 16.0 / (SQRT_2 * pi2 * nu1 * nu1) * ((1.0 / nu1).ln() + (0.5 + 2.0 / nu1 * HARMONIC_C) / x);
        let s3 = 2.0 * 16.0 * SQRT_2 * 1.0004 / (PI * 19998.0);
        let s4 = 32.0 / (pi2 * SQRT_2) * (((2.0 * nu2 + 1.0) / 2.0).ln() + (1.0 / (2.0 * (nu2 + 1.0)) + HARMONIC_C) / x);
        let s5 = 8.0 * (1.0 + 2.0 * nu2 * x) / (x * x * nu2 * nu2 * pi2 * (2.0 * nu2 - 1.0));
        [s1, s2, s3, s4, s5]
    }
}

/// Parameters for the tail split of the `13/(1+x²)` bound (`ν₂ = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MurParams {
    pub n: u64,
    pub nu1: f64,
}

impl MurParams {
    pub fn new(n: u64, nu1: f64) -> Result<Self> {
        if n == 0 || !(nu1 > 0.7 && nu1 <= 0.9999) {
            return domain(format!("need N >= 1 and 0.7 < nu1 <= 0.9999; got {n}, {nu1}"));
        }
        Ok(MurParams { n, nu1 })
    }

    pub fn bounds(&self, x: f64) -> [f64; 5] {
        let nu = self.nu1;
        let pi2 = PI * PI;
        let c = 2320.0 / (289.0 * pi2);
        let nf = self.n as f64;
        let sum_inv2 = hurwitz_zeta(2.0, nf + 1.0);
        let head: f64 = (1..=self.n).map(|k| 1.0 / ((k * k) as f64 + 100.0)).sum();
        let sum_shift = sum_inv_sq_plus(10.0) - head;

        let s1 = c * (109.0 / 9.0 * sum_inv2
            + (1.0 / (1.0 - nu).powi(2) + 1.0 / (1.7 * 1.7)) * (1.0 / (0.7 * x * x) + (nu - 0.7) / (0.7 * nu * x)))
            + 9280.0 / (289.0 * pi2)
                * (sum_shift / 0.51
                    + 1.0 / (1.0 - nu * nu)
                        * (1.0 / (0.7 * x + 100.0).powi(2) + (nu - 0.7) * x / ((0.7 * x + 100.0) * (nu * x + 100.0))));

        let head5: f64 = (1..=5).map(|k| 1.0 / ((k * k) as f64 + 1.0)).sum();
        let s2a = 145.0 / (16.0 * pi2)
            * (head5
                + (10.0 * x * x - 50.0 * x + 37.0)
                    / (2.0 * (2.0 * x * x - 18.0 * x + 41.0) * (2.0 * x * x - 2.0 * x + 1.0))
                + 0.5 * (2.0 * x - 9.0).atan()
                - 0.5 * (2.0 * x - 1.0).atan());
        let s2b = c / (nu * nu)
            * (-4.0 / ((1.0 - nu).powi(2) * x * x + 1.0) + 1.0 / ((2.0 * nu * x + 5.0).powi(2) + 1.0)
                - 0.5 * (2.0 * nu * x + 5.0).atan()
                + ((1.0 - nu) * x).atan()
                + 0.5 * (2.0 * x - 5.0).atan()
                + 5.0 / 26.0
                - 5f64.atan());
        let s2c = 16.0 * (2.0 * HARMONIC_C / (nu * x) + 1.0 / (2.0 * (x - 5.0)) + ((x - 5.0) / (nu * x)).ln())
            / (SQRT_2 * pi2 * nu * nu);
        let s2d = 4.0 * (5f64.sqrt() + 3.0) * (1.0 / (2.0 * (x - 1.0)) + 2.0 * HARMONIC_C / (x - 5.0) + (4.0 / (x - 5.0)).ln_1p())
            / (SQRT_2 * pi2);
        let s2 = s2a + s2b + s2c + s2d;

        let r82 = (1.0 + 82.0 * 82.0) as f64;
        let s3 = 3625.0 / 882.0 * (1.0 + 3.0 / 5.0 + 4.0 / (pi2 * r82))
            + 2.0 * SQRT_2 / (25.0 * PI * r82.sqrt()) * (252.0 + 4.0 * 1469f64.sqrt());

        let s4 = c
            * (PI / 4.0 - 1.0 / x + 1.0 / (3.0 * x.powi(3)) + 0.5 - 1.0 / (3.0 * x)
                + 1.0 / (1.0 + 2.25 * (x + 1.0).powi(2))
                + 2.0 / (3.0 * (x + 1.0))
                + 1.0 / (81.0 * x.powi(3))
                + 20.0 * (3.0 * x + 2.0) / (81.0 * x * x))
            + 32.0 / pi2
                * ((1.0 / 7.5f64.sqrt())
                    * ((9.0 / (x + 1.0)).ln_1p() + 1.0 / (2.0 * (x + 10.0)) + 2.0 * HARMONIC_C / (x + 1.0))
                    + 3.0 / 3214f64.sqrt() * (1.5f64.ln() + 1.0 / (3.0 * x) + 2.0 * HARMONIC_C / (x + 10.0)))
            + 64.0 * (3.0 * x + 2.0) / (225.0 * pi2 * x * x);

        let s5 = 13888.0 / 289.0 * (2.0 * x + 1.0) / (x * x * pi2);
        [s1, s2, s3, s4, s5]
    }
}

/// The tail estimates `S₁..S₅` for a lemma's parameter set at `|z| = z_abs`.
pub enum TailSpec {
    Split(TailParams),
    GAbs(GAbsParams),
    Mur(MurParams),
}

impl TailSpec {
    pub fn bounds(&self, z_abs: f64) -> [f64; 5] {
        match self {
            TailSpec::Split(p) => p.bounds(z_abs),
            TailSpec::GAbs(p) => p.bounds(z_abs),
            TailSpec::Mur(p) => p.bounds(z_abs),
        }
    }

    pub fn total(&self, z_abs: f64) -> f64 {
        self.bounds(z_abs).iter().sum()
    }
}

/// `tail_bounds` with the lemma's own parameter family checked.
pub fn tail_bounds(lemma: Lemma, n: u64, nu1: f64, nu2: f64, z_abs: f64) -> Result<[f64; 5]> {
    let spec = match lemma {
        Lemma::M2gReal | Lemma::M2gComplex => TailSpec::Split(TailParams::new(TailFamily::G, n, nu1, nu2)?),
        Lemma::MurcReal | Lemma::MurcComplex => TailSpec::Split(TailParams::new(TailFamily::M, n, nu1, nu2)?),
        Lemma::GAbs => TailSpec::GAbs(GAbsParams::new(n, nu1, nu2)?),
        Lemma::MurReal => {
            if nu2 != 1.0 {
                return domain("MUR_REAL fixes nu2 = 1");
            }
            TailSpec::Mur(MurParams::new(n, nu1)?)
        }
    };
    Ok(spec.bounds(z_abs))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionReport {
    pub lemma: Lemma,
    pub region: String,
    /// Maximum of the finite part (first addend).
    pub recomputed_max: f64,
    pub arg_max: f64,
    /// Bound for everything not in the finite part (second addend).
    pub tail_bound: f64,
    pub total: f64,
    pub constant: f64,
    pub margin: f64,
    pub pass: bool,
    /// Reference values for the two addends, and the intermediate bound the
    /// region total is compared with.
    pub reference_max: Option<f64>,
    pub reference_tail: Option<f64>,
    pub stated_bound: Option<f64>,
    pub detail: String,
    pub maximization: Option<MaximizationResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub lemma: Lemma,
    pub constant: f64,
    pub regions: Vec<RegionReport>,
    pub pass: bool,
}

struct Region {
    name: &'static str,
    max: f64,
    arg: f64,
    tail: f64,
    reference: (Option<f64>, Option<f64>),
    stated: Option<f64>,
    detail: String,
    maximization: Option<MaximizationResult>,
}

fn finish(lemma: Lemma, regions: Vec<Region>) -> VerificationReport {
    let c = lemma.constant();
    let regions: Vec<RegionReport> = regions
        .into_iter()
        .map(|r| {
            let total = r.max + r.tail;
            let margin = c - total;
            RegionReport {
                lemma,
                region: r.name.to_string(),
                recomputed_max: r.max,
                arg_max: r.arg,
                tail_bound: r.tail,
                total,
                constant: c,
                margin,
                pass: margin > 0.0 && total.is_finite(),
                reference_max: r.reference.0,
                reference_tail: r.reference.1,
                stated_bound: r.stated,
                detail: r.detail,
                maximization: r.maximization,
            }
        })
        .collect();
    let pass = regions.iter().all(|r| r.pass);
    VerificationReport { lemma, constant: c, regions, pass }
}

fn opts() -> MaximizeOptions {
    MaximizeOptions::default()
}

/// Grid for `[lo, ∞)`: step `GRID_STEP` on `[lo, lo + window]`, relative step
/// `1e-4` up to `20·lo`, then a geometric sweep to `1e8`.
fn unbounded_grid(lo: f64, window: f64) -> Vec<f64> {
    let mut g = uniform_grid(lo, lo + window, GRID_STEP);
    g.extend(graded_grid(lo + window, 20.0 * lo, GRID_STEP, 1e-4).into_iter().skip(1));
    let mut r = 20.0 * lo;
    while r < 1e8 {
        r *= 1.05;
        g.push(r);
    }
    g
}

fn tail_max(spec: &TailSpec, grid: &[f64]) -> (f64, f64) {
    grid.par_iter()
        .map(|&r| (spec.total(r), r))
        .reduce(|| (f64::NEG_INFINITY, 0.0), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
}

fn sum_g(r: f64, n_max: u64) -> f64 {
    (1..=n_max).map(|n| s_g_real(r, n)).sum()
}

fn sum_m(r: f64, n_max: u64) -> f64 {
    (1..=n_max).map(|n| s_m_real(r, n)).sum()
}

/// `(3/π²)Σ_{n≥2}((4/13)(4/(n−½)² + 8n/(n−½)³) + 6/(n−½)²)` in closed form.
pub fn m2g_r1_series() -> f64 {
    let z2 = PI * PI / 2.0 - 4.0;
    let z3 = 7.0 * ZETA3 - 8.0;
    3.0 / (PI * PI) * ((16.0 / 13.0 + 32.0 / 13.0 + 6.0) * z2 + 16.0 / 13.0 * z3)
}

/// `Σ_{n≥2}(2/π²)(24/((1+(n−1)²)n²) + 24/((1+n²)n²))`.
pub fn murc_r1_series() -> f64 {
    let mut acc = KahanSum::new();
    for n in (2..=2_000_000u64).rev() {
        let nf = n as f64;
        acc.add(2.0 / (PI * PI) * (24.0 / ((1.0 + (nf - 1.0).powi(2)) * nf * nf) + 24.0 / ((1.0 + nf * nf) * nf * nf)));
    }
    acc.value()
}

fn tail_sum<F: Fn(u64) -> f64>(f: F, from: u64, to: u64) -> f64 {
    let mut acc = KahanSum::new();
    for n in (from..=to).rev() {
        acc.add(f(n));
    }
    acc.value()
}

fn verify_m2g_real() -> VerificationReport {
    // 0 ≤ |z| ≤ 1/2
    let g = uniform_grid(0.0, 0.5, GRID_STEP);
    let m1 = maximize_on_grid(|r| s_g_real(r, 1), &g, opts());
    let r1 = Region {
        name: "0<=|z|<=1/2",
        max: m1.max_value,
        arg: m1.arg_max,
        tail: m2g_r1_series(),
        reference: (None, None),
        stated: Some(95.0),
        detail: "max S(z,1) plus the n>=2 series in closed form".into(),
        maximization: Some(m1),
    };

    // 1/2 < |z| ≤ 1, finite sum and tails maximised jointly.
    let p2 = TailParams::new(TailFamily::G, 50, 2.69261e-6, 2.2002).expect("valid");
    let g = uniform_grid(0.5 + ONE_SIDED, 1.0, GRID_STEP);
    let tail2 = TailSpec::Split(p2);
    let m2 = maximize_on_grid(|r| sum_g(r, 50) + tail2.total(r), &g, opts());
    let fin = sum_g(m2.arg_max, 50);
    let r2 = Region {
        name: "1/2<|z|<=1",
        max: fin,
        arg: m2.arg_max,
        tail: m2.max_value - fin,
        reference: (None, None),
        stated: Some(112.0),
        detail: "sum_{n<=50} S + S4 + S5 maximised jointly; N=50, nu1=2.69261e-6, nu2=2.2002".into(),
        maximization: Some(m2),
    };

    // 1 < |z| < 3/2
    let edge = 1.5 - ONE_SIDED;
    let lim = s_g_real(edge, 1) + s_g_real(edge, 3);
    let g = uniform_grid(1.0 + ONE_SIDED, edge, GRID_STEP);
    let m3 = maximize_on_grid(|r| s_g_real(r, 2), &g, opts());
    let rest = tail_sum(|n| s_small_g(1.5, n), 4, 2_000_000);
    let r3 = Region {
        name: "1<|z|<3/2",
        max: lim + m3.max_value,
        arg: m3.arg_max,
        tail: rest,
        reference: (Some(120.430), Some(0.388)),
        stated: Some(121.0),
        detail: format!("lim S(.,1)+S(.,3) at 3/2- = {lim:.6}, max S(.,2) = {:.6}; tail is sum_{{n>=4}} S_small(3/2,n)", m3.max_value),
        maximization: Some(m3),
    };

    // 3/2 ≤ |z| < 350
    let p4 = TailSpec::Split(TailParams::new(TailFamily::G, 350, 0.999, 1.72537).expect("valid"));
    let g = uniform_grid(1.5, 350.0 - ONE_SIDED, GRID_STEP);
    let m4 = maximize_on_grid(|r| sum_g(r, 350), &g, opts());
    let (t4, _) = tail_max(&p4, &g);
    let r4 = Region {
        name: "3/2<=|z|<350",
        max: m4.max_value,
        arg: m4.arg_max,
        tail: t4,
        reference: (Some(40.754), Some(11.032)),
        stated: Some(52.0),
        detail: "max sum_{n<=350} S; sup of gated tails with N=350, nu1=0.999, nu2=1.72537".into(),
        maximization: Some(m4),
    };
    finish(Lemma::M2gReal, vec![r1, r2, r3, r4])
}

fn verify_m2g_complex() -> VerificationReport {
    let obj_a = |r: f64| {
        (1..=348).map(|n| s_small_g(r, n)).sum::<f64>() + (349..=700).map(|n| s_large_g(r, n)).sum::<f64>()
    };
    let pa = TailSpec::Split(
        TailParams::new(TailFamily::G, 700, 0.99999, 1.03167).expect("valid").forcing([false, true, false, false, false]),
    );
    let g = uniform_grid(350.0, 699.5 - ONE_SIDED, GRID_STEP);
    let ma = maximize_on_grid(obj_a, &g, opts());
    let (ta, _) = tail_max(&pa, &g);
    let ra = Region {
        name: "350<=|z|<699.5",
        max: ma.max_value,
        arg: ma.arg_max,
        tail: ta,
        reference: (Some(27.725), Some(0.216)),
        stated: None,
        detail: "sum_{n<=348} S_small + sum_{349..700} S_large; tails S2 (forced), S4, S5 with N=700, nu1=0.99999, nu2=1.03167".into(),
        maximization: Some(ma),
    };

    let obj_b = |r: f64| {
        (1..=698).map(|n| s_small_g(r, n)).sum::<f64>() + (699..=700).map(|n| s_large_g(r, n)).sum::<f64>()
    };
    let pb = TailSpec::Split(TailParams::new(TailFamily::G, 700, 0.97658, 1.02002).expect("valid").forcing([true; 5]));
    let g = unbounded_grid(699.5, 50.0);
    let mb = maximize_on_grid(obj_b, &g, opts());
    let (tb, _) = tail_max(&pb, &g);
    let rb = Region {
        name: "|z|>=699.5",
        max: mb.max_value,
        arg: mb.arg_max,
        tail: tb,
        reference: (Some(27.4599), Some(0.403)),
        stated: None,
        detail: "sum_{n<=698} S_small + S_large(699), S_large(700); all five tails with N=700, nu1=0.97658, nu2=1.02002".into(),
        maximization: Some(mb),
    };
    finish(Lemma::M2gComplex, vec![ra, rb])
}

fn verify_murc_real() -> VerificationReport {
    let g = uniform_grid(0.0, 1.0, GRID_STEP);
    let m1 = maximize_on_grid(|r| s_m_real(r, 1), &g, opts());
    let r1 = Region {
        name: "0<=|z|<=1",
        max: m1.max_value,
        arg: m1.arg_max,
        tail: murc_r1_series(),
        reference: (Some(11.551), Some(1.103)),
        stated: Some(13.0),
        detail: "max S(z,1) plus the n>=2 series".into(),
        maximization: Some(m1),
    };

    let edge = 2.0 - ONE_SIDED;
    let lim = s_m_real(edge, 1) + s_m_real(edge, 3) + tail_sum(|n| s_m_real(edge, n), 4, 2_000_000);
    let g = uniform_grid(1.0 + ONE_SIDED, edge, GRID_STEP);
    let m2 = maximize_on_grid(|r| s_m_real(r, 2), &g, opts());
    let r2 = Region {
        name: "1<|z|<2",
        max: lim,
        arg: 2.0,
        tail: m2.max_value,
        reference: (Some(20.111), Some(3.413)),
        stated: Some(24.0),
        detail: format!("first addend: lim at 2- of S(.,1)+S(.,3)+sum_{{n>=4}} S; second addend: max S(.,2) at {:.6}", m2.arg_max),
        maximization: Some(m2),
    };

    let p3 = TailSpec::Split(TailParams::new(TailFamily::M, 10_000, 0.99999, 1.86921).expect("valid"));
    let mut g = uniform_grid(2.0, 100.0, GRID_STEP);
    g.extend(graded_grid(100.0, 10_000.0, GRID_STEP, 1e-4).into_iter().skip(1));
    let m3 = maximize_on_grid(|r| sum_m(r, 10_000), &g, opts());
    let (t3, _) = tail_max(&p3, &g);
    let r3 = Region {
        name: "2<=|z|<=10000",
        max: m3.max_value,
        arg: m3.arg_max,
        tail: t3,
        reference: (Some(7.868), Some(7.293)),
        stated: Some(16.0),
        detail: "max sum_{n<=10000} S; sup of gated tails with N=10000, nu1=0.99999, nu2=1.86921; grid step 1e-3 up to 100, relative 1e-4 beyond".into(),
        maximization: Some(m3),
    };
    finish(Lemma::MurcReal, vec![r1, r2, r3])
}

fn verify_murc_complex() -> VerificationReport {
    let obj = |r: f64| (1..=9999).map(|n| s_small_m(r, n)).sum::<f64>() + s_large_m(r, 10_000);
    let p = TailSpec::Split(TailParams::new(TailFamily::M, 10_000, 0.995884, 1.00342).expect("valid").forcing([true; 5]));
    let g = unbounded_grid(10_000.0, 10.0);
    let m = maximize_on_grid(obj, &g, opts());
    let (t, _) = tail_max(&p, &g);
    let r = Region {
        name: "|z|>=10000",
        max: m.max_value,
        arg: m.arg_max,
        tail: t,
        reference: (Some(3.903), Some(0.055)),
        stated: None,
        detail: "sum_{n<=9999} S_small + S_large(10000); all five tails with N=10000, nu1=0.995884, nu2=1.00342".into(),
        maximization: Some(m),
    };
    finish(Lemma::MurcComplex, vec![r])
}

/// `(0.64 + x²)/√((1+(x−499.5)²)(1+x²))`, the `Δ = 0.8` ratio for `n ≤ 500`.
pub fn gabs_ratio(x: f64) -> f64 {
    (0.64 + x * x) / ((1.0 + (x - 499.5).powi(2)) * (1.0 + x * x)).sqrt()
}

pub fn gabs_main(x: f64) -> f64 {
    let c = gabs_ratio(x);
    (1..=3000u64).map(|n| {
        let k = n as f64 - 0.5;
        32.0 * c / (PI * PI * (k * k + 4.0 * 0.64))
    }).sum()
}

fn verify_gabs() -> VerificationReport {
    let p = TailSpec::GAbs(GAbsParams::new(500, 0.83181, 0.508444).expect("valid"));
    let g = unbounded_grid(10_000.0, 10.0);
    let m = maximize_on_grid(gabs_main, &g, opts());
    let (t, _) = tail_max(&p, &g);
    let r = Region {
        name: "|x|>=10000",
        max: m.max_value,
        arg: m.arg_max,
        tail: t,
        reference: (Some(3.345), Some(0.574)),
        stated: None,
        detail: format!("ratio at 10000 = {:.7} (< 1.053); N=500, nu1=0.83181, nu2=0.508444", gabs_ratio(10_000.0)),
        maximization: Some(m),
    };
    finish(Lemma::GAbs, vec![r])
}

/// Finite part of the `13/(1+x²)` bound, `x` in the `Δ`-scaled variable.
pub fn mur_main(x: f64) -> f64 {
    let pre = 2320.0 * x * x / (289.0 * PI * PI);
    let s: f64 = (1..=50u64)
        .map(|n| {
            let k = n as f64;
            let (a, b) = (1.0 + (x - k).powi(2), 1.0 + (x + k).powi(2));
            1.0 / (a * k * k) + 1.0 / (b * k * k) + 4.0 / ((k * k + 100.0) * (a * b).sqrt())
        })
        .sum();
    pre * s
}

fn verify_mur_real() -> VerificationReport {
    let p = TailSpec::Mur(MurParams::new(50, 0.890094).expect("valid"));
    let g = unbounded_grid(85.0, 50.0);
    let m = maximize_on_grid(mur_main, &g, opts());
    let (t, _) = tail_max(&p, &g);
    let r = Region {
        name: "|x|>=17 (scaled |x|>=85)",
        max: m.max_value,
        arg: m.arg_max,
        tail: t,
        reference: (Some(3.13754), Some(9.81443)),
        stated: None,
        detail: "N=50, nu1=0.890094; tails as closed forms in |x|".into(),
        maximization: Some(m),
    };
    finish(Lemma::MurReal, vec![r])
}

pub fn verify_constant(lemma: Lemma) -> VerificationReport {
    match lemma {
        Lemma::M2gReal => verify_m2g_real(),
        Lemma::M2gComplex => verify_m2g_complex(),
        Lemma::MurcReal => verify_murc_real(),
        Lemma::MurcComplex => verify_murc_complex(),
        Lemma::GAbs => verify_gabs(),
        Lemma::MurReal => verify_mur_real(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn real_and_complex_forms_agree() {
        for &x in &[0.0, 0.3, 1.499, 2.7, 350.0] {
            for n in [1u64, 2, 3, 10, 400] {
                assert!((s_g(c(x), n) - s_g_real(x, n)).abs() < 1e-12);
                assert!((s_m(c(x), n) - s_m_real(x, n)).abs() < 1e-12);
                assert_eq!(s_g_real(x, n), s_g_real(-x, n));
            }
        }
    }

    #[test]
    fn hurwitz_values() {
        assert!((hurwitz_zeta(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(3.0, 1.5) - (7.0 * ZETA3 - 8.0)).abs() < 1e-14);
        let brute: f64 = (0..2_000_000).rev().map(|k| 1.0 / (350.5 + k as f64).powi(2)).sum::<f64>()
            + 1.0 / (2_000_350.5 - 0.5);
        assert!((hurwitz_zeta(2.0, 350.5) - brute).abs() < 1e-12);
    }

    #[test]
    fn closed_form_series_matches_partial_sums() {
        let brute: f64 = (2..=3_000_000u64)
            .rev()
            .map(|n| {
                let k = n as f64 - 0.5;
                3.0 / (PI * PI) * (4.0 / 13.0 * (4.0 / (k * k) + 8.0 * n as f64 / (k * k * k)) + 6.0 / (k * k))
            })
            .sum();
        assert!((m2g_r1_series() - brute).abs() < 1e-5);
    }

    #[test]
    fn tail_gates() {
        let p = TailParams::new(TailFamily::G, 700, 0.99999, 1.03167).unwrap();
        let b = p.bounds(350.0);
        assert_eq!(&b[..3], &[0.0, 0.0, 0.0]);
        assert!(b[3] > 0.0 && b[4] > 0.0);
        assert!(TailParams::new(TailFamily::G, 700, 1.2, 1.1).is_err());
        assert!(tail_bounds(Lemma::GAbs, 500, 0.83181, 1.5, 1e4).is_err());
    }

    #[test]
    fn tails_decrease_on_regions() {
        let p = TailParams::new(TailFamily::G, 700, 0.97658, 1.02002).unwrap().forcing([true; 5]);
        let mut prev = f64::INFINITY;
        for r in uniform_grid(699.5, 5000.0, 0.5) {
            let t: f64 = p.bounds(r).iter().sum();
            assert!(t <= prev + 1e-15);
            prev = t;
        }
    }
}
