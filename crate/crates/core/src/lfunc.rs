//! Axiomatic data of a Selberg-class L-function and the invariants derived from it.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::primes;

/// One factor `Γ(λ s + μ)` of the functional equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFactor {
    pub lambda: f64,
    pub mu: Complex64,
}

impl GammaFactor {
    pub fn new(lambda: f64, mu: Complex64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidDescriptor(format!("lambda must be positive, got {lambda}")));
        }
        if !(mu.re >= 0.0) || !mu.im.is_finite() {
            return Err(Error::InvalidDescriptor(format!("Re(mu) must be nonnegative, got {mu}")));
        }
        Ok(Self { lambda, mu })
    }
}

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Bounds on the Dirichlet coefficients `a(n)` and on `b(p^k)`.
#[derive(Clone)]
pub struct CoefficientBounds {
    /// `ε ↦ C_R(ε)` with `|a(n)| ≤ C_R(ε) n^ε`.
    pub c_r: RealFn,
    pub c_e: f64,
    pub theta: f64,
}

impl CoefficientBounds {
    pub fn new(c_r: RealFn, c_e: f64, theta: f64) -> Result<Self> {
        if !(c_e > 0.0) {
            return Err(Error::InvalidDescriptor("C_E must be positive".into()));
        }
        if !(0.0..0.5).contains(&theta) {
            return Err(Error::InvalidDescriptor(format!("theta must lie in [0, 1/2), got {theta}")));
        }
        Ok(Self { c_r, c_e, theta })
    }

    /// `|a(n)| ≤ 1` for every n, which covers ζ and Dirichlet L-functions.
    pub fn unit() -> Self {
        Self { c_r: Arc::new(|_| 1.0), c_e: 1.0, theta: 0.0 }
    }
}

impl fmt::Debug for CoefficientBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientBounds")
            .field("c_r(0.1)", &(self.c_r)(0.1))
            .field("c_e", &self.c_e)
            .field("theta", &self.theta)
            .finish()
    }
}

/// Source of the coefficients `Λ_L(n)` and `a(n)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Oracle {
    Zeta,
    Dirichlet(DirichletCharacter),
    /// Explicit table indexed from `n = 1`.
    Table { lambda: Vec<Complex64>, a: Vec<Complex64> },
}

impl Oracle {
    /// `Λ_L(n)`; zero unless `n` is a prime power.
    pub fn lambda(&self, n: u64) -> Result<Complex64> {
        match self {
            Oracle::Zeta => Ok(Complex64::new(primes::mangoldt(n), 0.0)),
            Oracle::Dirichlet(chi) => Ok(chi.value(n) * primes::mangoldt(n)),
            Oracle::Table { lambda, .. } => table_get(lambda, n, "Lambda"),
        }
    }

    /// Dirichlet coefficient `a(n)`.
    pub fn a(&self, n: u64) -> Result<Complex64> {
        match self {
            Oracle::Zeta => Ok(Complex64::new(1.0, 0.0)),
            Oracle::Dirichlet(chi) => Ok(chi.value(n)),
            Oracle::Table { a, .. } => table_get(a, n, "a"),
        }
    }

    /// Largest `n` the oracle can answer, if bounded.
    pub fn max_n(&self) -> Option<u64> {
        match self {
            Oracle::Table { lambda, .. } => Some(lambda.len() as u64),
            _ => None,
        }
    }

    /// Read a table file: `n  Re Λ(n)  Im Λ(n)  [Re a(n)  Im a(n)]`, `#` comments,
    /// rows for `n = 1, 2, ...` in order.
    pub fn from_table_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut lambda = Vec::new();
        let mut a = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<f64> = line
                .split_whitespace()
                .map(|s| s.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            if cols.len() != 3 && cols.len() != 5 {
                return Err(Error::Parse { line: i + 1, msg: "expected 3 or 5 columns".into() });
            }
            if cols[0] as usize != lambda.len() + 1 {
                return Err(Error::Parse { line: i + 1, msg: format!("expected n = {}", lambda.len() + 1) });
            }
            lambda.push(Complex64::new(cols[1], cols[2]));
            a.push(if cols.len() == 5 { Complex64::new(cols[3], cols[4]) } else { Complex64::new(f64::NAN, f64::NAN) });
        }
        if lambda.is_empty() {
            return Err(Error::Parse { line: 0, msg: "empty coefficient table".into() });
        }
        Ok(Oracle::Table { lambda, a })
    }
}

fn table_get(v: &[Complex64], n: u64, what: &str) -> Result<Complex64> {
    if n == 0 {
        return domain("coefficients are indexed from n = 1");
    }
    v.get(n as usize - 1)
        .copied()
        .ok_or_else(|| Error::Incomplete(format!("{what}({n}) beyond table of length {}", v.len())))
}

/// A Dirichlet character modulo `q` with `(Z/qZ)^*` cyclic, labelled by
/// `χ_k(g^j) = e^{2πi jk/φ(q)}` for the least primitive root `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub index: u64,
    values: Vec<Complex64>,
}

impl DirichletCharacter {
    pub fn new(modulus: u64, index: u64) -> Result<Self> {
        if modulus == 0 {
            return domain("modulus must be positive");
        }
        if modulus > 10_000_000 {
            return domain("modulus too large for a value table");
        }
        let q = modulus;
        let mut values = vec![Complex64::new(0.0, 0.0); q as usize];
        if q == 1 {
            values[0] = Complex64::new(1.0, 0.0);
            return Ok(Self { modulus, index: 0, values });
        }
        let phi = primes::euler_phi(q);
        let g = primes::primitive_root(q)
            .ok_or_else(|| Error::Domain(format!("(Z/{q}Z)^* is not cyclic; only cyclic moduli are supported")))?;
        if index >= phi {
            return domain(format!("character index must be < phi(q) = {phi}"));
        }
        let mut x = 1u64;
        for j in 0..phi {
            let angle = 2.0 * PI * ((j * index) % phi) as f64 / phi as f64;
            values[x as usize] = Complex64::from_polar(1.0, angle);
            x = x * g % q;
        }
        Ok(Self { modulus, index, values })
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    /// `χ(−1) = −1`.
    pub fn is_odd(&self) -> bool {
        self.modulus > 2 && self.value(self.modulus - 1).re < 0.0
    }

    /// Not induced from any proper divisor of the modulus.
    pub fn is_primitive(&self) -> bool {
        let q = self.modulus;
        if q == 1 {
            return true;
        }
        for d in 1..q {
            if q % d != 0 {
                continue;
            }
            let induced = (1..q)
                .filter(|&n| primes::gcd(n, q) == 1 && n % d == 1 % d)
                .all(|n| (self.value(n) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            if induced {
                return false;
            }
        }
        true
    }
}

/// A Selberg-class L-function given by its axiomatic data.
#[derive(Debug, Clone)]
pub struct SelbergDescriptor {
    pub gamma_factors: Vec<GammaFactor>,
    pub q_factor: f64,
    pub omega: Complex64,
    pub pole_order: u32,
    pub euler_order: Option<u32>,
    pub oracle: Oracle,
    pub coeff_bounds: CoefficientBounds,
}

impl SelbergDescriptor {
    pub fn new(
        gamma_factors: Vec<GammaFactor>,
        q_factor: f64,
        omega: Complex64,
        pole_order: u32,
        euler_order: Option<u32>,
        oracle: Oracle,
        coeff_bounds: CoefficientBounds,
    ) -> Result<Self> {
        let d = Self { gamma_factors, q_factor, omega, pole_order, euler_order, oracle, coeff_bounds };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma_factors.is_empty() {
            return Err(Error::InvalidDescriptor("at least one gamma factor is required".into()));
        }
        for g in &self.gamma_factors {
            GammaFactor::new(g.lambda, g.mu)?;
        }
        if !(self.q_factor > 0.0 && self.q_factor.is_finite()) {
            return Err(Error::InvalidDescriptor("Q must be positive".into()));
        }
        if (self.omega.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDescriptor(format!("|omega| = {} is not 1", self.omega.norm())));
        }
        if self.euler_order == Some(0) {
            return Err(Error::InvalidDescriptor("euler_order must be positive".into()));
        }
        Ok(())
    }

    /// ζ(s): `Γ(s/2)`, `Q = π^{-1/2}`, simple pole at `s = 1`.
    pub fn zeta() -> Self {
        Self {
            gamma_factors: vec![GammaFactor { lambda: 0.5, mu: Complex64::new(0.0, 0.0) }],
            q_factor: PI.powf(-0.5),
            omega: Complex64::new(1.0, 0.0),
            pole_order: 1,
            euler_order: Some(1),
            oracle: Oracle::Zeta,
            coeff_bounds: CoefficientBounds::unit(),
        }
    }

    /// `L(s, χ)` for a primitive character `χ ≠ χ_0`.
    pub fn dirichlet(modulus: u64, index: u64) -> Result<Self> {
        let chi = DirichletCharacter::new(modulus, index)?;
        if modulus < 3 {
            return Err(Error::InvalidDescriptor("modulus 1 and 2 give ζ, not a Dirichlet L-function".into()));
        }
        if !chi.is_primitive() {
            return Err(Error::InvalidDescriptor(format!("character {index} mod {modulus} is not primitive")));
        }
        let mu = if chi.is_odd() { 0.5 } else { 0.0 };
        Ok(Self {
            gamma_factors: vec![GammaFactor { lambda: 0.5, mu: Complex64::new(mu, 0.0) }],
            q_factor: (modulus as f64 / PI).sqrt(),
            // The root number is a Gauss-sum ratio; it is stored only for
            // completeness and no formula consumes it.
            omega: Complex64::new(1.0, 0.0),
            pole_order: 0,
            euler_order: Some(1),
            oracle: Oracle::Dirichlet(chi),
            coeff_bounds: CoefficientBounds::unit(),
        })
    }

    pub fn invariants(&self) -> Result<DerivedInvariants> {
        derive_invariants(self)
    }

    /// All `λ_j = 1/2`, which forces `f = d`.
    pub fn strong_lambda(&self) -> bool {
        self.gamma_factors.iter().all(|g| g.lambda == 0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedInvariants {
    pub f: usize,
    pub d: f64,
    pub q: f64,
    pub xi: Complex64,
    pub mu_sum: Complex64,
    pub lambda_prod: f64,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub a_plus: f64,
    pub b_plus: f64,
}

pub fn derive_invariants(desc: &SelbergDescriptor) -> Result<DerivedInvariants> {
    let gs = &desc.gamma_factors;
    if gs.is_empty() {
        return Err(Error::InvalidDescriptor("at least one gamma factor is required".into()));
    }
    let d = 2.0 * gs.iter().map(|g| g.lambda).sum::<f64>();
    let lambda_prod: f64 = gs.iter().map(|g| g.lambda.powf(2.0 * g.lambda)).product();
    let q = (2.0 * PI).powf(d) * desc.q_factor * desc.q_factor * lambda_prod;
    let mu_sum = gs.iter().map(|g| g.mu).sum::<Complex64>() * 2.0;
    let xi = gs.iter().map(|g| g.mu - 0.5).sum::<Complex64>() * 2.0;
    let lambda_minus = gs.iter().map(|g| g.lambda).fold(f64::INFINITY, f64::min);
    let lambda_plus = gs.iter().map(|g| g.lambda).fold(0.0, f64::max);
    let a_plus = gs.iter().map(|g| g.mu.re / g.lambda).fold(f64::NEG_INFINITY, f64::max);
    let b_plus = gs.iter().map(|g| g.mu.im.abs() / g.lambda).fold(0.0, f64::max);
    Ok(DerivedInvariants { f: gs.len(), d, q, xi, mu_sum, lambda_prod, lambda_minus, lambda_plus, a_plus, b_plus })
}

impl DerivedInvariants {
    /// Analytic conductor `τ = q (|t|/2π)^d`.
    pub fn tau(&self, t: f64) -> Result<f64> {
        if t == 0.0 || !t.is_finite() {
            return domain("tau needs a finite nonzero t");
        }
        Ok(self.q * (t.abs() / (2.0 * PI)).powf(self.d))
    }
}

pub fn tau(desc: &SelbergDescriptor, t: f64) -> Result<f64> {
    derive_invariants(desc)?.tau(t)
}

/// Which conjectural prime-sum hypothesis is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjectureMode {
    None,
    Conj1,
    Conj2,
}

#[derive(Clone)]
pub struct ConjectureProfile {
    pub mode: ConjectureMode,
    /// `x ↦ C^{P1}(x)`, nondecreasing.
    pub c_p1: RealFn,
    pub c_p2: f64,
}

impl fmt::Debug for ConjectureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConjectureProfile")
            .field("mode", &self.mode)
            .field("c_p1(10)", &(self.c_p1)(10.0))
            .field("c_p2", &self.c_p2)
            .finish()
    }
}

impl ConjectureProfile {
    pub fn constant(mode: ConjectureMode, c_p1: f64, c_p2: f64) -> Self {
        Self { mode, c_p1: Arc::new(move |_| c_p1), c_p2 }
    }

    /// Check `C^{P1}` is nondecreasing on the given grid.
    pub fn check_monotone(&self, grid: &[f64]) -> Result<()> {
        for w in grid.windows(2) {
            if (self.c_p1)(w[1]) < (self.c_p1)(w[0]) {
                return domain(format!("C_P1 decreases between {} and {}", w[0], w[1]));
            }
        }
        if self.c_p2 < 0.0 {
            return domain("C_P2 must be nonnegative");
        }
        Ok(())
    }
}

// ---- descriptor config files -------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GammaFactorConfig {
    pub lambda: f64,
    #[serde(default)]
    pub mu_re: f64,
    #[serde(default)]
    pub mu_im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffBoundsConfig {
    #[serde(rename = "C_E")]
    pub c_e: f64,
    pub theta: f64,
    /// Constant value of `C_R(ε)`; defaults to 1.
    #[serde(rename = "C_R", default)]
    pub c_r: Option<f64>,
}

/// JSON layout of a descriptor file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DescriptorConfig {
    pub gamma_factors: Vec<GammaFactorConfig>,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(default = "one")]
    pub omega_re: f64,
    #[serde(default)]
    pub omega_im: f64,
    #[serde(default)]
    pub pole_order: u32,
    #[serde(default)]
    pub euler_order: Option<u32>,
    pub coeff_bounds: CoeffBoundsConfig,
    pub oracle: String,
}

fn one() -> f64 {
    1.0
}

impl DescriptorConfig {
    /// Build the descriptor. Relative `table:` paths resolve against `base_dir`.
    pub fn build(&self, base_dir: Option<&Path>) -> Result<SelbergDescriptor> {
        let gamma_factors = self
            .gamma_factors
            .iter()
            .map(|g| GammaFactor::new(g.lambda, Complex64::new(g.mu_re, g.mu_im)))
            .collect::<Result<Vec<_>>>()?;
        let oracle = parse_oracle(&self.oracle, base_dir)?;
        let c_r = self.coeff_bounds.c_r.unwrap_or(1.0);
        let bounds = CoefficientBounds::new(Arc::new(move |_| c_r), self.coeff_bounds.c_e, self.coeff_bounds.theta)?;
        SelbergDescriptor::new(
            gamma_factors,
            self.q,
            Complex64::new(self.omega_re, self.omega_im),
            self.pole_order,
            self.euler_order,
            oracle,
            bounds,
        )
    }
}

pub fn parse_oracle(spec: &str, base_dir: Option<&Path>) -> Result<Oracle> {
    if spec == "zeta" {
        return Ok(Oracle::Zeta);
    }
    if let Some(rest) = spec.strip_prefix("dirichlet:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            return Err(Error::InvalidDescriptor(format!("bad oracle '{spec}', want dirichlet:<modulus>:<index>")));
        }
        let q = parts[0].parse().map_err(|_| Error::InvalidDescriptor(format!("bad modulus in '{spec}'")))?;
        let k = parts[1].parse().map_err(|_| Error::InvalidDescriptor(format!("bad index in '{spec}'")))?;
        return Ok(Oracle::Dirichlet(DirichletCharacter::new(q, k)?));
    }
    if let Some(p) = spec.strip_prefix("table:") {
        let path = Path::new(p);
        let full = match base_dir {
            Some(b) if path.is_relative() => b.join(path),
            _ => path.to_path_buf(),
        };
        return Oracle::from_table_file(&full);
    }
    Err(Error::InvalidDescriptor(format!("unknown oracle '{spec}'")))
}

/// Resolve a builtin name (`zeta`, `dirichlet:q:k`) or a JSON descriptor path.
pub fn load_descriptor(name_or_path: &str) -> Result<SelbergDescriptor> {
    if name_or_path == "zeta" {
        return Ok(SelbergDescriptor::zeta());
    }
    if let Some(rest) = name_or_path.strip_prefix("dirichlet:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            if let (Ok(q), Ok(k)) = (parts[0].parse(), parts[1].parse()) {
                return SelbergDescriptor::dirichlet(q, k);
            }
        }
        return Err(Error::InvalidDescriptor(format!("bad builtin '{name_or_path}'")));
    }
    let path = Path::new(name_or_path);
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{name_or_path}: {e}")))?;
    let cfg: DescriptorConfig =
        serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    cfg.build(path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_invariants() {
        let inv = SelbergDescriptor::zeta().invariants().unwrap();
        assert_eq!(inv.f, 1);
        assert_eq!(inv.d, 1.0);
        assert!((inv.q - 1.0).abs() < 1e-12);
        assert_eq!(inv.xi, Complex64::new(-1.0, 0.0));
        assert_eq!(inv.a_plus, 0.0);
        assert_eq!(inv.b_plus, 0.0);
    }

    #[test]
    fn degree_two_example() {
        let mut d = SelbergDescriptor::zeta();
        d.gamma_factors = vec![GammaFactor::new(1.0, Complex64::new(0.0, 0.0)).unwrap()];
        d.q_factor = 1.0;
        let inv = d.invariants().unwrap();
        assert_eq!(inv.d, 2.0);
        assert!((inv.q - 4.0 * PI * PI).abs() < 1e-12);
        assert_eq!(inv.xi, Complex64::new(-1.0, 0.0));
        assert!((inv.tau(2.0 * PI).unwrap() - 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn tau_values() {
        let z = SelbergDescriptor::zeta();
        assert!((tau(&z, 2.0 * PI).unwrap() - 1.0).abs() < 1e-14);
        assert!((tau(&z, 2.0 * PI * std::f64::consts::E).unwrap() - std::f64::consts::E).abs() < 1e-14);
        assert!(tau(&z, 0.0).is_err());
    }

    #[test]
    fn dirichlet_conductor_and_parity() {
        // mod 5: index 2 is the real character (Legendre symbol), which is even.
        let even = SelbergDescriptor::dirichlet(5, 2).unwrap();
        let inv = even.invariants().unwrap();
        assert!((inv.q - 5.0).abs() < 1e-12);
        assert_eq!(inv.d, 1.0);
        assert_eq!(inv.xi, Complex64::new(-1.0, 0.0));
        // mod 4: the nontrivial character is odd.
        let odd = SelbergDescriptor::dirichlet(4, 1).unwrap();
        let inv = odd.invariants().unwrap();
        assert!((inv.q - 4.0).abs() < 1e-12);
        assert!(inv.xi.norm() < 1e-15);
    }

    #[test]
    fn imprimitive_rejected() {
        // The principal character mod 7 is induced from modulus 1.
        assert!(SelbergDescriptor::dirichlet(7, 0).is_err());
        // mod 9, index 3 has order 2 and is induced from mod 3.
        assert!(SelbergDescriptor::dirichlet(9, 3).is_err());
        assert!(SelbergDescriptor::dirichlet(9, 1).is_ok());
    }

    #[test]
    fn empty_gamma_factors_rejected() {
        let mut d = SelbergDescriptor::zeta();
        d.gamma_factors.clear();
        assert!(matches!(derive_invariants(&d), Err(Error::InvalidDescriptor(_))));
    }

    #[test]
    fn zeta_oracle() {
        let o = Oracle::Zeta;
        assert!((o.lambda(8).unwrap().re - 2f64.ln()).abs() < 1e-15);
        assert_eq!(o.lambda(6).unwrap(), Complex64::new(0.0, 0.0));
        let s: f64 = (1..=100).map(|n| o.lambda(n).unwrap().re).sum();
        assert!((s - 94.045).abs() < 1e-3);
    }

    #[test]
    fn config_roundtrip() {
        let json = r#"{"gamma_factors":[{"lambda":0.5,"mu_re":0.0,"mu_im":0.0}],
            "Q":0.5641895835477563,"omega_re":1.0,"omega_im":0.0,"pole_order":1,
            "euler_order":1,"coeff_bounds":{"C_E":1.0,"theta":0.0},"oracle":"zeta"}"#;
        let cfg: DescriptorConfig = serde_json::from_str(json).unwrap();
        let d = cfg.build(None).unwrap();
        let inv = d.invariants().unwrap();
        assert!((inv.q - 1.0).abs() < 1e-12);
        let bad = json.replace("\"omega_re\":1.0", "\"omega_re\":1.1");
        let cfg: DescriptorConfig = serde_json::from_str(&bad).unwrap();
        assert!(cfg.build(None).is_err());
    }
}
