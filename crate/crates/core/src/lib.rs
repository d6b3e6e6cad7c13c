//! Explicit conditional bounds for `log|L(σ+it)|` over the Selberg class.
//!
//! The crate is organised bottom-up:
//!
//! * [`lfunc`] holds the axiomatic data of an L-function and its invariants.
//! * [`gamma`] has the Stirling quotient and digamma estimates plus a reference `log Γ`.
//! * [`extremal`] evaluates `f_σ`, the minorant `g_Δ`, the majorant `m_Δ` and their transforms.
//! * [`verify`] recomputes the numerical constants 121, 28, 24, 4 and 13.
//! * [`primes`] sieves the von Mangoldt function and Dirichlet characters.
//! * [`prime_sums`] covers Chebyshev sums, the `A_f`/`B_f`/`C_i` integrals and the prime-power sum bounds.
//! * [`explicit`] has the Guinand–Weil formula and the log-modulus identity.
//! * [`bounds`] assembles theorem-level reports.
//! * [`zeta`] and [`zeros`] are desk-scale reference data: ζ by Euler–Maclaurin and zero tables.

pub mod bounds;
pub mod error;
pub mod explicit;
pub mod extremal;
pub mod gamma;
pub mod kahan;
pub mod lfunc;
pub mod maximize;
pub mod prime_sums;
pub mod primes;
pub mod quad;
pub mod verify;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
