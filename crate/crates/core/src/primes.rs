//! Elementary arithmetic: von Mangoldt values, a prime-power sieve and
//! the Chebyshev function.

use crate::error::{domain, Result};
use crate::kahan::KahanSum;

/// Hard cap on sieve size.
pub const SIEVE_CAP: u64 = 10_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Smallest prime factor of `n ≥ 2` by trial division.
pub fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 2;
    }
    n
}

/// `Λ(n)`: `log p` if `n = p^k`, else 0.
pub fn mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        out.push(p);
        while n % p == 0 {
            n /= p;
        }
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    distinct_prime_factors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Least primitive root modulo `q`, or `None` when `(Z/qZ)^*` is not cyclic.
pub fn primitive_root(q: u64) -> Option<u64> {
    if q <= 2 {
        return Some(1);
    }
    let phi = euler_phi(q);
    let fs = distinct_prime_factors(phi);
    (2..q).find(|&g| gcd(g, q) == 1 && fs.iter().all(|&p| pow_mod(g, phi / p, q) != 1))
}

/// `Λ(n)` for every `n ≤ n_max` and the running Chebyshev sums.
#[derive(Debug, Clone)]
pub struct MangoldtTable {
    lambda: Vec<f64>,
    psi: Vec<f64>,
}

impl MangoldtTable {
    pub fn new(n_max: u64) -> Result<Self> {
        if n_max > SIEVE_CAP {
            return domain(format!("sieve limit {n_max} exceeds cap {SIEVE_CAP}"));
        }
        let n = n_max as usize;
        let mut lambda = vec![0.0; n + 1];
        let mut composite = vec![false; n + 1];
        for p in 2..=n {
            if composite[p] {
                continue;
            }
            let lp = (p as f64).ln();
            let mut q = p;
            loop {
                lambda[q] = lp;
                match q.checked_mul(p) {
                    Some(nq) if nq <= n => q = nq,
                    _ => break,
                }
            }
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
        let mut psi = vec![0.0; n + 1];
        let mut acc = KahanSum::new();
        for k in 0..=n {
            acc.add(lambda[k]);
            psi[k] = acc.value();
        }
        Ok(Self { lambda, psi })
    }

    pub fn n_max(&self) -> u64 {
        (self.lambda.len() - 1) as u64
    }

    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[n as usize]
    }

    /// `ψ(x) = Σ_{n≤x} Λ(n)`.
    pub fn psi(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return domain("psi needs x >= 0");
        }
        let k = x.floor() as u64;
        if k > self.n_max() {
            return domain(format!("x = {x} beyond sieve limit {}", self.n_max()));
        }
        Ok(self.psi[k as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mangoldt_small() {
        assert_eq!(mangoldt(1), 0.0);
        assert!((mangoldt(8) - 2f64.ln()).abs() < 1e-15);
        assert!((mangoldt(49) - 7f64.ln()).abs() < 1e-15);
        assert_eq!(mangoldt(12), 0.0);
    }

    #[test]
    fn table_matches_trial_division() {
        let t = MangoldtTable::new(5000).unwrap();
        for n in 1..=5000 {
            assert_eq!(t.lambda(n), mangoldt(n), "n = {n}");
        }
        assert!((t.psi(100.0).unwrap() - 94.045).abs() < 1e-3);
        assert_eq!(t.psi(1.5).unwrap(), 0.0);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7), Some(3));
        assert_eq!(primitive_root(9), Some(2));
        assert_eq!(primitive_root(8), None);
        assert_eq!(euler_phi(36), 12);
    }

    #[test]
    fn cap_enforced() {
        assert!(MangoldtTable::new(SIEVE_CAP + 1).is_err());
    }
}
