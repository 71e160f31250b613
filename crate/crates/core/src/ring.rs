use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Ground ring for homology computations.
///
/// The integers, the rationals, a prime field, or the integers modulo a
/// composite m. The associated `mu` is the smallest nonnegative integer
/// annihilating the ring (0 for Z and Q, p for F_p, m for Z/m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
    ModM(u64),
}

impl CoefficientRing {
    /// Smallest positive integer annihilating the ring, or zero if the ring
    /// is torsion free.
    pub fn mu(&self) -> u64 {
        match self {
            CoefficientRing::Integers | CoefficientRing::Rationals => 0,
            CoefficientRing::PrimeField(p) => *p,
            CoefficientRing::ModM(m) => *m,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(
            self,
            CoefficientRing::Rationals | CoefficientRing::PrimeField(_)
        )
    }

    /// Validates the ring parameters: p must be prime, m must be at least 2.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            CoefficientRing::PrimeField(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(format!("{p} is not prime"))
                }
            }
            CoefficientRing::ModM(m) if *m < 2 => Err(format!("modulus {m} must be at least 2")),
            _ => Ok(()),
        }
    }

    /// Whether a scalar is divisible by mu. For mu = 0 only zero qualifies.
    pub fn divisible_by_mu(&self, a: &BigInt) -> bool {
        let mu = self.mu();
        if mu == 0 {
            a.is_zero()
        } else {
            (a % BigInt::from(mu)).is_zero()
        }
    }

    /// Parses ring specifications of the form `Z`, `Q`, `F2`/`Fp:7`, `mod:6`.
    pub fn parse(spec: &str) -> Result<Self, String> {
        let s = spec.trim();
        let ring = match s {
            "Z" | "z" | "int" | "integers" => CoefficientRing::Integers,
            "Q" | "q" | "rat" | "rationals" => CoefficientRing::Rationals,
            _ => {
                if let Some(rest) = s.strip_prefix("mod:") {
                    let m: u64 = rest.parse().map_err(|_| format!("bad modulus `{rest}`"))?;
                    CoefficientRing::ModM(m)
                } else if let Some(rest) = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("fp:")) {
                    let p: u64 = rest.parse().map_err(|_| format!("bad prime `{rest}`"))?;
                    CoefficientRing::PrimeField(p)
                } else if let Some(rest) = s.strip_prefix('F').or_else(|| s.strip_prefix('f')) {
                    let p: u64 = rest.parse().map_err(|_| format!("bad prime `{rest}`"))?;
                    CoefficientRing::PrimeField(p)
                } else {
                    return Err(format!("unrecognized ring spec `{s}`"));
                }
            }
        };
        ring.validate()?;
        Ok(ring)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
            CoefficientRing::ModM(m) => write!(f, "Z/{m}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Reduces a scalar into the range [0, m).
pub fn reduce_mod(a: &BigInt, m: u64) -> BigInt {
    let m = BigInt::from(m);
    let r = a % &m;
    if r < BigInt::zero() {
        r + m
    } else {
        r
    }
}

/// Extended gcd: returns (g, s, t) with g = s*a + t*b and g >= 0.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0 < BigInt::zero() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_values() {
        assert_eq!(CoefficientRing::Integers.mu(), 0);
        assert_eq!(CoefficientRing::Rationals.mu(), 0);
        assert_eq!(CoefficientRing::PrimeField(5).mu(), 5);
        assert_eq!(CoefficientRing::ModM(6).mu(), 6);
    }

    #[test]
    fn parse_specs() {
        assert_eq!(CoefficientRing::parse("Z"), Ok(CoefficientRing::Integers));
        assert_eq!(CoefficientRing::parse("Q"), Ok(CoefficientRing::Rationals));
        assert_eq!(
            CoefficientRing::parse("F2"),
            Ok(CoefficientRing::PrimeField(2))
        );
        assert_eq!(CoefficientRing::parse("mod:6"), Ok(CoefficientRing::ModM(6)));
        assert!(CoefficientRing::parse("F4").is_err());
        assert!(CoefficientRing::parse("mod:1").is_err());
    }

    #[test]
    fn egcd_bezout() {
        let (g, s, t) = extended_gcd(&BigInt::from(12), &BigInt::from(18));
        assert_eq!(g, BigInt::from(6));
        assert_eq!(s * 12 + t * 18, BigInt::from(6));
    }
}
