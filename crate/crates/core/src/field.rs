//! Scalar arithmetic in the prime field Z/p.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime used when nothing else is configured.
pub const DEFAULT_PRIME: u32 = 32003;

/// A residue class modulo the prime of some [`PrimeField`], stored in `[0, p)`.
///
/// Scalars do not carry their modulus; every operation goes through the
/// field that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldScalar(u32);

impl FieldScalar {
    pub const ZERO: FieldScalar = FieldScalar(0);
    pub const ONE: FieldScalar = FieldScalar(1);

    pub fn residue(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Z/p for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn from_i64(&self, x: i64) -> FieldScalar {
        FieldScalar(x.rem_euclid(self.p as i64) as u32)
    }

    /// `+1` or `-1` as a field element.
    pub fn sign(&self, positive: bool) -> FieldScalar {
        if positive {
            FieldScalar::ONE
        } else {
            FieldScalar(self.p - 1)
        }
    }

    pub fn add(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        FieldScalar(((a.0 as u64 + b.0 as u64) % self.p as u64) as u32)
    }

    pub fn sub(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FieldScalar) -> FieldScalar {
        if a.0 == 0 {
            a
        } else {
            FieldScalar(self.p - a.0)
        }
    }

    pub fn mul(&self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        FieldScalar(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(&self, mut base: FieldScalar, mut exp: u64) -> FieldScalar {
        let mut acc = FieldScalar::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldScalar) -> Option<FieldScalar> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Symmetric representative in `(-p/2, p/2]`, so `-1` prints as `-1`.
    pub fn signed(&self, a: FieldScalar) -> i64 {
        if a.0 > self.p / 2 {
            a.0 as i64 - self.p as i64
        } else {
            a.0 as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes_and_two() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(3).is_ok());
    }

    #[test]
    fn inverse_and_signed_representative() {
        let f = PrimeField::new(7).unwrap();
        for x in 1..7 {
            let a = f.from_i64(x);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldScalar::ONE);
        }
        assert_eq!(f.signed(f.from_i64(-1)), -1);
        assert_eq!(f.signed(f.sign(false)), -1);
        assert_eq!(f.signed(f.from_i64(3)), 3);
        assert!(f.inv(FieldScalar::ZERO).is_none());
    }
}
