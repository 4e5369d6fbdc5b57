//! Prime fields `F_p` with `p <= 251`, so that every scalar fits in a byte.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalars are stored reduced in `[0, p)`.
pub type Scalar = u8;

pub const MAX_PRIME: u32 = 251;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: u64) -> Scalar {
        (v % self.p as u64) as Scalar
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as Scalar
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a as u32 + b as u32;
        (if s >= self.p { s - self.p } else { s }) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        let (a, b) = (a as u32, b as u32);
        (if a >= b { a - b } else { a + self.p - b }) as Scalar
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as Scalar
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u32 * b as u32) % self.p) as Scalar
    }

    pub fn pow(self, mut a: Scalar, mut e: u64) -> Scalar {
        let mut acc: Scalar = 1 % self.p as Scalar;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.p).map(|v| v as Scalar)
    }

    pub fn check(self, v: u32) -> Result<Scalar> {
        if v >= self.p {
            Err(Error::EntryOutOfRange {
                value: v,
                p: self.p,
            })
        } else {
            Ok(v as Scalar)
        }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large() {
        for n in [0, 1, 4, 9, 15, 91, 253, 257] {
            assert_eq!(PrimeField::new(n), Err(Error::NotPrime(n)));
        }
        for p in [2, 3, 5, 7, 251] {
            assert!(PrimeField::new(p).is_ok());
        }
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 13, 251] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                let a = a as Scalar;
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn fermat() {
        let f = PrimeField::new(251).unwrap();
        for a in 0..251u32 {
            assert_eq!(f.pow(a as Scalar, 251), a as Scalar);
        }
    }
}
