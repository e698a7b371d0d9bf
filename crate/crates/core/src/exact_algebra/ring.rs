use std::fmt;

use super::integer::Integer;
use crate::error::{Error, Result};

/// Coefficient ring: the integers or a prime field ℤ_p.
///
/// Elements of every ring are carried as [`Integer`]; over ℤ_p they are kept
/// reduced to `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Mod(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    /// ℤ_p, rejecting non-prime moduli.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::Mod(p))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Mod(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Integers => 0,
            Ring::Mod(p) => *p,
        }
    }

    pub fn reduce(&self, a: &Integer) -> Integer {
        match self {
            Ring::Integers => a.clone(),
            Ring::Mod(p) => Integer::from(a.rem_u64(*p)),
        }
    }

    pub fn from_i64(&self, v: i64) -> Integer {
        self.reduce(&Integer::from(v))
    }

    pub fn add(&self, a: &Integer, b: &Integer) -> Integer {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &Integer, b: &Integer) -> Integer {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        self.reduce(&(a * b))
    }

    pub fn neg(&self, a: &Integer) -> Integer {
        self.reduce(&-a)
    }

    pub fn is_unit(&self, a: &Integer) -> bool {
        match self {
            Ring::Integers => a.is_unit(),
            Ring::Mod(p) => a.rem_u64(*p) != 0,
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self, a: &Integer) -> Integer {
        match self {
            Ring::Integers => {
                assert!(a.is_unit(), "{a} is not a unit of Z");
                a.clone()
            }
            Ring::Mod(p) => {
                let a = a.rem_u64(*p);
                assert!(a != 0, "zero has no inverse");
                Integer::from(pow_mod(a, p - 2, *p))
            }
        }
    }

    /// Euclidean division `a = q*d + r` with `r` strictly smaller than `d`
    /// in the ring's norm. Over a field the remainder is always zero.
    pub fn div_rem(&self, a: &Integer, d: &Integer) -> (Integer, Integer) {
        match self {
            Ring::Integers => a.div_rem_euclid(d),
            Ring::Mod(_) => (self.mul(a, &self.inverse(d)), Integer::ZERO),
        }
    }

    /// Ordering by Euclidean norm: absolute value over ℤ, all nonzero
    /// elements tie over a field.
    pub fn cmp_norm(&self, a: &Integer, b: &Integer) -> std::cmp::Ordering {
        match self {
            Ring::Integers => a.cmp_abs(b),
            Ring::Mod(_) => a.is_zero().cmp(&b.is_zero()).reverse(),
        }
    }

    /// Unit `u` such that `u * a` is the canonical associate of `a`
    /// (positive over ℤ, one over a field).
    pub fn normalizing_unit(&self, a: &Integer) -> Integer {
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    Integer::from(-1)
                } else {
                    Integer::ONE
                }
            }
            Ring::Mod(_) => {
                if a.is_zero() {
                    Integer::ONE
                } else {
                    self.inverse(a)
                }
            }
        }
    }

    pub fn divides(&self, d: &Integer, a: &Integer) -> bool {
        self.div_rem(a, d).1.is_zero()
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Mod(p) => write!(f, "Z{p}"),
        }
    }
}
