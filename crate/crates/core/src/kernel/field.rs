//! Coefficient fields: a word-sized prime field and the rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::RngCore;

use super::KernelError;

/// Default prime: the Mersenne prime `2^31 - 1`.
///
/// Products of two residues fit comfortably in a `u64`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Random rational coefficients are drawn from `[-Q_RANDOM_BOUND, Q_RANDOM_BOUND]`.
pub const Q_RANDOM_BOUND: i64 = 1000;

/// An exact field of coefficients.
///
/// Elements are plain values; all arithmetic goes through the field object so
/// that a runtime modulus can be carried without storing it in every element.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; rejects zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, KernelError>;

    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Canonical integer representative used for printing: the symmetric
    /// residue in `F_p`, `None` for a non-integral rational.
    fn to_bigint(&self, a: &Self::Elem) -> Option<BigInt>;

    /// `(numerator, denominator)` with positive denominator; over `F_p` the
    /// numerator is the symmetric residue and the denominator one.
    fn as_fraction(&self, a: &Self::Elem) -> (BigInt, BigInt);

    /// Human readable form of an element (`p/q` allowed for rationals).
    fn format(&self, a: &Self::Elem) -> String;

    /// Reduce one draw of a 64-bit generator into the field.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// 0 for `Q`.
    fn characteristic(&self) -> u64;

    /// `"Q"` or `"Fp:<prime>"`, the notation used by ideal files.
    fn spec(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, KernelError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// The prime field `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, KernelError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(KernelError::BadModulus(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

/// Deterministic trial division; moduli are below `2^32`.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p) as u32
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p - *b as u64) % self.p) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            (self.p - *a as u64) as u32
        }
    }

    fn inv(&self, a: &u32) -> Result<u32, KernelError> {
        if *a == 0 {
            return Err(KernelError::DivisionByZero);
        }
        // Fermat: a^(p-2)
        let mut base = *a as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Ok(acc as u32)
    }

    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits in u32")
    }

    fn to_bigint(&self, a: &u32) -> Option<BigInt> {
        let a = *a as i64;
        let p = self.p as i64;
        Some(BigInt::from(if a > p / 2 { a - p } else { a }))
    }

    fn as_fraction(&self, a: &u32) -> (BigInt, BigInt) {
        (self.to_bigint(a).unwrap(), BigInt::one())
    }

    fn format(&self, a: &u32) -> String {
        self.to_bigint(a).unwrap().to_string()
    }

    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        (rng.next_u64() % self.p) as u32
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn spec(&self) -> String {
        format!("Fp:{}", self.p)
    }
}

/// The rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, KernelError> {
        if a.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn to_bigint(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }

    fn as_fraction(&self, a: &BigRational) -> (BigInt, BigInt) {
        (a.numer().clone(), a.denom().clone())
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.to_integer().to_string()
        } else if a.is_negative() {
            format!("-({}/{})", a.numer().abs(), a.denom())
        } else {
            format!("({}/{})", a.numer(), a.denom())
        }
    }

    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let span = 2 * Q_RANDOM_BOUND as u64 + 1;
        let v = (rng.next_u64() % span) as i64 - Q_RANDOM_BOUND;
        BigRational::from_integer(BigInt::from(v))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn spec(&self) -> String {
        "Q".to_string()
    }
}
