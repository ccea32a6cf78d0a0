//! Commutative-algebra kernel: exact sparse polynomials, Gröbner bases,
//! ideal quotients and saturations, Hilbert series.

mod expr;
mod field;
mod groebner;
mod hilbert;
mod ideal;
mod monomial;
mod poly;

pub use expr::{parse_polynomial, parse_polynomial_list, IntegerPolynomial, ParseError};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME, Q_RANDOM_BOUND};
pub use groebner::{groebner_basis, is_groebner_basis, GroebnerBasis};
pub use hilbert::{hilbert_numerator, HilbertData};
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::{PolyRing, Polynomial};

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^32")]
    BadModulus(u64),
    #[error("unsupported number of variables: {0}")]
    VariableCount(usize),
    #[error("ring mismatch: expected {expected:?}, found {found:?}")]
    RingMismatch {
        expected: (usize, MonomialOrder),
        found: (usize, MonomialOrder),
    },
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generators do not share a common degree")]
    MixedDegrees,
    #[error("cannot present generators of degree {found} in lower degree {target}")]
    DegreeTooSmall { target: u32, found: u32 },
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("random combination vanished {0} times in a row")]
    ZeroCombination(usize),
}

/// The deterministic generator behind every random choice in the crate:
/// ChaCha8 keyed by `seed` (expanded with `SeedableRng::seed_from_u64`) on
/// word stream `stream`.
pub fn seed_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
