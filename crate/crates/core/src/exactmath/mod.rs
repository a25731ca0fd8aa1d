//! Exact coefficient arithmetic: rationals, odd prime fields, and the
//! row-reduction routines the rest of the crate builds on.

mod matrix;
mod prime;
mod rational;
mod ring;

pub use matrix::{kernel_basis, rank, rref, ExactMatrix};
pub use prime::{PrimeFieldElement, MAX_MODULUS};
pub use rational::Rational;
pub use ring::{Field, PrimeField, Rationals, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different prime fields (p={0} and p={1})")]
    MixedFields(u64, u64),
    #[error("modulus {0} is not an odd prime below 2^32")]
    InvalidModulus(u64),
    #[error("denominator is divisible by the modulus {0}")]
    DenominatorDivisibleByModulus(u64),
    #[error("cannot parse rational literal {0:?}")]
    Parse(String),
    #[error("shape mismatch: expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
}
