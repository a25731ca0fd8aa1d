use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{ExactError, Rational};

/// Largest modulus accepted; products of two residues must fit in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

pub(crate) fn is_prime(n: u64) -> bool {
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

/// Residue modulo an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElement {
    value: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: u64) -> Result<Self, ExactError> {
        check_modulus(modulus)?;
        let value = value.rem_euclid(modulus as i64) as u64;
        Ok(PrimeFieldElement { value, modulus })
    }

    /// Caller guarantees `value < modulus` and a valid modulus.
    pub(crate) fn from_parts(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        PrimeFieldElement { value, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.modulus != other.modulus {
            return Err(ExactError::MixedFields(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(Self::from_parts((self.value + other.value) % self.modulus, self.modulus))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(Self::from_parts(
            (self.value + self.modulus - other.value) % self.modulus,
            self.modulus,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(Self::from_parts((self.value * other.value) % self.modulus, self.modulus))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts((self.modulus - self.value) % self.modulus, self.modulus)
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.value == 0 {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::from_parts(pow_mod(self.value, self.modulus - 2, self.modulus), self.modulus))
    }

    /// Image of a rational under `Q -> F_p`; fails when `p` divides the denominator.
    pub fn from_rational(r: &Rational, modulus: u64) -> Result<Self, ExactError> {
        check_modulus(modulus)?;
        let p = BigInt::from(modulus);
        let reduce = |n: &BigInt| n.mod_floor(&p).to_u64().expect("residue fits u64");
        let den = reduce(r.denom());
        if den == 0 {
            return Err(ExactError::DenominatorDivisibleByModulus(modulus));
        }
        let num = Self::from_parts(reduce(r.numer()), modulus);
        num.checked_div(&Self::from_parts(den, modulus))
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub(crate) fn check_modulus(modulus: u64) -> Result<(), ExactError> {
    if modulus == 2 || modulus > MAX_MODULUS || !is_prime(modulus) {
        return Err(ExactError::InvalidModulus(modulus));
    }
    Ok(())
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: i64, p: u64) -> PrimeFieldElement {
        PrimeFieldElement::new(v, p).unwrap()
    }

    #[test]
    fn inverse_mod_five() {
        assert_eq!(f(2, 5).inv().unwrap(), f(3, 5));
        assert_eq!(f(0, 5).inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn canonical_residues() {
        assert_eq!(f(-1, 7).value(), 6);
        assert_eq!(f(15, 7).value(), 1);
        assert_eq!(f(3, 7).neg().value(), 4);
        assert_eq!(f(0, 7).neg().value(), 0);
    }

    #[test]
    fn rejects_even_and_composite_moduli() {
        for m in [0, 1, 2, 4, 9, 15] {
            assert_eq!(PrimeFieldElement::new(1, m), Err(ExactError::InvalidModulus(m)));
        }
    }

    #[test]
    fn mixed_moduli_are_rejected() {
        assert_eq!(f(1, 3).checked_add(&f(1, 5)), Err(ExactError::MixedFields(3, 5)));
        assert!(f(1, 3).checked_mul(&f(1, 5)).is_err());
    }

    #[test]
    fn rational_images() {
        let half: Rational = "1/2".parse().unwrap();
        assert_eq!(PrimeFieldElement::from_rational(&half, 5).unwrap(), f(3, 5));
        let neg: Rational = "-7/3".parse().unwrap();
        // 3^{-1} = 4 mod 11, so -7/3 = -28
        assert_eq!(PrimeFieldElement::from_rational(&neg, 11).unwrap(), f(-28, 11));
        let third: Rational = "1/3".parse().unwrap();
        assert_eq!(
            PrimeFieldElement::from_rational(&third, 3),
            Err(ExactError::DenominatorDivisibleByModulus(3))
        );
    }
}
