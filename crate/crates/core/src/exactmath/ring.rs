use std::fmt::Debug;

use super::prime::check_modulus;
use super::{ExactError, PrimeFieldElement, Rational};

/// Coefficient ring context. Elements are plain values; the context carries
/// whatever they need to be combined (the modulus, for prime fields).
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &Rational) -> Result<Self::Elem, ExactError>;

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    /// `acc += a * b`
    fn add_product(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ExactError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ExactError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn from_rational(&self, r: &Rational) -> Result<Rational, ExactError> {
        Ok(r.clone())
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Result<Rational, ExactError> {
        a.inv()
    }
}

/// `F_p` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self, ExactError> {
        check_modulus(modulus)?;
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element(&self, value: i64) -> PrimeFieldElement {
        PrimeFieldElement::new(value, self.modulus).expect("modulus validated")
    }

    /// All residues `0..p` in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = PrimeFieldElement> + '_ {
        (0..self.modulus).map(|v| PrimeFieldElement::from_parts(v, self.modulus))
    }

    fn expect_same(&self, r: Result<PrimeFieldElement, ExactError>) -> PrimeFieldElement {
        r.expect("operands belong to this prime field")
    }
}

impl Ring for PrimeField {
    type Elem = PrimeFieldElement;

    fn zero(&self) -> PrimeFieldElement {
        PrimeFieldElement::from_parts(0, self.modulus)
    }
    fn one(&self) -> PrimeFieldElement {
        PrimeFieldElement::from_parts(1, self.modulus)
    }
    fn is_zero(&self, a: &PrimeFieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        self.expect_same(a.checked_add(b))
    }
    fn sub(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        self.expect_same(a.checked_sub(b))
    }
    fn mul(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        self.expect_same(a.checked_mul(b))
    }
    fn neg(&self, a: &PrimeFieldElement) -> PrimeFieldElement {
        a.neg()
    }
    fn from_rational(&self, r: &Rational) -> Result<PrimeFieldElement, ExactError> {
        PrimeFieldElement::from_rational(r, self.modulus)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &PrimeFieldElement) -> Result<PrimeFieldElement, ExactError> {
        a.inv()
    }
}
