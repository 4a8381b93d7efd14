//! Field descriptors and exact scalars.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::LinalgError;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 31;

/// The field a scalar or matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Validates `p` as a prime below 2^31.
    pub fn prime(p: u32) -> Result<Field, LinalgError> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(LinalgError::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldElement {
        FieldElement::from_i64(self, 0)
    }

    pub fn one(self) -> FieldElement {
        FieldElement::from_i64(self, 1)
    }

    /// Uniform element for prime fields; small numerators and denominators for `Q`.
    pub fn random_element<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        match self {
            Field::Prime(p) => FieldElement::Residue { value: rng.gen_range(0..p), modulus: p },
            Field::Rational => {
                let num: i64 = rng.gen_range(-3..=3);
                let den: i64 = if rng.gen_bool(0.25) { rng.gen_range(1..=3) } else { 1 };
                FieldElement::Rational(BigRational::new(num.into(), den.into()))
            }
        }
    }

    /// Random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random_element(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .ok_or_else(|| LinalgError::InvalidField(s.to_string()))?
            .parse::<u32>()
            .map_err(|_| LinalgError::InvalidField(s.to_string()))?;
        Field::prime(p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar: a reduced rational or a residue modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl FieldElement {
    pub fn from_i64(field: Field, n: i64) -> FieldElement {
        match field {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElement::Residue { value: n.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    /// `num / den` in the given field; fails when `den` vanishes there.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<FieldElement, LinalgError> {
        if den.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        match field {
            Field::Rational => Ok(FieldElement::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let n = reduce_big(num, p);
                let d = reduce_big(den, p);
                if d == 0 {
                    return Err(LinalgError::DivisionByZero);
                }
                let value = (n as u64 * inv_mod(d, p) as u64 % p as u64) as u32;
                Ok(FieldElement::Residue { value, modulus: p })
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), LinalgError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch { left: self.field(), right: other.field() })
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, LinalgError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Residue { value: a, modulus: p }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue { value: ((*a as u64 + *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, LinalgError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Residue { value: a, modulus: p }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue { value: ((*a as u64 * *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, LinalgError> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => {
                FieldElement::Residue { value: (*modulus - *value) % *modulus, modulus: *modulus }
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Residue { value, modulus } => {
                FieldElement::Residue { value: inv_mod(*value, *modulus), modulus: *modulus }
            }
        })
    }

    /// Numerator and denominator as decimal strings (residues have denominator 1).
    pub fn to_ratio_strings(&self) -> (String, String) {
        match self {
            FieldElement::Rational(q) => (q.numer().to_string(), q.denom().to_string()),
            FieldElement::Residue { value, .. } => (value.to_string(), "1".to_string()),
        }
    }

    /// Integer value when the element is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(q) if q.is_integer() => q.numer().to_i64(),
            FieldElement::Rational(_) => None,
            FieldElement::Residue { value, .. } => Some(*value as i64),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on mixed fields; the `checked_*` methods report it instead.
impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

pub(crate) fn reduce_big(n: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u32().expect("residue fits in u32")
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p.
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let m = p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}
