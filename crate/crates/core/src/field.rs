//! Arithmetic in GF(2^k) for 1 <= k <= 16.
//!
//! Elements are polynomials over F2 encoded as bit strings (bit i is the
//! coefficient of x^i). Each degree uses a fixed modulus: the numerically
//! smallest irreducible polynomial of that degree, so that two runs (or two
//! implementations) always agree on the encoding.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field degree {0} outside 1..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#b} does not have degree {degree}")]
    WrongModulusDegree { degree: u32, modulus: u32 },
    #[error("modulus {0:#b} is reducible over F2")]
    Reducible(u32),
    #[error("modulus {0:#b} is not the canonical modulus for its degree")]
    NonCanonical(u32),
    #[error("element {bits} does not fit in GF(2^{degree})")]
    ElementOutOfRange { bits: u64, degree: u32 },
}

/// A field element, stored as its polynomial representative.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

impl AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

/// Degree of a nonzero polynomial; `None` for zero.
fn poly_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b).expect("division by the zero polynomial");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division against every polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: u32) -> bool {
    let Some(deg) = poly_degree(poly as u64) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for low in 0..(1u64 << d) {
            let divisor = (1u64 << d) | low;
            if poly_rem(poly as u64, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// The canonical modulus of a degree: the smallest irreducible of that degree.
pub fn smallest_irreducible(degree: u32) -> Result<u32, FieldError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(FieldError::DegreeOutOfRange(degree));
    }
    let lead = 1u32 << degree;
    (0..lead).map(|low| lead | low).find(|&p| is_irreducible(p)).ok_or(FieldError::DegreeOutOfRange(degree))
}

/// Descriptor of GF(2^k): the degree and its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct Field {
    degree: u32,
    modulus: u32,
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    degree: u32,
    modulus_bits: u32,
}

impl TryFrom<FieldRepr> for Field {
    type Error = FieldError;
    fn try_from(r: FieldRepr) -> Result<Self, Self::Error> {
        Field::with_modulus(r.degree, r.modulus_bits)
    }
}

impl From<Field> for FieldRepr {
    fn from(f: Field) -> Self {
        FieldRepr { degree: f.degree, modulus_bits: f.modulus }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#b})", self.degree, self.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F2")
        } else {
            write!(f, "GF({})", 1u32 << self.degree)
        }
    }
}

impl Field {
    /// GF(2^degree) with the canonical modulus.
    pub fn new(degree: u32) -> Result<Field, FieldError> {
        let modulus = smallest_irreducible(degree)?;
        Ok(Field { degree, modulus })
    }

    /// The prime field F2.
    pub fn f2() -> Field {
        Field { degree: 1, modulus: 0b10 }
    }

    /// Validates an externally supplied modulus. Only the canonical modulus
    /// is accepted so that element encodings are unambiguous.
    pub fn with_modulus(degree: u32, modulus: u32) -> Result<Field, FieldError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(degree));
        }
        if poly_degree(modulus as u64) != Some(degree) {
            return Err(FieldError::WrongModulusDegree { degree, modulus });
        }
        if !is_irreducible(modulus) {
            return Err(FieldError::Reducible(modulus));
        }
        if modulus != smallest_irreducible(degree)? {
            return Err(FieldError::NonCanonical(modulus));
        }
        Ok(Field { degree, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, 2^k.
    pub fn order(&self) -> u32 {
        1u32 << self.degree
    }

    pub fn is_prime(&self) -> bool {
        self.degree == 1
    }

    pub fn contains(&self, a: Fe) -> bool {
        (a.0 as u32) < self.order()
    }

    pub fn elem(&self, bits: u64) -> Result<Fe, FieldError> {
        if bits >= self.order() as u64 {
            return Err(FieldError::ElementOutOfRange { bits, degree: self.degree });
        }
        Ok(Fe(bits as u16))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order()).map(|b| Fe(b as u16))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.degree == 1 {
            return Fe(a.0 & b.0);
        }
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut acc = 0u32;
        while y != 0 {
            if y & 1 != 0 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x & (1 << self.degree) != 0 {
                x ^= self.modulus;
            }
        }
        Fe(acc as u16)
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(2^k - 2).
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, self.order() as u64 - 2))
    }

    /// Inverse of the Frobenius automorphism: the unique b with b^2 = a.
    pub fn sqrt(&self, a: Fe) -> Fe {
        self.pow(a, 1u64 << (self.degree - 1))
    }

    pub fn zero_vec(&self, n: usize) -> Vec<Fe> {
        vec![Fe::ZERO; n]
    }

    pub fn unit_vec(&self, n: usize, i: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; n];
        v[i] = Fe::ONE;
        v
    }

    /// y += alpha * x
    pub fn axpy(&self, alpha: Fe, x: &[Fe], y: &mut [Fe]) {
        debug_assert_eq!(x.len(), y.len());
        if alpha.is_zero() {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi += self.mul(alpha, xi);
        }
    }

    pub fn scale(&self, alpha: Fe, x: &[Fe]) -> Vec<Fe> {
        x.iter().map(|&xi| self.mul(alpha, xi)).collect()
    }

    /// Checks every coordinate is a valid element of this field.
    pub fn check_vec(&self, v: &[Fe]) -> Result<(), FieldError> {
        for &a in v {
            if !self.contains(a) {
                return Err(FieldError::ElementOutOfRange { bits: a.0 as u64, degree: self.degree });
            }
        }
        Ok(())
    }
}

pub fn vec_add(x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    x.iter().zip(y).map(|(&a, &b)| a + b).collect()
}

pub fn vec_add_assign(y: &mut [Fe], x: &[Fe]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += xi;
    }
}

pub fn is_zero_vec(x: &[Fe]) -> bool {
    x.iter().all(|a| a.is_zero())
}

/// Builds a vector from raw bit-encoded coordinates.
pub fn vec_from_bits(bits: &[u16]) -> Vec<Fe> {
    bits.iter().map(|&b| Fe(b)).collect()
}

pub fn vec_bits(x: &[Fe]) -> Vec<u16> {
    x.iter().map(|a| a.0).collect()
}
