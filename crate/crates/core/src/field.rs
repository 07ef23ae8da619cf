//! Arithmetic in GF(2^k) for 1 <= k <= 16.
//!
//! Elements are polynomials over GF(2) packed into the low `k` bits of a
//! `u16`, reduced modulo a fixed irreducible polynomial taken from
//! [`IRREDUCIBLE`]. Addition is exclusive-or and needs no field context;
//! multiplication goes through [`Field`].

use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Reduction polynomials indexed by degree, with the leading term included.
///
/// Degree 1 uses `x + 1`, so GF(2) multiplication is plain `and`.
pub const IRREDUCIBLE: [u32; 17] = [
    0,
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11B,   // x^8 + x^4 + x^3 + x + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1002B, // x^16 + x^5 + x^3 + x + 1
];

/// A field element. The field it lives in is implied by context.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
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
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Fe) -> Fe {
        Fe(self.0 ^ rhs.0)
    }
}

impl AddAssign for Fe {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Fe) {
        self.0 ^= rhs.0;
    }
}

/// GF(2^k) described by its degree and reduction polynomial.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    degree: u32,
    modulus: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.degree)
    }
}

impl Field {
    /// The prime field GF(2).
    pub const GF2: Field = Field { degree: 1, modulus: 0x3 };

    pub fn new(degree: u32) -> Result<Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidParams(format!(
                "field degree must be in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        Ok(Field { degree, modulus: IRREDUCIBLE[degree as usize] })
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.degree
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_prime(self) -> bool {
        self.degree == 1
    }

    /// Number of elements, 2^k.
    pub fn order(self) -> u32 {
        1 << self.degree
    }

    /// Iterate over all field elements in integer order.
    pub fn elements(self) -> impl Iterator<Item = Fe> {
        (0..self.order()).map(|v| Fe(v as u16))
    }

    pub fn contains(self, a: Fe) -> bool {
        (a.0 as u32) < self.order()
    }

    #[inline]
    pub fn mul(self, a: Fe, b: Fe) -> Fe {
        if self.degree == 1 {
            return Fe(a.0 & b.0);
        }
        let (mut a, mut b) = (a.0 as u32, b.0 as u32);
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.degree != 0 {
                a ^= self.modulus;
            }
        }
        Fe(acc as u16)
    }

    /// Frobenius map x -> x^2.
    #[inline]
    pub fn square(self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(self, a: Fe, mut e: u64) -> Fe {
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

    pub fn inv(self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, (1u64 << self.degree) - 2))
        }
    }

    /// Inverse of the Frobenius map: the unique y with y^2 = a.
    pub fn sqrt(self, a: Fe) -> Fe {
        self.pow(a, 1u64 << (self.degree - 1))
    }

    /// Apply the inverse Frobenius map `m` times.
    pub fn sqrt_iter(self, a: Fe, m: usize) -> Fe {
        (0..m % self.degree as usize).fold(a, |x, _| self.sqrt(x))
    }

    /// Element corresponding to the single monomial x^bit.
    pub fn monomial(self, bit: u32) -> Fe {
        debug_assert!(bit < self.degree);
        Fe(1 << bit)
    }

    /// Find an embedding of `self` into `target`, i.e. an image for the
    /// generator `x` that is a root of this field's modulus. Exists iff
    /// `self.degree()` divides `target.degree()`.
    pub fn embedding_into(self, target: Field) -> Option<Embedding> {
        if !target.degree.is_multiple_of(self.degree) {
            return None;
        }
        if self.degree == 1 {
            return Some(Embedding { source: self, target, powers: vec![Fe::ONE] });
        }
        let root = target.elements().find(|&r| {
            let mut value = Fe::ZERO;
            let mut power = Fe::ONE;
            for bit in 0..=self.degree {
                if (self.modulus >> bit) & 1 == 1 {
                    value += power;
                }
                power = target.mul(power, r);
            }
            value.is_zero()
        })?;
        let mut powers = Vec::with_capacity(self.degree as usize);
        let mut p = Fe::ONE;
        for _ in 0..self.degree {
            powers.push(p);
            p = target.mul(p, root);
        }
        Some(Embedding { source: self, target, powers })
    }
}

/// Field homomorphism GF(2^a) -> GF(2^b) determined by the image of `x`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Field,
    pub target: Field,
    powers: Vec<Fe>,
}

impl Embedding {
    pub fn apply(&self, a: Fe) -> Fe {
        self.powers
            .iter()
            .enumerate()
            .filter(|(bit, _)| (a.0 >> bit) & 1 == 1)
            .fold(Fe::ZERO, |acc, (_, &p)| acc + p)
    }
}
