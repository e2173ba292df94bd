//! The torus algebra: the path algebra over GF(2) of the two-vertex quiver
//! with arrows ρ1, ρ2, ρ3, modulo ρ2ρ1 = ρ3ρ2 = 0.
//!
//! As a vector space it has eight basis elements: the idempotents `i1`, `i2`
//! and six Reeb elements. Composition of Reeb chords is nonzero only when the
//! chord indices increase.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use crate::error::Error;

/// One of the two primitive idempotents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Idempotent {
    I1,
    I2,
}

impl Idempotent {
    pub const ALL: [Idempotent; 2] = [Idempotent::I1, Idempotent::I2];

    pub fn basis(self) -> Basis {
        match self {
            Idempotent::I1 => Basis::I1,
            Idempotent::I2 => Basis::I2,
        }
    }

    pub fn token(self) -> &'static str {
        self.basis().token()
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Idempotent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "i1" => Ok(Idempotent::I1),
            "i2" => Ok(Idempotent::I2),
            other => Err(Error::UnknownToken {
                line: 0,
                token: other.to_string(),
            }),
        }
    }
}

/// A basis element of the torus algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    I1,
    I2,
    R1,
    R2,
    R3,
    R12,
    R23,
    R123,
}

impl Basis {
    pub const ALL: [Basis; 8] = [
        Basis::I1,
        Basis::I2,
        Basis::R1,
        Basis::R2,
        Basis::R3,
        Basis::R12,
        Basis::R23,
        Basis::R123,
    ];

    /// The six Reeb elements, in canonical order.
    pub const REEB: [Basis; 6] = [
        Basis::R1,
        Basis::R2,
        Basis::R3,
        Basis::R12,
        Basis::R23,
        Basis::R123,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn is_idempotent(self) -> bool {
        matches!(self, Basis::I1 | Basis::I2)
    }

    pub fn is_reeb(self) -> bool {
        !self.is_idempotent()
    }

    pub fn as_idempotent(self) -> Option<Idempotent> {
        match self {
            Basis::I1 => Some(Idempotent::I1),
            Basis::I2 => Some(Idempotent::I2),
            _ => None,
        }
    }

    /// The unique idempotent `i` with `i · self = self`.
    pub fn source(self) -> Idempotent {
        use Basis::*;
        match self {
            I1 | R1 | R3 | R12 | R123 => Idempotent::I1,
            I2 | R2 | R23 => Idempotent::I2,
        }
    }

    /// The unique idempotent `i` with `self · i = self`.
    pub fn target(self) -> Idempotent {
        use Basis::*;
        match self {
            I1 | R2 | R12 => Idempotent::I1,
            I2 | R1 | R3 | R23 | R123 => Idempotent::I2,
        }
    }

    /// Number of copy-index steps this element advances in the orbifold
    /// extension: one for ρ3, ρ23 and ρ123, zero otherwise.
    pub fn shift_weight(self) -> usize {
        match self {
            Basis::R3 | Basis::R23 | Basis::R123 => 1,
            _ => 0,
        }
    }

    /// Product of two basis elements; `None` when it vanishes.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Basis) -> Option<Basis> {
        use Basis::*;
        if self.target() != rhs.source() {
            return None;
        }
        match (self, rhs) {
            (I1 | I2, r) => Some(r),
            (r, I1 | I2) => Some(r),
            (R1, R2) => Some(R12),
            (R2, R3) => Some(R23),
            (R1, R23) => Some(R123),
            (R12, R3) => Some(R123),
            _ => None,
        }
    }

    /// File token: `i1 i2 r1 r2 r3 r12 r23 r123`.
    pub fn token(self) -> &'static str {
        use Basis::*;
        match self {
            I1 => "i1",
            I2 => "i2",
            R1 => "r1",
            R2 => "r2",
            R3 => "r3",
            R12 => "r12",
            R23 => "r23",
            R123 => "r123",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Basis::ALL
            .into_iter()
            .find(|b| b.token() == s)
            .ok_or_else(|| Error::UnknownToken {
                line: 0,
                token: s.to_string(),
            })
    }
}

pub fn source_idem(r: Basis) -> Idempotent {
    r.source()
}

pub fn target_idem(r: Basis) -> Idempotent {
    r.target()
}

pub fn shift_weight(r: Basis) -> usize {
    r.shift_weight()
}

/// Sum of shift weights over a word of algebra elements.
pub fn shift_count(word: &[Basis]) -> usize {
    word.iter().map(|b| b.shift_weight()).sum()
}

/// A GF(2) linear combination of basis elements, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraElement(u8);

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement(0);

    /// The unit `i1 + i2`.
    pub fn one() -> Self {
        Basis::I1.into_element() + Basis::I2.into_element()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, b: Basis) -> bool {
        self.0 & (1 << b.index()) != 0
    }

    pub fn toggle(&mut self, b: Basis) {
        self.0 ^= 1 << b.index();
    }

    /// Basis elements in the support, in canonical order.
    pub fn terms(self) -> impl Iterator<Item = Basis> {
        Basis::ALL.into_iter().filter(move |b| self.contains(*b))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.is_zero()
    }
}

impl Basis {
    pub fn into_element(self) -> AlgebraElement {
        AlgebraElement(1 << self.index())
    }
}

impl From<Basis> for AlgebraElement {
    fn from(b: Basis) -> Self {
        b.into_element()
    }
}

impl FromIterator<Basis> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = Basis>>(iter: I) -> Self {
        let mut out = AlgebraElement::ZERO;
        for b in iter {
            out.toggle(b);
        }
        out
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;

    // coefficients live in GF(2)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        AlgebraElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for AlgebraElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: Self) -> Self {
        let mut out = AlgebraElement::ZERO;
        for a in self.terms() {
            for b in rhs.terms() {
                if let Some(c) = a.mul(b) {
                    out.toggle(c);
                }
            }
        }
        out
    }
}

pub fn mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement {
    a * b
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for b in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
