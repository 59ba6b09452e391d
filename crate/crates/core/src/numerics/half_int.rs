use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A half-integer stored as twice its value, so parity checks stay exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    #[inline]
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    #[inline]
    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Parses a decimal such as `3`, `-2.5` or `0.5`; only multiples of ½ are accepted.
    pub fn from_f64(x: f64) -> Option<Self> {
        let twice = 2.0 * x;
        if twice.is_finite() && twice == twice.round() && twice.abs() < 1e15 {
            Some(HalfInt(twice as i64))
        } else {
            None
        }
    }

    #[inline]
    pub const fn twice(self) -> i64 {
        self.0
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    pub fn same_parity(self, other: HalfInt) -> bool {
        (self.0 - other.0) % 2 == 0
    }

    pub fn to_real<T: Real>(self) -> T {
        T::from_i64(self.0).unwrap() * T::lit(0.5)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 * 0.5
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

/// Addresses the rotation-matrix element `d^j_{m_row, m_col}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WignerIndex {
    j: HalfInt,
    m_row: HalfInt,
    m_col: HalfInt,
}

impl WignerIndex {
    pub fn new(j: HalfInt, m_row: HalfInt, m_col: HalfInt) -> Result<Self> {
        let valid = j.twice() >= 0
            && m_row.twice().abs() <= j.twice()
            && m_col.twice().abs() <= j.twice()
            && j.same_parity(m_row)
            && j.same_parity(m_col);
        if !valid {
            return Err(Error::InvalidIndex {
                twice_j: j.twice(),
                twice_row: m_row.twice(),
                twice_col: m_col.twice(),
            });
        }
        Ok(Self { j, m_row, m_col })
    }

    /// Shorthand taking the doubled values directly.
    pub fn from_twice(twice_j: i64, twice_row: i64, twice_col: i64) -> Result<Self> {
        Self::new(
            HalfInt::from_twice(twice_j),
            HalfInt::from_twice(twice_row),
            HalfInt::from_twice(twice_col),
        )
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn m_row(&self) -> HalfInt {
        self.m_row
    }

    pub fn m_col(&self) -> HalfInt {
        self.m_col
    }
}
