use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coordinate on the real line.
pub type Coord = Ratio<i64>;

/// Shorthand for `num / den` as a coordinate.
pub fn coord(num: i64, den: i64) -> Coord {
    Ratio::new(num, den)
}

/// A closed segment `[left, right]` with `left <= right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    left: Coord,
    right: Coord,
}

impl Interval {
    pub fn new(left: Coord, right: Coord) -> Result<Self> {
        if left > right {
            return Err(Error::InvalidInterval { index: 0 });
        }
        Ok(Interval { left, right })
    }

    pub fn point(at: Coord) -> Self {
        Interval { left: at, right: at }
    }

    pub fn unit(left: Coord) -> Self {
        Interval {
            left,
            right: left + Coord::one(),
        }
    }

    /// Integer endpoints, for tests and generators.
    pub fn ints(left: i64, right: i64) -> Result<Self> {
        Self::new(Coord::from_integer(left), Coord::from_integer(right))
    }

    #[inline]
    pub fn left(&self) -> Coord {
        self.left
    }

    #[inline]
    pub fn right(&self) -> Coord {
        self.right
    }

    pub fn length(&self) -> Coord {
        self.right - self.left
    }

    pub fn is_point(&self) -> bool {
        self.length().is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.length().is_one()
    }

    #[inline]
    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    #[inline]
    pub fn contains_point(&self, p: Coord) -> bool {
        self.left <= p && p <= self.right
    }

    /// `self` strictly contains `other` on both sides.
    pub fn strictly_contains(&self, other: &Interval) -> bool {
        self.left < other.left && self.right > other.right
    }

    /// Intersects `[a, b]`, or `[a, b)` when `right_open`.
    pub fn meets_window(&self, a: Coord, b: Coord, right_open: bool) -> bool {
        if self.right < a {
            return false;
        }
        if right_open {
            self.left < b
        } else {
            self.left <= b
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}
