//! Phases that are integer multiples of π/2, stored modulo 4.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

/// A phase `k·π/2` with `k` taken modulo 4.
///
/// `Phase::new(2)` is π, `Phase::new(3)` is −π/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ZERO: Phase = Phase(0);
    /// π/2
    pub const QUARTER: Phase = Phase(1);
    /// π
    pub const HALF: Phase = Phase(2);
    /// −π/2 (equivalently 3π/2)
    pub const THREE_QUARTER: Phase = Phase(3);

    pub fn new(k: impl Into<i64>) -> Phase {
        Phase((k.into().rem_euclid(4)) as u8)
    }

    /// The representative `k` in `0..4`.
    pub fn k(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// All four phases in increasing order of `k`.
    pub fn all() -> [Phase; 4] {
        [Phase(0), Phase(1), Phase(2), Phase(3)]
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase((4 + self.0 - rhs.0) % 4)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase((4 - self.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "pi/2"),
            2 => write!(f, "pi"),
            _ => write!(f, "-pi/2"),
        }
    }
}
