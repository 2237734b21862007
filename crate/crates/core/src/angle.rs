//! Roots of unity `e(x) = exp(2πi x)` stored exactly as `x mod 1`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::rat::{format_rat, frac, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAngle(Rat);

impl RationalAngle {
    pub fn new(x: &Rat) -> Self {
        Self(frac(x))
    }

    pub fn zero() -> Self {
        Self(Rat::zero())
    }

    /// Representative in `[0, 1)`.
    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Add for &RationalAngle {
    type Output = RationalAngle;
    fn add(self, rhs: Self) -> RationalAngle {
        RationalAngle::new(&(&self.0 + &rhs.0))
    }
}

impl Sub for &RationalAngle {
    type Output = RationalAngle;
    fn sub(self, rhs: Self) -> RationalAngle {
        RationalAngle::new(&(&self.0 - &rhs.0))
    }
}

impl Neg for &RationalAngle {
    type Output = RationalAngle;
    fn neg(self) -> RationalAngle {
        RationalAngle::new(&-&self.0)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rat(&self.0))
    }
}
