//! Signed square roots of rationals, `sign * sqrt(sq)`.
//!
//! Structure constants of the Weyl basis are of this form. Products stay in
//! the domain; sums only when the radicands agree.

use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    sign: i8,
    sq: Q,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { sign: 0, sq: Q::zero() }
    }

    pub fn one() -> Self {
        Surd { sign: 1, sq: Q::one() }
    }

    /// `sign * sqrt(sq)`; `sq` must be nonnegative.
    pub fn new(sign: i8, sq: Q) -> Self {
        assert!(!sq.is_negative(), "negative radicand");
        if sign == 0 || sq.is_zero() {
            Surd::zero()
        } else {
            Surd { sign: sign.signum(), sq }
        }
    }

    pub fn from_rational(x: Q) -> Self {
        let sign = if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        };
        Surd::new(sign, x * x)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The square of the value.
    pub fn square(&self) -> Q {
        self.sq
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The value as a rational, when the radicand is a perfect square.
    pub fn to_rational(&self) -> Option<Q> {
        let root = |n: i64| -> Option<i64> {
            let r = (n as f64).sqrt().round() as i64;
            (r * r == n).then_some(r)
        };
        let (n, d) = (root(*self.sq.numer())?, root(*self.sq.denom())?);
        Some(Q::new(self.sign as i64 * n, d))
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * to_f64(&self.sq).sqrt()
    }

    /// Exact sum; fails unless one side is zero or both share the radicand.
    pub fn checked_add(self, other: Surd) -> Result<Surd> {
        if self.is_zero() {
            return Ok(other);
        }
        if other.is_zero() {
            return Ok(self);
        }
        if self.sq != other.sq {
            return Err(Error::IrrationalSum);
        }
        // equal radicands: (s1 + s2) sqrt(sq)
        let k = (self.sign + other.sign) as i64;
        Ok(Surd::new(k.signum() as i8, self.sq * Q::from_integer(k * k)))
    }
}

impl Mul for Surd {
    type Output = Surd;

    fn mul(self, rhs: Surd) -> Surd {
        Surd::new(self.sign * rhs.sign, self.sq * rhs.sq)
    }
}

impl Neg for Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        Surd { sign: -self.sign, sq: self.sq }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}sqrt({}/{})", if s < 0 { "-" } else { "" }, self.sq.numer(), self.sq.denom()),
        }
    }
}
