//! Exact scalars: signs, rationals, trivariate polynomials and 3-vectors.
//!
//! Everything geometric in this crate is written against [`Scalar`], so the
//! same determinant code runs over [`Rational`] (numeric evaluation at a
//! parameter point) and over [`Poly3`] (symbolic evaluation for all points).

mod identities;
mod poly;
mod rational;
mod vec3;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use identities::{gp3_identity_check, poly_identities, GpReport, PolyIdentity};
pub use poly::{Monomial, Poly3, Var};
pub use rational::{
    common_denominator, format_rational, int, parse_rational, rat, rat_sign, ParseRationalError,
    Rational, MAX_DECIMAL_DIGITS,
};
pub use vec3::{cross, det3, dot, Vec3};

/// Exact commutative ring with structural equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<S> Scalar for S where
    S: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = S>
        + Sub<Output = S>
        + Mul<Output = S>
        + Neg<Output = S>
{
}

/// A value in {-1, 0, +1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
#[repr(i8)]
pub enum Sign {
    Neg = -1,
    Zero = 0,
    Pos = 1,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        self as i8
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Neg),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Pos),
            _ => None,
        }
    }

    /// Sign of an arbitrary signed integer-like value.
    pub fn of<T: PartialOrd + Zero>(v: &T) -> Sign {
        let zero = T::zero();
        if *v > zero {
            Sign::Pos
        } else if *v < zero {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        Sign::from_i8(v).ok_or_else(|| format!("{v} is not a sign"))
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8()).expect("product of signs")
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        };
        f.write_str(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Sign; 3] = [Sign::Neg, Sign::Zero, Sign::Pos];

    #[test]
    fn signs_form_a_monoid_closed_under_negation() {
        for a in ALL {
            assert_eq!(-(-a), a);
            assert_eq!(a * Sign::Pos, a);
            for b in ALL {
                assert_eq!((a * b).as_i8(), a.as_i8() * b.as_i8());
                assert_eq!(-(a * b), (-a) * b);
            }
        }
    }

    #[test]
    fn sign_of_integers() {
        assert_eq!(Sign::of(&-4i64), Sign::Neg);
        assert_eq!(Sign::of(&0i64), Sign::Zero);
        assert_eq!(Sign::of(&9i64), Sign::Pos);
        assert_eq!(Sign::from_i8(2), None);
    }
}
