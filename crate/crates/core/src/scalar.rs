//! Scalar abstraction shared by the exact, floating-point and interval code paths.
//!
//! Every formula in the crate that only needs field operations is written once
//! against [`Scalar`]; it then runs exactly over [`Rational`], approximately over
//! `f64`/`f32`, and as a certified enclosure over [`Interval<Rational>`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::Interval;
use crate::Rational;

pub trait Scalar:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Embeds an exact rational constant.
    fn from_rational(q: &Rational) -> Self;

    /// True when every value represented by `self` is strictly positive.
    fn is_positive_definite(&self) -> bool;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_positive_definite(&self) -> bool {
        self.is_positive()
    }
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_positive_definite(&self) -> bool {
        *self > 0.0
    }
}

impl Scalar for f32 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }

    fn is_positive_definite(&self) -> bool {
        *self > 0.0
    }
}

impl Scalar for Interval<Rational> {
    fn from_rational(q: &Rational) -> Self {
        Interval::point(q.clone())
    }

    fn is_positive_definite(&self) -> bool {
        self.lo().is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_plus_third<T: Scalar>() -> T {
        let h = T::from_rational(&Rational::new(1.into(), 2.into()));
        let t = T::from_rational(&Rational::new(1.into(), 3.into()));
        h + t
    }

    #[test]
    fn same_formula_three_scalars() {
        assert_eq!(
            half_plus_third::<Rational>(),
            Rational::new(5.into(), 6.into())
        );
        assert!((half_plus_third::<f64>() - 5.0 / 6.0).abs() < 1e-15);
        let iv = half_plus_third::<Interval<Rational>>();
        assert_eq!(iv.lo(), &Rational::new(5.into(), 6.into()));
        assert_eq!(iv.width(), Rational::zero());
    }
}
