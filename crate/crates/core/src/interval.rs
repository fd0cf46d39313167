//! Closed-interval arithmetic.
//!
//! Over [`Rational`] endpoints there is no rounding, so every operation returns a
//! true enclosure of the exact range.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Clone + PartialOrd> Interval<T> {
    /// Panics if `lo > hi`.
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: T) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn contains(&self, v: &T) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo <= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi >= other.hi { &self.hi } else { &other.hi };
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }
}

impl<T> Interval<T>
where
    T: Clone + PartialOrd + Sub<Output = T>,
{
    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }
}

impl<T> Interval<T>
where
    T: Clone + PartialOrd + Zero + Neg<Output = T>,
{
    /// Largest absolute value over the interval.
    pub fn magnitude(&self) -> T {
        let a = if self.lo < T::zero() {
            -self.lo.clone()
        } else {
            self.lo.clone()
        };
        let b = if self.hi < T::zero() {
            -self.hi.clone()
        } else {
            self.hi.clone()
        };
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= T::zero() && T::zero() <= self.hi
    }
}

fn min_max<T: Clone + PartialOrd>(vals: [T; 4]) -> (T, T) {
    let mut lo = vals[0].clone();
    let mut hi = vals[0].clone();
    for v in vals.iter().skip(1) {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

impl<T: Clone + PartialOrd + Add<Output = T>> Add for Interval<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl<T: Clone + PartialOrd + Sub<Output = T>> Sub for Interval<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Interval {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        }
    }
}

impl<T: Clone + PartialOrd + Neg<Output = T>> Neg for Interval<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl<T: Clone + PartialOrd + Zero + Mul<Output = T>> Mul for Interval<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let z = T::zero();
        // sign cases first: two products and no comparisons between them
        if self.lo >= z && rhs.lo >= z {
            return Interval {
                lo: self.lo * rhs.lo,
                hi: self.hi * rhs.hi,
            };
        }
        if self.hi <= z && rhs.hi <= z {
            return Interval {
                lo: self.hi * rhs.hi,
                hi: self.lo * rhs.lo,
            };
        }
        if self.lo >= z && rhs.hi <= z {
            return Interval {
                lo: self.hi * rhs.lo,
                hi: self.lo * rhs.hi,
            };
        }
        if self.hi <= z && rhs.lo >= z {
            return Interval {
                lo: self.lo * rhs.hi,
                hi: self.hi * rhs.lo,
            };
        }
        let (lo, hi) = min_max([
            self.lo.clone() * rhs.lo.clone(),
            self.lo * rhs.hi.clone(),
            self.hi.clone() * rhs.lo,
            self.hi * rhs.hi,
        ]);
        Interval { lo, hi }
    }
}

impl<T> Div for Interval<T>
where
    T: Clone + PartialOrd + Zero + Div<Output = T>,
{
    type Output = Self;

    /// Panics when the divisor contains zero.
    fn div(self, rhs: Self) -> Self {
        assert!(
            rhs.lo > T::zero() || rhs.hi < T::zero(),
            "interval division by an interval containing zero"
        );
        if self.lo >= T::zero() && rhs.lo > T::zero() {
            return Interval {
                lo: self.lo / rhs.hi,
                hi: self.hi / rhs.lo,
            };
        }
        let (lo, hi) = min_max([
            self.lo.clone() / rhs.lo.clone(),
            self.lo / rhs.hi.clone(),
            self.hi.clone() / rhs.lo,
            self.hi / rhs.hi,
        ]);
        Interval { lo, hi }
    }
}

impl<T: Clone + PartialOrd + Zero> Zero for Interval<T> {
    fn zero() -> Self {
        Interval::point(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl<T: Clone + PartialOrd + Zero + One> One for Interval<T> {
    fn one() -> Self {
        Interval::point(T::one())
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl<T: fmt::Debug> fmt::Debug for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

/// Smallest `k ≥ 0` (up to one) with `2^-k ≤ width`.
pub fn dyadic_exponent(width: &Rational) -> u64 {
    let (n, d) = (width.numer().bits(), width.denom().bits());
    (d + 1).saturating_sub(n)
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Rational bounds `(a, b)` with `a² ≤ q ≤ b²`, `0 ≤ a ≤ b` and `b − a ≤ width`.
/// Both are multiples of a power of two, found by an integer square root.
///
/// Panics if `q` is negative or `width` is not positive.
pub fn sqrt_bounds(q: &Rational, width: &Rational) -> (Rational, Rational) {
    assert!(!q.is_negative(), "square root of a negative rational");
    assert!(width.is_positive(), "width must be positive");
    if q.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let k = dyadic_exponent(width);
    // √(q 4^k) = √(n d 4^k)/d, and floor commutes with the integer division
    let s = (q.numer() * q.denom() * pow2(2 * k)).sqrt() / q.denom();
    let scale = pow2(k);
    let a = Rational::new(s.clone(), scale.clone());
    let b = Rational::new(s + 1, scale);
    (a, b)
}

impl Interval<Rational> {
    /// Enclosure of `{√v : v ∈ self}`; the endpoints are loosened by at most `width`.
    pub fn sqrt(&self, width: &Rational) -> Self {
        let (lo, _) = sqrt_bounds(&self.lo, width);
        let (_, hi) = sqrt_bounds(&self.hi, width);
        Interval { lo, hi }
    }

    /// The smallest enclosing interval with endpoints in `2^-k Z`.
    pub fn round_out(&self, k: u64) -> Self {
        let scale = pow2(k);
        let lo = (&self.lo * Rational::from_integer(scale.clone())).floor().to_integer();
        let hi = (&self.hi * Rational::from_integer(scale.clone())).ceil().to_integer();
        Interval {
            lo: Rational::new(lo, scale.clone()),
            hi: Rational::new(hi, scale),
        }
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo.clone() + self.hi.clone()) / Rational::from_integer(2.into())
    }
}
