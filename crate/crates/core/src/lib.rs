//! Exact Einstein metrics of the two-parameter family `g_(x,y) = B|_n + x B|_u + y B|_p`
//! on `G/H` for a basic quadruple `H ⊂ K ⊂ L ⊂ G` of compact Lie groups.
//!
//! Everything that can be exact is exact: constants are [`Rational`]s, the
//! Einstein condition reduces to [`RationalPolynomial`]s, and irrational roots
//! are carried as isolating intervals whose residuals are bounded with
//! interval arithmetic.
//!
//! ```
//! use quadruple_einstein::{families::{instantiate, FamilyId}, solver::{solve, SolveOptions, Branch}};
//!
//! let q = instantiate(FamilyId::A6, &Default::default()).unwrap();
//! let sols = solve(&q, &SolveOptions::default()).unwrap();
//! let generic: Vec<_> = sols.iter().filter(|s| s.branch == Branch::Generic).collect();
//! assert_eq!(generic.len(), 1);
//! assert!(!generic[0].naturally_reductive);
//! ```

pub mod catalog;
pub mod error;
pub mod families;
pub mod interval;
pub mod polynomial;
pub mod products;
pub mod quadruple;
pub mod report;
pub mod ricci;
pub mod roots;
pub mod scalar;
pub mod solver;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use interval::Interval;
pub use polynomial::Polynomial;
pub use quadruple::{CasimirConstants, Quadruple};
pub use roots::IsolatingInterval;
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type RationalPolynomial = Polynomial<Rational>;
pub type RationalInterval = Interval<Rational>;
pub type FloatPolynomial = Polynomial<f64>;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
