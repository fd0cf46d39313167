//! Ricci coefficients of `g_(x,y) = B|_n + x B|_u + y B|_p`.
//!
//! `Ric = r_n B` on `n`, `r_u B` on `u`, `r_p B` on `p`; the blocks are mutually
//! orthogonal, so the Einstein condition `Ric = λ g` is the three scalar
//! equations `r_n = λ`, `r_u = λx`, `r_p = λy`.

use num_traits::Signed;

use crate::scalar::Scalar;
use crate::{Error, Quadruple, Rational, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RicciCoefficients<T> {
    pub r_n: T,
    pub r_u: T,
    pub r_p: T,
}

/// The quadruple's constants embedded into a scalar type.
#[derive(Clone, Debug)]
pub struct Constants<T> {
    pub c1: T,
    pub c2: T,
    pub l_p: T,
    pub k_p: T,
    pub k_u: T,
    pub h_p: T,
    pub h_u: T,
    pub h_n: T,
}

impl<T: Scalar> Constants<T> {
    pub fn of(q: &Quadruple) -> Self {
        let c = &q.casimir;
        let e = T::from_rational;
        Constants {
            c1: e(&q.c1),
            c2: e(&q.c2),
            l_p: e(&c.l_p),
            k_p: e(&c.k_p),
            k_u: e(&c.k_u),
            h_p: e(&c.h_p),
            h_u: e(&c.h_u),
            h_n: e(&c.h_n),
        }
    }
}

/// The three coefficients at `(x, y)`, in any scalar type. No domain check.
pub fn ricci_coeffs_in<T: Scalar>(k: &Constants<T>, x: &T, y: &T) -> RicciCoefficients<T> {
    let one = T::one();
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let x2 = x.clone() * x.clone();
    let y2 = y.clone() * y.clone();
    let r_n = k.c2.clone() / four.clone()
        + k.h_n.clone() / two.clone()
        + (k.c1.clone() - k.c2.clone()) / (four.clone() * x2.clone())
        + (one.clone() - k.c1.clone()) / (four.clone() * y2.clone());
    let r_u = k.k_u.clone() / two.clone() + k.c1.clone() / four.clone()
        - (k.k_u.clone() - k.h_u.clone()) / (two.clone() * x.clone())
        + x2 * (one.clone() - k.c1.clone()) / (four.clone() * y2);
    let r_p = one / four + k.l_p.clone() / two.clone()
        - (k.k_p.clone() - k.h_p.clone()) / (two.clone() * y.clone())
        - x.clone() * (k.l_p.clone() - k.k_p.clone()) / (two * y.clone());
    RicciCoefficients { r_n, r_u, r_p }
}

/// `(r_n − λ, r_u − λx, r_p − λy)` in any scalar type.
pub fn residuals_in<T: Scalar>(k: &Constants<T>, x: &T, y: &T, lambda: &T) -> [T; 3] {
    let r = ricci_coeffs_in(k, x, y);
    [
        r.r_n - lambda.clone(),
        r.r_u - lambda.clone() * x.clone(),
        r.r_p - lambda.clone() * y.clone(),
    ]
}

fn check_domain(x: &Rational, y: &Rational) -> Result<()> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::Domain(format!("need x > 0 and y > 0, got x = {x}, y = {y}")));
    }
    Ok(())
}

pub fn ricci_coeffs(q: &Quadruple, x: &Rational, y: &Rational) -> Result<RicciCoefficients<Rational>> {
    check_domain(x, y)?;
    Ok(ricci_coeffs_in(&Constants::of(q), x, y))
}

pub fn einstein_residuals(
    q: &Quadruple,
    x: &Rational,
    y: &Rational,
    lambda: &Rational,
) -> Result<(Rational, Rational, Rational)> {
    check_domain(x, y)?;
    let [a, b, c] = residuals_in(&Constants::of(q), x, y, lambda);
    Ok((a, b, c))
}
