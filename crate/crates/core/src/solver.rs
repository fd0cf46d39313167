//! Einstein metrics among the `g_(x,y)`.
//!
//! Eliminating `λ` with the `n`-equation leaves `r_u = x r_n` and `r_p = y r_n`.
//! The first gives `y² = (1 − c1) x² (x − 1) / (4Δ(x))`; substituting into the
//! second and squaring gives a sextic in `x`. When `h_n = h_u` that sextic
//! factors as `−M (x − 1)² (x − β) f̄(x)` with `f̄` cubic, and the new metrics
//! come from the roots of `f̄`.
//!
//! Squaring can introduce spurious roots, so every candidate is re-checked
//! against the unsquared system with interval arithmetic before it is emitted.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::Interval;
use crate::scalar::Scalar;
use crate::ricci::{residuals_in, ricci_coeffs_in, Constants};
use crate::roots::{sturm_isolate, Domain, IsolatingInterval, SturmSequence};
use crate::{int, rat, Error, Quadruple, Rational, RationalInterval, RationalPolynomial, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    XEqualsOne,
    XEqualsY,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "x=1")]
    XEqualsOne,
    #[serde(rename = "x=y")]
    XEqualsY,
    #[serde(rename = "k_ideal_in_l")]
    KIdealInL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExceptionClass {
    NotExceptional,
    ExcA4Family,
    ExcA5,
    ExcB3K1,
}

/// An exact value or a closed rational enclosure of an irrational one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certified {
    Exact(Rational),
    Enclosed(RationalInterval),
}

impl Certified {
    pub fn enclosure(&self) -> RationalInterval {
        match self {
            Certified::Exact(v) => Interval::point(v.clone()),
            Certified::Enclosed(iv) => iv.clone(),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Certified::Exact(v) => Some(v),
            Certified::Enclosed(_) => None,
        }
    }

    pub fn lo(&self) -> Rational {
        self.enclosure().lo().clone()
    }

    pub fn to_f64(&self) -> f64 {
        f64::from_rational(&self.enclosure().midpoint())
    }

    fn from_enclosure(iv: RationalInterval) -> Self {
        if iv.lo() == iv.hi() {
            Certified::Exact(iv.lo().clone())
        } else {
            Certified::Enclosed(iv)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EinsteinSolution {
    pub x: Certified,
    pub y: Certified,
    pub lambda: Certified,
    pub branch: Branch,
    pub naturally_reductive: bool,
    pub reasons: Vec<Reason>,
    /// Largest absolute value over the enclosures of the three residuals.
    pub residual_bound: Rational,
    /// The polynomial whose root `x` is; `x`'s enclosure isolates one of its roots.
    pub x_polynomial: RationalPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub tol: Rational,
    /// Budget of bisection steps per certified root.
    pub max_iter: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: Rational::new(1.into(), BigInt::from(10u64).pow(12)),
            max_iter: 1_000_000,
        }
    }
}

fn poly(cs: Vec<Rational>) -> RationalPolynomial {
    RationalPolynomial::new(cs)
}

fn x_minus(r: &Rational) -> RationalPolynomial {
    RationalPolynomial::linear_factor(r.clone())
}

fn m_const(q: &Quadruple) -> Rational {
    &q.c2 / int(4) + &q.casimir.h_n / int(2)
}

/// `Δ(x) = M x² − (k_u/2 + c1/4) x + (k_u − h_u)/2 + (c1 − c2)/4`.
pub fn delta_quadratic(q: &Quadruple) -> RationalPolynomial {
    let c = &q.casimir;
    poly(vec![
        (&c.k_u - &c.h_u) / int(2) + (&q.c1 - &q.c2) / int(4),
        -(&c.k_u / int(2) + &q.c1 / int(4)),
        m_const(q),
    ])
}

fn require_hn_eq_hu(q: &Quadruple) -> Result<()> {
    if q.casimir.h_n != q.casimir.h_u {
        return Err(Error::Branch(format!(
            "needs h_n = h_u, got h_n = {}, h_u = {}",
            q.casimir.h_n, q.casimir.h_u
        )));
    }
    Ok(())
}

/// `δ(x) = M x − (k_u − h_u)/2 − (c1 − c2)/4` and its root `δ0`.
pub fn delta_linear(q: &Quadruple) -> Result<(RationalPolynomial, Rational)> {
    require_hn_eq_hu(q)?;
    let c = &q.casimir;
    let m = m_const(q);
    let c0 = (&c.k_u - &c.h_u) / int(2) + (&q.c1 - &q.c2) / int(4);
    let delta0 = &c0 / &m;
    Ok((poly(vec![-c0, m]), delta0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFactorization {
    pub m: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

/// `Δ(x) − (1 − c1)(x − 1)/4`, which equals `M (x − α)(x − β)`.
pub fn diagonal_quadratic(q: &Quadruple) -> RationalPolynomial {
    let t = x_minus(&Rational::one()).scale(&((Rational::one() - &q.c1) / int(4)));
    &delta_quadratic(q) - &t
}

/// `α = 1` and `β = (2k_p − 2h_p + 1 − c2)/(c2 + 2h_p)`, checked against the
/// expansion of `Δ(x) − (1 − c1)(x − 1)/4`.
pub fn m_factorization(q: &Quadruple) -> Result<MFactorization> {
    require_hn_eq_hu(q)?;
    let c = &q.casimir;
    let m = m_const(q);
    let beta = (int(2) * &c.k_p - int(2) * &c.h_p + int(1) - &q.c2) / (&q.c2 + int(2) * &c.h_p);
    let alpha = Rational::one();
    let lhs = diagonal_quadratic(q);
    let rhs = (&x_minus(&alpha) * &x_minus(&beta)).scale(&m);
    if lhs != rhs {
        return Err(Error::InternalConsistency(format!(
            "Δ(x) − (1 − c1)(x − 1)/4 = {lhs} but M(x − 1)(x − β) = {rhs}"
        )));
    }
    if beta <= alpha {
        return Err(Error::InternalConsistency(format!("β = {beta} is not greater than 1")));
    }
    Ok(MFactorization { m, alpha, beta })
}

/// `η(x) = (x/2)(1/2 + l_p − k_p − c1/2) + (k_p − h_p)/2`.
pub fn eta_linear(q: &Quadruple) -> RationalPolynomial {
    let c = &q.casimir;
    let slope = (rat(1, 2) + &c.l_p - &c.k_p - &q.c1 / int(2)) / int(2);
    poly(vec![(&c.k_p - &c.h_p) / int(2), slope])
}

/// `f̄(x) = M (x − β) η(x)² + ((1 − c1)/8)(1/2 + l_p) x (ω1 x + k_p − h_p)`.
pub fn fbar_cubic(q: &Quadruple) -> Result<RationalPolynomial> {
    let MFactorization { m, beta, .. } = m_factorization(q)?;
    let c = &q.casimir;
    let eta = eta_linear(q);
    let (w1, _) = q.omega();
    let first = (&x_minus(&beta) * &eta.pow(2)).scale(&m);
    let coef = (Rational::one() - &q.c1) / int(8) * (rat(1, 2) + &c.l_p);
    let second = poly(vec![Rational::zero(), &c.k_p - &c.h_p, w1]).scale(&coef);
    Ok(&first + &second)
}

/// `f(x) = (x − 1) f̄(x)`.
pub fn f_quartic(q: &Quadruple) -> Result<RationalPolynomial> {
    Ok(&x_minus(&Rational::one()) * &fbar_cubic(q)?)
}

/// The squared Einstein condition in `x`:
/// `((1 − c1)/4) A² x² (x − 1) Δ(x) − [E(x) Δ(x) + ((1 − c1)/4)(x − 1)(M x² + (c1 − c2)/4)]²`
/// with `A = 1/4 + l_p/2` and `E(x) = (k_p − h_p)/2 + x (l_p − k_p)/2 + (1 − c1)/4`.
pub fn einstein_sextic(q: &Quadruple) -> RationalPolynomial {
    let c = &q.casimir;
    let a = rat(1, 4) + &c.l_p / int(2);
    let t = x_minus(&Rational::one()).scale(&((Rational::one() - &q.c1) / int(4)));
    let delta = delta_quadratic(q);
    let xx = RationalPolynomial::x().pow(2);
    let lhs = &(&t * &xx) * &delta.scale(&(&a * &a));
    let e = poly(vec![
        (&c.k_p - &c.h_p) / int(2) + (Rational::one() - &q.c1) / int(4),
        (&c.l_p - &c.k_p) / int(2),
    ]);
    let n = poly(vec![(&q.c1 - &q.c2) / int(4), Rational::zero(), m_const(q)]);
    let inner = &(&e * &delta) + &(&t * &n);
    &lhs - &inner.pow(2)
}

/// Exact check that the sextic equals `−M (x − α)(x − β) f(x)`.
pub fn check_sextic_identity(q: &Quadruple) -> Result<()> {
    let mf = m_factorization(q)?;
    let rhs = (&(&x_minus(&mf.alpha) * &x_minus(&mf.beta)) * &f_quartic(q)?).scale(&-mf.m);
    let lhs = einstein_sextic(q);
    if lhs != rhs {
        return Err(Error::InternalConsistency(format!(
            "sextic {lhs} differs from −M(x − 1)(x − β)f(x) = {rhs}"
        )));
    }
    Ok(())
}

/// `(c1/4 + h_n/2) y² − (1/4 + l_p/2) y + (1/2)(1/2 + l_p − c1/2 − h_p)`.
pub fn x_equals_one_quadratic(q: &Quadruple) -> RationalPolynomial {
    let c = &q.casimir;
    poly(vec![
        (rat(1, 2) + &c.l_p - &q.c1 / int(2) - &c.h_p) / int(2),
        -(rat(1, 4) + &c.l_p / int(2)),
        &q.c1 / int(4) + &c.h_n / int(2),
    ])
}

pub fn exception_detect(q: &Quadruple) -> ExceptionClass {
    let Ok(fbar) = fbar_cubic(q) else {
        return ExceptionClass::NotExceptional;
    };
    let beta = m_factorization(q).expect("fbar exists").beta;
    if fbar.eval(&Rational::one()).is_zero() {
        ExceptionClass::ExcA4Family
    } else if fbar.eval(&beta).is_zero() {
        if q.flags.h_trivial {
            ExceptionClass::ExcB3K1
        } else {
            ExceptionClass::ExcA5
        }
    } else {
        ExceptionClass::NotExceptional
    }
}

fn exact_sqrt(v: &Rational) -> Option<Rational> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    (&n * &n == *v.numer() && &d * &d == *v.denom()).then(|| Rational::new(n, d))
}

enum Step {
    Undecided,
    Spurious,
    At(RationalInterval, RationalInterval),
}

struct Certificate {
    x: RationalInterval,
    y: RationalInterval,
    lambda: RationalInterval,
    bound: Rational,
}

/// Shrinks the enclosures supplied by `enclose(width)` until all three residual
/// enclosures are within `tol`, or one of them excludes zero (spurious).
fn certify(
    q: &Quadruple,
    opts: &SolveOptions,
    start: Rational,
    mut enclose: impl FnMut(&Rational, &mut u64) -> Step,
) -> Result<Option<Certificate>> {
    let k = Constants::<RationalInterval>::of(q);
    let mut width = start;
    let mut spent: u64 = 0;
    let mut best: Option<Rational> = None;
    loop {
        let step = enclose(&width, &mut spent);
        if spent > opts.max_iter {
            return Err(budget_error(opts, best.as_ref()));
        }
        match step {
            Step::Spurious => return Ok(None),
            Step::Undecided => {}
            Step::At(x, y) => {
                // a coarser dyadic grid keeps the interval operands short
                let e = crate::interval::dyadic_exponent(&width) + 4;
                let (x, y) = (round_out(x, e), round_out(y, e));
                let lambda = ricci_coeffs_in(&k, &x, &y).r_n;
                let res = residuals_in(&k, &x, &y, &lambda);
                if res.iter().any(|r| !r.contains_zero()) {
                    return Ok(None);
                }
                let bound = res
                    .iter()
                    .map(|r| r.magnitude())
                    .max()
                    .expect("three residuals");
                let bound = round_up(&bound, crate::interval::dyadic_exponent(&opts.tol) + 16);
                if bound < opts.tol {
                    let lambda = round_out(lambda, e);
                    return Ok(Some(Certificate { x, y, lambda, bound }));
                }
                best = Some(bound);
            }
        }
        width /= int(16);
        // exact enclosures never refine; charge the round itself
        spent += 1;
    }
}

fn round_out(iv: RationalInterval, k: u64) -> RationalInterval {
    if iv.lo() == iv.hi() {
        iv
    } else {
        iv.round_out(k)
    }
}

/// Smallest multiple of `2^-k` that is at least `v`.
fn round_up(v: &Rational, k: u64) -> Rational {
    let scale = BigInt::one() << k;
    Rational::new((v * Rational::from_integer(scale.clone())).ceil().to_integer(), scale)
}

fn budget_error(opts: &SolveOptions, best: Option<&Rational>) -> Error {
    Error::RefinementBudget {
        max_iter: opts.max_iter,
        bound: best.map_or("unbounded".into(), |b| format!("{:.3e}", <f64 as Scalar>::from_rational(b))),
    }
}

/// Enclosure of `√v` for an interval `v` with positive lower end.
fn sqrt_enclosure(v: &RationalInterval, width: &Rational) -> RationalInterval {
    if v.lo() == v.hi() {
        if let Some(s) = exact_sqrt(v.lo()) {
            return Interval::point(s);
        }
    }
    v.sqrt(width)
}

fn initial_width(opts: &SolveOptions) -> Rational {
    &opts.tol / int(1 << 10)
}

/// Root of `p` (isolated by `iv`) as an x-enclosure refined to `width`.
struct XRoot {
    sturm: SturmSequence,
    iv: IsolatingInterval,
}

impl XRoot {
    fn new(p: &RationalPolynomial, iv: IsolatingInterval) -> Self {
        XRoot {
            sturm: SturmSequence::new(&crate::roots::square_free_part(p)),
            iv,
        }
    }

    /// Adds the bisection steps taken to `spent`.
    fn at(&mut self, width: &Rational, spent: &mut u64) -> RationalInterval {
        *spent += crate::roots::refine_with(&self.sturm, &mut self.iv, width);
        self.iv.enclosure()
    }
}

/// The `y` determined by `r_u = x r_n`, as an interval function of `x`.
fn y_squared(q: &Quadruple, x: &RationalInterval, factored: bool) -> Option<RationalInterval> {
    let coef = Interval::point((Rational::one() - &q.c1) / int(4));
    if factored {
        let (delta, _) = delta_linear(q).ok()?;
        let d = delta.eval_as(x);
        if d.contains_zero() {
            return None;
        }
        Some(coef * x.clone() * x.clone() / d)
    } else {
        let d = delta_quadratic(q).eval_as(x);
        if d.contains_zero() {
            return None;
        }
        let xm1 = x.clone() - Interval::point(Rational::one());
        Some(coef * x.clone() * x.clone() * xm1 / d)
    }
}

fn finish(q: &Quadruple, cert: Certificate, x_polynomial: RationalPolynomial) -> EinsteinSolution {
    let sol = EinsteinSolution {
        x: Certified::from_enclosure(cert.x),
        y: Certified::from_enclosure(cert.y),
        lambda: Certified::from_enclosure(cert.lambda),
        branch: Branch::Generic,
        naturally_reductive: false,
        reasons: Vec::new(),
        residual_bound: cert.bound,
        x_polynomial,
    };
    classify(q, sol)
}

fn check_options(opts: &SolveOptions) -> Result<()> {
    if !opts.tol.is_positive() {
        return Err(Error::Parameter(format!("tolerance must be positive, got {}", opts.tol)));
    }
    Ok(())
}

/// Solutions with `x = 1`: the positive roots of [`x_equals_one_quadratic`].
pub fn solve_x_equals_one(q: &Quadruple, opts: &SolveOptions) -> Result<Vec<EinsteinSolution>> {
    check_options(opts)?;
    require_hn_eq_hu(q)?;
    let quad = x_equals_one_quadratic(q);
    if quad.is_zero() {
        return Err(Error::Degenerate("x = 1 quadratic vanishes identically".into()));
    }
    let one = Interval::point(Rational::one());
    let mut out = Vec::new();
    for iv in sturm_isolate(&quad, &Domain::positive())? {
        let mut yr = XRoot::new(&quad, iv);
        let cert = certify(q, opts, initial_width(opts), |w, spent| Step::At(one.clone(), yr.at(w, spent)))?;
        if let Some(cert) = cert {
            out.push(finish(q, cert, x_minus(&Rational::one())));
        }
    }
    Ok(out)
}

/// Diagonal solutions `x = y` and the new solutions from the roots of `f̄`
/// (or of the sextic's cofactor when `h_n ≠ h_u`).
pub fn solve_generic(q: &Quadruple, opts: &SolveOptions) -> Result<Vec<EinsteinSolution>> {
    check_options(opts)?;
    let diag = diagonal_quadratic(q);
    let factored = q.casimir.h_n == q.casimir.h_u;
    let mut out = Vec::new();

    for iv in sturm_isolate(&diag, &Domain::positive())? {
        let mut xr = XRoot::new(&diag, iv);
        let cert = certify(q, opts, initial_width(opts), |w, spent| {
            let x = xr.at(w, spent);
            Step::At(x.clone(), x)
        })?;
        if let Some(cert) = cert {
            out.push(finish(q, cert, diag.clone()));
        }
    }

    let (cands, lo) = if factored {
        let (_, delta0) = delta_linear(q)?;
        let lo = if delta0.is_positive() { delta0 } else { Rational::zero() };
        (fbar_cubic(q)?, lo)
    } else {
        let sextic = einstein_sextic(q);
        let m = m_const(q);
        let (f, r) = sextic.div_rem(&diag.scale(&-m));
        let f = if r.is_zero() { f } else { sextic };
        (f, Rational::zero())
    };
    if cands.is_zero() {
        return Err(Error::Degenerate("Einstein polynomial vanishes identically".into()));
    }
    let delta = delta_quadratic(q);
    for iv in sturm_isolate(&cands, &Domain::above(lo))? {
        if let Some(r) = &iv.exact_root {
            // x = 1 makes the unfactored y vanish; diagonal roots are handled above
            if (!factored && r.is_one()) || diag.eval(r).is_zero() || delta.eval(r).is_zero() {
                continue;
            }
        }
        let mut xr = XRoot::new(&cands, iv);
        let cert = certify(q, opts, initial_width(opts), |w, spent| {
            let x = xr.at(w, spent);
            if !x.lo().is_positive() {
                return Step::Undecided;
            }
            match y_squared(q, &x, factored) {
                None => Step::Undecided,
                Some(y2) if !y2.hi().is_positive() => Step::Spurious,
                Some(y2) if !y2.lo().is_positive() => Step::Undecided,
                Some(y2) => Step::At(x, sqrt_enclosure(&y2, w)),
            }
        })?;
        if let Some(cert) = cert {
            out.push(finish(q, cert, cands.clone()));
        }
    }
    Ok(out)
}

/// All certified solutions, merged and sorted by `(branch, x)`.
pub fn solve(q: &Quadruple, opts: &SolveOptions) -> Result<Vec<EinsteinSolution>> {
    q.validate()?;
    check_options(opts)?;
    let mut all = Vec::new();
    if q.casimir.h_n == q.casimir.h_u {
        all.extend(solve_x_equals_one(q, opts)?);
    }
    all.extend(solve_generic(q, opts)?);
    Ok(dedup(all))
}

fn overlaps(a: &EinsteinSolution, b: &EinsteinSolution) -> bool {
    a.x.enclosure().overlaps(&b.x.enclosure()) && a.y.enclosure().overlaps(&b.y.enclosure())
}

fn dedup(sols: Vec<EinsteinSolution>) -> Vec<EinsteinSolution> {
    let mut out: Vec<EinsteinSolution> = Vec::new();
    for s in sols {
        if let Some(t) = out.iter_mut().find(|t| overlaps(t, &s)) {
            let keep_new = s.x.exact().is_some() && t.x.exact().is_none()
                || (s.x.exact().is_some() == t.x.exact().is_some()
                    && s.y.exact().is_some()
                    && t.y.exact().is_none());
            let mut reasons = t.reasons.clone();
            reasons.extend(s.reasons.iter().copied());
            if keep_new {
                *t = s;
            }
            t.reasons = reasons;
            t.reasons.sort();
            t.reasons.dedup();
            t.naturally_reductive = !t.reasons.is_empty();
            t.branch = branch_of(&t.reasons);
        } else {
            out.push(s);
        }
    }
    out.sort_by(solution_order);
    out
}

fn solution_order(a: &EinsteinSolution, b: &EinsteinSolution) -> Ordering {
    a.branch
        .cmp(&b.branch)
        .then_with(|| a.x.lo().cmp(&b.x.lo()))
        .then_with(|| a.y.lo().cmp(&b.y.lo()))
}

fn branch_of(reasons: &[Reason]) -> Branch {
    if reasons.contains(&Reason::XEqualsOne) {
        Branch::XEqualsOne
    } else if reasons.contains(&Reason::XEqualsY) {
        Branch::XEqualsY
    } else {
        Branch::Generic
    }
}

/// Fills `reasons`, `naturally_reductive` and `branch`.
///
/// `x = y` holds exactly when `x` is a root of `Δ(x) − (1 − c1)(x − 1)/4`
/// (for `h_n = h_u`, when `x ∈ {1, β}`); for an interval `x` this is decided
/// through the common factor of that quadratic and `x`'s own polynomial.
pub fn classify(q: &Quadruple, mut sol: EinsteinSolution) -> EinsteinSolution {
    let diag = diagonal_quadratic(q);
    let mut reasons = Vec::new();
    match &sol.x {
        Certified::Exact(x) => {
            if x.is_one() {
                reasons.push(Reason::XEqualsOne);
            }
            if diag.eval(x).is_zero() && sol.y.enclosure().contains(x) {
                reasons.push(Reason::XEqualsY);
            }
        }
        Certified::Enclosed(iv) => {
            let g = sol.x_polynomial.gcd(&diag);
            if g.degree().map_or(false, |d| d > 0)
                && SturmSequence::new(&g).count(iv.lo(), iv.hi()) == 1
                && !g.eval(iv.lo()).is_zero()
            {
                reasons.push(Reason::XEqualsY);
            }
        }
    }
    if q.flags.k_ideal_in_l {
        reasons.push(Reason::KIdealInL);
    }
    sol.branch = branch_of(&reasons);
    sol.naturally_reductive = !reasons.is_empty();
    sol.reasons = reasons;
    sol
}
