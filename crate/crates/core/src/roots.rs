//! Real-root isolation for rational polynomials.
//!
//! The pipeline is: Yun square-free decomposition, Sturm-sequence bisection on
//! the square-free part, then a rational-root check on each isolating interval
//! so that rational roots come out exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::{Error, Rational, RationalPolynomial, Result};

/// Open interval `(lo, hi)`; `None` stands for `∓∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Domain {
    pub fn real_line() -> Self {
        Domain { lo: None, hi: None }
    }

    /// `(0, ∞)`
    pub fn positive() -> Self {
        Domain {
            lo: Some(Rational::zero()),
            hi: None,
        }
    }

    /// `(lo, ∞)`
    pub fn above(lo: Rational) -> Self {
        Domain {
            lo: Some(lo),
            hi: None,
        }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Domain {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().map_or(true, |lo| x > lo) && self.hi.as_ref().map_or(true, |hi| x < hi)
    }
}

/// A root certified to lie in `(lo, hi]`, with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: u32,
    /// Set when the root is rational.
    pub exact_root: Option<Rational>,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.exact_root.is_some()
    }

    /// Closed enclosure of the root; a point for exact roots.
    pub fn enclosure(&self) -> Interval<Rational> {
        match &self.exact_root {
            Some(r) => Interval::point(r.clone()),
            None => Interval::new(self.lo.clone(), self.hi.clone()),
        }
    }

    /// Whether the root could equal `v`.
    pub fn may_equal(&self, v: &Rational) -> bool {
        match &self.exact_root {
            Some(r) => r == v,
            None => &self.lo < v && v <= &self.hi,
        }
    }
}

/// Square-free factors `(f_i, i)` with `p = c · Π f_i^i`; each `f_i` is monic,
/// nonconstant, and the `f_i` are pairwise coprime.
pub fn square_free_decomposition(p: &RationalPolynomial) -> Vec<(RationalPolynomial, u32)> {
    let mut out = Vec::new();
    if p.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let a = p.monic();
    let da = a.derivative();
    let c = a.gcd(&da);
    let mut w = a.div_rem(&c).0;
    let mut y = da.div_rem(&c).0;
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while w.degree().map_or(false, |d| d > 0) {
        let g = w.gcd(&z);
        if g.degree().map_or(false, |d| d > 0) {
            out.push((g.clone(), i));
        }
        w = w.div_rem(&g).0;
        y = z.div_rem(&g).0;
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

/// `p / gcd(p, p')`, monic.
pub fn square_free_part(p: &RationalPolynomial) -> RationalPolynomial {
    if p.degree().map_or(true, |d| d == 0) {
        return p.monic();
    }
    p.div_rem(&p.gcd(&p.derivative())).0.monic()
}

pub struct SturmSequence {
    /// Each member scaled to integer coefficients by a positive factor, so
    /// signs are evaluated without rational normalization.
    scaled: Vec<Vec<BigInt>>,
}

/// `p` times the lcm of its denominators.
fn integer_multiple(p: &RationalPolynomial) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect()
}

/// Sign of `p(a/b)`, from `b^d p(a/b) = Σ c_i a^i b^(d−i)` with `b > 0`.
fn sign_at(p: &[BigInt], x: &Rational) -> i8 {
    let Some((top, rest)) = p.split_last() else {
        return 0;
    };
    let (a, b) = (x.numer(), x.denom());
    let mut acc = top.clone();
    let mut bp = BigInt::one();
    for c in rest.iter().rev() {
        bp *= b;
        acc = acc * a + c * &bp;
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

impl SturmSequence {
    pub fn new(p: &RationalPolynomial) -> Self {
        let mut seq = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(-&r);
            }
        }
        let scaled = seq.iter().map(integer_multiple).collect();
        SturmSequence { scaled }
    }

    /// Sign of the first member at `x`.
    fn sign_of_first(&self, x: &Rational) -> i8 {
        sign_at(&self.scaled[0], x)
    }

    pub fn sign_changes(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.scaled {
            let s = sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Every real root lies in `(−B, B)`.
pub fn cauchy_bound(p: &RationalPolynomial) -> Rational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .take(p.coeffs().len() - 1)
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |m, v| if v > m { v } else { m });
    max + Rational::one()
}

/// Clears denominators and returns the leading coefficient of the resulting
/// integer polynomial. Any rational root `r` of `p` has `lead · r ∈ ℤ`.
fn integer_leading(p: &RationalPolynomial) -> BigInt {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lead = p.leading().expect("nonzero polynomial");
    (lead * Rational::from_integer(l)).to_integer().abs()
}

fn half(a: &Rational, b: &Rational) -> Rational {
    (a + b) / Rational::from_integer(2.into())
}

/// Isolates the real roots of `p` in `domain`, sorted ascending.
pub fn sturm_isolate(p: &RationalPolynomial, domain: &Domain) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let factors = square_free_decomposition(p);
    let sqf = factors
        .iter()
        .fold(RationalPolynomial::one(), |acc, (f, _)| &acc * f);
    let sturm = SturmSequence::new(&sqf);
    let bound = cauchy_bound(&sqf);
    let lo = match &domain.lo {
        Some(l) if *l > -bound.clone() => l.clone(),
        Some(l) if *l >= bound => return Ok(Vec::new()),
        _ => -bound.clone(),
    };
    let hi = match &domain.hi {
        Some(h) if *h < bound => h.clone(),
        Some(h) if *h <= -bound.clone() => return Ok(Vec::new()),
        _ => bound.clone(),
    };
    if lo >= hi {
        return Ok(Vec::new());
    }

    let mut found = Vec::new();
    let mut stack = vec![(lo, hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match sturm.count(&a, &b) {
            0 => {}
            1 => found.push((a, b)),
            _ => {
                let m = half(&a, &b);
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));

    let hi_is_root = domain.hi.as_ref() == Some(&hi) && sqf.eval(&hi).is_zero();
    let lead = integer_leading(&sqf);
    let mut out = Vec::with_capacity(found.len());
    for (a, b) in found {
        if hi_is_root && b == hi {
            continue;
        }
        let multiplicity = factors
            .iter()
            .find(|(f, _)| SturmSequence::new(f).count(&a, &b) == 1)
            .map(|(_, m)| *m)
            .expect("every root of the square-free part belongs to one factor");
        let iv = IsolatingInterval {
            lo: a,
            hi: b,
            multiplicity,
            exact_root: None,
        };
        out.push(detect_rational(&sqf, &sturm, &lead, iv));
    }
    Ok(out)
}

/// Narrows `iv` until `lead · width < 1`; the interval then holds at most one
/// candidate `m / lead`, which is tested exactly.
fn detect_rational(
    sqf: &RationalPolynomial,
    sturm: &SturmSequence,
    lead: &BigInt,
    mut iv: IsolatingInterval,
) -> IsolatingInterval {
    let lead_q = Rational::from_integer(lead.clone());
    let one = Rational::one();
    let s_lo = sturm.sign_of_first(&iv.lo);
    loop {
        if sqf.eval(&iv.hi).is_zero() {
            iv.exact_root = Some(iv.hi.clone());
            return iv;
        }
        if iv.width() * &lead_q < one {
            break;
        }
        bisect_simple(sturm, &mut iv, s_lo);
    }
    let cand = Rational::new((&iv.hi * &lead_q).floor().to_integer(), lead.clone());
    if cand > iv.lo && sqf.eval(&cand).is_zero() {
        iv.exact_root = Some(cand);
    }
    iv
}

/// Bisection for an interval holding exactly one root of the square-free
/// first Sturm member: the sign at the midpoint decides the side, given the sign
/// `s_lo` at `lo`. Falls back to counting when `lo` is itself a root.
fn bisect_simple(sturm: &SturmSequence, iv: &mut IsolatingInterval, s_lo: i8) {
    if s_lo == 0 {
        return bisect_once(sturm, iv);
    }
    let m = half(&iv.lo, &iv.hi);
    if sturm.sign_of_first(&m) == s_lo {
        iv.lo = m;
    } else {
        iv.hi = m;
    }
}

fn bisect_once(sturm: &SturmSequence, iv: &mut IsolatingInterval) {
    let m = half(&iv.lo, &iv.hi);
    if sturm.count(&iv.lo, &m) == 1 {
        iv.hi = m;
    } else {
        iv.lo = m;
    }
}

/// Shrinks `iv` (an isolating interval of a root of `p`) to width at most `width`.
/// Exact roots are returned unchanged.
pub fn refine(p: &RationalPolynomial, iv: &IsolatingInterval, width: &Rational) -> IsolatingInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let sturm = SturmSequence::new(&square_free_part(p));
    let mut out = iv.clone();
    refine_with(&sturm, &mut out, width);
    out
}

/// Like [`refine`] but reuses a precomputed Sturm sequence of the square-free part.
pub fn refine_with(sturm: &SturmSequence, iv: &mut IsolatingInterval, width: &Rational) -> u64 {
    let mut steps = 0;
    if iv.is_exact() {
        return steps;
    }
    let s_lo = sturm.sign_of_first(&iv.lo);
    while &iv.width() > width {
        bisect_simple(sturm, iv, s_lo);
        steps += 1;
    }
    steps
}
