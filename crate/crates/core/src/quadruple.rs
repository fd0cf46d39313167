//! Structural constants of a basic quadruple `H ⊂ K ⊂ L ⊂ G`.
//!
//! With `m = n ⊕ u ⊕ p` the `B`-orthogonal splitting `k = h ⊕ n`, `l = k ⊕ u`,
//! `g = l ⊕ p`, the constants are the Killing-form indices `c1` (of `l`) and
//! `c2` (of `k`) and the six Casimir scalars of `h`, `k`, `l` on those summands.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{int, text, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub dim_g: u64,
    pub dim_l: u64,
    pub dim_k: u64,
    pub dim_h: u64,
}

impl Dims {
    pub fn new(dim_g: u64, dim_l: u64, dim_k: u64, dim_h: u64) -> Self {
        Dims {
            dim_g,
            dim_l,
            dim_k,
            dim_h,
        }
    }

    pub fn dim_n(&self) -> i64 {
        self.dim_k as i64 - self.dim_h as i64
    }

    pub fn dim_u(&self) -> i64 {
        self.dim_l as i64 - self.dim_k as i64
    }

    pub fn dim_p(&self) -> i64 {
        self.dim_g as i64 - self.dim_l as i64
    }

    /// Rejects chains where one of `n`, `u`, `p` is zero or negative.
    pub fn validate(&self) -> Result<()> {
        for (name, d) in [("n", self.dim_n()), ("u", self.dim_u()), ("p", self.dim_p())] {
            if d <= 0 {
                return Err(Error::Degenerate(format!(
                    "dim {name} = {d} for dims (g, l, k, h) = ({}, {}, {}, {})",
                    self.dim_g, self.dim_l, self.dim_k, self.dim_h
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirConstants {
    #[serde(with = "text::rational")]
    pub l_p: Rational,
    #[serde(with = "text::rational")]
    pub k_p: Rational,
    #[serde(with = "text::rational")]
    pub k_u: Rational,
    #[serde(with = "text::rational")]
    pub h_p: Rational,
    #[serde(with = "text::rational")]
    pub h_u: Rational,
    #[serde(with = "text::rational")]
    pub h_n: Rational,
}

impl CasimirConstants {
    /// `k_u = k_p` and `h_n = h_u = h_p`.
    pub fn standard(l_p: Rational, k_p: Rational, h_p: Rational) -> Self {
        CasimirConstants {
            l_p,
            k_u: k_p.clone(),
            k_p,
            h_u: h_p.clone(),
            h_n: h_p.clone(),
            h_p,
        }
    }

    fn fields(&self) -> [(&'static str, &Rational); 6] {
        [
            ("l_p", &self.l_p),
            ("k_p", &self.k_p),
            ("k_u", &self.k_u),
            ("h_p", &self.h_p),
            ("h_u", &self.h_u),
            ("h_n", &self.h_n),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flags {
    pub h_trivial: bool,
    pub g_simple: bool,
    pub k_ideal_in_l: bool,
}

/// How a group of constants was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// From the indices via `l_p = dim L/dim(G/L)·(1 − c1)` and its consequences.
    Indices,
    /// Trace average over simple factors.
    Trace,
    /// Per-family closed form.
    ClosedForm,
    /// Stored as published, bypassing the index relations.
    Verbatim,
    UserSupplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sources {
    pub l: Source,
    pub k: Source,
    pub h: Source,
}

impl Sources {
    pub fn all(s: Source) -> Self {
        Sources { l: s, k: s, h: s }
    }
}

impl Default for Sources {
    fn default() -> Self {
        Sources::all(Source::UserSupplied)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadruple {
    pub dims: Dims,
    #[serde(with = "text::rational")]
    pub c1: Rational,
    #[serde(with = "text::rational")]
    pub c2: Rational,
    pub casimir: CasimirConstants,
    pub flags: Flags,
    pub provenance: String,
    #[serde(default)]
    pub sources: Sources,
}

impl Quadruple {
    pub fn new(
        dims: Dims,
        c1: Rational,
        c2: Rational,
        casimir: CasimirConstants,
        flags: Flags,
        provenance: impl Into<String>,
        sources: Sources,
    ) -> Result<Self> {
        let q = Quadruple {
            dims,
            c1,
            c2,
            casimir,
            flags,
            provenance: provenance.into(),
            sources,
        };
        q.validate()?;
        Ok(q)
    }

    /// Checks the invariants every constructor and deserializer must respect.
    pub fn validate(&self) -> Result<()> {
        self.dims.validate()?;
        let zero = Rational::zero();
        let one = Rational::one();
        if !(zero < self.c2 && self.c2 < self.c1 && self.c1 < one) {
            return Err(Error::Parameter(format!(
                "need 0 < c2 < c1 < 1, got c1 = {}, c2 = {}",
                self.c1, self.c2
            )));
        }
        for (name, v) in self.casimir.fields() {
            if v.is_negative() || *v >= one {
                return Err(Error::Parameter(format!("{name} = {v} is outside [0, 1)")));
            }
        }
        if self.flags.h_trivial != (self.dims.dim_h == 0) {
            return Err(Error::Parameter(format!(
                "h_trivial = {} but dim h = {}",
                self.flags.h_trivial, self.dims.dim_h
            )));
        }
        if self.flags.h_trivial {
            let c = &self.casimir;
            if !(c.h_p.is_zero() && c.h_u.is_zero() && c.h_n.is_zero()) {
                return Err(Error::Parameter("trivial H needs h_n = h_u = h_p = 0".into()));
            }
        }
        Ok(())
    }

    pub fn is_standard_casimir(&self) -> bool {
        let c = &self.casimir;
        c.k_u == c.k_p && c.h_n == c.h_u && c.h_u == c.h_p
    }

    pub fn omega(&self) -> (Rational, Rational) {
        omega(self)
    }

    /// `c1` predicted by `l_p`: `1 − (dim G − dim L)/dim L · l_p`.
    pub fn c1_from_lp(&self) -> Rational {
        let d = &self.dims;
        Rational::one() - int(d.dim_p()) / int(d.dim_l as i64) * &self.casimir.l_p
    }

    /// `c2` predicted by `l_p`: `1 − (dim G − dim K)/dim L · l_p`.
    pub fn c2_from_lp(&self) -> Rational {
        let d = &self.dims;
        Rational::one() - int(d.dim_g as i64 - d.dim_k as i64) / int(d.dim_l as i64) * &self.casimir.l_p
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quadruple serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let q: Quadruple = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        q.validate()?;
        Ok(q)
    }
}

/// `(ω1, ω2) = (1/4 + l_p/2 − k_p − c1/2, 2k_p + c1 − 2c2 − 4h_p)`.
pub fn omega(q: &Quadruple) -> (Rational, Rational) {
    let c = &q.casimir;
    let two = int(2);
    let w1 = Rational::new(1.into(), 4.into()) + &c.l_p / &two - &c.k_p - &q.c1 / &two;
    let w2 = &two * &c.k_p + &q.c1 - &two * &q.c2 - int(4) * &c.h_p;
    (w1, w2)
}

/// Constants from `B_l = c1 B|_l`, `B_k = c2 B|_k` and, when `H` is nontrivial,
/// `B_h = c3 B|_h`. The relations used are only valid when each index holds on
/// the whole subalgebra, centers included.
pub fn casimir_from_indices(
    dims: &Dims,
    c1: &Rational,
    c2: &Rational,
    c3: Option<&Rational>,
) -> Result<CasimirConstants> {
    dims.validate()?;
    let dim_l = int(dims.dim_l as i64);
    let l_p = &dim_l / int(dims.dim_p()) * (Rational::one() - c1);
    let k_p = int(dims.dim_k as i64) / &dim_l * &l_p;
    let h_p = int(dims.dim_h as i64) / &dim_l * &l_p;

    let c2_pred = Rational::one() - int(dims.dim_g as i64 - dims.dim_k as i64) / &dim_l * &l_p;
    if &c2_pred != c2 {
        return Err(Error::Inconsistent {
            identity: "c2 = 1 - (dim G - dim K)/dim L * l_p".into(),
            lhs: c2.clone(),
            rhs: c2_pred,
        });
    }
    if dims.dim_h > 0 {
        let c3 = c3.ok_or_else(|| {
            Error::Parameter("nontrivial H needs its index c3 (or trace data) for h constants".into())
        })?;
        let c3_pred = Rational::one() - int(dims.dim_g as i64 - dims.dim_h as i64) / &dim_l * &l_p;
        if &c3_pred != c3 {
            return Err(Error::Inconsistent {
                identity: "c3 = 1 - (dim G - dim H)/dim L * l_p".into(),
                lhs: c3.clone(),
                rhs: c3_pred,
            });
        }
    }
    Ok(CasimirConstants::standard(l_p, k_p, h_p))
}

/// One summand `(dim, γ)` with `B_i = γ B|_i`; abelian summands have `γ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFactor {
    pub dim: u64,
    pub index: Rational,
}

impl TraceFactor {
    pub fn new(dim: u64, index: Rational) -> Self {
        TraceFactor { dim, index }
    }

    pub fn abelian(dim: u64) -> Self {
        TraceFactor {
            dim,
            index: Rational::zero(),
        }
    }
}

/// `(1/dim(G/N)) Σ (1 − γ_i) dim N_i`.
pub fn casimir_from_trace(factors: &[TraceFactor], quotient_dim: u64) -> Result<Rational> {
    if factors.is_empty() {
        return Ok(Rational::zero());
    }
    if quotient_dim == 0 {
        return Err(Error::Degenerate("quotient of dimension 0".into()));
    }
    let mut sum = Rational::zero();
    for f in factors {
        if f.index.is_negative() || f.index > Rational::one() {
            return Err(Error::Parameter(format!("index {} outside [0, 1]", f.index)));
        }
        sum += (Rational::one() - &f.index) * int(f.dim as i64);
    }
    Ok(sum / int(quotient_dim as i64))
}
