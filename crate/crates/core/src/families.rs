//! The standard quadruples with `G` simple (rows `A1`–`A11`) and with `H`
//! trivial (rows `B1`–`B18`).
//!
//! Classical rows are parametric and are built from structural data: block
//! dimensions, block embedding indices, and the index or trace relations for
//! the Casimir constants. Their published closed forms live separately in
//! [`closed_form`] so that [`verify_closed_forms`] compares two independent
//! computations. Rows over exceptional algebras are single instances.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{regular_embedding_index, AlgebraDescriptor, AlgebraFamily, SemisimpleDescriptor};
use crate::quadruple::{
    casimir_from_indices, casimir_from_trace, CasimirConstants, Dims, Flags, Source, Sources, TraceFactor,
};
use crate::solver::{exception_detect, ExceptionClass};
use crate::{int, rat, Error, Quadruple, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
    B10,
    B11,
    B12,
    B13,
    B14,
    B15,
    B16,
    B17,
    B18,
}

use FamilyId::*;

impl FamilyId {
    pub const ALL: [FamilyId; 29] = [
        A1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, B1, B2, B3, B4, B5, B6, B7, B8, B9, B10, B11, B12, B13,
        B14, B15, B16, B17, B18,
    ];

    /// Parametric rows whose `H` (for `A3`) or `K` (for `B2`) is a sum of
    /// isotropy algebras that the caller has to supply.
    pub fn needs_user_data(self) -> bool {
        matches!(self, A3 | B2)
    }

    /// Single-instance rows over an exceptional algebra (or `so(8)` for `B4`).
    pub fn is_single_instance(self) -> bool {
        !matches!(self, A1 | A2 | A3 | A4 | B1 | B2 | B3)
    }

    pub fn spec(self) -> FamilySpec {
        let (params, mins): (&'static [&'static str], &'static [u64]) = match self {
            A1 | A4 => (&["n1", "n2", "n3", "k"], &[2, 2, 2, 1]),
            A2 => (&["n1", "n2", "n3", "k"], &[2, 2, 2, 2]),
            A3 => (&["n1", "n2", "k", "dim_h"], &[2, 2, 3, 1]),
            B1 => (&["n1", "n2", "k"], &[2, 2, 3]),
            B2 => (&["n", "k", "dim_k"], &[2, 3, 1]),
            B3 => (&["n1", "n2", "k"], &[2, 2, 1]),
            _ => (&[], &[]),
        };
        FamilySpec {
            id: self,
            params,
            minimums: mins,
            g_simple: true,
            k_ideal_in_l: false,
            index_identities: !matches!(self, A1 | A5 | A6),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Accepts `A6`, `a6`, `A.6`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase().replace('.', "");
        FamilyId::ALL
            .into_iter()
            .find(|id| id.to_string() == t)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Static description of a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: FamilyId,
    /// Required parameters, in order.
    pub params: &'static [&'static str],
    pub minimums: &'static [u64],
    pub g_simple: bool,
    /// Recorded as false for every row: `k` is a proper non-ideal subalgebra of `l`.
    pub k_ideal_in_l: bool,
    /// Whether `c1 = 1 − dim(G/L)/dim L · l_p` and its `c2` analogue hold.
    /// They fail when `l` has a center or a factor with a different index.
    pub index_identities: bool,
}

impl FamilySpec {
    /// `G/L` is a symmetric space (so `l_p = 1/2`).
    pub fn symmetric_gl(&self, p: &FamilyParams) -> bool {
        match self.id {
            A1 | A2 | A3 | A4 | B1 | B3 => p.n1 == Some(2),
            B2 | A9 | B6 | B13 | B14 | B15 | B16 | B17 | B18 => false,
            _ => true,
        }
    }
}

/// Integer parameters of a row, plus the user data `A3` and `B2` need.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub n3: Option<u64>,
    pub k: Option<u64>,
    pub n: Option<u64>,
    /// `dim H` for `A3`.
    pub dim_h: Option<u64>,
    /// Optional `h_p` for `A3`; defaults to `dim H/dim L · l_p`.
    pub h_p: Option<Rational>,
    /// `dim K` for `B2`.
    pub dim_k: Option<u64>,
    /// Optional `k_p` for `B2`; defaults to `dim K/dim L · l_p`.
    pub k_p: Option<Rational>,
}

impl FamilyParams {
    pub fn n123k(n1: u64, n2: u64, n3: u64, k: u64) -> Self {
        FamilyParams {
            n1: Some(n1),
            n2: Some(n2),
            n3: Some(n3),
            k: Some(k),
            ..Default::default()
        }
    }

    pub fn n12k(n1: u64, n2: u64, k: u64) -> Self {
        FamilyParams {
            n1: Some(n1),
            n2: Some(n2),
            k: Some(k),
            ..Default::default()
        }
    }

    fn get(&self, name: &str) -> Option<u64> {
        match name {
            "n1" => self.n1,
            "n2" => self.n2,
            "n3" => self.n3,
            "k" => self.k,
            "n" => self.n,
            "dim_h" => self.dim_h,
            "dim_k" => self.dim_k,
            _ => None,
        }
    }

    fn set_names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for name in ["n1", "n2", "n3", "k", "n", "dim_h", "dim_k"] {
            if self.get(name).is_some() {
                v.push(name);
            }
        }
        if self.h_p.is_some() {
            v.push("h_p");
        }
        if self.k_p.is_some() {
            v.push("k_p");
        }
        v
    }

    fn req(&self, name: &str) -> u64 {
        self.get(name).expect("checked by check_params")
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for name in ["n1", "n2", "n3", "k", "n", "dim_h", "dim_k"] {
            if let Some(v) = self.get(name) {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(v) = &self.h_p {
            parts.push(format!("h_p={v}"));
        }
        if let Some(v) = &self.k_p {
            parts.push(format!("k_p={v}"));
        }
        write!(f, "{}", parts.join(", "))
    }
}

fn instance_name(id: FamilyId, p: &FamilyParams) -> String {
    let s = p.to_string();
    if s.is_empty() {
        id.to_string()
    } else {
        format!("{id}({s})")
    }
}

fn check_params(id: FamilyId, p: &FamilyParams) -> Result<()> {
    let spec = id.spec();
    for (name, min) in spec.params.iter().zip(spec.minimums) {
        match p.get(name) {
            None => return Err(Error::Parameter(format!("{id} needs parameter {name}"))),
            Some(v) if v < *min => {
                return Err(Error::Parameter(format!("{id} needs {name} >= {min}, got {name} = {v}")))
            }
            Some(_) => {}
        }
    }
    let optional: &[&str] = match id {
        A3 => &["h_p"],
        B2 => &["k_p"],
        _ => &[],
    };
    for name in p.set_names() {
        if !spec.params.contains(&name) && !optional.contains(&name) {
            return Err(Error::Parameter(format!("{id} does not take parameter {name}")));
        }
    }
    Ok(())
}

/// `Σ dim h_i < ½ dim(n·so(k))`, the size condition on the summands of `H`
/// (row `A3`, with `n = n1 n2`) or of `K` (row `B2`).
pub fn a3_b2_dimension_guard(factor_dims: &[u64], n: u64, k: u64) -> bool {
    let total: u64 = factor_dims.iter().sum();
    2 * total < n * k * (k.saturating_sub(1)) / 2
}

/// `mult` copies of the classical algebra of `family` and size `m`; sizes
/// below the family's minimum give the abelian `so(2)` or the zero algebra.
fn block(family: AlgebraFamily, m: u64) -> AlgebraDescriptor {
    AlgebraDescriptor {
        family,
        rank_param: m as u32,
    }
}

fn block_dim(family: AlgebraFamily, m: u64) -> u64 {
    match family {
        AlgebraFamily::SU => (m * m).saturating_sub(1),
        AlgebraFamily::SO => m * m.saturating_sub(1) / 2,
        AlgebraFamily::Sp => m * (2 * m + 1),
        _ => unreachable!("classical families only"),
    }
}

/// Index of a block in the ambient algebra; zero for abelian or zero blocks.
fn block_index(family: AlgebraFamily, m: u64, ambient: u64) -> Result<Rational> {
    let sub = block(family, m);
    if sub.validate().is_err() {
        return Ok(Rational::zero());
    }
    regular_embedding_index(&sub, &block(family, ambient))
}

fn flags(dim_h: u64) -> Flags {
    Flags {
        h_trivial: dim_h == 0,
        g_simple: true,
        k_ideal_in_l: false,
    }
}

/// `family(N) ⊃ a·family(m1) ⊃ b·family(m2) [⊃ c·family(m3)]`, block-diagonal,
/// constants from the indices.
fn classical_chain(
    family: AlgebraFamily,
    sizes: [u64; 3],
    h_block: Option<(u64, u64)>,
    mults: [u64; 2],
) -> Result<(Dims, Rational, Rational, CasimirConstants)> {
    let [big, m1, m2] = sizes;
    let [a, b] = mults;
    let (dim_h, c3) = match h_block {
        Some((c, m3)) => (c * block_dim(family, m3), Some(block_index(family, m3, big)?)),
        None => (0, None),
    };
    let dims = Dims::new(
        block_dim(family, big),
        a * block_dim(family, m1),
        b * block_dim(family, m2),
        dim_h,
    );
    let c1 = block_index(family, m1, big)?;
    let c2 = block_index(family, m2, big)?;
    let casimir = casimir_from_indices(&dims, &c1, &c2, c3.as_ref())?;
    Ok((dims, c1, c2, casimir))
}

/// `su(N) ⊃ s(n1 u(m1)) ⊃ s(n1n2 u(m2)) ⊃ s(n1n2n3 u(k))`. The centers rule out
/// the index relations, so the constants are trace averages.
fn unitary_chain(n1: u64, n2: u64, n3: u64, k: u64) -> Result<(Dims, Rational, Rational, CasimirConstants)> {
    let su = AlgebraFamily::SU;
    let big = n1 * n2 * n3 * k;
    let dim_g = block_dim(su, big);
    let level = |copies: u64, m: u64| -> Result<(u64, Vec<TraceFactor>)> {
        let semisimple = copies * block_dim(su, m);
        let dim = semisimple + copies - 1;
        let factors = vec![
            TraceFactor::new(semisimple, block_index(su, m, big)?),
            TraceFactor::abelian(copies - 1),
        ];
        Ok((dim, factors))
    };
    let (dim_l, fl) = level(n1, n2 * n3 * k)?;
    let (dim_k, fk) = level(n1 * n2, n3 * k)?;
    let (dim_h, fh) = level(n1 * n2 * n3, k)?;
    let dims = Dims::new(dim_g, dim_l, dim_k, dim_h);
    dims.validate()?;
    let l_p = casimir_from_trace(&fl, dim_g - dim_l)?;
    let k_p = casimir_from_trace(&fk, dim_g - dim_k)?;
    let h_p = casimir_from_trace(&fh, dim_g - dim_h)?;
    let c1 = block_index(su, n2 * n3 * k, big)?;
    let c2 = block_index(su, n3 * k, big)?;
    Ok((dims, c1, c2, CasimirConstants::standard(l_p, k_p, h_p)))
}

/// A single-instance row: the chain and, for rows whose constants cannot come
/// from the index relations, the published `(c1, c2, l_p, k_p, h_p)`.
struct Row {
    g: AlgebraDescriptor,
    l: SemisimpleDescriptor,
    k: SemisimpleDescriptor,
    h: SemisimpleDescriptor,
    /// The simple factor of `l` whose index is `c1`.
    l_factor: AlgebraDescriptor,
    verbatim: Option<[Rational; 5]>,
}

fn row(id: FamilyId) -> Row {
    use AlgebraDescriptor as A;
    use SemisimpleDescriptor as S;
    let e8_so16 = |k: S, h: S| Row {
        g: A::E8,
        l: S::simple(A::so(16)),
        k,
        h,
        l_factor: A::so(16),
        verbatim: None,
    };
    let r = |g, l: S, k: S, l_factor| Row {
        g,
        l,
        k,
        h: S::trivial(),
        l_factor,
        verbatim: None,
    };
    match id {
        A5 => Row {
            g: A::E6,
            l: S::simple(A::so(10)).with_center(1),
            k: S::simple(A::so(8)).with_center(2),
            h: S::abelian(6),
            l_factor: A::so(10),
            verbatim: Some([rat(2, 3), rat(1, 2), rat(1, 2), rat(1, 3), rat(1, 12)]),
        },
        A6 => Row {
            g: A::E7,
            l: S::simple(A::so(12)).with(A::su(2), 1),
            k: S::simple(A::so(8)).with(A::su(2), 3),
            h: S::multiple(A::su(2), 7),
            l_factor: A::so(12),
            verbatim: Some([rat(5, 9), rat(1, 3), rat(1, 2), rat(5, 18), rat(1, 6)]),
        },
        A7 => e8_so16(S::multiple(A::so(8), 2), S::abelian(8)),
        A8 => e8_so16(S::multiple(A::su(2), 8), S::abelian(8)),
        A9 => Row {
            g: A::E8,
            l: S::multiple(A::so(8), 2),
            k: S::multiple(A::su(2), 8),
            h: S::abelian(8),
            l_factor: A::so(8),
            verbatim: None,
        },
        A10 => e8_so16(S::multiple(A::so(8), 2), S::multiple(A::su(2), 8)),
        A11 => e8_so16(S::multiple(A::so(8), 2), S::multiple(A::su(3), 2)),
        B4 => r(A::so(8), S::simple(A::so(7)), S::simple(A::G2), A::so(7)),
        B5 => r(A::F4, S::simple(A::so(9)), S::simple(A::so(8)), A::so(9)),
        B6 => r(A::E6, S::multiple(A::su(3), 3), S::multiple(A::so(3), 3), A::su(3)),
        B7 => r(A::E7, S::simple(A::su(8)), S::simple(A::so(8)), A::su(8)),
        B8 => e8_so16(S::multiple(A::so(8), 2), S::trivial()),
        B9 => e8_so16(S::simple(A::so(9)), S::trivial()),
        B10 => e8_so16(S::multiple(A::su(2), 8), S::trivial()),
        B11 => e8_so16(S::multiple(A::so(5), 2), S::trivial()),
        B12 => e8_so16(S::multiple(A::su(3), 2), S::trivial()),
        B13 => r(A::E8, S::simple(A::su(9)), S::simple(A::so(9)), A::su(9)),
        B14 => r(A::E8, S::simple(A::su(9)), S::multiple(A::su(3), 2), A::su(9)),
        B15 => r(A::E8, S::multiple(A::so(8), 2), S::multiple(A::su(2), 8), A::so(8)),
        B16 => r(A::E8, S::multiple(A::so(8), 2), S::multiple(A::su(3), 2), A::so(8)),
        B17 => r(A::E8, S::multiple(A::su(5), 2), S::multiple(A::so(5), 2), A::su(5)),
        B18 => r(A::E8, S::multiple(A::su(3), 4), S::multiple(A::so(3), 4), A::su(3)),
        A1 | A2 | A3 | A4 | B1 | B2 | B3 => unreachable!("parametric row"),
    }
}

/// The subalgebra chain of a single-instance row, `(g, l, k, h)`.
pub fn row_chain(id: FamilyId) -> Option<[SemisimpleDescriptor; 4]> {
    if !id.is_single_instance() {
        return None;
    }
    let r = row(id);
    Some([SemisimpleDescriptor::simple(r.g), r.l, r.k, r.h])
}

fn single_instance(id: FamilyId) -> Result<Quadruple> {
    let r = row(id);
    let dims = Dims::new(
        r.g.dimension()?,
        r.l.dimension()?,
        r.k.dimension()?,
        r.h.dimension()?,
    );
    dims.validate()?;
    let (c1, c2, casimir, sources) = match r.verbatim {
        Some([c1, c2, lp, kp, hp]) => (
            c1,
            c2,
            CasimirConstants::standard(lp, kp, hp),
            Sources::all(Source::Verbatim),
        ),
        None => {
            let c1 = regular_embedding_index(&r.l_factor, &r.g)?;
            let dim_l = int(dims.dim_l as i64);
            let l_p = &dim_l / int(dims.dim_p()) * (Rational::one() - &c1);
            let k_p = int(dims.dim_k as i64) / &dim_l * &l_p;
            let h_p = int(dims.dim_h as i64) / &dim_l * &l_p;
            let c2 = Rational::one() - int(dims.dim_g as i64 - dims.dim_k as i64) / &dim_l * &l_p;
            (c1, c2, CasimirConstants::standard(l_p, k_p, h_p), Sources::all(Source::Indices))
        }
    };
    Quadruple::new(dims, c1, c2, casimir, flags(dims.dim_h), instance_name(id, &FamilyParams::default()), sources)
}

/// The quadruple of row `id` at `params`.
pub fn instantiate(id: FamilyId, params: &FamilyParams) -> Result<Quadruple> {
    check_params(id, params)?;
    if id.is_single_instance() {
        return single_instance(id);
    }
    let p = params;
    let name = instance_name(id, p);
    let (so, sp) = (AlgebraFamily::SO, AlgebraFamily::Sp);
    let (dims, c1, c2, casimir, sources) = match id {
        A1 => {
            let (n1, n2, n3, k) = (p.req("n1"), p.req("n2"), p.req("n3"), p.req("k"));
            let (d, c1, c2, c) = unitary_chain(n1, n2, n3, k)?;
            (d, c1, c2, c, Sources::all(Source::Trace))
        }
        A2 | A4 => {
            let (n1, n2, n3, k) = (p.req("n1"), p.req("n2"), p.req("n3"), p.req("k"));
            let fam = if id == A2 { so } else { sp };
            let (d, c1, c2, c) = classical_chain(
                fam,
                [n1 * n2 * n3 * k, n2 * n3 * k, n3 * k],
                Some((n1 * n2 * n3, k)),
                [n1, n1 * n2],
            )?;
            (d, c1, c2, c, Sources::all(Source::Indices))
        }
        B1 | B3 => {
            let (n1, n2, k) = (p.req("n1"), p.req("n2"), p.req("k"));
            let fam = if id == B1 { so } else { sp };
            let (d, c1, c2, c) = classical_chain(fam, [n1 * n2 * k, n2 * k, k], None, [n1, n1 * n2])?;
            (d, c1, c2, c, Sources::all(Source::Indices))
        }
        A3 => {
            let (n1, n2, k, dim_h) = (p.req("n1"), p.req("n2"), p.req("k"), p.req("dim_h"));
            if !a3_b2_dimension_guard(&[dim_h], n1 * n2, k) {
                return Err(Error::Parameter(format!(
                    "dim H = {dim_h} must be below half of dim {}so({k})",
                    n1 * n2
                )));
            }
            let (d0, c1, c2, mut c) = classical_chain(so, [n1 * n2 * k, n2 * k, k], None, [n1, n1 * n2])?;
            let d = Dims::new(d0.dim_g, d0.dim_l, d0.dim_k, dim_h);
            let (h_p, h_src) = match &p.h_p {
                Some(v) => (v.clone(), Source::UserSupplied),
                None => (int(dim_h as i64) / int(d.dim_l as i64) * &c.l_p, Source::Indices),
            };
            c = CasimirConstants::standard(c.l_p, c.k_p, h_p);
            let src = Sources {
                l: Source::Indices,
                k: Source::Indices,
                h: h_src,
            };
            (d, c1, c2, c, src)
        }
        B2 => {
            let (n, k, dim_k) = (p.req("n"), p.req("k"), p.req("dim_k"));
            if !a3_b2_dimension_guard(&[dim_k], n, k) {
                return Err(Error::Parameter(format!(
                    "dim K = {dim_k} must be below half of dim {n}so({k})"
                )));
            }
            let d = Dims::new(block_dim(so, n * k), n * block_dim(so, k), dim_k, 0);
            d.validate()?;
            let c1 = block_index(so, k, n * k)?;
            let dim_l = int(d.dim_l as i64);
            let l_p = &dim_l / int(d.dim_p()) * (Rational::one() - &c1);
            let c2 = Rational::one() - int(d.dim_g as i64 - dim_k as i64) / &dim_l * &l_p;
            let (k_p, k_src) = match &p.k_p {
                Some(v) => (v.clone(), Source::UserSupplied),
                None => (int(dim_k as i64) / &dim_l * &l_p, Source::Indices),
            };
            let src = Sources {
                l: Source::Indices,
                k: k_src,
                h: Source::Indices,
            };
            (d, c1, c2, CasimirConstants::standard(l_p, k_p, Rational::zero()), src)
        }
        _ => unreachable!(),
    };
    Quadruple::new(dims, c1, c2, casimir, flags(dims.dim_h), name, sources)
}

/// How a published value relates to the computed one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    /// The computed value must exceed the published bound.
    Above,
}

/// The per-row closed forms. `None` where no closed form is published.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedForm {
    pub c1: Option<Rational>,
    pub c2: Option<Rational>,
    pub l_p: Option<Rational>,
    pub k_p: Option<Rational>,
    pub h_p: Option<Rational>,
    pub omega1: Option<(Relation, Rational)>,
    pub omega2: Option<(Relation, Rational)>,
}

fn q(n: i64, d: i64) -> Option<Rational> {
    Some(rat(n, d))
}

fn eq(v: Rational) -> Option<(Relation, Rational)> {
    Some((Relation::Equal, v))
}

/// Published closed forms for row `id` at `params`.
pub fn closed_form(id: FamilyId, params: &FamilyParams) -> Result<ClosedForm> {
    check_params(id, params)?;
    let g = |name| params.get(name).map(|v| v as i64).unwrap_or(0);
    let (n1, n2, n3, k) = (g("n1"), g("n2"), g("n3"), g("k"));
    let r = rat;
    Ok(match id {
        A1 => ClosedForm {
            c1: q(1, n1),
            c2: q(1, n1 * n2),
            l_p: q(1, n1),
            k_p: q(1, n1 * n2),
            h_p: q(1, n1 * n2 * n3),
            omega1: eq(r(1, 4) - r(1, n1 * n2)),
            omega2: eq(r(1, n1) - r(4, n1 * n2 * n3)),
        },
        A2 => {
            let nn = n1 * n2 * n3 * k;
            ClosedForm {
                c1: q(n2 * n3 * k - 2, nn - 2),
                c2: q(n3 * k - 2, nn - 2),
                l_p: q(n2 * n3 * k - 1, nn - 2),
                k_p: q(n3 * k - 1, nn - 2),
                h_p: q(k - 1, nn - 2),
                omega1: eq(r(nn - 4 * n3 * k + 4, 4 * (nn - 2))),
                omega2: eq(r(n2 * n3 * k - 4 * k + 4, nn - 2)),
            }
        }
        A3 => {
            let nn = n1 * n2 * k;
            ClosedForm {
                c1: q(n2 * k - 2, nn - 2),
                c2: q(k - 2, nn - 2),
                l_p: q(n2 * k - 1, nn - 2),
                k_p: q(k - 1, nn - 2),
                h_p: None,
                omega1: eq(r(nn - 4 * k + 4, 4 * (nn - 2))),
                omega2: Some((Relation::Above, r(n2 * k - 2 * k + 2, nn - 2))),
            }
        }
        A4 => {
            let nn = n1 * n2 * n3 * k;
            ClosedForm {
                c1: q(n2 * n3 * k + 1, nn + 1),
                c2: q(n3 * k + 1, nn + 1),
                l_p: q(2 * n2 * n3 * k + 1, 2 * (nn + 1)),
                k_p: q(2 * n3 * k + 1, 2 * (nn + 1)),
                h_p: q(2 * k + 1, 2 * (nn + 1)),
                omega1: eq(r(nn - 4 * n3 * k - 2, 4 * (nn + 1))),
                omega2: eq(r(n2 * n3 * k - 4 * k - 2, nn + 1)),
            }
        }
        B1 => {
            let nn = n1 * n2 * k;
            ClosedForm {
                c1: q(n2 * k - 2, nn - 2),
                c2: q(k - 2, nn - 2),
                l_p: q(n2 * k - 1, nn - 2),
                k_p: q(k - 1, nn - 2),
                h_p: q(0, 1),
                omega1: eq(r(nn - 4 * k + 4, 4 * (nn - 2))),
                omega2: eq(r(n2 * k, nn - 2)),
            }
        }
        B2 => {
            let n = g("n");
            ClosedForm {
                c1: q(k - 2, n * k - 2),
                l_p: q(k - 1, n * k - 2),
                h_p: q(0, 1),
                omega1: Some((Relation::Above, r(n * k - 2 * k + 2, 4 * (n * k - 2)))),
                omega2: eq(r(k, n * k - 2)),
                ..Default::default()
            }
        }
        B3 => {
            let nn = n1 * n2 * k;
            ClosedForm {
                c1: q(n2 * k + 1, nn + 1),
                c2: q(k + 1, nn + 1),
                l_p: q(2 * n2 * k + 1, 2 * (nn + 1)),
                k_p: q(2 * k + 1, 2 * (nn + 1)),
                h_p: q(0, 1),
                omega1: eq(r(nn - 4 * k - 2, 4 * (nn + 1))),
                omega2: eq(r(n2 * k, nn + 1)),
            }
        }
        _ => published_row(id),
    })
}

fn published_row(id: FamilyId) -> ClosedForm {
    let w = |a: i64, b: i64, c: i64, d: i64| (eq(rat(a, b)), eq(rat(c, d)));
    let consts = |c1, c2, lp, kp, hp| ClosedForm {
        c1,
        c2,
        l_p: lp,
        k_p: kp,
        h_p: hp,
        ..Default::default()
    };
    let (mut cf, (w1, w2)) = match id {
        A5 => (consts(q(2, 3), q(1, 2), q(1, 2), q(1, 3), q(1, 12)), w(-1, 6, 0, 1)),
        A6 => (consts(q(5, 9), q(1, 3), q(1, 2), q(5, 18), q(1, 6)), w(-1, 18, -2, 9)),
        A7 => (ClosedForm::default(), w(1, 30, 2, 5)),
        A8 => (ClosedForm::default(), w(1, 6, 2, 5)),
        A9 => (consts(q(1, 5), None, q(7, 30), None, None), w(1, 6, 2, 15)),
        A10 => (ClosedForm::default(), (None, eq(rat(2, 15)))),
        A11 => (ClosedForm::default(), (None, eq(rat(4, 15)))),
        B4 => (consts(q(5, 6), q(2, 3), q(1, 2), q(1, 3), q(0, 1)), w(-1, 4, 1, 6)),
        B5 => (consts(q(7, 9), q(2, 3), q(1, 2), q(7, 18), q(0, 1)), w(-5, 18, 2, 9)),
        B6 => (consts(q(1, 4), q(1, 24), q(1, 3), q(1, 8), q(0, 1)), w(1, 6, 5, 12)),
        B7 => (ClosedForm::default(), w(1, 18, 5, 9)),
        B13 => (consts(None, None, q(1, 3), None, None), w(7, 60, 11, 30)),
        B14 => (ClosedForm::default(), w(1, 5, 11, 30)),
        B15 => (ClosedForm::default(), w(1, 6, 4, 15)),
        B16 => (ClosedForm::default(), w(1, 5, 4, 15)),
        B17 => (consts(q(1, 6), q(1, 20), q(1, 5), q(1, 12), q(0, 1)), w(11, 60, 7, 30)),
        B18 => (consts(q(1, 10), q(1, 60), q(2, 15), q(1, 20), q(0, 1)), w(13, 60, 1, 6)),
        _ => (ClosedForm::default(), (None, None)),
    };
    cf.omega1 = cf.omega1.or(w1);
    cf.omega2 = cf.omega2.or(w2);
    cf
}

/// One comparison between a published value and a computed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub quantity: String,
    pub relation: Relation,
    pub expected: Rational,
    pub actual: Rational,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.relation {
            Relation::Equal => self.actual == self.expected,
            Relation::Above => self.actual > self.expected,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub id: FamilyId,
    pub params: FamilyParams,
    pub checks: Vec<Check>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

/// Compares the instantiated quadruple, and its `ω1`, `ω2` from the general
/// formulas, against the published closed forms; also checks `l_p = 1/2` for
/// symmetric `G/L` and the index identities where the row admits them.
pub fn verify_closed_forms(id: FamilyId, params: &FamilyParams) -> Result<ClosedFormReport> {
    let qd = instantiate(id, params)?;
    let cf = closed_form(id, params)?;
    let spec = id.spec();
    let (w1, w2) = qd.omega();
    let c = &qd.casimir;
    let mut checks = Vec::new();
    let mut push = |name: &str, rel: Relation, expected: Rational, actual: &Rational| {
        checks.push(Check {
            quantity: name.to_string(),
            relation: rel,
            expected,
            actual: actual.clone(),
        })
    };
    let scalar = [
        ("c1", &cf.c1, &qd.c1),
        ("c2", &cf.c2, &qd.c2),
        ("l_p", &cf.l_p, &c.l_p),
        ("k_p", &cf.k_p, &c.k_p),
        ("h_p", &cf.h_p, &c.h_p),
    ];
    for (name, expected, actual) in scalar {
        if let Some(e) = expected {
            push(name, Relation::Equal, e.clone(), actual);
        }
    }
    for (name, expected, actual) in [("omega1", &cf.omega1, &w1), ("omega2", &cf.omega2, &w2)] {
        if let Some((rel, e)) = expected {
            push(name, *rel, e.clone(), actual);
        }
    }
    if spec.symmetric_gl(params) {
        push("l_p_symmetric", Relation::Equal, rat(1, 2), &c.l_p);
    }
    if spec.index_identities {
        push("c1_identity", Relation::Equal, qd.c1_from_lp(), &qd.c1);
        push("c2_identity", Relation::Equal, qd.c2_from_lp(), &qd.c2);
    }
    Ok(ClosedFormReport {
        id,
        params: params.clone(),
        checks,
    })
}

/// Parameter bounds for the scans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanBounds {
    pub max_n: u64,
    pub max_k: u64,
    /// Restrict to these rows; `None` scans every row that needs no user data.
    pub families: Option<Vec<FamilyId>>,
    /// Also scan `A4(n1, 2, 2, k)` for `n1 ≤ 9m + 1`, `k ≤ 2m`, `m ≤` this value.
    pub a4_subfamily_m: u64,
}

impl ScanBounds {
    pub fn new(max_n: u64, max_k: u64) -> Self {
        ScanBounds {
            max_n,
            max_k,
            families: None,
            a4_subfamily_m: 0,
        }
    }

    fn includes(&self, id: FamilyId) -> bool {
        !id.needs_user_data() && self.families.as_ref().map_or(true, |f| f.contains(&id))
    }
}

/// Every instance within `bounds`, in a fixed order, without repeats.
pub fn scan_instances(bounds: &ScanBounds) -> Vec<(FamilyId, FamilyParams)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut add = |id: FamilyId, p: FamilyParams| {
        if seen.insert((id, p.clone())) {
            out.push((id, p));
        }
    };
    let ns = 2..=bounds.max_n;
    for id in FamilyId::ALL {
        if !bounds.includes(id) {
            continue;
        }
        if id.is_single_instance() {
            add(id, FamilyParams::default());
            continue;
        }
        let kmin = id.spec().minimums.last().copied().unwrap_or(1);
        for k in kmin..=bounds.max_k {
            for n1 in ns.clone() {
                for n2 in ns.clone() {
                    if matches!(id, B1 | B3) {
                        add(id, FamilyParams::n12k(n1, n2, k));
                        continue;
                    }
                    for n3 in ns.clone() {
                        add(id, FamilyParams::n123k(n1, n2, n3, k));
                    }
                }
            }
        }
    }
    if bounds.includes(A4) {
        let m = bounds.a4_subfamily_m;
        if m > 0 {
            for k in 1..=2 * m {
                for n1 in 2..=9 * m + 1 {
                    add(A4, FamilyParams::n123k(n1, 2, 2, k));
                }
            }
        }
    }
    out
}

/// One scanned instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub id: FamilyId,
    pub params: FamilyParams,
    pub c1: Rational,
    pub c2: Rational,
    pub l_p: Rational,
    pub k_p: Rational,
    pub h_p: Rational,
    pub omega1: Rational,
    pub omega2: Rational,
    pub exception: ExceptionClass,
}

impl ScanRow {
    pub fn of(id: FamilyId, params: FamilyParams) -> Result<Self> {
        let qd = instantiate(id, &params)?;
        let (omega1, omega2) = qd.omega();
        let exception = exception_detect(&qd);
        Ok(ScanRow {
            id,
            params,
            c1: qd.c1,
            c2: qd.c2,
            l_p: qd.casimir.l_p,
            k_p: qd.casimir.k_p,
            h_p: qd.casimir.h_p,
            omega1,
            omega2,
            exception,
        })
    }

    pub fn negative_omega(&self) -> bool {
        self.omega1 < Rational::zero() || self.omega2 < Rational::zero()
    }

    pub fn exceptional(&self) -> bool {
        self.exception != ExceptionClass::NotExceptional
    }
}

/// All instances within `bounds`, evaluated in parallel, in [`scan_instances`] order.
pub fn scan(bounds: &ScanBounds) -> Result<Vec<ScanRow>> {
    scan_instances(bounds)
        .into_par_iter()
        .map(|(id, p)| ScanRow::of(id, p))
        .collect()
}

/// Instances with `ω1 < 0` or `ω2 < 0`.
pub fn scan_negative_omega(bounds: &ScanBounds) -> Result<Vec<ScanRow>> {
    Ok(scan(bounds)?.into_iter().filter(ScanRow::negative_omega).collect())
}

/// Instances where a root of `f̄` collides with `x = 1` or `x = β`.
pub fn scan_exceptions(bounds: &ScanBounds) -> Result<Vec<ScanRow>> {
    Ok(scan(bounds)?.into_iter().filter(ScanRow::exceptional).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> FamilyParams {
        FamilyParams::default()
    }

    #[test]
    fn parse_ids() {
        assert_eq!("A6".parse::<FamilyId>().unwrap(), A6);
        assert_eq!("b.18".parse::<FamilyId>().unwrap(), B18);
        assert!("C1".parse::<FamilyId>().is_err());
    }

    #[test]
    fn a4_spot_values() {
        let qd = instantiate(A4, &FamilyParams::n123k(2, 2, 2, 1)).unwrap();
        assert_eq!(qd.c1, rat(5, 9));
        assert_eq!(qd.c2, rat(1, 3));
        assert_eq!(qd.casimir.l_p, rat(1, 2));
    }

    #[test]
    fn single_instance_dims() {
        assert_eq!(instantiate(A7, &none()).unwrap().dims, Dims::new(248, 120, 56, 8));
        assert_eq!(instantiate(A6, &none()).unwrap().dims, Dims::new(133, 69, 37, 21));
        let b4 = instantiate(B4, &none()).unwrap();
        assert_eq!(b4.dims, Dims::new(28, 21, 14, 0));
        assert_eq!((b4.c1, b4.c2), (rat(5, 6), rat(2, 3)));
        assert_eq!((b4.casimir.l_p, b4.casimir.k_p), (rat(1, 2), rat(1, 3)));
    }

    #[test]
    fn derived_c2_matches_catalog_where_embedding_is_listed() {
        use AlgebraDescriptor as A;
        let so8_in_e8 = regular_embedding_index(&A::so(8), &A::E8).unwrap();
        let su2_in_e8 = regular_embedding_index(&A::su(2), &A::E8).unwrap();
        for (id, c) in [(A7, &so8_in_e8), (B8, &so8_in_e8), (A8, &su2_in_e8), (A9, &su2_in_e8), (B15, &su2_in_e8)] {
            assert_eq!(&instantiate(id, &none()).unwrap().c2, c, "{id}");
        }
        assert_eq!(
            instantiate(B5, &none()).unwrap().c2,
            regular_embedding_index(&A::so(8), &A::F4).unwrap()
        );
    }

    #[test]
    fn parameter_errors_name_the_bound() {
        let err = instantiate(A2, &FamilyParams::n123k(2, 2, 2, 1)).unwrap_err();
        assert!(matches!(&err, Error::Parameter(m) if m.contains("k >= 2")), "{err}");
        let err = instantiate(B1, &FamilyParams::n12k(2, 2, 2)).unwrap_err();
        assert!(matches!(&err, Error::Parameter(m) if m.contains("k >= 3")));
        assert!(instantiate(A6, &FamilyParams::n12k(2, 2, 2)).is_err());
        assert!(instantiate(B3, &none()).is_err());
    }

    #[test]
    fn dimension_guard() {
        assert!(!a3_b2_dimension_guard(&[20], 2, 6));
        assert!(a3_b2_dimension_guard(&[10], 2, 6));
        assert!(!a3_b2_dimension_guard(&[6], 2, 4));
        assert!(a3_b2_dimension_guard(&[3, 2], 2, 4));
    }

    #[test]
    fn user_supplied_rows() {
        let p = FamilyParams {
            n1: Some(2),
            n2: Some(2),
            k: Some(5),
            dim_h: Some(8),
            ..Default::default()
        };
        let r = verify_closed_forms(A3, &p).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        // 2(so(3) + so(3)) in 2so(6) in so(12)
        let p = FamilyParams {
            n: Some(2),
            k: Some(6),
            dim_k: Some(12),
            ..Default::default()
        };
        let r = verify_closed_forms(B2, &p).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(instantiate(B2, &p).unwrap().c2, rat(1, 10));
        let too_big = FamilyParams {
            dim_k: Some(15),
            ..p
        };
        assert!(instantiate(B2, &too_big).is_err());
    }

    #[test]
    fn every_row_matches_its_closed_form() {
        for id in FamilyId::ALL {
            let params: Vec<FamilyParams> = match id {
                A1 | A4 => vec![
                    FamilyParams::n123k(2, 2, 2, 1),
                    FamilyParams::n123k(3, 2, 4, 2),
                    FamilyParams::n123k(2, 5, 3, 3),
                ],
                A2 => vec![
                    FamilyParams::n123k(2, 2, 2, 2),
                    FamilyParams::n123k(3, 2, 2, 3),
                    FamilyParams::n123k(2, 4, 3, 5),
                ],
                B1 => vec![
                    FamilyParams::n12k(2, 2, 3),
                    FamilyParams::n12k(3, 4, 3),
                    FamilyParams::n12k(2, 3, 6),
                ],
                B3 => vec![
                    FamilyParams::n12k(2, 2, 1),
                    FamilyParams::n12k(3, 2, 2),
                    FamilyParams::n12k(4, 3, 5),
                ],
                A3 | B2 => continue,
                _ => vec![none()],
            };
            for p in params {
                let r = verify_closed_forms(id, &p).unwrap();
                assert!(r.passed(), "{id} {p}: {:?}", r.failures());
            }
        }
    }

    #[test]
    fn scan_without_subfamily_is_small() {
        let rows = scan_instances(&ScanBounds::new(3, 3));
        // A1, A2, A4 give 8 tuples per k; B1, B3 give 4
        let classical = 8 * 3 + 8 * 2 + 8 * 3 + 4 + 4 * 3;
        assert_eq!(rows.len(), classical + 22);
    }
}
