//! Compact simple Lie algebras: dimensions, Killing normalizations, and the
//! embedding indices of the subalgebras that occur in the quadruple tables.
//!
//! `killing_norm` is `B(α_m, α_m)` for a long root `α_m`, in the normalization
//! where the index of a subalgebra is a ratio of two such values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{int, rat, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraFamily {
    SU,
    SO,
    Sp,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl AlgebraFamily {
    pub const ALL: [AlgebraFamily; 8] = [
        AlgebraFamily::SU,
        AlgebraFamily::SO,
        AlgebraFamily::Sp,
        AlgebraFamily::G2,
        AlgebraFamily::F4,
        AlgebraFamily::E6,
        AlgebraFamily::E7,
        AlgebraFamily::E8,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, AlgebraFamily::SU | AlgebraFamily::SO | AlgebraFamily::Sp)
    }

    fn tag(self) -> &'static str {
        match self {
            AlgebraFamily::SU => "su",
            AlgebraFamily::SO => "so",
            AlgebraFamily::Sp => "sp",
            AlgebraFamily::G2 => "g2",
            AlgebraFamily::F4 => "f4",
            AlgebraFamily::E6 => "e6",
            AlgebraFamily::E7 => "e7",
            AlgebraFamily::E8 => "e8",
        }
    }
}

/// `rank_param` is the `n` of `su(n)`, `so(n)`, `sp(n)`; it is zero for the
/// exceptional algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub family: AlgebraFamily,
    pub rank_param: u32,
}

impl AlgebraDescriptor {
    pub const G2: Self = Self::exceptional(AlgebraFamily::G2);
    pub const F4: Self = Self::exceptional(AlgebraFamily::F4);
    pub const E6: Self = Self::exceptional(AlgebraFamily::E6);
    pub const E7: Self = Self::exceptional(AlgebraFamily::E7);
    pub const E8: Self = Self::exceptional(AlgebraFamily::E8);

    const fn exceptional(family: AlgebraFamily) -> Self {
        AlgebraDescriptor {
            family,
            rank_param: 0,
        }
    }

    pub const fn su(n: u32) -> Self {
        AlgebraDescriptor {
            family: AlgebraFamily::SU,
            rank_param: n,
        }
    }

    pub const fn so(n: u32) -> Self {
        AlgebraDescriptor {
            family: AlgebraFamily::SO,
            rank_param: n,
        }
    }

    pub const fn sp(n: u32) -> Self {
        AlgebraDescriptor {
            family: AlgebraFamily::Sp,
            rank_param: n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank_param;
        let ok = match self.family {
            AlgebraFamily::SU => n >= 2,
            AlgebraFamily::SO => n >= 3,
            AlgebraFamily::Sp => n >= 1,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(self.to_string()))
        }
    }

    pub fn dimension(&self) -> Result<u64> {
        dimension(self)
    }

    pub fn killing_norm(&self) -> Result<Rational> {
        killing_norm(self)
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_classical() {
            write!(f, "{}({})", self.family.tag(), self.rank_param)
        } else {
            write!(f, "{}", self.family.tag())
        }
    }
}

impl FromStr for AlgebraDescriptor {
    type Err = Error;

    /// Accepts `su(4)`, `SO(10)`, `sp3`, `e8`, `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("not an algebra: {s:?}"));
        let exceptional = match t.as_str() {
            "g2" => Some(Self::G2),
            "f4" => Some(Self::F4),
            "e6" => Some(Self::E6),
            "e7" => Some(Self::E7),
            "e8" => Some(Self::E8),
            _ => None,
        };
        if let Some(d) = exceptional {
            return Ok(d);
        }
        let (family, rest) = if let Some(r) = t.strip_prefix("su") {
            (AlgebraFamily::SU, r)
        } else if let Some(r) = t.strip_prefix("so") {
            (AlgebraFamily::SO, r)
        } else if let Some(r) = t.strip_prefix("sp") {
            (AlgebraFamily::Sp, r)
        } else {
            return Err(bad());
        };
        let digits = rest.trim_start_matches('(').trim_end_matches(')');
        let n: u32 = digits.parse().map_err(|_| bad())?;
        let d = AlgebraDescriptor {
            family,
            rank_param: n,
        };
        d.validate()?;
        Ok(d)
    }
}

pub fn dimension(desc: &AlgebraDescriptor) -> Result<u64> {
    desc.validate()?;
    let n = desc.rank_param as u64;
    Ok(match desc.family {
        AlgebraFamily::SU => n * n - 1,
        AlgebraFamily::SO => n * (n - 1) / 2,
        AlgebraFamily::Sp => 2 * n * n + n,
        AlgebraFamily::G2 => 14,
        AlgebraFamily::F4 => 52,
        AlgebraFamily::E6 => 78,
        AlgebraFamily::E7 => 133,
        AlgebraFamily::E8 => 248,
    })
}

pub fn killing_norm(desc: &AlgebraDescriptor) -> Result<Rational> {
    desc.validate()?;
    let n = desc.rank_param as i64;
    Ok(match desc.family {
        AlgebraFamily::SU => int(4 * n),
        AlgebraFamily::SO if n == 3 => return Err(Error::UseSu2Normalization),
        AlgebraFamily::SO => int(4 * (n - 2)),
        AlgebraFamily::Sp => int(4 * (n + 1)),
        AlgebraFamily::G2 => int(16),
        AlgebraFamily::F4 => int(36),
        AlgebraFamily::E6 => int(48),
        AlgebraFamily::E7 => int(72),
        AlgebraFamily::E8 => int(120),
    })
}

/// Norm of `so(3)` through `so(3) ≅ su(2)`; every other algebra as [`killing_norm`].
pub fn killing_norm_or_su2(desc: &AlgebraDescriptor) -> Result<Rational> {
    match killing_norm(desc) {
        Err(Error::UseSu2Normalization) => killing_norm(&AlgebraDescriptor::su(2)),
        other => other,
    }
}

/// A direct sum of simple ideals (with multiplicity) and an abelian summand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleDescriptor {
    pub factors: Vec<(AlgebraDescriptor, u32)>,
    pub abelian_dim: u64,
}

impl SemisimpleDescriptor {
    pub fn simple(a: AlgebraDescriptor) -> Self {
        Self::multiple(a, 1)
    }

    pub fn multiple(a: AlgebraDescriptor, m: u32) -> Self {
        SemisimpleDescriptor {
            factors: vec![(a, m)],
            abelian_dim: 0,
        }
    }

    pub fn abelian(d: u64) -> Self {
        SemisimpleDescriptor {
            factors: Vec::new(),
            abelian_dim: d,
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn with(mut self, a: AlgebraDescriptor, m: u32) -> Self {
        self.factors.push((a, m));
        self
    }

    pub fn with_center(mut self, d: u64) -> Self {
        self.abelian_dim += d;
        self
    }

    pub fn dimension(&self) -> Result<u64> {
        let mut total = self.abelian_dim;
        for (a, m) in &self.factors {
            total += *m as u64 * a.dimension()?;
        }
        Ok(total)
    }
}

impl fmt::Display for SemisimpleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(a, m)| if *m == 1 { a.to_string() } else { format!("{m}{a}") })
            .collect();
        if self.abelian_dim > 0 {
            parts.push(format!("R^{}", self.abelian_dim));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Where an embedding index comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexSource {
    /// Ratio of long-root norms of a regular subalgebra.
    RegularFormula,
    /// Read off directly, for a subalgebra that is not regular.
    AppendixStatement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingEntry {
    pub sub: AlgebraDescriptor,
    pub ambient: AlgebraDescriptor,
    pub index: Rational,
    pub source: IndexSource,
    pub provenance: &'static str,
}

/// Embeddings into exceptional algebras, plus `g2 ⊂ so(8)`.
pub fn curated_embeddings() -> Vec<EmbeddingEntry> {
    use AlgebraDescriptor as A;
    use IndexSource::*;
    let e = |sub, ambient, n, d, source, provenance| EmbeddingEntry {
        sub,
        ambient,
        index: rat(n, d),
        source,
        provenance,
    };
    vec![
        e(A::so(10), A::E6, 2, 3, RegularFormula, "A5: so(10)+R in e6"),
        e(A::so(8), A::E6, 1, 2, RegularFormula, "A5: so(8)+R^2 in e6"),
        e(A::su(3), A::E6, 1, 4, RegularFormula, "B6: 3su(3) in e6"),
        e(A::so(12), A::E7, 5, 9, RegularFormula, "A6: so(12)+su(2) in e7"),
        e(A::so(8), A::E7, 1, 3, RegularFormula, "A6: so(8) in e7 through so(12)"),
        e(A::su(2), A::E7, 1, 9, RegularFormula, "A6: 7su(2) in e7"),
        e(A::su(8), A::E7, 4, 9, RegularFormula, "B7: su(8) in e7"),
        e(A::so(16), A::E8, 7, 15, RegularFormula, "A7, A8, A10, A11, B8-B12: so(16) in e8"),
        e(A::so(8), A::E8, 1, 5, RegularFormula, "A9, B15, B16: 2so(8) in e8"),
        e(A::su(2), A::E8, 1, 15, RegularFormula, "A8-A10, B10, B15: 8su(2) in e8"),
        e(A::su(9), A::E8, 3, 10, RegularFormula, "B13, B14: su(9) in e8"),
        e(A::su(5), A::E8, 1, 6, RegularFormula, "B17: 2su(5) in e8"),
        e(A::su(3), A::E8, 1, 10, RegularFormula, "B18: 4su(3) in e8"),
        e(A::so(9), A::F4, 7, 9, RegularFormula, "B5: so(9) in f4"),
        e(A::so(8), A::F4, 2, 3, RegularFormula, "B5: so(8) in f4"),
        e(A::G2, A::so(8), 2, 3, AppendixStatement, "B4: g2 in so(8)"),
    ]
}

/// Block-diagonal embedding `m ⊂ N` inside one classical family.
fn classical_block_index(sub: &AlgebraDescriptor, ambient: &AlgebraDescriptor) -> Option<Rational> {
    if sub.family != ambient.family || !sub.family.is_classical() {
        return None;
    }
    let (m, n) = (sub.rank_param as i64, ambient.rank_param as i64);
    if m >= n {
        return None;
    }
    Some(match sub.family {
        AlgebraFamily::SU => rat(m, n),
        AlgebraFamily::SO => rat(m - 2, n - 2),
        AlgebraFamily::Sp => rat(m + 1, n + 1),
        _ => unreachable!(),
    })
}

/// Index `c` with `B_sub = c · B|_sub`.
///
/// Classical block embeddings use the regular formula; everything else must be
/// in [`curated_embeddings`].
pub fn regular_embedding_index(sub: &AlgebraDescriptor, ambient: &AlgebraDescriptor) -> Result<Rational> {
    sub.validate()?;
    ambient.validate()?;
    if let Some(c) = classical_block_index(sub, ambient) {
        return Ok(c);
    }
    curated_embeddings()
        .into_iter()
        .find(|e| &e.sub == sub && &e.ambient == ambient)
        .map(|e| e.index)
        .ok_or_else(|| Error::NotInCatalog {
            sub: sub.to_string(),
            ambient: ambient.to_string(),
        })
}

/// Table file with one algebra per line: `family  rank  dimension  killing_norm`.
pub fn algebra_table(ranks: &[AlgebraDescriptor]) -> String {
    let mut out = String::from("# family\trank\tdimension\tkilling_norm\n");
    for d in ranks {
        let norm = killing_norm(d).map(|q| q.to_string()).unwrap_or_else(|_| "-".into());
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            d.family.tag(),
            d.rank_param,
            dimension(d).unwrap(),
            norm
        ));
    }
    out
}

/// Table file with one embedding per line: `sub  ambient  index  source  provenance`.
pub fn embedding_table() -> String {
    let mut out = String::from("# sub\tambient\tindex\tsource\tprovenance\n");
    for e in curated_embeddings() {
        let source = match e.source {
            IndexSource::RegularFormula => "regular",
            IndexSource::AppendixStatement => "stated",
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            e.sub, e.ambient, e.index, source, e.provenance
        ));
    }
    out
}

/// The ranks listed in the shipped algebra table.
pub fn table_ranks() -> Vec<AlgebraDescriptor> {
    let mut v: Vec<_> = (2..=9).map(AlgebraDescriptor::su).collect();
    v.extend((3..=16).map(AlgebraDescriptor::so));
    v.extend((1..=4).map(AlgebraDescriptor::sp));
    v.extend([
        AlgebraDescriptor::G2,
        AlgebraDescriptor::F4,
        AlgebraDescriptor::E6,
        AlgebraDescriptor::E7,
        AlgebraDescriptor::E8,
    ]);
    v
}

pub const ALGEBRA_TABLE_FILE: &str = include_str!("../data/algebras.v1.tsv");
pub const EMBEDDING_TABLE_FILE: &str = include_str!("../data/embeddings.v1.tsv");
