use thiserror::Error;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("so(3) has no Killing normalization of its own; use su(2) (norm 8)")]
    UseSu2Normalization,
    #[error("embedding {sub} ⊂ {ambient} is not in the catalog")]
    NotInCatalog { sub: String, ambient: String },
    #[error("inconsistent constants ({identity}): {lhs} != {rhs}")]
    Inconsistent {
        identity: String,
        lhs: Rational,
        rhs: Rational,
    },
    #[error("degenerate quadruple: {0}")]
    Degenerate(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("wrong branch: {0}")]
    Branch(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("refinement budget of {max_iter} bisections exhausted (best residual bound {bound})")]
    RefinementBudget { max_iter: u64, bound: String },
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}
