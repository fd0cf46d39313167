//! Quadruples over products `G = N·H` of a compact simple group `H`, and the
//! count of non-naturally-reductive Einstein metrics they give on `H^n`.

use serde::{Deserialize, Serialize};

use crate::catalog::AlgebraDescriptor;
use crate::quadruple::{casimir_from_indices, Dims, Flags, Source, Sources};
use crate::{rat, Error, Quadruple, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductQuadruple {
    pub base: AlgebraDescriptor,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub quadruple: Quadruple,
}

fn need_at_least_two(pairs: &[(&str, u64)]) -> Result<()> {
    for (name, v) in pairs {
        if *v < 2 {
            return Err(Error::Parameter(format!("{name} must be >= 2, got {v}")));
        }
    }
    Ok(())
}

fn product_flags(h_trivial: bool) -> Flags {
    Flags {
        h_trivial,
        g_simple: false,
        k_ideal_in_l: false,
    }
}

/// `G = n1n2n3·H ⊃ L = n1n2·H ⊃ K = n1·H ⊃ H`, each step a diagonal embedding.
pub fn product_quadruple(base: AlgebraDescriptor, n1: u64, n2: u64, n3: u64) -> Result<ProductQuadruple> {
    need_at_least_two(&[("n1", n1), ("n2", n2), ("n3", n3)])?;
    let d = base.dimension()?;
    let dims = Dims::new(n1 * n2 * n3 * d, n1 * n2 * d, n1 * d, d);
    let (c1, c2, c3) = (
        rat(1, n3 as i64),
        rat(1, (n2 * n3) as i64),
        rat(1, (n1 * n2 * n3) as i64),
    );
    let casimir = casimir_from_indices(&dims, &c1, &c2, Some(&c3))?;
    let quadruple = Quadruple::new(
        dims,
        c1,
        c2,
        casimir,
        product_flags(false),
        format!("product({base}; n1={n1}, n2={n2}, n3={n3})"),
        Sources::all(Source::Indices),
    )?;
    Ok(ProductQuadruple {
        base,
        n1,
        n2,
        n3,
        quadruple,
    })
}

/// `G = pq·H ⊃ L = p·H ⊃ K = H ⊃ {e}` on `H^(pq)`.
pub fn pair_quadruple(base: AlgebraDescriptor, p: u64, q: u64) -> Result<Quadruple> {
    need_at_least_two(&[("p", p), ("q", q)])?;
    let d = base.dimension()?;
    let dims = Dims::new(p * q * d, p * d, d, 0);
    let (c1, c2) = (rat(1, q as i64), rat(1, (p * q) as i64));
    let casimir = casimir_from_indices(&dims, &c1, &c2, None)?;
    Quadruple::new(
        dims,
        c1,
        c2,
        casimir,
        product_flags(true),
        format!("pair({base}; p={p}, q={q})"),
        Sources::all(Source::Indices),
    )
}

/// One pair quadruple per divisor `1 < q < n`, with `p = n/q`.
pub fn pair_quadruples(base: AlgebraDescriptor, n: u64) -> Result<Vec<Quadruple>> {
    if n < 2 {
        return Err(Error::Parameter(format!("n must be >= 2, got {n}")));
    }
    (2..n)
        .filter(|q| n % q == 0)
        .map(|q| pair_quadruple(base, n / q, q))
        .collect()
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `(l1 + 1)⋯(ls + 1) − 2` for `n = p1^l1 ⋯ ps^ls`.
///
/// This is a lower bound for the number of non-naturally-reductive Einstein
/// metrics on `H^n`: one per proper divisor of `n`, from [`pair_quadruples`].
pub fn count_nonnaturally_reductive(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Parameter(format!("n must be >= 2, got {n}")));
    }
    let divisors: u64 = factorize(n).iter().map(|(_, e)| *e as u64 + 1).product();
    Ok(divisors - 2)
}
