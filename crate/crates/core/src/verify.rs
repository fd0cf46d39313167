//! Fixture harness: every published exact value, recomputed and compared.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::catalog::{dimension, killing_norm, AlgebraDescriptor};
use crate::families::{instantiate, verify_closed_forms, FamilyId, FamilyParams};
use crate::report::CheckRow;
use crate::solver::{fbar_cubic, m_factorization};
use crate::{int, rat, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    TableC,
    AppendixA,
    AppendixB,
    All,
}

impl Scope {
    fn name(self) -> &'static str {
        match self {
            Scope::TableC => "table-c",
            Scope::AppendixA => "appendix-a",
            Scope::AppendixB => "appendix-b",
            Scope::All => "all",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Scope::TableC, Scope::AppendixA, Scope::AppendixB, Scope::All]
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scope {s:?}")))
    }
}

/// Table of dimensions and long-root norms, one representative per family.
pub fn table_c_fixtures() -> Vec<(AlgebraDescriptor, u64, i64)> {
    use AlgebraDescriptor as A;
    vec![
        (A::su(4), 15, 16),
        (A::so(8), 28, 24),
        (A::sp(3), 21, 16),
        (A::G2, 14, 16),
        (A::F4, 52, 36),
        (A::E6, 78, 48),
        (A::E7, 133, 72),
        (A::E8, 248, 120),
    ]
}

fn table_c() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (a, dim, norm) in table_c_fixtures() {
        let (d, n) = (dimension(&a)?, killing_norm(&a)?);
        rows.push(CheckRow {
            scope: "table-c",
            item: a.to_string(),
            quantity: "dimension;killing_norm".into(),
            expected: format!("{dim};{norm}"),
            actual: format!("{d};{n}"),
            pass: d == dim && n == int(norm),
        });
    }
    Ok(rows)
}

/// Parameter points checked per parametric row.
pub fn appendix_a_points() -> Vec<(FamilyId, FamilyParams)> {
    use FamilyId::*;
    let mut v = Vec::new();
    for (n1, n2, n3, k) in [(2, 2, 2, 1), (3, 2, 4, 2), (2, 5, 3, 3)] {
        v.push((A1, FamilyParams::n123k(n1, n2, n3, k)));
        v.push((A4, FamilyParams::n123k(n1, n2, n3, k)));
    }
    for (n1, n2, n3, k) in [(2, 2, 2, 2), (3, 2, 2, 3), (2, 4, 3, 5)] {
        v.push((A2, FamilyParams::n123k(n1, n2, n3, k)));
    }
    for (n1, n2, k, dim_h) in [(2, 2, 3, 2), (2, 3, 4, 5), (3, 2, 5, 9)] {
        let p = FamilyParams {
            dim_h: Some(dim_h),
            ..FamilyParams::n12k(n1, n2, k)
        };
        v.push((A3, p));
    }
    for (n1, n2, k) in [(2, 2, 3), (3, 4, 3), (2, 3, 6)] {
        v.push((B1, FamilyParams::n12k(n1, n2, k)));
    }
    // K = n(so(a) + so(b)) inside n so(a + b)
    for (n, k, dim_k) in [(2, 6, 12), (2, 8, 24), (3, 6, 18)] {
        let p = FamilyParams {
            n: Some(n),
            k: Some(k),
            dim_k: Some(dim_k),
            ..Default::default()
        };
        v.push((B2, p));
    }
    for (n1, n2, k) in [(2, 2, 1), (3, 2, 2), (4, 3, 5)] {
        v.push((B3, FamilyParams::n12k(n1, n2, k)));
    }
    for id in FamilyId::ALL.into_iter().filter(|id| id.is_single_instance()) {
        v.push((id, FamilyParams::default()));
    }
    v
}

fn item_name(id: FamilyId, p: &FamilyParams) -> String {
    let s = p.to_string();
    if s.is_empty() {
        id.to_string()
    } else {
        format!("{id}({s})")
    }
}

fn appendix_a() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (id, p) in appendix_a_points() {
        let report = verify_closed_forms(id, &p)?;
        for c in &report.checks {
            rows.push(CheckRow::from_check("appendix-a", item_name(id, &p), c));
        }
    }
    Ok(rows)
}

fn exact_row(item: String, quantity: &str, expected: Rational, actual: Rational) -> CheckRow {
    CheckRow {
        scope: "appendix-b",
        item,
        quantity: quantity.into(),
        pass: expected == actual,
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// `f̄(β)` on `B3(2, 2, k)`.
pub fn b3_fbar_beta(k: i64) -> Rational {
    rat(k * k * (5 * k + 1) * (k - 1), 4 * (4 * k + 1).pow(2) * (k + 1).pow(2))
}

/// `f̄(1)` on `A4(n1, 2, 2, k)`.
pub fn a4_fbar_one(n1: i64, k: i64) -> Rational {
    rat(
        k * (2 * n1 * k - 2 * k - 1) * (2 * (n1 - 1) - 9 * k),
        8 * (4 * n1 * k + 1).pow(3),
    )
}

fn appendix_b() -> Result<Vec<CheckRow>> {
    use FamilyId::*;
    let mut rows = Vec::new();
    let none = FamilyParams::default();
    let fixed: [(FamilyId, Rational, Rational, Option<Rational>); 4] = [
        (A5, rat(3, 2), rat(0, 1), None),
        (A6, rat(4, 3), rat(2, 729), Some(rat(-7, 5832))),
        (B4, rat(3, 2), rat(-1, 768), None),
        (B5, rat(5, 3), rat(-5, 1458), None),
    ];
    for (id, beta, fbar_beta, fbar_one) in fixed {
        let q = instantiate(id, &none)?;
        let m = m_factorization(&q)?;
        let f = fbar_cubic(&q)?;
        rows.push(exact_row(id.to_string(), "beta", beta, m.beta.clone()));
        rows.push(exact_row(id.to_string(), "fbar_beta", fbar_beta, f.eval(&m.beta)));
        if let Some(v) = fbar_one {
            rows.push(exact_row(id.to_string(), "fbar_one", v, f.eval(&Rational::one())));
        }
    }
    for k in 1..=3 {
        let p = FamilyParams::n12k(2, 2, k as u64);
        let q = instantiate(B3, &p)?;
        let m = m_factorization(&q)?;
        let f = fbar_cubic(&q)?;
        let item = item_name(B3, &p);
        rows.push(exact_row(item.clone(), "beta", rat(5 * k + 1, k + 1), m.beta.clone()));
        rows.push(exact_row(item, "fbar_beta", b3_fbar_beta(k), f.eval(&m.beta)));
    }
    for (n1, k) in [(2, 1), (10, 2), (3, 1)] {
        let p = FamilyParams::n123k(n1 as u64, 2, 2, k as u64);
        let q = instantiate(A4, &p)?;
        let f = fbar_cubic(&q)?;
        rows.push(exact_row(item_name(A4, &p), "fbar_one", a4_fbar_one(n1, k), f.eval(&Rational::one())));
    }
    Ok(rows)
}

/// Runs the checks of `scope`. With `corrupt`, the first expected value is
/// altered so that the harness itself can be seen to fail.
pub fn run(scope: Scope, corrupt: bool) -> Result<Vec<CheckRow>> {
    let mut rows = match scope {
        Scope::TableC => table_c()?,
        Scope::AppendixA => appendix_a()?,
        Scope::AppendixB => appendix_b()?,
        Scope::All => {
            let mut v = table_c()?;
            v.extend(appendix_a()?);
            v.extend(appendix_b()?);
            v
        }
    };
    if corrupt {
        if let Some(r) = rows.first_mut() {
            r.expected.push('0');
            r.pass = r.expected == r.actual;
        }
    }
    Ok(rows)
}
