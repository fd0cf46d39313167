//! Machine-readable reports: the solve report (JSON), its plain-text table,
//! and the CSV forms of scans and fixture checks.
//!
//! Exact values are `"p/q"` strings and enclosures are `["lo", "hi"]` pairs, so
//! every report round-trips without loss.

use serde::{Deserialize, Serialize};

use crate::families::{ScanRow, Check, Relation};
use crate::solver::{Branch, Certified, EinsteinSolution, ExceptionClass, Reason};
use crate::text::{self, format_rational, parse_rational};
use crate::{Interval, Quadruple, Rational, RationalPolynomial, Result};

pub const SOLVE_REPORT_SCHEMA: &str = "solve_report.v1";

/// An exact value or an enclosure, in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueRecord {
    Exact(String),
    Interval([String; 2]),
}

impl From<&Certified> for ValueRecord {
    fn from(c: &Certified) -> Self {
        match c {
            Certified::Exact(v) => ValueRecord::Exact(format_rational(v)),
            Certified::Enclosed(iv) => ValueRecord::Interval([format_rational(iv.lo()), format_rational(iv.hi())]),
        }
    }
}

impl ValueRecord {
    pub fn to_certified(&self) -> Result<Certified> {
        Ok(match self {
            ValueRecord::Exact(s) => Certified::Exact(parse_rational(s)?),
            ValueRecord::Interval([lo, hi]) => {
                Certified::Enclosed(Interval::new(parse_rational(lo)?, parse_rational(hi)?))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub x: ValueRecord,
    pub y: ValueRecord,
    pub lambda: ValueRecord,
    pub branch: Branch,
    pub naturally_reductive: bool,
    pub reasons: Vec<Reason>,
    #[serde(with = "text::rational")]
    pub residual_bound: Rational,
    /// Coefficients, constant term first, of the polynomial `x` is a root of.
    pub x_polynomial: Vec<String>,
}

impl From<&EinsteinSolution> for SolutionRecord {
    fn from(s: &EinsteinSolution) -> Self {
        SolutionRecord {
            x: (&s.x).into(),
            y: (&s.y).into(),
            lambda: (&s.lambda).into(),
            branch: s.branch,
            naturally_reductive: s.naturally_reductive,
            reasons: s.reasons.clone(),
            residual_bound: s.residual_bound.clone(),
            x_polynomial: s.x_polynomial.coeffs().iter().map(format_rational).collect(),
        }
    }
}

impl SolutionRecord {
    pub fn to_solution(&self) -> Result<EinsteinSolution> {
        let coeffs = self
            .x_polynomial
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(EinsteinSolution {
            x: self.x.to_certified()?,
            y: self.y.to_certified()?,
            lambda: self.lambda.to_certified()?,
            branch: self.branch,
            naturally_reductive: self.naturally_reductive,
            reasons: self.reasons.clone(),
            residual_bound: self.residual_bound.clone(),
            x_polynomial: RationalPolynomial::new(coeffs),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: String,
    pub quadruple: Quadruple,
    #[serde(with = "text::rational")]
    pub omega1: Rational,
    #[serde(with = "text::rational")]
    pub omega2: Rational,
    pub exception_class: ExceptionClass,
    #[serde(with = "text::rational")]
    pub tol: Rational,
    pub solutions: Vec<SolutionRecord>,
    /// Wall-clock milliseconds; only filled on request so that reports stay
    /// byte-identical across runs by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl SolveReport {
    pub fn new(
        quadruple: Quadruple,
        exception_class: ExceptionClass,
        tol: Rational,
        solutions: &[EinsteinSolution],
    ) -> Self {
        let (omega1, omega2) = quadruple.omega();
        SolveReport {
            schema: SOLVE_REPORT_SCHEMA.into(),
            quadruple,
            omega1,
            omega2,
            exception_class,
            tol,
            solutions: solutions.iter().map(SolutionRecord::from).collect(),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    /// Fixed-width text table for terminals.
    pub fn to_table(&self) -> String {
        let q = &self.quadruple;
        let mut out = String::new();
        out.push_str(&format!("quadruple   {}\n", q.provenance));
        out.push_str(&format!(
            "dims        g={} l={} k={} h={}\n",
            q.dims.dim_g, q.dims.dim_l, q.dims.dim_k, q.dims.dim_h
        ));
        let c = &q.casimir;
        out.push_str(&format!(
            "constants   c1={} c2={} l_p={} k_p={} h_p={}\n",
            q.c1, q.c2, c.l_p, c.k_p, c.h_p
        ));
        out.push_str(&format!("omega       ({}, {})\n", self.omega1, self.omega2));
        out.push_str(&format!("exception   {}\n", exception_name(self.exception_class)));
        out.push_str(&format!("solutions   {}\n\n", self.solutions.len()));
        out.push_str(&format!(
            "{:<12} {:>18} {:>18} {:>18}  {:<5} {}\n",
            "branch", "x", "y", "lambda", "nat", "reasons"
        ));
        for s in &self.solutions {
            let reasons: Vec<&str> = s.reasons.iter().map(|r| reason_name(*r)).collect();
            out.push_str(&format!(
                "{:<12} {:>18} {:>18} {:>18}  {:<5} {}\n",
                branch_name(s.branch),
                short(&s.x),
                short(&s.y),
                short(&s.lambda),
                if s.naturally_reductive { "yes" } else { "no" },
                reasons.join(",")
            ));
        }
        out
    }
}

fn short(v: &ValueRecord) -> String {
    match v {
        ValueRecord::Exact(s) if s.len() <= 18 => s.clone(),
        other => {
            let c = other.to_certified().expect("record built from a solution");
            format!("{:.12}", c.to_f64())
        }
    }
}

pub fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::XEqualsOne => "X_EQUALS_ONE",
        Branch::XEqualsY => "X_EQUALS_Y",
        Branch::Generic => "GENERIC",
    }
}

pub fn reason_name(r: Reason) -> &'static str {
    match r {
        Reason::XEqualsOne => "x=1",
        Reason::XEqualsY => "x=y",
        Reason::KIdealInL => "k_ideal_in_l",
    }
}

pub fn exception_name(e: ExceptionClass) -> &'static str {
    match e {
        ExceptionClass::NotExceptional => "NOT_EXCEPTIONAL",
        ExceptionClass::ExcA4Family => "EXC_A4_FAMILY",
        ExceptionClass::ExcA5 => "EXC_A5",
        ExceptionClass::ExcB3K1 => "EXC_B3_K1",
    }
}

pub const SCAN_CSV_HEADER: &str =
    "family,n1,n2,n3,k,c1,c2,l_p,k_p,h_p,omega1,omega2,exception_class";

fn opt(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn scan_csv_row(r: &ScanRow) -> String {
    let p = &r.params;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.id,
        opt(p.n1),
        opt(p.n2),
        opt(p.n3),
        opt(p.k),
        r.c1,
        r.c2,
        r.l_p,
        r.k_p,
        r.h_p,
        r.omega1,
        r.omega2,
        exception_name(r.exception)
    )
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&scan_csv_row(r));
        out.push('\n');
    }
    out
}

/// One line of the fixture-verification CSV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub scope: &'static str,
    pub item: String,
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckRow {
    pub fn from_check(scope: &'static str, item: String, c: &Check) -> Self {
        let expected = match c.relation {
            Relation::Equal => c.expected.to_string(),
            Relation::Above => format!(">{}", c.expected),
        };
        CheckRow {
            scope,
            item,
            quantity: c.quantity.clone(),
            expected,
            actual: c.actual.to_string(),
            pass: c.passed(),
        }
    }
}

pub const CHECK_CSV_HEADER: &str = "scope,item,quantity,expected,actual,status";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn checks_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from(CHECK_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.scope,
            &r.item,
            &r.quantity,
            &r.expected,
            &r.actual,
            if r.pass { "PASS" } else { "FAIL" },
        ];
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
