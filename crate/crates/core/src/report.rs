//! Check results and their CSV/JSON serialization.
//!
//! Every report is oriented as `lhs <= rhs`, so `margin = rhs - lhs` is
//! nonnegative exactly when the inequality holds.

use crate::numerics::{fmt_sig15, round_sig15};
use serde_json::{json, Value};
use std::fmt;

/// Relative slack absorbing rounding at equality cases.
pub const SATISFACTION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    Ppw,
    HileProtter,
    Yang1,
    Yang2,
    LiYauMean,
    LiYauIndividual,
    Polya,
    ChengYangSum,
    ProjectiveSum,
    ConjectureMean,
    ConjectureIndividual,
    CyRecursion,
    CyUpper,
    QuadraticUpper,
    CrudeUpper,
    Berezin,
    Counting,
    Kac,
    HsMonotonicity,
    HsQuadratic,
    HsRieszStep,
    HsRatioMonotone,
    LaplaceConsistency,
    RieszIteration,
    LegendreDuality,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Ppw => "ppw",
            BoundId::HileProtter => "hile_protter",
            BoundId::Yang1 => "yang1",
            BoundId::Yang2 => "yang2",
            BoundId::LiYauMean => "li_yau_mean",
            BoundId::LiYauIndividual => "li_yau_individual",
            BoundId::Polya => "polya",
            BoundId::ChengYangSum => "cheng_yang_sum",
            BoundId::ProjectiveSum => "projective_sum",
            BoundId::ConjectureMean => "conjecture_mean",
            BoundId::ConjectureIndividual => "conjecture_individual",
            BoundId::CyRecursion => "cy_recursion",
            BoundId::CyUpper => "cy_upper",
            BoundId::QuadraticUpper => "quadratic_upper",
            BoundId::CrudeUpper => "crude_upper",
            BoundId::Berezin => "berezin",
            BoundId::Counting => "counting",
            BoundId::Kac => "kac",
            BoundId::HsMonotonicity => "hs_monotonicity",
            BoundId::HsQuadratic => "hs_quadratic",
            BoundId::HsRieszStep => "hs_riesz_step",
            BoundId::HsRatioMonotone => "hs_ratio_monotone",
            BoundId::LaplaceConsistency => "laplace_consistency",
            BoundId::RieszIteration => "riesz_iteration",
            BoundId::LegendreDuality => "legendre_duality",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a failed check would mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// A proven inequality; failure indicates bad data or a bug.
    Theorem,
    /// An open statement; failure is informational.
    Conjecture,
    /// Evaluated outside the parameter range where the result is proven.
    OutsideRegime,
    /// Hypotheses do not apply to this spectrum (e.g. a closed problem).
    NotApplicable,
    /// Numerical self-consistency or heuristic comparison.
    Diagnostic,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Theorem => "theorem",
            Status::Conjecture => "conjecture",
            Status::OutsideRegime => "outside_regime",
            Status::NotApplicable => "not_applicable",
            Status::Diagnostic => "diagnostic",
        }
    }
}

/// Index or continuous argument at which a check was evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Argument {
    K(usize),
    Z(f64),
    T(f64),
    P(f64),
}

impl Argument {
    pub fn name(self) -> &'static str {
        match self {
            Argument::K(_) => "k",
            Argument::Z(_) => "z",
            Argument::T(_) => "t",
            Argument::P(_) => "p",
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Argument::K(k) => k as f64,
            Argument::Z(x) | Argument::T(x) | Argument::P(x) => x,
        }
    }

    fn render(self) -> String {
        match self {
            Argument::K(k) => k.to_string(),
            other => fmt_sig15(other.value()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub argument: Argument,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub status: Status,
    pub context: String,
}

impl BoundReport {
    /// Builds a report for `lhs <= rhs`.
    pub fn new(
        bound_id: BoundId,
        argument: Argument,
        lhs: f64,
        rhs: f64,
        status: Status,
        context: impl Into<String>,
    ) -> Self {
        let margin = rhs - lhs;
        Self {
            bound_id,
            argument,
            lhs,
            rhs,
            margin,
            satisfied: is_satisfied(margin, rhs),
            status,
            context: context.into(),
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// A failure that should be treated as an error by callers.
    pub fn is_theorem_failure(&self) -> bool {
        self.status == Status::Theorem && !self.satisfied
    }
}

/// `margin >= -1e-9 max(1, |rhs|)`, with `+inf` on the right always satisfied.
pub fn is_satisfied(margin: f64, rhs: f64) -> bool {
    if rhs == f64::INFINITY {
        return true;
    }
    if margin.is_nan() {
        return false;
    }
    margin >= -SATISFACTION_SLACK * rhs.abs().max(1.0)
}

pub const CSV_HEADER: &str = "bound_id,k,lhs,rhs,margin,satisfied,status,context";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn report_csv_row(r: &BoundReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.bound_id,
        r.argument.render(),
        fmt_sig15(r.lhs),
        fmt_sig15(r.rhs),
        fmt_sig15(r.margin),
        r.satisfied,
        r.status.as_str(),
        csv_field(&r.context)
    )
}

pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&report_csv_row(r));
        out.push('\n');
    }
    out
}

fn json_number(x: f64) -> Value {
    if x.is_finite() {
        json!(round_sig15(x))
    } else {
        json!(fmt_sig15(x))
    }
}

pub fn report_json(r: &BoundReport) -> Value {
    let arg = match r.argument {
        Argument::K(k) => json!(k),
        other => json_number(other.value()),
    };
    json!({
        "bound_id": r.bound_id.as_str(),
        "argument": r.argument.name(),
        "k": arg,
        "lhs": json_number(r.lhs),
        "rhs": json_number(r.rhs),
        "margin": json_number(r.margin),
        "satisfied": r.satisfied,
        "status": r.status.as_str(),
        "context": r.context,
    })
}

pub fn reports_to_json(reports: &[BoundReport]) -> String {
    let arr: Vec<Value> = reports.iter().map(report_json).collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("json values serialize");
    s.push('\n');
    s
}

/// One point of a convergence series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub argument: f64,
    pub value: f64,
    pub limit: f64,
    pub relative_deviation: f64,
}

pub fn series_to_csv(points: &[SeriesPoint]) -> String {
    let mut out = String::from("argument,value,limit,relative_deviation\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig15(p.argument),
            fmt_sig15(p.value),
            fmt_sig15(p.limit),
            fmt_sig15(p.relative_deviation)
        ));
    }
    out
}
