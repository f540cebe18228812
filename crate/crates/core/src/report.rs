//! Rendering of bound reports, the special-case table and verification runs.
//!
//! JSON floats are written with 17 significant digits (shortest `%.17g`
//! form), so every emitted value parses back to the identical `f64` and a
//! parse/re-render cycle is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use thiserror::Error;

use crate::bounds::{self, BoundReport, BoundsError, ClassKind, FsBranch, TheoremBound};
use crate::extremal::{self, ExtremalError, ExtremalFunction};
use crate::oracle::{self, Functional, OracleConfig, OracleError, OracleResult, SchwarzPoint};
use crate::phi::PhiSpec;

/// `|extremal value − bound|` allowed for a sharpness witness.
pub const SHARPNESS_TOL: f64 = 1e-9;
/// Largest accepted residual of the defining differential equation.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// How far the oracle may exceed a proven bound (rounding only).
pub const SOUNDNESS_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, ReportError>;

/// `%.17g`: 17 significant digits, trailing zeros removed.
pub fn fmt_g17(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Pretty JSON layout with `%.17g` floats.
struct G17Formatter(PrettyFormatter<'static>);

impl Formatter for G17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            w.write_all(fmt_g17(value).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes any value with the report float convention and a trailing
/// newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, G17Formatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub value: f64,
    pub hypothesis_ok: bool,
    pub sharp: bool,
}

impl From<TheoremBound> for BoundJson {
    fn from(b: TheoremBound) -> Self {
        BoundJson {
            value: b.value,
            hypothesis_ok: b.hypothesis_ok,
            sharp: b.is_sharp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub w1: [f64; 2],
    pub w2: [f64; 2],
}

impl From<SchwarzPoint> for PointJson {
    fn from(p: SchwarzPoint) -> Self {
        PointJson {
            w1: [p.w1.re, p.w1.im],
            w2: [p.w2.re, p.w2.im],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub bound: f64,
    pub extremal: f64,
    pub sup_estimate: f64,
    pub argmax: PointJson,
    pub samples: usize,
    pub seed: u64,
    pub polish_steps: usize,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleJson {
    pub residual: f64,
    pub t22: CheckJson,
    pub t31: CheckJson,
}

/// Wire form of a [`BoundReport`], optionally with verification results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub class: String,
    pub params: BTreeMap<String, f64>,
    pub kind: String,
    pub b1: f64,
    pub b2: f64,
    pub a2_bound: f64,
    pub a3_bound: f64,
    pub t22: BoundJson,
    pub t31: BoundJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
    pub notes: Vec<String>,
}

impl From<&BoundReport> for ReportJson {
    fn from(r: &BoundReport) -> Self {
        ReportJson {
            class: r.spec.class_name().to_string(),
            params: r
                .spec
                .params()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            kind: r.kind.name().to_string(),
            b1: r.b1,
            b2: r.b2,
            a2_bound: r.a2_bound,
            a3_bound: r.a3_bound,
            t22: r.t22.into(),
            t31: r.t31.into(),
            oracle: None,
            notes: r.notes.clone(),
        }
    }
}

fn bound_line(name: &str, b: &TheoremBound) -> String {
    if b.hypothesis_ok {
        format!("|{name}| <= {} (sharp)", fmt_g17(b.value))
    } else {
        format!(
            "|{name}| formula value {} (hypothesis not satisfied, unproven)",
            fmt_g17(b.value)
        )
    }
}

pub fn render_report_human(r: &BoundReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "class: {}  kind: {}", r.spec, r.kind);
    let _ = writeln!(out, "B1 = {}  B2 = {}", fmt_g17(r.b1), fmt_g17(r.b2));
    let _ = writeln!(out, "|a2| <= {}", fmt_g17(r.a2_bound));
    let _ = writeln!(out, "|a3| <= {}", fmt_g17(r.a3_bound));
    let _ = writeln!(out, "{}", bound_line("T2(2)", &r.t22));
    let _ = writeln!(out, "{}", bound_line("T3(1)", &r.t31));
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

/// One line of the special-case table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub class: String,
    pub kind: String,
    #[serde(rename = "B1")]
    pub b1: String,
    #[serde(rename = "B2")]
    pub b2: String,
    #[serde(rename = "T22_ok")]
    pub t22_ok: bool,
    #[serde(rename = "T22")]
    pub t22: String,
    #[serde(rename = "T31_ok")]
    pub t31_ok: bool,
    #[serde(rename = "T31")]
    pub t31: String,
}

impl From<&BoundReport> for TableRow {
    fn from(r: &BoundReport) -> Self {
        TableRow {
            class: r.spec.to_string(),
            kind: r.kind.name().to_string(),
            b1: fmt_g17(r.b1),
            b2: fmt_g17(r.b2),
            t22_ok: r.t22.hypothesis_ok,
            t22: fmt_g17(r.t22.value),
            t31_ok: r.t31.hypothesis_ok,
            t31: fmt_g17(r.t31.value),
        }
    }
}

/// Reports for every catalog family in both classes, in table order.
pub fn table_reports() -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for spec in PhiSpec::catalog() {
        for kind in ClassKind::BOTH {
            out.push(bounds::full_report(&spec, kind)?);
        }
    }
    Ok(out)
}

pub fn render_table_csv(reports: &[BoundReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(TableRow::from(r))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv emits UTF-8"))
}

pub fn render_table_json(reports: &[BoundReport]) -> Result<String> {
    let rows: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    to_json(&rows)
}

pub fn render_table_human(reports: &[BoundReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<22} {:<9} {:>10} {:>10} {:>14} {:>14}",
        "class", "kind", "B1", "B2", "|T2(2)|", "|T3(1)|"
    );
    let cell = |b: &TheoremBound| {
        let mark = if b.hypothesis_ok { "" } else { "*" };
        format!("{:.6}{mark}", b.value)
    };
    for r in reports {
        let _ = writeln!(
            out,
            "{:<22} {:<9} {:>10.6} {:>10.6} {:>14} {:>14}",
            r.spec.to_string(),
            r.kind.name(),
            r.b1,
            r.b2,
            cell(&r.t22),
            cell(&r.t31)
        );
    }
    let _ = writeln!(out, "* hypothesis not satisfied: formula value only");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Hypothesis fails; the oracle value is an empirical estimate only.
    EstimateOnly,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::EstimateOnly => "estimate only (open case)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalCheck {
    pub functional: Functional,
    pub bound: TheoremBound,
    pub extremal_value: f64,
    pub oracle: OracleResult,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub report: BoundReport,
    pub extremal: ExtremalFunction,
    pub residual: f64,
    pub t22: FunctionalCheck,
    pub t31: FunctionalCheck,
}

impl Verification {
    pub fn checks(&self) -> [&FunctionalCheck; 2] {
        [&self.t22, &self.t31]
    }

    pub fn any_failed(&self) -> bool {
        self.checks().iter().any(|c| c.status == CheckStatus::Fail)
    }
}

fn judge(bound: &TheoremBound, extremal: f64, sup: f64, residual: f64, tol: f64) -> CheckStatus {
    if !bound.hypothesis_ok {
        return CheckStatus::EstimateOnly;
    }
    let sharp = (extremal - bound.value).abs() <= SHARPNESS_TOL;
    let sound = sup <= bound.value + SOUNDNESS_SLACK;
    let attained = sup >= bound.value - tol;
    if sharp && sound && attained && residual <= RESIDUAL_TOL {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Bounds, extremal witness and oracle estimate for `T₂(2)` and `T₃(1)`.
pub fn verify(
    spec: &PhiSpec,
    kind: ClassKind,
    order: usize,
    config: &OracleConfig,
) -> Result<Verification> {
    let report = bounds::full_report(spec, kind)?;
    let ext = extremal::extremal(spec, kind, order)?;
    let residual = extremal::residual(&ext, spec)?;

    let check =
        |functional: Functional, bound: TheoremBound, value: f64| -> Result<FunctionalCheck> {
            let oracle = oracle::maximize(kind, report.b1, report.b2, functional, config)?;
            let status = judge(&bound, value, oracle.sup_estimate, residual, config.tol);
            Ok(FunctionalCheck {
                functional,
                bound,
                extremal_value: value,
                oracle,
                status,
            })
        };
    let t22 = check(Functional::T22, report.t22, ext.t22_value.norm())?;
    let t31 = check(Functional::T31, report.t31, ext.t31_value.norm())?;
    Ok(Verification {
        report,
        extremal: ext,
        residual,
        t22,
        t31,
    })
}

fn check_json(c: &FunctionalCheck) -> CheckJson {
    CheckJson {
        bound: c.bound.value,
        extremal: c.extremal_value,
        sup_estimate: c.oracle.sup_estimate,
        argmax: c.oracle.argmax.into(),
        samples: c.oracle.samples,
        seed: c.oracle.seed,
        polish_steps: c.oracle.polish_steps,
        status: c.status.label().to_string(),
    }
}

impl From<&Verification> for ReportJson {
    fn from(v: &Verification) -> Self {
        let mut json = ReportJson::from(&v.report);
        json.oracle = Some(OracleJson {
            residual: v.residual,
            t22: check_json(&v.t22),
            t31: check_json(&v.t31),
        });
        json
    }
}

pub fn render_verification_human(v: &Verification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "class: {}  kind: {}", v.report.spec, v.report.kind);
    let _ = writeln!(out, "extremal residual: {:.3e}", v.residual);
    for (name, c) in [("T2(2)", &v.t22), ("T3(1)", &v.t31)] {
        let bound = if c.bound.hypothesis_ok {
            format!("bound {}", fmt_g17(c.bound.value))
        } else {
            format!("formula {} (unproven)", fmt_g17(c.bound.value))
        };
        let _ = writeln!(
            out,
            "{name}: {bound}, extremal {}, oracle sup {} [{} samples, seed {}]: {}",
            fmt_g17(c.extremal_value),
            fmt_g17(c.oracle.sup_estimate),
            c.oracle.samples,
            c.oracle.seed,
            c.status.label()
        );
    }
    for n in &v.report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

/// Closed-form Fekete-Szegő bound next to the oracle estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct FsCheck {
    pub kind: ClassKind,
    pub mu: f64,
    pub closed_form: f64,
    pub branch: FsBranch,
    pub thresholds: (f64, f64),
    pub oracle: OracleResult,
    pub pass: bool,
}

pub fn fs_check(
    spec: &PhiSpec,
    kind: ClassKind,
    mu: f64,
    config: &OracleConfig,
) -> Result<FsCheck> {
    let b = crate::phi::b_coeffs(spec).map_err(BoundsError::from)?;
    let closed_form = bounds::fekete_szego(kind, b.b1, b.b2, mu)?;
    let oracle = oracle::maximize(kind, b.b1, b.b2, Functional::FeketeSzego(mu), config)?;
    let pass = (oracle.sup_estimate - closed_form).abs() <= config.tol;
    Ok(FsCheck {
        kind,
        mu,
        closed_form,
        branch: bounds::fs_branch(kind, b.b1, b.b2, mu),
        thresholds: bounds::fs_thresholds(kind, b.b1, b.b2),
        oracle,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FsJson {
    pub class: String,
    pub params: BTreeMap<String, f64>,
    pub kind: String,
    pub mu: f64,
    pub bound: f64,
    pub branch: String,
    pub thresholds: [f64; 2],
    pub sup_estimate: f64,
    pub argmax: PointJson,
    pub pass: bool,
}

pub fn fs_json(spec: &PhiSpec, c: &FsCheck) -> FsJson {
    FsJson {
        class: spec.class_name().to_string(),
        params: spec
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        kind: c.kind.name().to_string(),
        mu: c.mu,
        bound: c.closed_form,
        branch: format!("{:?}", c.branch).to_lowercase(),
        thresholds: [c.thresholds.0, c.thresholds.1],
        sup_estimate: c.oracle.sup_estimate,
        argmax: c.oracle.argmax.into(),
        pass: c.pass,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalJson {
    pub class: String,
    pub params: BTreeMap<String, f64>,
    pub kind: String,
    /// `[re, im]` of `a_0 ..= a_N`.
    pub coeffs: Vec<[f64; 2]>,
    pub t22: [f64; 2],
    pub t31: [f64; 2],
    pub t22_abs: f64,
    pub t31_abs: f64,
    pub residual: f64,
}

pub fn extremal_json(spec: &PhiSpec, ef: &ExtremalFunction, residual: f64) -> ExtremalJson {
    ExtremalJson {
        class: spec.class_name().to_string(),
        params: spec
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        kind: ef.kind.name().to_string(),
        coeffs: ef.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        t22: [ef.t22_value.re, ef.t22_value.im],
        t31: [ef.t31_value.re, ef.t31_value.im],
        t22_abs: ef.t22_value.norm(),
        t31_abs: ef.t31_value.norm(),
        residual,
    }
}
