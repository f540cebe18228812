//! Closed-form coefficient and Toeplitz determinant bounds.
//!
//! For `f(z) = z + a₂z² + a₃z³ + …` the two determinants of interest are
//! `T₂(2) = a₃² − a₂²` and `T₃(1) = 1 − 2a₂² − a₃(a₃ − 2a₂²)`. Their sharp
//! bounds over `S*(φ)` and `K(φ)` depend on `φ` only through `B₁` and `B₂`,
//! and hold under explicit inequalities on those two numbers. When an
//! inequality fails the formula value is still computed but marked unproven.

use std::fmt;

use thiserror::Error;

use crate::phi::{self, PhiError, PhiSpec};

/// Slack granted toward acceptance in every hypothesis comparison, so that
/// boundary cases such as `B₁ = |B₂ + B₁²|` pass.
pub const HYPOTHESIS_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("B1 must be positive and finite, got {0}")]
    NonPositiveB1(f64),
    #[error("B2 must be finite, got {0}")]
    NonFiniteB2(f64),
    #[error("mu must be finite, got {0}")]
    NonFiniteMu(f64),
    #[error(transparent)]
    Phi(#[from] PhiError),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// Starlike (`zf'/f ≺ φ`) or convex (`1 + zf''/f' ≺ φ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Starlike,
    Convex,
}

impl ClassKind {
    pub const BOTH: [ClassKind; 2] = [ClassKind::Starlike, ClassKind::Convex];

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Starlike => "starlike",
            ClassKind::Convex => "convex",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_b(b1: f64, b2: f64) -> Result<()> {
    if !(b1.is_finite() && b1 > 0.0) {
        return Err(BoundsError::NonPositiveB1(b1));
    }
    if !b2.is_finite() {
        return Err(BoundsError::NonFiniteB2(b2));
    }
    Ok(())
}

/// Which piece of the Fekete-Szegő bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsBranch {
    Lower,
    Middle,
    Upper,
}

/// The two `μ` values where the Fekete-Szegő bound switches branch.
pub fn fs_thresholds(kind: ClassKind, b1: f64, b2: f64) -> (f64, f64) {
    let s = b2 + b1 * b1;
    match kind {
        // 2B₁²μ = B₂ + B₁² ∓ B₁
        ClassKind::Starlike => ((s - b1) / (2.0 * b1 * b1), (s + b1) / (2.0 * b1 * b1)),
        // 3B₁²μ = 2(B₂ + B₁² ∓ B₁)
        ClassKind::Convex => (
            2.0 * (s - b1) / (3.0 * b1 * b1),
            2.0 * (s + b1) / (3.0 * b1 * b1),
        ),
    }
}

/// Branch selection, evaluated on the undivided inequalities.
pub fn fs_branch(kind: ClassKind, b1: f64, b2: f64, mu: f64) -> FsBranch {
    let s = b2 + b1 * b1;
    let (lhs, lo, hi) = match kind {
        ClassKind::Starlike => (2.0 * b1 * b1 * mu, s - b1, s + b1),
        ClassKind::Convex => (3.0 * b1 * b1 * mu, 2.0 * (s - b1), 2.0 * (s + b1)),
    };
    if lhs <= lo {
        FsBranch::Lower
    } else if lhs <= hi {
        FsBranch::Middle
    } else {
        FsBranch::Upper
    }
}

/// Value of one branch formula, regardless of whether it is the active one.
pub fn fs_branch_value(kind: ClassKind, b1: f64, b2: f64, mu: f64, branch: FsBranch) -> f64 {
    let b1sq = b1 * b1;
    match (kind, branch) {
        (ClassKind::Starlike, FsBranch::Lower) => 0.5 * (b2 + b1sq - 2.0 * mu * b1sq),
        (ClassKind::Starlike, FsBranch::Middle) => 0.5 * b1,
        (ClassKind::Starlike, FsBranch::Upper) => 0.5 * (-b2 - b1sq + 2.0 * mu * b1sq),
        (ClassKind::Convex, FsBranch::Lower) => (b2 - 1.5 * mu * b1sq + b1sq) / 6.0,
        (ClassKind::Convex, FsBranch::Middle) => b1 / 6.0,
        (ClassKind::Convex, FsBranch::Upper) => (-b2 + 1.5 * mu * b1sq - b1sq) / 6.0,
    }
}

/// Sharp bound on `|a₃ − μa₂²|`.
pub fn fekete_szego(kind: ClassKind, b1: f64, b2: f64, mu: f64) -> Result<f64> {
    check_b(b1, b2)?;
    if !mu.is_finite() {
        return Err(BoundsError::NonFiniteMu(mu));
    }
    let branch = fs_branch(kind, b1, b2, mu);
    Ok(fs_branch_value(kind, b1, b2, mu, branch))
}

/// Sharp bound on `|a₂|`.
pub fn a2_bound(kind: ClassKind, b1: f64) -> Result<f64> {
    check_b(b1, 0.0)?;
    Ok(match kind {
        ClassKind::Starlike => b1,
        ClassKind::Convex => b1 / 2.0,
    })
}

/// A theorem bound together with whether its hypothesis holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremBound {
    /// Formula value; a proven sharp bound only when `hypothesis_ok`.
    pub value: f64,
    pub hypothesis_ok: bool,
}

impl TheoremBound {
    pub fn is_sharp(&self) -> bool {
        self.hypothesis_ok
    }
}

/// `0 < B₁ ≤ |B₂ + B₁²|`, shared by both classes.
pub fn t22_hypothesis(b1: f64, b2: f64) -> bool {
    b1 > 0.0 && b1 <= (b2 + b1 * b1).abs() + HYPOTHESIS_SLACK
}

/// The two-sided range on `B₂` for `T₃(1)`; returns (lower ok, upper ok).
pub fn t31_hypothesis_parts(kind: ClassKind, b1: f64, b2: f64) -> (bool, bool) {
    let b1sq = b1 * b1;
    let upper = match kind {
        ClassKind::Starlike => 3.0 * b1sq - b1,
        ClassKind::Convex => 2.0 * b1sq - b1,
    };
    (
        b1 - b1sq <= b2 + HYPOTHESIS_SLACK,
        b2 <= upper + HYPOTHESIS_SLACK,
    )
}

pub fn t31_hypothesis(kind: ClassKind, b1: f64, b2: f64) -> bool {
    let (lo, hi) = t31_hypothesis_parts(kind, b1, b2);
    b1 > 0.0 && lo && hi
}

/// Bound on `|T₂(2)| = |a₃² − a₂²|`.
pub fn t22_bound(kind: ClassKind, b1: f64, b2: f64) -> Result<TheoremBound> {
    check_b(b1, b2)?;
    let s = b2 + b1 * b1;
    let value = match kind {
        ClassKind::Starlike => s * s / 4.0 + b1 * b1,
        ClassKind::Convex => s * s / 36.0 + b1 * b1 / 4.0,
    };
    Ok(TheoremBound {
        value,
        hypothesis_ok: t22_hypothesis(b1, b2),
    })
}

/// Bound on `|T₃(1)| = |1 − 2a₂² − a₃(a₃ − 2a₂²)|`.
pub fn t31_bound(kind: ClassKind, b1: f64, b2: f64) -> Result<TheoremBound> {
    check_b(b1, b2)?;
    let b1sq = b1 * b1;
    let s = b2 + b1sq;
    let value = match kind {
        ClassKind::Starlike => 1.0 + 2.0 * b1sq + s * (3.0 * b1sq - b2) / 4.0,
        ClassKind::Convex => 1.0 + b1sq / 2.0 + s * (2.0 * b1sq - b2) / 36.0,
    };
    Ok(TheoremBound {
        value,
        hypothesis_ok: t31_hypothesis(kind, b1, b2),
    })
}

/// All closed-form bounds for one `(φ, class)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub spec: PhiSpec,
    pub kind: ClassKind,
    pub b1: f64,
    pub b2: f64,
    pub a2_bound: f64,
    pub a3_bound: f64,
    pub t22: TheoremBound,
    pub t31: TheoremBound,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn all_hypotheses_ok(&self) -> bool {
        self.t22.hypothesis_ok && self.t31.hypothesis_ok
    }
}

fn janowski_convex_t31_notes(a: f64, b: f64, ours: bool) -> Vec<String> {
    let mut notes = vec![
        "T3(1) hypothesis for convex Janowski evaluated as A - 2B >= 1 and B <= 2A - 1".to_string(),
    ];
    let alternative = a + b >= 0.0 && b <= (a - 1.0) / 2.0 + HYPOTHESIS_SLACK;
    if alternative != ours {
        notes.push(format!(
            "the condition A + B >= 0 and B <= (A - 1)/2 gives {alternative} here, \
             the B1/B2 range gives {ours}; the B1/B2 range is used"
        ));
    }
    notes
}

/// Bounds plus diagnostics naming each failed inequality.
pub fn full_report(spec: &PhiSpec, kind: ClassKind) -> Result<BoundReport> {
    let phi::LeadingCoeffs { b1, b2 } = phi::b_coeffs(spec)?;
    let t22 = t22_bound(kind, b1, b2)?;
    let t31 = t31_bound(kind, b1, b2)?;
    let mut notes = Vec::new();

    if !t22.hypothesis_ok {
        notes.push(format!(
            "T2(2): B1 <= |B2 + B1^2| fails ({b1} > {}); formula value only, \
             sharp bound open in this case (estimate only)",
            (b2 + b1 * b1).abs()
        ));
    }
    let (lo, hi) = t31_hypothesis_parts(kind, b1, b2);
    if !lo {
        notes.push(format!(
            "T3(1): B1 - B1^2 <= B2 fails ({} > {b2}); formula value only, hypothesis not satisfied",
            b1 - b1 * b1
        ));
    }
    if !hi {
        let (label, upper) = match kind {
            ClassKind::Starlike => ("3B1^2 - B1", 3.0 * b1 * b1 - b1),
            ClassKind::Convex => ("2B1^2 - B1", 2.0 * b1 * b1 - b1),
        };
        notes.push(format!(
            "T3(1): B2 <= {label} fails ({b2} > {upper}); formula value only, hypothesis not satisfied"
        ));
    }
    if let (PhiSpec::Janowski { a, b }, ClassKind::Convex) = (spec, kind) {
        notes.extend(janowski_convex_t31_notes(*a, *b, t31.hypothesis_ok));
    }

    Ok(BoundReport {
        spec: spec.clone(),
        kind,
        b1,
        b2,
        a2_bound: a2_bound(kind, b1)?,
        a3_bound: fekete_szego(kind, b1, b2, 0.0)?,
        t22,
        t31,
        notes,
    })
}
