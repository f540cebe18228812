//! Catalog of Ma-Minda target functions `φ` and their Taylor coefficients.
//!
//! Each catalog entry is expanded through [`Series`] operations so that the
//! closed-form leading coefficients double as a check on the series kernel.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::series::{Series, SeriesError};

/// Imaginary parts of catalog coefficients must stay below this.
pub const REAL_COEFF_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhiError {
    #[error("inadmissible φ: {0}")]
    Inadmissible(Admissibility),
    #[error("coefficient {name} is not real (imaginary part {im:e})")]
    NonReal { name: &'static str, im: f64 },
    #[error("{name} = {got} disagrees with the closed form {expected}")]
    ClosedFormMismatch {
        name: &'static str,
        got: f64,
        expected: f64,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A Ma-Minda function `φ(z) = 1 + B₁z + B₂z² + …`.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiSpec {
    /// `(1 + Az)/(1 + Bz)`, `-1 ≤ B < A ≤ 1`.
    Janowski { a: f64, b: f64 },
    /// Order `α`: Janowski with `A = 1 - 2α`, `B = -1`.
    OrderAlpha { alpha: f64 },
    /// `α + (1 - α)e^z`.
    Exponential { alpha: f64 },
    /// `1 + (4/3)z + (2/3)z²`.
    Cardioid,
    /// `1 + sin z`.
    Sine,
    /// `z + √(1 + z²)`.
    Lune,
    /// `1 + (2/π²)(log((1+√z)/(1-√z)))²`.
    Parabolic,
    /// `1 + √2 z + z²/2`.
    Limacon,
    /// `1 + z - z³/3`.
    Nephroid,
    /// Arbitrary series, taken as given.
    Custom(Series),
}

impl PhiSpec {
    /// Custom `φ = 1 + b1·z + b2·z²`.
    pub fn custom(b1: f64, b2: f64) -> Self {
        PhiSpec::Custom(Series::from_real(2, &[1.0, b1, b2]))
    }

    /// The catalog entries with default parameters, in table order.
    pub fn catalog() -> Vec<PhiSpec> {
        vec![
            PhiSpec::Janowski { a: 1.0, b: -1.0 },
            PhiSpec::Exponential { alpha: 0.0 },
            PhiSpec::Cardioid,
            PhiSpec::Sine,
            PhiSpec::Lune,
            PhiSpec::Parabolic,
            PhiSpec::Limacon,
            PhiSpec::Nephroid,
        ]
    }

    /// Short class name as used on the command line.
    pub fn class_name(&self) -> &'static str {
        match self {
            PhiSpec::Janowski { .. } => "janowski",
            PhiSpec::OrderAlpha { .. } => "order-alpha",
            PhiSpec::Exponential { .. } => "exp",
            PhiSpec::Cardioid => "cardioid",
            PhiSpec::Sine => "sine",
            PhiSpec::Lune => "lune",
            PhiSpec::Parabolic => "parabolic",
            PhiSpec::Limacon => "limacon",
            PhiSpec::Nephroid => "nephroid",
            PhiSpec::Custom(_) => "custom",
        }
    }

    /// Named real parameters, sorted by name.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self {
            PhiSpec::Janowski { a, b } => vec![("A", *a), ("B", *b)],
            PhiSpec::OrderAlpha { alpha } | PhiSpec::Exponential { alpha } => {
                vec![("alpha", *alpha)]
            }
            PhiSpec::Custom(s) => vec![("b1", s.coeff(1).re), ("b2", s.coeff(2).re)],
            _ => vec![],
        }
    }

    fn janowski_params(&self) -> Option<(f64, f64)> {
        match *self {
            PhiSpec::Janowski { a, b } => Some((a, b)),
            PhiSpec::OrderAlpha { alpha } => Some((1.0 - 2.0 * alpha, -1.0)),
            _ => None,
        }
    }

    /// Hard-coded `(B₁, B₂)` for catalog kinds.
    pub fn closed_form_b(&self) -> Option<(f64, f64)> {
        if let Some((a, b)) = self.janowski_params() {
            return Some((a - b, -b * (a - b)));
        }
        let pi2 = PI * PI;
        match *self {
            PhiSpec::Exponential { alpha } => Some((1.0 - alpha, (1.0 - alpha) / 2.0)),
            PhiSpec::Cardioid => Some((4.0 / 3.0, 2.0 / 3.0)),
            PhiSpec::Sine | PhiSpec::Nephroid => Some((1.0, 0.0)),
            PhiSpec::Lune => Some((1.0, 0.5)),
            PhiSpec::Parabolic => Some((8.0 / pi2, 16.0 / (3.0 * pi2))),
            PhiSpec::Limacon => Some((SQRT_2, 0.5)),
            _ => None,
        }
    }
}

impl fmt::Display for PhiSpec {
    /// Comma-free label, safe as a CSV field.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            return f.write_str(self.class_name());
        }
        let body: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}[{}]", self.class_name(), body.join(";"))
    }
}

/// A failed admissibility constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFiniteParameter,
    JanowskiOrder,
    JanowskiLower,
    JanowskiUpper,
    AlphaRange,
    PhiAtZero,
    NonPositiveB1,
    NonRealB1,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::NonFiniteParameter => "parameters must be finite",
            Violation::JanowskiOrder => "B < A required",
            Violation::JanowskiLower => "-1 <= B required",
            Violation::JanowskiUpper => "A <= 1 required",
            Violation::AlphaRange => "0 <= alpha < 1 required",
            Violation::PhiAtZero => "phi(0) = 1 required",
            Violation::NonPositiveB1 => "B1 > 0 required",
            Violation::NonRealB1 => "B1 must be real",
        })
    }
}

/// Outcome of [`validate`]; admissible iff no violations were found.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Admissibility {
    pub violations: Vec<Violation>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("admissible");
        }
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&msgs.join("; "))
    }
}

fn parameter_violations(spec: &PhiSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if spec.params().iter().any(|(_, v)| !v.is_finite()) {
        out.push(Violation::NonFiniteParameter);
        return out;
    }
    match *spec {
        PhiSpec::Janowski { a, b } => {
            if b >= a {
                out.push(Violation::JanowskiOrder);
            }
            if b < -1.0 {
                out.push(Violation::JanowskiLower);
            }
            if a > 1.0 {
                out.push(Violation::JanowskiUpper);
            }
        }
        PhiSpec::OrderAlpha { alpha } | PhiSpec::Exponential { alpha }
            if !(0.0..1.0).contains(&alpha) =>
        {
            out.push(Violation::AlphaRange);
        }
        _ => {}
    }
    out
}

/// Checks parameter ranges, `φ(0) = 1` and `B₁ > 0`.
pub fn validate(spec: &PhiSpec) -> Admissibility {
    let mut violations = parameter_violations(spec);
    if violations.is_empty() {
        // parameters are in range, so the expansion itself cannot fail
        if let Ok(s) = expand(spec, 2) {
            let c0 = s.coeff(0);
            if (c0 - 1.0).norm() > REAL_COEFF_TOL {
                violations.push(Violation::PhiAtZero);
            }
            let b1 = s.coeff(1);
            if b1.im.abs() > REAL_COEFF_TOL {
                violations.push(Violation::NonRealB1);
            } else if b1.re <= 0.0 {
                violations.push(Violation::NonPositiveB1);
            }
        }
    }
    Admissibility { violations }
}

fn expand(spec: &PhiSpec, order: usize) -> Result<Series, SeriesError> {
    let one = Series::one(order);
    if let Some((a, b)) = spec.janowski_params() {
        let num = Series::from_real(order, &[1.0, a]);
        let den = Series::from_real(order, &[1.0, b]);
        return num.div(&den);
    }
    let s = match spec {
        PhiSpec::Exponential { alpha } => {
            let e = Series::identity(order).exp()?;
            e.scale(Complex64::new(1.0 - alpha, 0.0))
                .add(&Series::constant(Complex64::new(*alpha, 0.0), order))?
        }
        PhiSpec::Cardioid => Series::from_real(order, &[1.0, 4.0 / 3.0, 2.0 / 3.0]),
        PhiSpec::Sine => {
            let mut c = vec![1.0];
            let mut fact = 1.0;
            for k in 1..=order {
                fact *= k as f64;
                c.push(match k % 4 {
                    1 => 1.0 / fact,
                    3 => -1.0 / fact,
                    _ => 0.0,
                });
            }
            Series::from_real(order, &c)
        }
        PhiSpec::Lune => {
            let z2 = Series::from_real(order, &[1.0, 0.0, 1.0]);
            z2.sqrt1p()?.add(&Series::identity(order))?
        }
        PhiSpec::Parabolic => {
            // (log((1+t)/(1-t)))² = (2 artanh t)² = 4 z u(z)², t = √z,
            // with u(z) = Σ z^j/(2j+1)
            let u = Series::from_coeffs(
                order,
                (0..=order).map(|j| Complex64::new(1.0 / (2 * j + 1) as f64, 0.0)),
            );
            let sq = u.mul(&u)?.shift_up();
            sq.scale(Complex64::new(8.0 / (PI * PI), 0.0)).add(&one)?
        }
        PhiSpec::Limacon => Series::from_real(order, &[1.0, SQRT_2, 0.5]),
        PhiSpec::Nephroid => Series::from_real(order, &[1.0, 1.0, 0.0, -1.0 / 3.0]),
        PhiSpec::Custom(s) => s.with_order(order),
        PhiSpec::Janowski { .. } | PhiSpec::OrderAlpha { .. } => unreachable!(),
    };
    Ok(s)
}

/// Taylor expansion of `φ` to the given order.
pub fn phi_series(spec: &PhiSpec, order: usize) -> Result<Series, PhiError> {
    let verdict = validate(spec);
    if !verdict.is_admissible() {
        return Err(PhiError::Inadmissible(verdict));
    }
    Ok(expand(spec, order)?)
}

/// Leading coefficients `(B₁, B₂)` of an admissible `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingCoeffs {
    pub b1: f64,
    pub b2: f64,
}

/// `(B₁, B₂)` read off the expansion, cross-checked against the closed forms
/// for catalog kinds. Fails when either coefficient is not real.
pub fn b_coeffs(spec: &PhiSpec) -> Result<LeadingCoeffs, PhiError> {
    let s = phi_series(spec, 3)?;
    let (b1, b2) = (s.coeff(1), s.coeff(2));
    if b1.im.abs() > REAL_COEFF_TOL {
        return Err(PhiError::NonReal {
            name: "B1",
            im: b1.im,
        });
    }
    if b2.im.abs() > REAL_COEFF_TOL {
        return Err(PhiError::NonReal {
            name: "B2",
            im: b2.im,
        });
    }
    if let Some((e1, e2)) = spec.closed_form_b() {
        for (name, got, expected) in [("B1", b1.re, e1), ("B2", b2.re, e2)] {
            if (got - expected).abs() > REAL_COEFF_TOL {
                return Err(PhiError::ClosedFormMismatch {
                    name,
                    got,
                    expected,
                });
            }
        }
    }
    Ok(LeadingCoeffs {
        b1: b1.re,
        b2: b2.re,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_coeffs(s: &Series, expected: &[f64]) {
        for (k, e) in expected.iter().enumerate() {
            let got = s.coeff(k);
            assert!(
                (got.re - e).abs() < 1e-12 && got.im.abs() < 1e-12,
                "coefficient {k}: {got} vs {e}"
            );
        }
    }

    #[test]
    fn phi_series_examples() {
        let s = phi_series(&PhiSpec::Janowski { a: 1.0, b: -1.0 }, 3).unwrap();
        assert_coeffs(&s, &[1.0, 2.0, 2.0, 2.0]);

        let s = phi_series(&PhiSpec::Cardioid, 3).unwrap();
        assert_coeffs(&s, &[1.0, 4.0 / 3.0, 2.0 / 3.0, 0.0]);

        let s = phi_series(&PhiSpec::Sine, 5).unwrap();
        assert_coeffs(&s, &[1.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0]);
    }

    #[test]
    fn janowski_third_coefficient() {
        let (a, b) = (0.6, -0.3);
        let s = phi_series(&PhiSpec::Janowski { a, b }, 3).unwrap();
        assert_coeffs(&s, &[1.0, a - b, b * (b - a), b * b * (a - b)]);
    }

    #[test]
    fn exponential_and_lune_expansions() {
        let alpha = 0.25;
        let s = phi_series(&PhiSpec::Exponential { alpha }, 3).unwrap();
        let k = 1.0 - alpha;
        assert_coeffs(&s, &[1.0, k, k / 2.0, k / 6.0]);

        let s = phi_series(&PhiSpec::Lune, 4).unwrap();
        assert_coeffs(&s, &[1.0, 1.0, 0.5, 0.0, -0.125]);
    }

    #[test]
    fn parabolic_checkpoints() {
        let s = phi_series(&PhiSpec::Parabolic, 3).unwrap();
        let pi2 = PI * PI;
        assert_coeffs(
            &s,
            &[1.0, 8.0 / pi2, 16.0 / (3.0 * pi2), 184.0 / (45.0 * pi2)],
        );
    }

    #[test]
    fn b_coeffs_examples() {
        let b = b_coeffs(&PhiSpec::Exponential { alpha: 0.0 }).unwrap();
        assert_eq!((b.b1, b.b2), (1.0, 0.5));

        let b = b_coeffs(&PhiSpec::Limacon).unwrap();
        assert!((b.b1 - SQRT_2).abs() < 1e-15 && (b.b2 - 0.5).abs() < 1e-15);

        let b = b_coeffs(&PhiSpec::Parabolic).unwrap();
        assert!((b.b1 - 0.81057).abs() < 1e-5);
        assert!((b.b2 - 0.54038).abs() < 1e-5);
    }

    #[test]
    fn b_coeffs_rejects_complex_b2() {
        let s = Series::from_coeffs(
            2,
            [
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, 0.2),
            ],
        );
        let err = b_coeffs(&PhiSpec::Custom(s)).unwrap_err();
        assert!(matches!(err, PhiError::NonReal { name: "B2", .. }));
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&PhiSpec::Janowski { a: 0.5, b: -0.5 }).is_admissible());

        let v = validate(&PhiSpec::Janowski { a: 0.2, b: 0.8 });
        assert!(v.violations.contains(&Violation::JanowskiOrder));
        assert!(v.to_string().contains("B < A required"));

        let v = validate(&PhiSpec::custom(0.0, 0.3));
        assert_eq!(v.violations, vec![Violation::NonPositiveB1]);
        assert!(v.to_string().contains("B1 > 0"));
    }

    #[test]
    fn validate_parameter_ranges() {
        assert!(!validate(&PhiSpec::Janowski { a: 1.5, b: 0.0 }).is_admissible());
        assert!(!validate(&PhiSpec::Janowski { a: 0.5, b: -1.5 }).is_admissible());
        assert!(!validate(&PhiSpec::Exponential { alpha: 1.0 }).is_admissible());
        assert!(!validate(&PhiSpec::OrderAlpha { alpha: -0.1 }).is_admissible());
        assert!(validate(&PhiSpec::OrderAlpha { alpha: 0.0 }).is_admissible());
        assert!(!validate(&PhiSpec::Exponential { alpha: f64::NAN }).is_admissible());

        let off = Series::from_real(2, &[2.0, 1.0, 0.0]);
        let v = validate(&PhiSpec::Custom(off));
        assert_eq!(v.violations, vec![Violation::PhiAtZero]);

        let rot = Series::from_coeffs(2, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
        assert_eq!(
            validate(&PhiSpec::Custom(rot)).violations,
            vec![Violation::NonRealB1]
        );
    }

    #[test]
    fn phi_series_rejects_inadmissible() {
        let err = phi_series(&PhiSpec::Janowski { a: 0.2, b: 0.8 }, 3).unwrap_err();
        assert!(matches!(err, PhiError::Inadmissible(_)));
    }

    #[test]
    fn order_alpha_is_janowski() {
        for alpha in [0.0, 0.25, 0.5, 0.75] {
            let x = phi_series(&PhiSpec::OrderAlpha { alpha }, 10).unwrap();
            let y = phi_series(
                &PhiSpec::Janowski {
                    a: 1.0 - 2.0 * alpha,
                    b: -1.0,
                },
                10,
            )
            .unwrap();
            assert!(x.max_abs_diff(&y).unwrap() < 1e-12);
        }
    }

    #[test]
    fn catalog_closed_forms_agree_on_parameter_samples() {
        let mut specs = PhiSpec::catalog();
        for i in 0..=8 {
            let t = i as f64 / 8.0;
            specs.push(PhiSpec::Exponential { alpha: 0.99 * t });
            specs.push(PhiSpec::OrderAlpha { alpha: 0.99 * t });
            specs.push(PhiSpec::Janowski {
                a: 1.0 - t,
                b: -1.0 + 0.9 * t * (1.0 - t),
            });
        }
        for spec in specs {
            let b = b_coeffs(&spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
            let (e1, e2) = spec.closed_form_b().unwrap();
            assert!(
                (b.b1 - e1).abs() < 1e-12 && (b.b2 - e2).abs() < 1e-12,
                "{spec}"
            );
        }
    }

    #[test]
    fn labels_are_comma_free() {
        assert_eq!(
            PhiSpec::Janowski { a: 1.0, b: -1.0 }.to_string(),
            "janowski[A=1;B=-1]"
        );
        assert_eq!(PhiSpec::Sine.to_string(), "sine");
        assert_eq!(
            PhiSpec::custom(1.0, -0.9).to_string(),
            "custom[b1=1;b2=-0.9]"
        );
    }
}
