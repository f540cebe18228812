//! Truncated formal power series with complex coefficients.
//!
//! A [`Series`] of order `N` stores the coefficients of `z^0 ..= z^N`. Every
//! binary operation requires both operands to share the same order and
//! discards anything beyond `z^N`. Quotients, square roots, exponentials and
//! logarithms are computed with the classical coefficient recurrences, so the
//! result is exact at the truncation order up to floating point rounding.

use num_complex::Complex64;
use thiserror::Error;

/// Constant terms within this distance of the required value are accepted.
pub const CONSTANT_TERM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("divisor has a zero constant term")]
    ZeroDivisor,
    #[error("inner series of a composition must vanish at 0, found constant term {0}")]
    NonZeroInner(Complex64),
    #[error("exp requires a zero constant term, found {0}")]
    ExpConstantTerm(Complex64),
    #[error("{op} requires constant term 1, found {found}")]
    ConstantTermNotOne { op: &'static str, found: Complex64 },
}

pub type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Complex64>,
}

#[allow(clippy::should_implement_trait)]
impl Series {
    /// Builds a series whose order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Series { coeffs })
    }

    /// Builds a series of the given order from leading coefficients, padding
    /// with zeros or truncating as needed.
    pub fn from_coeffs<I>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = Complex64>,
    {
        let mut c: Vec<Complex64> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, Complex64::new(0.0, 0.0));
        Series { coeffs: c }
    }

    pub fn from_real(order: usize, coeffs: &[f64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, std::iter::empty())
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        Self::from_coeffs(order, std::iter::once(c))
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The series `c·z`.
    pub fn linear(c: Complex64, order: usize) -> Self {
        Self::from_coeffs(order, [Complex64::new(0.0, 0.0), c])
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::linear(Complex64::new(1.0, 0.0), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Same series at a different order (padded or truncated).
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().copied())
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum())
            .collect();
        Series { coeffs }
    }

    /// Multiplication by `z`, dropping the top coefficient.
    pub fn shift_up(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Series { coeffs }
    }

    /// Quotient `self / divisor` by forward substitution.
    pub fn div(&self, divisor: &Series) -> Result<Series> {
        self.check_order(divisor)?;
        let b0 = divisor.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(SeriesError::ZeroDivisor);
        }
        let n = self.order();
        let mut q: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let acc: Complex64 = (1..=k).map(|i| divisor.coeffs[i] * q[k - i]).sum();
            q.push((self.coeffs[k] - acc) / b0);
        }
        Ok(Series { coeffs: q })
    }

    /// `outer ∘ inner` via Horner accumulation; `inner` must vanish at 0.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_order(inner)?;
        let c0 = inner.coeffs[0];
        if c0.norm() > CONSTANT_TERM_TOL {
            return Err(SeriesError::NonZeroInner(c0));
        }
        let mut inner = inner.clone();
        inner.coeffs[0] = Complex64::new(0.0, 0.0);

        let n = self.order();
        let mut acc = Series::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul_unchecked(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Termwise derivative, zero-padded back to the same order.
    pub fn derive(&self) -> Series {
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                if k < n {
                    self.coeffs[k + 1] * (k + 1) as f64
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Series { coeffs }
    }

    fn check_unit_constant(&self, op: &'static str) -> Result<()> {
        let c0 = self.coeffs[0];
        if (c0 - 1.0).norm() > CONSTANT_TERM_TOL {
            return Err(SeriesError::ConstantTermNotOne { op, found: c0 });
        }
        Ok(())
    }

    /// Principal square root of a series with constant term 1.
    pub fn sqrt1p(&self) -> Result<Series> {
        self.check_unit_constant("sqrt1p")?;
        let n = self.order();
        let mut s = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=n {
            let cross: Complex64 = (1..k).map(|i| s[i] * s[k - i]).sum();
            s.push((self.coeffs[k] - cross) / 2.0);
        }
        Ok(Series { coeffs: s })
    }

    /// Formal exponential, from `e' = a'·e`.
    pub fn exp(&self) -> Result<Series> {
        let c0 = self.coeffs[0];
        if c0.norm() > CONSTANT_TERM_TOL {
            return Err(SeriesError::ExpConstantTerm(c0));
        }
        let n = self.order();
        let mut e = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=n {
            let acc: Complex64 = (1..=k).map(|i| self.coeffs[i] * i as f64 * e[k - i]).sum();
            e.push(acc / k as f64);
        }
        Ok(Series { coeffs: e })
    }

    /// Formal logarithm of a series with constant term 1, from `a·l' = a'`.
    pub fn log(&self) -> Result<Series> {
        self.check_unit_constant("log")?;
        let n = self.order();
        let mut l = vec![Complex64::new(0.0, 0.0)];
        for k in 1..=n {
            let acc: Complex64 = (1..k).map(|i| l[i] * i as f64 * self.coeffs[k - i]).sum();
            l.push((self.coeffs[k] * k as f64 - acc) / k as f64);
        }
        Ok(Series { coeffs: l })
    }

    /// Horner evaluation of the truncated polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance; orders must agree.
    pub fn max_abs_diff(&self, other: &Series) -> Result<f64> {
        Ok(self.sub(other)?.max_norm())
    }
}
