//! Extremal functions `K_φ` and `H_φ`.
//!
//! `K_φ` solves `zK'/K = φ(iz)` and `H_φ` solves `1 + zH''/H' = φ(iz)`, both
//! normalised by `f(0) = f'(0) − 1 = 0`. They are built coefficient by
//! coefficient from the rotated series `ψ(z) = φ(iz)` and witness the
//! sharpness of the `T₂(2)` and `T₃(1)` bounds.

use num_complex::Complex64;
use thiserror::Error;

use crate::bounds::ClassKind;
use crate::phi::{self, PhiError, PhiSpec};
use crate::series::{Series, SeriesError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error("truncation order must be at least 3, got {0}")]
    OrderTooLow(usize),
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, ExtremalError>;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalFunction {
    pub kind: ClassKind,
    /// `coeffs[n] = aₙ` for `n = 0..=order`, with `a₀ = 0`, `a₁ = 1`.
    pub coeffs: Vec<Complex64>,
    /// `ψ(z) = φ(iz)`.
    pub psi: Series,
    /// `a₃² − a₂²`.
    pub t22_value: Complex64,
    /// `1 − 2a₂² − a₃(a₃ − 2a₂²)`.
    pub t31_value: Complex64,
}

impl ExtremalFunction {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn a2(&self) -> Complex64 {
        self.coeffs[2]
    }

    pub fn a3(&self) -> Complex64 {
        self.coeffs[3]
    }

    pub fn as_series(&self) -> Series {
        Series::from_coeffs(self.order(), self.coeffs.iter().copied())
    }
}

/// `T₂(2) = a₃² − a₂²`.
pub fn toeplitz_t22(a2: Complex64, a3: Complex64) -> Complex64 {
    a3 * a3 - a2 * a2
}

/// `T₃(1) = 1 − 2a₂² − a₃(a₃ − 2a₂²)`.
pub fn toeplitz_t31(a2: Complex64, a3: Complex64) -> Complex64 {
    let a2sq = a2 * a2;
    Complex64::new(1.0, 0.0) - a2sq * 2.0 - a3 * (a3 - a2sq * 2.0)
}

fn rotated_phi(spec: &PhiSpec, order: usize) -> Result<Series> {
    if order < 3 {
        return Err(ExtremalError::OrderTooLow(order));
    }
    let phi = phi::phi_series(spec, order)?;
    let rot = Series::linear(Complex64::new(0.0, 1.0), order);
    Ok(phi.compose(&rot)?)
}

fn finish(kind: ClassKind, coeffs: Vec<Complex64>, psi: Series) -> ExtremalFunction {
    let (a2, a3) = (coeffs[2], coeffs[3]);
    ExtremalFunction {
        kind,
        coeffs,
        psi,
        t22_value: toeplitz_t22(a2, a3),
        t31_value: toeplitz_t31(a2, a3),
    }
}

/// Starlike extremal `K_φ`: `(n − 1)aₙ = Σ_{k=1}^{n−1} a_k ψ_{n−k}`.
pub fn k_phi(spec: &PhiSpec, order: usize) -> Result<ExtremalFunction> {
    let psi = rotated_phi(spec, order)?;
    let mut a = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    for n in 2..=order {
        let acc: Complex64 = (1..n).map(|k| a[k] * psi.coeff(n - k)).sum();
        a.push(acc / (n - 1) as f64);
    }
    Ok(finish(ClassKind::Starlike, a, psi))
}

/// Convex extremal `H_φ`, through `g = H'`:
/// `m·g_m = Σ_{k=0}^{m−1} g_k ψ_{m−k}` and `a_{m+1} = g_m/(m + 1)`.
pub fn h_phi(spec: &PhiSpec, order: usize) -> Result<ExtremalFunction> {
    let psi = rotated_phi(spec, order)?;
    let mut g = vec![Complex64::new(1.0, 0.0)];
    for m in 1..order {
        let acc: Complex64 = (0..m).map(|k| g[k] * psi.coeff(m - k)).sum();
        g.push(acc / m as f64);
    }
    let mut a = vec![Complex64::new(0.0, 0.0)];
    a.extend(g.iter().enumerate().map(|(m, gm)| gm / (m + 1) as f64));
    Ok(finish(ClassKind::Convex, a, psi))
}

pub fn extremal(spec: &PhiSpec, kind: ClassKind, order: usize) -> Result<ExtremalFunction> {
    match kind {
        ClassKind::Starlike => k_phi(spec, order),
        ClassKind::Convex => h_phi(spec, order),
    }
}

/// Largest coefficient of `zK' − K·ψ` (starlike) or `zH'' − H'·(ψ − 1)`
/// (convex) over the indices fixed by the stored coefficients.
///
/// The convex identity at `z^N` would need `a_{N+1}`, so it is checked up to
/// `z^{N−1}` only.
pub fn residual(ef: &ExtremalFunction, spec: &PhiSpec) -> Result<f64> {
    let order = ef.order();
    let psi = rotated_phi(spec, order)?;
    let f = ef.as_series();
    let diff = match ef.kind {
        ClassKind::Starlike => {
            let lhs = f.derive().shift_up();
            let rhs = f.mul(&psi)?;
            lhs.sub(&rhs)?
        }
        ClassKind::Convex => {
            let d1 = f.derive();
            let lhs = d1.derive().shift_up();
            let rhs = d1.mul(&psi.sub(&Series::one(order))?)?;
            lhs.sub(&rhs)?.with_order(order - 1)
        }
    };
    Ok(diff.max_norm())
}
