//! Brute-force verifier for the closed-form bounds.
//!
//! For `f` in `S*(φ)` or `K(φ)` the coefficients `a₂, a₃` depend only on the
//! first two coefficients `(w₁, w₂)` of the Schwarz function in `φ(w(z))`,
//! and the attainable pairs are exactly `|w₁| ≤ 1, |w₂| ≤ 1 − |w₁|²`. So the
//! supremum of any functional of `(a₂, a₃)` over the whole class is a
//! maximum over that compact four-dimensional region, which this module
//! estimates by seeded sampling followed by coordinate-ascent polish.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::ClassKind;
use crate::extremal::{toeplitz_t22, toeplitz_t31};

/// Points within this distance outside the region are still accepted.
pub const REGION_TOL: f64 = 1e-12;

/// Number of independent sampling shards; fixed so results do not depend on
/// the thread count.
pub const SHARDS: usize = 16;

/// Number of best samples that seed the local polish.
pub const POLISH_STARTS: usize = 16;

const INITIAL_STEP: f64 = 0.25;
const MAX_SWEEPS_PER_STEP: usize = 64;
const POLISH_TARGET: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("point (w1 = {w1}, w2 = {w2}) lies outside |w1| <= 1, |w2| <= 1 - |w1|^2")]
    OutsideRegion { w1: Complex64, w2: Complex64 },
    #[error("the sample budget must be at least 1")]
    EmptyBudget,
    #[error("B1 must be positive and finite, got {0}")]
    NonPositiveB1(f64),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// First two Taylor coefficients of a Schwarz function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzPoint {
    pub w1: Complex64,
    pub w2: Complex64,
}

impl SchwarzPoint {
    pub fn new(w1: Complex64, w2: Complex64) -> Result<Self> {
        let p = SchwarzPoint { w1, w2 };
        if p.in_region() {
            Ok(p)
        } else {
            Err(OracleError::OutsideRegion { w1, w2 })
        }
    }

    pub fn in_region(&self) -> bool {
        let r1 = self.w1.norm();
        r1 <= 1.0 + REGION_TOL && self.w2.norm() <= 1.0 - r1 * r1 + REGION_TOL
    }

    /// Radial projection onto the region: first `w₁`, then `w₂`.
    pub fn project(w1: Complex64, w2: Complex64) -> Self {
        let r1 = w1.norm();
        let w1 = if r1 > 1.0 { w1 / r1 } else { w1 };
        let cap = (1.0 - w1.norm_sqr()).max(0.0);
        let r2 = w2.norm();
        let w2 = if r2 > cap { w2 * (cap / r2) } else { w2 };
        SchwarzPoint { w1, w2 }
    }

    /// Polish coordinates `(Re w₁, Im w₁, Re v, Im v)` with `w₂ = (1 − |w₁|²)v`,
    /// so that `w₂` keeps its relative radius while `w₁` moves.
    fn from_coords(x: [f64; 4]) -> Self {
        let mut w1 = Complex64::new(x[0], x[1]);
        if w1.norm() > 1.0 {
            w1 /= w1.norm();
        }
        let mut v = Complex64::new(x[2], x[3]);
        if v.norm() > 1.0 {
            v /= v.norm();
        }
        let cap = (1.0 - w1.norm_sqr()).max(0.0);
        SchwarzPoint { w1, w2: v * cap }
    }

    fn coords(&self) -> [f64; 4] {
        let cap = 1.0 - self.w1.norm_sqr();
        let v = if cap > 0.0 {
            self.w2 / cap
        } else {
            Complex64::new(0.0, 0.0)
        };
        let v = if v.norm() > 1.0 { v / v.norm() } else { v };
        [self.w1.re, self.w1.im, v.re, v.im]
    }
}

/// Coefficients of `p = (1 + w)/(1 − w) = 1 + c₁z + c₂z² + …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaratheodoryPoint {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl From<SchwarzPoint> for CaratheodoryPoint {
    fn from(p: SchwarzPoint) -> Self {
        CaratheodoryPoint {
            c1: p.w1 * 2.0,
            c2: (p.w2 + p.w1 * p.w1) * 2.0,
        }
    }
}

fn check_region(p: &SchwarzPoint) -> Result<()> {
    if p.in_region() {
        Ok(())
    } else {
        Err(OracleError::OutsideRegion { w1: p.w1, w2: p.w2 })
    }
}

fn coeffs_unchecked(kind: ClassKind, b1: f64, b2: f64, p: &SchwarzPoint) -> (Complex64, Complex64) {
    let quad = p.w1 * p.w1 * (b1 * b1 + b2) + p.w2 * b1;
    match kind {
        ClassKind::Starlike => (p.w1 * b1, quad / 2.0),
        ClassKind::Convex => (p.w1 * (b1 / 2.0), quad / 6.0),
    }
}

/// `(a₂, a₃)` of the class member driven by a Schwarz function starting
/// `w₁z + w₂z² + …`.
pub fn a2a3_from_schwarz(
    kind: ClassKind,
    b1: f64,
    b2: f64,
    p: &SchwarzPoint,
) -> Result<(Complex64, Complex64)> {
    check_region(p)?;
    Ok(coeffs_unchecked(kind, b1, b2, p))
}

/// The same coefficients through the Carathéodory parametrisation.
pub fn a2a3_from_caratheodory(
    kind: ClassKind,
    b1: f64,
    b2: f64,
    c: &CaratheodoryPoint,
) -> (Complex64, Complex64) {
    let quad = c.c1 * c.c1 * (b1 * b1 - b1 + b2) + c.c2 * (2.0 * b1);
    match kind {
        ClassKind::Starlike => (c.c1 * (b1 / 2.0), quad / 8.0),
        ClassKind::Convex => (c.c1 * (b1 / 4.0), quad / 24.0),
    }
}

/// Largest discrepancy between the Schwarz and Carathéodory routes.
pub fn caratheodory_crosscheck(kind: ClassKind, b1: f64, b2: f64, p: &SchwarzPoint) -> f64 {
    let (a2, a3) = coeffs_unchecked(kind, b1, b2, p);
    let (c2, c3) = a2a3_from_caratheodory(kind, b1, b2, &CaratheodoryPoint::from(*p));
    (a2 - c2).norm().max((a3 - c3).norm())
}

/// A modulus functional of `(a₂, a₃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Functional {
    T22,
    T31,
    /// `|a₃ − μa₂²|`.
    FeketeSzego(f64),
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::T22 => f.write_str("t22"),
            Functional::T31 => f.write_str("t31"),
            Functional::FeketeSzego(mu) => write!(f, "fs(mu={mu})"),
        }
    }
}

/// Modulus of the functional at `(a₂, a₃)`, in full complex arithmetic.
pub fn eval_functional(functional: Functional, a2: Complex64, a3: Complex64) -> f64 {
    match functional {
        Functional::T22 => toeplitz_t22(a2, a3).norm(),
        Functional::T31 => toeplitz_t31(a2, a3).norm(),
        Functional::FeketeSzego(mu) => (a3 - a2 * a2 * mu).norm(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub samples: usize,
    pub seed: u64,
    pub polish_steps: usize,
    /// Acceptance tolerance used by callers comparing against a bound.
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            samples: 200_000,
            seed: 7,
            polish_steps: 40,
            tol: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub functional: Functional,
    pub sup_estimate: f64,
    pub argmax: SchwarzPoint,
    pub samples: usize,
    pub seed: u64,
    pub polish_steps: usize,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    point: SchwarzPoint,
    // (shard, index) breaks ties deterministically
    rank: (usize, usize),
}

fn better(a: &Candidate, b: &Candidate) -> Ordering {
    b.value
        .total_cmp(&a.value)
        .then_with(|| a.rank.cmp(&b.rank))
}

struct Objective {
    kind: ClassKind,
    b1: f64,
    b2: f64,
    functional: Functional,
}

impl Objective {
    fn eval(&self, p: &SchwarzPoint) -> f64 {
        let (a2, a3) = coeffs_unchecked(self.kind, self.b1, self.b2, p);
        eval_functional(self.functional, a2, a3)
    }
}

/// Distinguished points: the rotations `w = ±iz, ±z` and `w = εz²` for
/// the four unit `ε`.
pub fn distinguished_points() -> Vec<SchwarzPoint> {
    let units = [
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
    ];
    let zero = Complex64::new(0.0, 0.0);
    units
        .iter()
        .map(|&u| SchwarzPoint { w1: u, w2: zero })
        .chain(units.iter().map(|&u| SchwarzPoint { w1: zero, w2: u }))
        .collect()
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Sample `i` of a shard: even indices sit on `|w₁| = 1` (so `w₂ = 0`);
/// odd ones take `w₁` uniform in the disk and `w₂` either on the circle
/// `|w₂| = 1 − |w₁|²` or uniform inside it.
fn draw(rng: &mut ChaCha8Rng, i: usize) -> SchwarzPoint {
    let tau = std::f64::consts::TAU;
    if i.is_multiple_of(2) {
        return SchwarzPoint {
            w1: unit(tau * rng.random::<f64>()),
            w2: Complex64::new(0.0, 0.0),
        };
    }
    let r1 = rng.random::<f64>().sqrt();
    let w1 = unit(tau * rng.random::<f64>()) * r1;
    let cap = 1.0 - r1 * r1;
    let on_edge = rng.random::<bool>();
    let r2 = if on_edge {
        cap
    } else {
        cap * rng.random::<f64>().sqrt()
    };
    let w2 = unit(tau * rng.random::<f64>()) * r2;
    SchwarzPoint { w1, w2 }
}

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

fn keep_top(pool: &mut Vec<Candidate>, c: Candidate) {
    if pool.len() < POLISH_STARTS {
        pool.push(c);
        pool.sort_by(better);
    } else if better(&c, pool.last().unwrap()) == Ordering::Less {
        pool.pop();
        pool.push(c);
        pool.sort_by(better);
    }
}

fn run_shard(obj: &Objective, seed: u64, shard: usize, count: usize) -> Vec<Candidate> {
    let mut rng = shard_rng(seed, shard);
    let mut top = Vec::with_capacity(POLISH_STARTS + 1);
    for i in 0..count {
        let point = draw(&mut rng, i);
        let value = obj.eval(&point);
        keep_top(
            &mut top,
            Candidate {
                value,
                point,
                rank: (shard + 1, i),
            },
        );
    }
    top
}

/// Derivative-free coordinate ascent on `w₁` and the scaled `w₂` (see
/// [`SchwarzPoint::from_coords`]) with projection back into the region and a
/// step halved `steps` times.
fn polish(obj: &Objective, start: Candidate, steps: usize) -> Candidate {
    let mut best = start;
    let mut x = start.point.coords();
    let mut step = INITIAL_STEP;
    for _ in 0..steps {
        let before = best.value;
        for _ in 0..MAX_SWEEPS_PER_STEP {
            let mut moved = false;
            for axis in 0..4 {
                for dir in [1.0, -1.0] {
                    let mut y = x;
                    y[axis] += dir * step;
                    let point = SchwarzPoint::from_coords(y);
                    let value = obj.eval(&point);
                    if value > best.value {
                        best = Candidate {
                            value,
                            point,
                            ..best
                        };
                        x = point.coords();
                        moved = true;
                        break;
                    }
                }
            }
            if !moved {
                break;
            }
        }
        if step < POLISH_TARGET && best.value - before < POLISH_TARGET * 1e-3 {
            break;
        }
        step *= 0.5;
    }
    best
}

/// Estimates the supremum of `functional` over the class `(kind, φ)`.
///
/// Deterministic for a fixed `config`: shards use independent ChaCha
/// streams of the master seed and are reduced by maximum with index
/// tie-breaking.
pub fn maximize(
    kind: ClassKind,
    b1: f64,
    b2: f64,
    functional: Functional,
    config: &OracleConfig,
) -> Result<OracleResult> {
    if config.samples == 0 {
        return Err(OracleError::EmptyBudget);
    }
    if !(b1.is_finite() && b1 > 0.0) {
        return Err(OracleError::NonPositiveB1(b1));
    }
    let obj = Objective {
        kind,
        b1,
        b2,
        functional,
    };

    let per_shard = config.samples / SHARDS;
    let extra = config.samples % SHARDS;
    let shard_tops: Vec<Vec<Candidate>> = (0..SHARDS)
        .into_par_iter()
        .map(|s| run_shard(&obj, config.seed, s, per_shard + usize::from(s < extra)))
        .collect();

    let mut pool: Vec<Candidate> = distinguished_points()
        .into_iter()
        .enumerate()
        .map(|(i, point)| Candidate {
            value: obj.eval(&point),
            point,
            rank: (0, i),
        })
        .collect();
    pool.extend(shard_tops.into_iter().flatten());
    pool.sort_by(better);
    pool.truncate(POLISH_STARTS);

    let polished: Vec<Candidate> = pool
        .par_iter()
        .map(|&c| polish(&obj, c, config.polish_steps))
        .collect();

    let best = pool
        .iter()
        .chain(&polished)
        .copied()
        .min_by(better)
        .expect("candidate pool is never empty");

    Ok(OracleResult {
        functional,
        sup_estimate: best.value,
        argmax: best.point,
        samples: config.samples,
        seed: config.seed,
        polish_steps: config.polish_steps,
    })
}

/// Re-evaluates the functional at a stored maximiser.
pub fn evaluate_at(
    kind: ClassKind,
    b1: f64,
    b2: f64,
    functional: Functional,
    p: &SchwarzPoint,
) -> f64 {
    Objective {
        kind,
        b1,
        b2,
        functional,
    }
    .eval(p)
}
