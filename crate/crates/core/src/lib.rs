//! Sharp bounds on the Toeplitz determinants `T₂(2)` and `T₃(1)` for the
//! Ma-Minda classes `S*(φ)` and `K(φ)`.
//!
//! - [`series`]: truncated complex power series.
//! - [`phi`]: catalog of target functions `φ` and their coefficients.
//! - [`bounds`]: closed-form Fekete-Szegő and Toeplitz bounds with their
//!   hypotheses.
//! - [`extremal`]: the extremal functions `K_φ`, `H_φ`.
//! - [`oracle`]: brute-force maximisation over the attainable `(a₂, a₃)`.
//! - [`report`] and [`cli`]: JSON/CSV rendering and the command line.

pub mod bounds;
pub mod cli;
pub mod extremal;
pub mod oracle;
pub mod phi;
pub mod report;
pub mod series;

pub use bounds::{BoundReport, ClassKind, TheoremBound};
pub use extremal::ExtremalFunction;
pub use oracle::{Functional, OracleConfig, OracleResult, SchwarzPoint};
pub use phi::PhiSpec;
pub use series::Series;
