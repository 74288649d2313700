//! Zero-balanced Gauss hypergeometric function ₂F₁(a, b; a+b; x), the
//! convexity and monotonicity thresholds of the ratios
//! (c − log(1−x)) / ₂F₁ and its reciprocal, series coefficient tables, and a
//! grid verification harness for the associated inequalities.

pub mod dirichlet;
pub mod error;
pub mod exec;
pub mod extremum;
pub mod fd;
pub mod grid;
pub mod hyp2f1;
pub mod phi;
pub mod series;
pub mod special;
pub mod thresholds;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
