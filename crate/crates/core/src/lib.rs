//! Exact analysis of morsifications of real plane curve singularities
//! through contact trees of their polar roots.
//!
//! Given the Newton-Puiseux roots of `f = dF/dy`, the crate builds the real
//! and complex contact trees, the area series between consecutive critical
//! points, the integrated exponent function and the discrete integration
//! maps, and from these the snake of the Morse functions `F(x0, .)` for small
//! `x0 > 0`. Every quantity is exact.

// Error values carry exact rationals.
#![allow(clippy::result_large_err)]

pub mod exact;
pub mod frontend;
pub mod morse;
pub mod oracle;
pub mod puiseux;
pub mod treebuild;

pub use exact::{FieldElement, FieldError, NumberField, Rational};
pub use frontend::{emit_dot, emit_report, parse_input, run_analysis, Analysis, InputError, ProblemSpec, Status};
pub use morse::{analyze, Injectivity, MorseError, MorsificationReport, Snake};
pub use oracle::{numeric_snake, OracleConfig, OracleError, OracleResult};
pub use puiseux::{BivarPoly, Exponent, PuiseuxError, PuiseuxPoly};
pub use treebuild::{ContactTree, LeafLabel, RootError, RootSystem, VertexId};
