//! Exact symbolic calculus for graded tensor fields on polynomial charts.
//!
//! The crate is layered bottom-up:
//!
//! - [`polyring`]: exact multivariate polynomials over `Q`.
//! - [`fields`]: mixed fields `Ω^k(M; S^l TM)` in canonical form with the
//!   graded-commutative product.
//! - [`calculus`]: `d`, insertion, Lie derivation, the Nijenhuis-Richardson,
//!   Frölicher-Nijenhuis and symmetric Schouten brackets, extended insertion.
//! - [`cotangent`]: the canonical symplectic structure of `T*M`, the lifts
//!   `π*`, `ρ`, `H`, `h`, and the graded Poisson brackets on forms.
//! - [`connection`]: metric data, exterior covariant derivative, `δ_g`,
//!   `δ'_g`, the operator `D` and the bracket `[·,·]_∇`.
//! - [`verifier`]: expression language, identity suites and reports.

pub mod calculus;
pub mod chart;
pub mod connection;
pub mod cotangent;
pub mod error;
pub mod fields;
pub mod polyring;
pub mod verifier;

pub use chart::{Chart, ChartKind};
pub use error::{Error, Result};
pub use fields::{Basis, FormIndex, MixedField, RawTerm, SymIndex};
pub use polyring::{rat, Monomial, Polynomial, Rational};
