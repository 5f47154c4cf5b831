//! Generalized Airy functions.
//!
//! For even `n` the equation `u^(n) = x u` has the integral solution
//!
//! ```text
//! u(x) = (1/π) ∫₀^∞ cos(t^{n+1}/(n+1) + σ x t) dt,   σ = +1 (n ≡ 2 mod 4), −1 (n ≡ 0 mod 4),
//! ```
//!
//! which reduces to `Ai` for `n = 2`. This crate evaluates it three ways:
//!
//! * [`series`]: Maclaurin series seeded with closed-form derivatives at 0,
//! * [`quad`]: direct oscillatory quadrature with accelerated tails,
//! * [`asympt`]: leading-order asymptotic formulas,
//!
//! and provides the differential polynomials `f_n = (D + y)^{n−1} y` in
//! [`diffpoly`], which turn `y = u'/u` into `f_n(y, y', …) = u^(n)/u`.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asympt;
pub mod diffpoly;
pub mod error;
pub mod eval;
pub mod grid;
pub mod quad;
pub mod series;
pub mod solve;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use eval::{EvalResult, Method};
pub use series::{Sign, TaylorModel};
