//! Method selection across the three evaluators.

use crate::asympt;
use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::quad::{self, QuadratureConfig, MAX_ABS_X};
use crate::series::{self, check_even_order, sign_for, TaylorModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Fixed(Method),
    /// Series while its cancellation estimate stays below half the tolerance,
    /// then quadrature up to `|x| = 20`, then asymptotics.
    Auto,
}

/// Evaluates the order-`n` integral solution at `x` to absolute tolerance `tol`.
pub fn evaluate(n: usize, x: f64, choice: Choice, tol: f64) -> Result<EvalResult> {
    evaluate_with(&TaylorModel::for_order(n)?, x, choice, tol)
}

/// As [`evaluate`], reusing a Taylor model built for the same order.
pub fn evaluate_with(model: &TaylorModel, x: f64, choice: Choice, tol: f64) -> Result<EvalResult> {
    let n = model.order();
    check_even_order(n, series::MAX_ORDER)?;
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::domain(format!("non-finite x = {x}")));
    }
    match choice {
        Choice::Fixed(Method::Series) => model.eval_with_tol(x, tol),
        Choice::Fixed(Method::Quadrature) => {
            quad::v_pm(n, sign_for(n)?, x, &QuadratureConfig::with_tol(tol))
        }
        Choice::Fixed(Method::Asymptotic) => {
            if x == 0.0 {
                return Err(Error::domain("asymptotic formulas undefined at x = 0"));
            }
            asympt::asympt(n / 2, x)
        }
        Choice::Auto => {
            if let Ok(s) = model.sum_derivative(x, 0) {
                if s.tail_bound <= tol && s.cancellation() < 0.5 * tol {
                    return Ok(s.into_result());
                }
            }
            if x.abs() <= MAX_ABS_X {
                evaluate_with(model, x, Choice::Fixed(Method::Quadrature), tol)
            } else {
                evaluate_with(model, x, Choice::Fixed(Method::Asymptotic), tol)
            }
        }
    }
}
