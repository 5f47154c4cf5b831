//! Maclaurin-series solution of `u^(n) = x u` for even `n`.
//!
//! The seed is the closed form of the first `n` derivatives at the origin of
//!
//! ```text
//! v_σ(x) = (1/π) ∫₀^∞ cos(t^{n+1}/(n+1) + σ x t) dt,
//! ```
//!
//! with σ = +1 for n ≡ 2 (mod 4) and σ = −1 for n ≡ 0 (mod 4). Matching
//! coefficients in `u^(n) = x u` gives `a_n = 0` and
//! `a_{j+n} = a_{j-1} / ((j+1)(j+2)⋯(j+n))`, so every third, fifth, … coefficient
//! (those with `j ≡ n mod n+1`) vanishes identically.
//!
//! Truncation is certified a posteriori: beyond index `K` the terms of each
//! residue class mod `n+1` shrink at least geometrically with ratio
//! `|x|^{n+1} / ∏ (K+1-n+i)`, so the last `n+1` computed terms bound the tail.

use std::f64::consts::PI;

use crate::diffpoly::Jet;
use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::specfun::{gamma, GammaArg};

/// Largest even order accepted by the closed-form seed.
pub const MAX_ORDER: usize = 20;

/// Default truncation index of the Taylor model.
pub const DEFAULT_TRUNCATION: usize = 120;

/// Default absolute bound on the truncation tail.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// `|u(x)|` below this multiple of `Σ|a_j x^j|` is treated as a zero of `u`.
pub const POLE_THRESHOLD: f64 = 1e-8;

/// Sign of the linear phase term `σ x t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn pow(self, k: usize) -> f64 {
        if self == Sign::Minus && k % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

pub(crate) fn check_even_order(n: usize, max: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::domain("odd order unsupported"));
    }
    if n < 2 || n > max {
        return Err(Error::domain(format!("order {n} outside 2..={max}")));
    }
    Ok(())
}

/// σ = +1 for n ≡ 2 (mod 4), −1 for n ≡ 0 (mod 4).
pub fn sign_for(n: usize) -> Result<Sign> {
    check_even_order(n, usize::MAX)?;
    Ok(if n % 4 == 2 { Sign::Plus } else { Sign::Minus })
}

/// `v_σ^(k)(0)` for `k = 0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialValues {
    pub n: usize,
    pub sign: Sign,
    pub v: Vec<f64>,
}

/// Closed-form derivatives at the origin of the integral solution.
pub fn initial_values(n: usize, sign: Sign) -> Result<InitialValues> {
    check_even_order(n, MAX_ORDER)?;
    let np1 = (n + 1) as f64;
    let v = (0..n)
        .map(|k| {
            let kf = k as f64;
            let p = (n - k) as f64 / np1;
            let g = gamma(GammaArg::new(p)?);
            let angle = (kf + 1.0) * PI / (2.0 * np1) + kf * PI / 2.0;
            let denom = ((kf + 1.0) * PI / np1).sin();
            Ok(sign.pow(k) * angle.cos() / (np1.powf(p) * g * denom))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InitialValues { n, sign, v })
}

/// Taylor coefficients `a_0..a_K` of a solution of `u^(n) = x u` about 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorModel {
    n: usize,
    coeffs: Vec<f64>,
}

/// Builds the Taylor model from closed-form initial values.
///
/// The sign must be the one that pairs with `n`; the other sign solves
/// `u^(n) = −x u` instead.
pub fn taylor_coefficients(iv: &InitialValues, truncation: usize) -> Result<TaylorModel> {
    if sign_for(iv.n)? != iv.sign {
        return Err(Error::domain(format!(
            "sign {:?} does not pair with order {}",
            iv.sign, iv.n
        )));
    }
    TaylorModel::from_seed(iv.n, &iv.v, truncation)
}

/// Result of a series summation with its two error components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    /// Rigorous majorant of the omitted terms.
    pub tail_bound: f64,
    /// `Σ |terms|`; times machine epsilon this estimates cancellation error.
    pub abs_sum: f64,
}

impl SeriesSum {
    pub fn cancellation(&self) -> f64 {
        f64::EPSILON * self.abs_sum
    }

    pub fn into_result(self) -> EvalResult {
        EvalResult::new(
            self.value,
            self.tail_bound + self.cancellation(),
            Method::Series,
        )
    }
}

/// Neumaier compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(self) -> f64 {
        self.sum + self.comp
    }
}

impl TaylorModel {
    /// Taylor model for the order-`n` integral solution with the default truncation.
    pub fn for_order(n: usize) -> Result<Self> {
        Self::for_order_truncated(n, DEFAULT_TRUNCATION)
    }

    pub fn for_order_truncated(n: usize, truncation: usize) -> Result<Self> {
        let iv = initial_values(n, sign_for(n)?)?;
        taylor_coefficients(&iv, truncation)
    }

    /// Taylor model from arbitrary initial derivatives `u^(k)(0)`, `k < n`.
    pub fn from_seed(n: usize, seed: &[f64], truncation: usize) -> Result<Self> {
        check_even_order(n, usize::MAX)?;
        if seed.len() != n {
            return Err(Error::domain(format!(
                "seed of length {} for order {n}",
                seed.len()
            )));
        }
        if truncation < n {
            return Err(Error::domain(format!(
                "truncation {truncation} below order {n}"
            )));
        }
        let mut a = Vec::with_capacity(truncation + 1);
        let mut fact = 1.0;
        for (k, &v) in seed.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            a.push(v / fact);
        }
        a.push(0.0);
        // a[j+n] = a[j-1] / ((j+1)⋯(j+n))
        for j in 1..=(truncation - n) {
            let denom: f64 = (1..=n).map(|i| (j + i) as f64).product();
            a.push(a[j - 1] / denom);
        }
        Ok(TaylorModel { n, coeffs: a })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// `k`-th derivative of the truncated series with its error components.
    pub fn sum_derivative(&self, x: f64, k: usize) -> Result<SeriesSum> {
        let big_k = self.truncation();
        let n = self.n;
        if k + n > big_k {
            return Err(Error::Range(format!(
                "derivative order {k} too high for truncation {big_k} at order {n}"
            )));
        }
        if !x.is_finite() {
            return Err(Error::domain(format!("non-finite x = {x}")));
        }

        let mut sum = CompensatedSum::default();
        let mut abs_sum = 0.0;
        let mut last_block = 0.0;
        // falling factorial j!/(j-k)!, starting at j = k
        let mut ff: f64 = (1..=k).map(|i| i as f64).product();
        let mut pow = 1.0;
        for j in k..=big_k {
            if j > k {
                ff *= j as f64 / (j - k) as f64;
                pow *= x;
            }
            let term = self.coeffs[j] * ff * pow;
            sum.add(term);
            abs_sum += term.abs();
            if j + n >= big_k {
                last_block += term.abs();
            }
        }

        let mut ratio = x.abs().powi(n as i32 + 1);
        for i in 0..k {
            ratio *= (big_k + 1 - i) as f64 / (big_k - n - i) as f64;
        }
        for i in 1..=n {
            ratio /= (big_k + 1 - n + i) as f64;
        }
        let tail_bound = if last_block == 0.0 {
            0.0
        } else if ratio < 1.0 {
            last_block * ratio / (1.0 - ratio)
        } else {
            f64::INFINITY
        };

        Ok(SeriesSum {
            value: sum.total(),
            tail_bound,
            abs_sum,
        })
    }

    /// `u^(k)(x)`, refusing when the tail bound exceeds `tol`.
    pub fn eval_derivative_with_tol(&self, x: f64, k: usize, tol: f64) -> Result<EvalResult> {
        let s = self.sum_derivative(x, k)?;
        if !(s.tail_bound <= tol) {
            return Err(Error::Range(format!(
                "series tail bound {:e} exceeds tolerance {tol:e} at x = {x} (K = {})",
                s.tail_bound,
                self.truncation()
            )));
        }
        Ok(s.into_result())
    }

    pub fn eval_derivative(&self, x: f64, k: usize) -> Result<EvalResult> {
        self.eval_derivative_with_tol(x, k, DEFAULT_TAIL_TOL)
    }

    pub fn eval(&self, x: f64) -> Result<EvalResult> {
        self.eval_derivative(x, 0)
    }

    pub fn eval_with_tol(&self, x: f64, tol: f64) -> Result<EvalResult> {
        self.eval_derivative_with_tol(x, 0, tol)
    }

    /// Jet `(u, u', …, u^(order))` at `x`.
    pub fn jet_at(&self, x: f64, order: usize) -> Result<Jet> {
        let values = (0..=order)
            .map(|k| self.eval_derivative(x, k).map(|r| r.value))
            .collect::<Result<Vec<_>>>()?;
        Jet::new(values, x)
    }

    /// `y = u'/u`, raising a pole error near zeros of `u`.
    pub fn riccati(&self, x: f64) -> Result<EvalResult> {
        let u = self.sum_derivative(x, 0)?;
        let threshold = POLE_THRESHOLD * u.abs_sum;
        if u.value.abs() < threshold {
            return Err(Error::Pole {
                x,
                magnitude: u.value.abs(),
                threshold,
            });
        }
        let u = self.eval(x)?;
        let du = self.eval_derivative(x, 1)?;
        let y = du.value / u.value;
        let err = (du.error_estimate + y.abs() * u.error_estimate) / u.value.abs();
        Ok(EvalResult::new(y, err, Method::Series))
    }
}

/// The value of the order-`n` integral solution at `x` from its Taylor series.
pub fn eval_series(n: usize, x: f64) -> Result<EvalResult> {
    TaylorModel::for_order(n)?.eval(x)
}

/// `u'/u` for the order-`n` integral solution.
pub fn riccati_solution(n: usize, x: f64) -> Result<EvalResult> {
    TaylorModel::for_order(n)?.riccati(x)
}

/// Jet of `y = u'/u` at `x` up to derivative `order - 1`.
pub fn riccati_jet(model: &TaylorModel, x: f64, order: usize) -> Result<Jet> {
    let u = model.jet_at(x, order)?;
    crate::diffpoly::log_derivative_jet(&u)
}
