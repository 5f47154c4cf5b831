//! Direct evaluation of the oscillatory integrals
//!
//! ```text
//! v_σ^(k)(x) = σ^k (1/π) ∫₀^∞ t^k cos(t^{n+1}/(n+1) + σ x t + kπ/2) dt.
//! ```
//!
//! The integral is split at a cutoff `T` beyond every real stationary point of
//! the phase. The head `[0, T]` goes to adaptive Clenshaw–Curtis. On the tail
//! the phase is monotone, so the integral decomposes into half-period lumps
//! between consecutive zeros of the cosine; the lumps alternate in sign and
//! shrink algebraically, and their partial sums are accelerated by iterated
//! Aitken Δ².

pub mod accel;
pub mod clenshaw_curtis;

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::eval::{EvalResult, Method};
use crate::series::Sign;
use crate::specfun::{gamma, GammaArg};

use self::accel::iterated_aitken;
use self::clenshaw_curtis::{integrate, Integral};

/// Practical envelope for `|x|`.
pub const MAX_ABS_X: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_half_periods: usize,
    pub acceleration_depth: usize,
    /// Panel budget for the adaptive head rule.
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            max_half_periods: 200,
            acceleration_depth: 12,
            max_panels: 10_000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            ..Self::default()
        }
    }
}

/// `t^power · cos(φ(t) + shift)` with `φ(t) = t^{n+1}/(n+1) + σ x t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryIntegrand {
    pub n: usize,
    pub sign: Sign,
    pub x: f64,
    pub power: usize,
    pub shift: f64,
}

impl OscillatoryIntegrand {
    /// The integrand of `v_σ(x)` itself.
    pub fn new(n: usize, sign: Sign, x: f64) -> Self {
        OscillatoryIntegrand {
            n,
            sign,
            x,
            power: 0,
            shift: 0.0,
        }
    }

    /// Integrand of the `k`-th x-derivative (up to the factor `σ^k`).
    pub fn derivative(n: usize, sign: Sign, x: f64, k: usize) -> Self {
        OscillatoryIntegrand {
            power: k,
            shift: k as f64 * FRAC_PI_2,
            ..Self::new(n, sign, x)
        }
    }

    fn sx(&self) -> f64 {
        self.sign.value() * self.x
    }

    pub fn phase(&self, t: f64) -> f64 {
        let np1 = (self.n + 1) as f64;
        t.powi(self.n as i32 + 1) / np1 + self.sx() * t
    }

    pub fn phase_derivative(&self, t: f64) -> f64 {
        t.powi(self.n as i32) + self.sx()
    }

    pub fn eval(&self, t: f64) -> f64 {
        t.powi(self.power as i32) * (self.phase(t) + self.shift).cos()
    }

    /// `max(1, ((power+2)|x|)^{1/n} + 1)`: past every stationary point, and far
    /// enough that `t^power / φ'(t)` decreases on the tail.
    pub fn cutoff(&self) -> f64 {
        let reach = ((self.power + 2) as f64 * self.x.abs()).powf(1.0 / self.n as f64);
        (reach + 1.0).max(1.0)
    }

    /// Solves `φ(t) = w` for `t ≥ lo`, assuming `φ` increasing there.
    fn invert_phase(&self, w: f64, lo: f64) -> f64 {
        let np1 = (self.n + 1) as f64;
        let mut lo = lo;
        let mut hi = ((np1 * w.max(0.0)).powf(1.0 / np1)).max(lo) + 1.0;
        while self.phase(hi) < w {
            hi = lo + 2.0 * (hi - lo);
        }
        let mut t = ((np1 * w.max(0.0)).powf(1.0 / np1)).clamp(lo, hi);
        for _ in 0..200 {
            let g = self.phase(t) - w;
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = g / self.phase_derivative(t);
            let mut next = t - step;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let done = (next - t).abs() <= 1e-14 * t.abs().max(1e-300);
            t = next;
            if done || hi - lo <= 1e-15 * hi {
                break;
            }
        }
        t
    }
}

/// `∫₀^T f` by adaptive Clenshaw–Curtis to `abs_tol / 2`.
pub fn head_integral(
    f: &OscillatoryIntegrand,
    cutoff: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    if !(cutoff >= 0.0) {
        return Err(Error::domain(format!("negative cutoff {cutoff}")));
    }
    integrate(
        |t| f.eval(t),
        0.0,
        cutoff,
        0.5 * cfg.abs_tol,
        cfg.max_panels,
    )
}

/// The tail `∫_T^∞ f`, decomposed into lumps.
#[derive(Debug, Clone, PartialEq)]
pub struct TailIntegral {
    pub value: f64,
    pub error: f64,
    /// `∫_T^{t_0}` up to the first zero of the cosine.
    pub lead_in: f64,
    /// Half-period lumps used, in order.
    pub lumps: Vec<f64>,
    /// Whether the accelerated estimate was used (else the bracketing midpoint).
    pub accelerated: bool,
}

struct LumpWalker<'a> {
    f: &'a OscillatoryIntegrand,
    cfg: &'a QuadratureConfig,
    zero_index: f64,
    t_prev: f64,
}

impl LumpWalker<'_> {
    fn zero_at(&self, j: f64) -> f64 {
        (j + 0.5) * PI - self.f.shift
    }

    fn next_lump(&mut self) -> Result<f64> {
        self.zero_index += 1.0;
        let t_next = self
            .f
            .invert_phase(self.zero_at(self.zero_index), self.t_prev);
        let lump = integrate(
            |t| self.f.eval(t),
            self.t_prev,
            t_next,
            1e-3 * self.cfg.abs_tol,
            self.cfg.max_panels,
        )?
        .value;
        self.t_prev = t_next;
        Ok(lump)
    }
}

/// Lead-in integral from `T` to the first cosine zero, plus a walker over the lumps.
fn start_tail<'a>(
    f: &'a OscillatoryIntegrand,
    cutoff: f64,
    cfg: &'a QuadratureConfig,
) -> Result<(f64, LumpWalker<'a>)> {
    if !(f.phase_derivative(cutoff) > 0.0) {
        return Err(Error::domain(format!(
            "cutoff {cutoff} not past the stationary point"
        )));
    }
    let w_start = f.phase(cutoff) + f.shift;
    let j0 = (w_start / PI - 0.5).ceil();
    let mut walker = LumpWalker {
        f,
        cfg,
        zero_index: j0,
        t_prev: cutoff,
    };
    let t0 = f.invert_phase(walker.zero_at(j0), cutoff);
    let lead = integrate(
        |t| f.eval(t),
        cutoff,
        t0,
        1e-3 * cfg.abs_tol,
        cfg.max_panels,
    )?;
    walker.t_prev = t0;
    Ok((lead.value, walker))
}

/// The first `count` half-period lumps past `cutoff`.
pub fn tail_lumps(
    f: &OscillatoryIntegrand,
    cutoff: f64,
    count: usize,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    let (_, mut walker) = start_tail(f, cutoff, cfg)?;
    (0..count).map(|_| walker.next_lump()).collect()
}

/// `∫_T^∞ f` by lump decomposition and iterated Aitken acceleration.
pub fn tail_integral(
    f: &OscillatoryIntegrand,
    cutoff: f64,
    cfg: &QuadratureConfig,
) -> Result<TailIntegral> {
    let (lead_in, mut walker) = start_tail(f, cutoff, cfg)?;
    let depth = cfg.acceleration_depth;
    let mut lumps = Vec::new();
    let mut sums: Vec<f64> = Vec::new();
    let mut prev_estimate: Option<f64> = None;
    let mut stalled = 0usize;

    while lumps.len() < cfg.max_half_periods {
        let lump = walker.next_lump()?;
        lumps.push(lump);
        sums.push(sums.last().copied().unwrap_or(0.0) + lump);

        // shallower rounds take over when a deep round degenerates
        let estimate = (1..=depth.min(sums.len().saturating_sub(1) / 2))
            .rev()
            .find_map(|d| iterated_aitken(&sums, d));
        match estimate {
            Some(est) => {
                if let Some(prev) = prev_estimate {
                    let diff = (est - prev).abs();
                    if diff <= 0.5 * cfg.abs_tol && sums.len() > 2 * depth {
                        return Ok(TailIntegral {
                            value: lead_in + est,
                            error: diff,
                            lead_in,
                            lumps,
                            accelerated: true,
                        });
                    }
                }
                prev_estimate = Some(est);
            }
            None if sums.len() > 2 * depth => stalled += 1,
            None => {}
        }
        if stalled > 4 {
            break;
        }
    }

    // Bracketing fallback: the limit lies between the last two partial sums.
    let m = sums.len();
    if m >= 2 {
        let mid = 0.5 * (sums[m - 1] + sums[m - 2]);
        let half = 0.5 * lumps[m - 1].abs();
        if half <= cfg.abs_tol {
            return Ok(TailIntegral {
                value: lead_in + mid,
                error: half,
                lead_in,
                lumps,
                accelerated: false,
            });
        }
    }
    Err(Error::NonConvergence(format!(
        "tail acceleration did not reach {:e} within {} half-periods (n = {}, x = {})",
        cfg.abs_tol, cfg.max_half_periods, f.n, f.x
    )))
}

/// `∫₀^∞ f` = head + tail, with error estimate including rounding in the sum.
pub fn integrate_full(f: &OscillatoryIntegrand, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    if !(cfg.abs_tol > 0.0) {
        return Err(Error::domain("abs_tol must be positive"));
    }
    let cutoff = f.cutoff();
    let head = head_integral(f, cutoff, cfg)?;
    let tail = tail_integral(f, cutoff, cfg)?;
    let scale = head.abs_value
        + tail.lead_in.abs()
        + tail.lumps.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let rounding = 16.0 * f64::EPSILON * scale;
    Ok((head.value + tail.value, head.error + tail.error + rounding))
}

fn check_args(n: usize, x: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("order {n} below 2")));
    }
    if !(x.abs() <= MAX_ABS_X) {
        return Err(Error::domain(format!(
            "|x| = {} beyond {MAX_ABS_X}",
            x.abs()
        )));
    }
    Ok(())
}

/// `v_σ(x) = (1/π) ∫₀^∞ cos(t^{n+1}/(n+1) + σ x t) dt`.
pub fn v_pm(n: usize, sign: Sign, x: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    v_pm_derivative(n, sign, x, 0, cfg)
}

/// `v_σ^(k)(x)` by differentiating under the integral sign.
pub fn v_pm_derivative(
    n: usize,
    sign: Sign,
    x: f64,
    k: usize,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    check_args(n, x)?;
    if k >= n {
        return Err(Error::domain(format!("derivative {k} not below order {n}")));
    }
    let f = OscillatoryIntegrand::derivative(n, sign, x, k);
    // the integral is accumulated before the 1/π scaling
    let inner = QuadratureConfig {
        abs_tol: cfg.abs_tol * PI,
        ..*cfg
    };
    let (value, err) = integrate_full(&f, &inner)?;
    let s = if sign == Sign::Minus && k % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    Ok(EvalResult::new(
        s * value / PI,
        err / PI,
        Method::Quadrature,
    ))
}

fn check_moment(n: usize, k: usize) -> Result<()> {
    if n < 1 || k >= n {
        return Err(Error::domain(format!(
            "moment index k = {k} outside 0..{n}"
        )));
    }
    Ok(())
}

/// Closed form of `∫₀^∞ t^k cos(t^{n+1}/(n+1) + kπ/2) dt`:
/// `(n+1)^{(k+1)/(n+1) − 1} Γ((k+1)/(n+1)) cos((k+1)π/(2(n+1)) + kπ/2)`.
pub fn moment_integral(n: usize, k: usize) -> Result<f64> {
    check_moment(n, k)?;
    let np1 = (n + 1) as f64;
    let p = (k + 1) as f64 / np1;
    let angle = p * PI / 2.0 + k as f64 * FRAC_PI_2;
    Ok(np1.powf(p - 1.0) * gamma(GammaArg::new(p)?) * angle.cos())
}

/// The same moment evaluated numerically by head + accelerated tail.
pub fn moment_integral_numeric(n: usize, k: usize, cfg: &QuadratureConfig) -> Result<EvalResult> {
    check_moment(n, k)?;
    let f = OscillatoryIntegrand::derivative(n, Sign::Plus, 0.0, k);
    let (value, err) = integrate_full(&f, cfg)?;
    Ok(EvalResult::new(value, err, Method::Quadrature))
}
