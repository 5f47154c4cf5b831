//! Adaptive Clenshaw–Curtis quadrature on finite intervals.
//!
//! Each panel is integrated with the 33-point rule; the embedded 17-point rule
//! (every other node) supplies the local error estimate.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const N: usize = 32;

struct Rule {
    nodes: [f64; N + 1],
    fine: [f64; N + 1],
    coarse: [f64; N / 2 + 1],
}

fn weights(n: usize) -> Vec<f64> {
    (0..=n)
        .map(|j| {
            let c = if j == 0 || j == n { 1.0 } else { 2.0 };
            let mut s = 0.0;
            for k in 1..=n / 2 {
                let b = if 2 * k == n { 1.0 } else { 2.0 };
                let kf = k as f64;
                s += b / (4.0 * kf * kf - 1.0) * (2.0 * kf * j as f64 * PI / n as f64).cos();
            }
            c / n as f64 * (1.0 - s)
        })
        .collect()
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut nodes = [0.0; N + 1];
        for (j, x) in nodes.iter_mut().enumerate() {
            *x = (j as f64 * PI / N as f64).cos();
        }
        let mut fine = [0.0; N + 1];
        fine.copy_from_slice(&weights(N));
        let mut coarse = [0.0; N / 2 + 1];
        coarse.copy_from_slice(&weights(N / 2));
        Rule {
            nodes,
            fine,
            coarse,
        }
    })
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    /// `∫|f|`, used to bound rounding in later cancellation.
    pub abs_value: f64,
    pub panels: usize,
}

struct Panel {
    value: f64,
    error: f64,
    abs_value: f64,
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let r = rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fine = 0.0;
    let mut coarse = 0.0;
    let mut abs_value = 0.0;
    for j in 0..=N {
        let fx = f(mid + half * r.nodes[j]);
        fine += r.fine[j] * fx;
        abs_value += r.fine[j] * fx.abs();
        if j % 2 == 0 {
            coarse += r.coarse[j / 2] * fx;
        }
    }
    Panel {
        value: fine * half,
        error: ((fine - coarse) * half).abs(),
        abs_value: abs_value * half,
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            abs_value: 0.0,
            panels: 0,
        });
    }
    let width = b - a;
    let mut stack = vec![(a, b)];
    let mut value = 0.0;
    let mut error = 0.0;
    let mut abs_value = 0.0;
    let mut panels = 0;
    while let Some((lo, hi)) = stack.pop() {
        panels += 1;
        if panels > max_panels {
            return Err(Error::NonConvergence(format!(
                "quadrature panel budget {max_panels} exhausted on [{a}, {b}]"
            )));
        }
        let p = panel(&f, lo, hi);
        let local_tol = tol * ((hi - lo) / width).abs();
        let floor = 64.0 * f64::EPSILON * p.abs_value;
        let tiny = (hi - lo).abs() <= 1e-12 * width.abs();
        if p.error <= local_tol.max(floor) || tiny {
            value += p.value;
            error += p.error;
            abs_value += p.abs_value;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    Ok(Integral {
        value,
        error,
        abs_value,
        panels,
    })
}
