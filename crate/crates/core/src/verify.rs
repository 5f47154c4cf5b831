//! Batch self-checks tying the three evaluators and the Riccati tower together.

use std::fmt;

use crate::diffpoly::{f_n, verify_cole_hopf_with, Jet};
use crate::error::{Error, Result};
use crate::grid::{map_ordered, Execution};
use crate::quad::{v_pm, QuadratureConfig};
use crate::series::{riccati_jet, sign_for, TaylorModel};

/// Largest even order for which the jet identity is checked.
pub const MAX_JET_ORDER: usize = 12;

/// Largest even order for the numerical closure categories.
pub const MAX_NUMERIC_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Category {
    pub name: &'static str,
    pub max_residual: f64,
    pub checked: usize,
    pub skipped: usize,
    pub status: Status,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub n: usize,
    pub tol: f64,
    pub categories: Vec<Category>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.categories.iter().all(|c| c.status != Status::Fail)
    }
}

/// Jet of `exp(p(x))` at 0 up to `order`, `p` given by its coefficients.
pub fn exp_poly_jet(p: &[f64], order: usize) -> Jet {
    let coeff = |j: usize| p.get(j).copied().unwrap_or(0.0);
    let mut e = Vec::with_capacity(order + 1);
    e.push(coeff(0).exp());
    for k in 1..=order {
        let s: f64 = (1..=k).map(|j| j as f64 * coeff(j) * e[k - j]).sum();
        e.push(s / k as f64);
    }
    let mut fact = 1.0;
    let values = e
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            if k > 0 {
                fact *= k as f64;
            }
            c * fact
        })
        .collect();
    Jet {
        values,
        basepoint: 0.0,
    }
}

fn summarize(name: &'static str, outcomes: Vec<Result<Option<f64>>>, tol: f64) -> Category {
    let mut max_residual: f64 = 0.0;
    let mut checked = 0;
    let mut skipped = 0;
    let mut note = None;
    for o in outcomes {
        match o {
            Ok(Some(r)) => {
                checked += 1;
                max_residual = max_residual.max(r);
            }
            Ok(None) => skipped += 1,
            Err(e) => {
                note.get_or_insert_with(|| e.to_string());
                max_residual = f64::INFINITY;
            }
        }
    }
    let status = if max_residual <= tol {
        Status::Pass
    } else {
        Status::Fail
    };
    Category {
        name,
        max_residual,
        checked,
        skipped,
        status,
        note,
    }
}

fn skipped(name: &'static str, why: &str) -> Category {
    Category {
        name,
        max_residual: 0.0,
        checked: 0,
        skipped: 0,
        status: Status::Skip,
        note: Some(why.to_string()),
    }
}

/// Max of `|f_n(y-jet) − u^(n)/u| / (1 + |u^(n)/u|)` over `u = exp(p)` for each `p`.
pub fn cole_hopf_residual(n: usize, polys: &[Vec<f64>], exec: Execution) -> Result<Vec<f64>> {
    let fk = f_n(n)?;
    map_ordered(polys, exec, |p| {
        let u = exp_poly_jet(p, n);
        let r = verify_cole_hopf_with(&fk, &u)?;
        Ok(r.abs() / (1.0 + (u.values[n] / u.values[0]).abs()))
    })
    .into_iter()
    .collect()
}

/// Runs all four categories on the grid `xs`.
///
/// (a) Cole–Hopf identity on random exponential jets, relative residual;
/// (b) ODE residual `|u^(n) − x u| / (1 + |x u|)` of the series;
/// (c) `|series − quadrature|`;
/// (d) `|f_n(jet of u'/u) − x|`, skipping points at zeros of `u`.
pub fn run(n: usize, xs: &[f64], polys: &[Vec<f64>], tol: f64, exec: Execution) -> Result<Report> {
    if n % 2 == 1 {
        return Err(Error::domain("odd order unsupported"));
    }
    if !(2..=MAX_JET_ORDER).contains(&n) {
        return Err(Error::domain(format!(
            "order {n} outside 2..={MAX_JET_ORDER}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }

    let mut categories = Vec::with_capacity(4);
    let jet = cole_hopf_residual(n, polys, exec)
        .map(|rs| rs.into_iter().map(|r| Ok(Some(r))).collect())
        .unwrap_or_else(|e| vec![Err(e)]);
    categories.push(summarize("cole-hopf", jet, tol));

    if n > MAX_NUMERIC_ORDER {
        let why = format!("numeric closure checked for n <= {MAX_NUMERIC_ORDER}");
        for name in ["ode-residual", "series-vs-quad", "riccati-closure"] {
            categories.push(skipped(name, &why));
        }
        return Ok(Report { n, tol, categories });
    }

    let model = TaylorModel::for_order(n)?;
    let sign = sign_for(n)?;
    let fk = f_n(n)?;
    let cfg = QuadratureConfig::with_tol((0.01 * tol).max(1e-12));

    let ode = map_ordered(xs, exec, |&x| {
        let u = model.eval(x)?.value;
        let un = model.eval_derivative(x, n)?.value;
        Ok(Some((un - x * u).abs() / (1.0 + (x * u).abs())))
    });
    categories.push(summarize("ode-residual", ode, tol));

    let cross = map_ordered(xs, exec, |&x| {
        let s = model.eval(x)?.value;
        let q = v_pm(n, sign, x, &cfg)?.value;
        Ok(Some((s - q).abs()))
    });
    categories.push(summarize("series-vs-quad", cross, tol));

    let closure = map_ordered(xs, exec, |&x| match model.riccati(x) {
        Err(Error::Pole { .. }) => Ok(None),
        Err(e) => Err(e),
        Ok(_) => {
            let y = riccati_jet(&model, x, n)?;
            Ok(Some((fk.evaluate(&y)? - x).abs()))
        }
    });
    categories.push(summarize("riccati-closure", closure, tol));

    Ok(Report { n, tol, categories })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::linspace;

    fn polys() -> Vec<Vec<f64>> {
        (0..20)
            .map(|i| {
                let s = i as f64 / 20.0;
                vec![s - 0.5, 0.3 * s, -0.8 + s, 0.1, -s * s]
            })
            .collect()
    }

    #[test]
    fn default_grid_passes() {
        let xs = linspace(-5.0, 5.0, 20).unwrap();
        for n in [2, 4] {
            let r = run(n, &xs, &polys(), 1e-6, Execution::Parallel).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.categories.len(), 4);
        }
    }

    #[test]
    fn high_orders_skip_numeric_categories() {
        let r = run(12, &[0.0], &polys(), 1e-6, Execution::Sequential).unwrap();
        assert!(r.passed());
        assert_eq!(r.categories[0].status, Status::Pass);
        assert!(r.categories[1..].iter().all(|c| c.status == Status::Skip));
    }

    #[test]
    fn failures_and_errors() {
        assert!(
            matches!(run(7, &[0.0], &[], 1e-6, Execution::Sequential), Err(Error::Domain(m)) if m == "odd order unsupported")
        );
        assert!(run(14, &[0.0], &[], 1e-6, Execution::Sequential).is_err());
        let r = run(2, &[1.0], &polys(), 1e-300, Execution::Sequential).unwrap();
        assert!(!r.passed());
        // series refuses far out: reported as a failure, not a panic
        let r = run(2, &[40.0], &polys(), 1e-6, Execution::Sequential).unwrap();
        assert_eq!(r.categories[1].status, Status::Fail);
        assert!(r.categories[1].note.is_some());
    }

    #[test]
    fn zeros_of_u_are_skipped() {
        let zero = -2.338_107_410_459_767;
        let r = run(2, &[zero, 0.0], &polys(), 1e-6, Execution::Sequential).unwrap();
        assert_eq!(r.categories[3].skipped, 1);
        assert_eq!(r.categories[3].checked, 1);
    }
}
