use std::fmt;
use std::str::FromStr;

/// Which evaluator produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    Quadrature,
    Asymptotic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "series" => Ok(Method::Series),
            "quadrature" | "quad" => Ok(Method::Quadrature),
            "asymptotic" | "asympt" => Ok(Method::Asymptotic),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// A value with an a-posteriori error estimate (not a guarantee).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: f64, error_estimate: f64, method: Method) -> Self {
        debug_assert!(error_estimate >= 0.0 || error_estimate.is_nan());
        EvalResult {
            value,
            error_estimate,
            method,
        }
    }
}
