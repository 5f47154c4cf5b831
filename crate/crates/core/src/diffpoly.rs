//! Differential polynomials in the jet variables `y, y', y'', …`.
//!
//! The Riccati tower is generated by `f_1 = y`, `f_{k+1} = (D + y) f_k`, where
//! `D` is the total derivative acting on jet variables. With `y = u'/u` every
//! `f_k` equals `u^(k)/u`; [`verify_cole_hopf`] checks that identity on
//! numerical jets.
//!
//! Coefficients are exact integers. The term order used for iteration,
//! evaluation and printing is graded by total degree, and within a degree the
//! exponent vectors are taken in descending lexicographic order, so that
//! `f_4` prints as `y''' + 4*y*y'' + 3*y'^2 + 6*y^2*y' + y^4`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`f_n`].
pub const MAX_ORDER: usize = 20;

/// A product `∏ (y^(i))^{e_i}`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial { exponents }
    }

    pub fn one() -> Self {
        Monomial {
            exponents: Vec::new(),
        }
    }

    /// The monomial `y^(index)`.
    pub fn var(index: usize) -> Self {
        let mut exponents = vec![0; index + 1];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents.get(index).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Isobaric weight: `y^(i)` counts `i + 1`.
    pub fn weight(&self) -> u32 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| e * (i as u32 + 1))
            .sum()
    }

    /// Highest jet index present, `None` for the constant monomial.
    pub fn max_index(&self) -> Option<usize> {
        self.exponents.len().checked_sub(1)
    }

    fn with_delta(&self, index: usize, delta: i32) -> Monomial {
        let mut exponents = self.exponents.clone();
        if exponents.len() <= index {
            exponents.resize(index + 1, 0);
        }
        exponents[index] = (exponents[index] as i32 + delta) as u32;
        Monomial::new(exponents)
    }

    fn eval(&self, values: &[f64]) -> f64 {
        self.exponents
            .iter()
            .zip(values)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, &v)| v.powi(e as i32))
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn var_name(index: usize) -> String {
    match index {
        0..=3 => format!("y{}", "'".repeat(index)),
        _ => format!("y^{{({index})}}"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse integer-coefficient polynomial in jet variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffPolynomial {
    terms: BTreeMap<Monomial, i128>,
    order: Option<usize>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, i128)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i128)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> i128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `n` if this polynomial was produced as `f_n`.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    /// Total derivative `D` by the Leibniz rule.
    pub fn derivative(&self) -> DiffPolynomial {
        let mut out = DiffPolynomial::zero();
        for (m, &c) in &self.terms {
            for (i, &e) in m.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let shifted = m.with_delta(i, -1).with_delta(i + 1, 1);
                out.add_term(shifted, c * e as i128);
            }
        }
        out
    }

    /// `y · p`.
    pub fn mul_y(&self) -> DiffPolynomial {
        DiffPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.with_delta(0, 1), c))
                .collect(),
            order: None,
        }
    }

    /// Numerical value at the jet `(y, y', …)`, summed in canonical term order.
    pub fn evaluate(&self, jet: &Jet) -> Result<f64> {
        let needed = self.max_index().map_or(0, |i| i + 1);
        if jet.len() < needed {
            return Err(Error::domain(format!(
                "jet of length {} too short, polynomial needs {needed}",
                jet.len()
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, &c)| c as f64 * m.eval(&jet.values))
            .sum())
    }

    /// Exact evaluation on an integer jet; `None` on overflow or short jet.
    pub fn evaluate_exact(&self, values: &[i128]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (m, &c) in &self.terms {
            let mut term = c;
            for (i, &e) in m.exponents.iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(values.get(i)?.checked_pow(e)?)?;
                }
            }
            acc = acc.checked_add(term)?;
        }
        Some(acc)
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.exponents.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Derivative values `(g(x0), g'(x0), …, g^(K)(x0))` at a basepoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub values: Vec<f64>,
    pub basepoint: f64,
}

impl Jet {
    pub fn new(values: Vec<f64>, basepoint: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("jet must hold at least one value"));
        }
        Ok(Jet { values, basepoint })
    }

    /// Jet at 0.
    pub fn at_origin(values: Vec<f64>) -> Result<Self> {
        Self::new(values, 0.0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Highest derivative order held.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }
}

/// `f_1 = y`.
pub fn f_one() -> DiffPolynomial {
    let mut p = DiffPolynomial::from_terms([(Monomial::var(0), 1)]);
    p.order = Some(1);
    p
}

/// `(D + y) p`.
pub fn apply_lift(p: &DiffPolynomial) -> DiffPolynomial {
    let mut out = p.derivative();
    for (m, c) in p.mul_y().terms {
        out.add_term(m, c);
    }
    out.order = p.order.map(|n| n + 1);
    out
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::domain(format!("order {n} outside 1..={MAX_ORDER}")))
    }
}

/// `f_n = (D + y)^{n-1} y`.
pub fn f_n(n: usize) -> Result<DiffPolynomial> {
    check_order(n)?;
    let mut p = f_one();
    for _ in 1..n {
        p = apply_lift(&p);
    }
    Ok(p)
}

/// `[f_1, …, f_n]`.
pub fn tower(n: usize) -> Result<Vec<DiffPolynomial>> {
    check_order(n)?;
    Ok(
        std::iter::successors(Some(f_one()), |p| Some(apply_lift(p)))
            .take(n)
            .collect(),
    )
}

/// Jet of `y = u'/u` from the jet of `u`; the result is one order shorter.
///
/// Works on Taylor coefficients: with `c_k = u^(k)/k!` the coefficients `b_k`
/// of `y` solve `Σ_j b_j c_{k-j} = (k+1) c_{k+1}`.
pub fn log_derivative_jet(u: &Jet) -> Result<Jet> {
    let u0 = u.values[0];
    if u0 == 0.0 {
        return Err(Error::DivisionByZero(format!(
            "u vanishes at x = {}",
            u.basepoint
        )));
    }
    let k_max = u.order();
    if k_max == 0 {
        return Err(Error::domain("u jet must include at least u'"));
    }

    let mut fact = 1.0;
    let c: Vec<f64> = u
        .values
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            if k > 0 {
                fact *= k as f64;
            }
            v / fact
        })
        .collect();

    let mut b = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let mut rhs = (k + 1) as f64 * c[k + 1];
        for j in 0..k {
            rhs -= b[j] * c[k - j];
        }
        b.push(rhs / u0);
    }

    let mut fact = 1.0;
    let values = b
        .iter()
        .enumerate()
        .map(|(k, &bk)| {
            if k > 0 {
                fact *= k as f64;
            }
            bk * fact
        })
        .collect();
    Jet::new(values, u.basepoint)
}

/// `f_n(y-jet) − u^(n)/u` for `y = u'/u`; zero up to rounding.
pub fn verify_cole_hopf(n: usize, u: &Jet) -> Result<f64> {
    verify_cole_hopf_with(&f_n(n)?, u)
}

/// As [`verify_cole_hopf`] with a pre-generated `f_n`.
pub fn verify_cole_hopf_with(fk: &DiffPolynomial, u: &Jet) -> Result<f64> {
    let n = fk
        .order()
        .ok_or_else(|| Error::domain("polynomial carries no tower order"))?;
    if u.len() < n + 1 {
        return Err(Error::domain(format!(
            "u jet of length {} too short for n = {n}",
            u.len()
        )));
    }
    let truncated = Jet::new(u.values[..=n].to_vec(), u.basepoint)?;
    let y = log_derivative_jet(&truncated)?;
    Ok(fk.evaluate(&y)? - u.values[n] / u.values[0])
}
