//! Grid construction and order-preserving batch evaluation.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] fans out over
//! rayon's global pool; without it, every execution mode runs sequentially.
//! Results always come back in input order.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// `steps + 1` points from `x_min` to `x_max` inclusive.
///
/// `steps = 0` requires `x_min == x_max` and yields one point; otherwise
/// `x_min < x_max` is required. Points are `(x_min (steps−i) + x_max i)/steps`,
/// exact at both ends.
pub fn linspace(x_min: f64, x_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !x_min.is_finite() || !x_max.is_finite() {
        return Err(Error::domain("grid bounds must be finite"));
    }
    if steps == 0 {
        if x_min != x_max {
            return Err(Error::domain("steps = 0 requires x_min = x_max"));
        }
        return Ok(vec![x_min]);
    }
    if !(x_min < x_max) {
        return Err(Error::domain("x_min < x_max required when steps >= 1"));
    }
    let s = steps as f64;
    Ok((0..=steps)
        .map(|i| {
            if i == 0 {
                x_min
            } else if i == steps {
                x_max
            } else {
                let i = i as f64;
                (x_min * (s - i) + x_max * i) / s
            }
        })
        .collect())
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

pub fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => map_sequential(items, f),
        Execution::Parallel => map_parallel(items, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rules() {
        let g = linspace(-10.0, 2.0, 120).unwrap();
        assert_eq!(g.len(), 121);
        assert_eq!(g[0], -10.0);
        assert_eq!(g[100], 0.0);
        assert_eq!(g[120], 2.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(linspace(1.5, 1.5, 0).unwrap(), vec![1.5]);
        assert!(linspace(1.0, 1.0, 1).is_err());
        assert!(linspace(2.0, 1.0, 3).is_err());
        assert!(linspace(0.0, 1.0, 0).is_err());
        assert!(linspace(f64::NAN, 1.0, 3).is_err());
    }

    #[test]
    fn ordering_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map_ordered(&xs, Execution::Sequential, |x| x * x);
        let par = map_ordered(&xs, Execution::Parallel, |x| x * x);
        assert_eq!(seq, par);
    }
}
