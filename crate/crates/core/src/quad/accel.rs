//! Iterated Aitken Δ² acceleration of partial sums.

/// Applies up to `depth` rounds of Aitken's Δ² to the last `2 depth + 1` sums and
/// returns the final entry. Rounds stop early once the sequence is flat to
/// rounding level. `None` if there are too few sums or a second difference
/// vanishes on a non-constant window.
pub fn iterated_aitken(sums: &[f64], depth: usize) -> Option<f64> {
    if depth == 0 {
        return sums.last().copied();
    }
    if sums.len() < 2 * depth + 1 {
        return None;
    }
    let mut seq = sums[sums.len() - (2 * depth + 1)..].to_vec();
    for _ in 0..depth {
        let scale = seq.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        let spread = seq
            .windows(2)
            .fold(0.0f64, |m, w| m.max((w[1] - w[0]).abs()));
        // already converged to rounding level; further rounds only amplify noise
        if spread <= 64.0 * f64::EPSILON * scale {
            break;
        }
        let next: Option<Vec<f64>> = seq
            .windows(3)
            .map(|w| {
                let d1 = w[2] - w[1];
                let d2 = d1 - (w[1] - w[0]);
                if d2 == 0.0 {
                    return (d1 == 0.0).then_some(w[2]);
                }
                let a = w[2] - d1 * d1 / d2;
                a.is_finite().then_some(a)
            })
            .collect();
        seq = next?;
    }
    seq.last().copied()
}
