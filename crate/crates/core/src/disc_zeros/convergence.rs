//! Exponent of convergence by tail doubling.

use serde::{Deserialize, Serialize};

use super::sequence::ZeroSequence;
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Tail-increment ratio below which a sum is declared convergent.
pub const DIVERGENCE_THRESHOLD: f64 = 0.95;

/// One grid value of `μ` and its tail-doubling ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailRatio {
    pub mu: f64,
    /// `(S_{4N} - S_{2N}) / (S_{2N} - S_N)` for `S_M = Σ_{k≤M} (1-|z_k|)^{μ+1}`.
    pub ratio: f64,
}

/// Bracket on `inf{μ ≥ 0 : Σ(1-|z_k|)^{μ+1} < ∞}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// Largest grid `μ` at or below `upper` whose ratio is at least 1, or the
    /// grid value just below `upper`.
    pub lower: f64,
    /// Smallest grid `μ` with ratio below the threshold.
    pub upper: f64,
    /// Where the ratio crosses 1, interpolated in `ln ratio`; lies in
    /// `[lower, upper]`.
    pub estimate: f64,
    pub ratios: Vec<TailRatio>,
    pub count: usize,
}

/// `convergence_exponent`: compares tail increments of the partial sums at
/// `N`, `2N`, `4N` points, `N` the realized count. Level-structured
/// families compare the sums over the two levels after the realized ones.
pub fn convergence_exponent(z: &ZeroSequence, mu_grid: &[f64]) -> Result<ConvergenceReport> {
    let generator = z.generator().ok_or_else(|| {
        Error::InvalidParameter("an explicit finite list converges for every exponent".into())
    })?;
    if mu_grid.is_empty() || mu_grid.iter().any(|m| !(*m >= 0.0)) {
        return Err(Error::InvalidParameter(
            "mu grid must be nonempty and nonnegative".into(),
        ));
    }
    if mu_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "mu grid must be strictly ascending".into(),
        ));
    }
    let n = generator.count;
    let family = generator.family;
    let ratios: Vec<TailRatio> = if family.level_size(1).is_some() {
        // a doubled count would end inside one level; compare the two whole
        // levels after the realized ones instead
        let mut levels = 0u32;
        while family
            .count_through_level(levels + 1)
            .is_some_and(|c| c <= n)
        {
            levels += 1;
        }
        let level_sum =
            |j: u32, e: f64| family.level_size(j).unwrap_or(0) as f64 * (-f64::from(j) * e).exp2();
        mu_grid
            .iter()
            .map(|&mu| {
                let e = mu + 1.0;
                let first = level_sum(levels + 1, e);
                let second = level_sum(levels + 2, e);
                let ratio = if first > 0.0 { second / first } else { 0.0 };
                TailRatio { mu, ratio }
            })
            .collect()
    } else {
        let depths: Vec<f64> = (0..4 * n).map(|k| family.depth_and_angle(k).0).collect();
        mu_grid
            .iter()
            .map(|&mu| {
                let e = mu + 1.0;
                let block = |range: std::ops::Range<usize>| {
                    let mut acc = CompensatedSum::new();
                    for &d in &depths[range] {
                        acc.add(d.powf(e));
                    }
                    acc.value()
                };
                let first = block(n..2 * n);
                let second = block(2 * n..4 * n);
                let ratio = if first > 0.0 { second / first } else { 0.0 };
                TailRatio { mu, ratio }
            })
            .collect()
    };

    let Some(i) = ratios.iter().position(|t| t.ratio < DIVERGENCE_THRESHOLD) else {
        return Err(Error::Fit(format!(
            "no grid exponent up to {} shows convergence",
            mu_grid[mu_grid.len() - 1]
        )));
    };
    let upper = ratios[i].mu;
    let lower = ratios[..i]
        .iter()
        .rev()
        .find(|t| t.ratio >= 1.0)
        .map(|t| t.mu)
        .unwrap_or(if i == 0 { upper } else { ratios[i - 1].mu });

    // crossing of ratio = 1 between consecutive grid points
    let mut estimate = lower;
    for w in ratios.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.mu < lower || b.mu > upper {
            continue;
        }
        if a.ratio >= 1.0 && b.ratio < 1.0 {
            let (la, lb) = (a.ratio.ln(), b.ratio.max(f64::MIN_POSITIVE).ln());
            estimate = a.mu + (b.mu - a.mu) * la / (la - lb);
            break;
        }
    }
    if ratios[0].ratio < 1.0 {
        estimate = mu_grid[0];
    }
    Ok(ConvergenceReport {
        lower,
        upper,
        estimate: estimate.clamp(lower, upper),
        ratios,
        count: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc_zeros::{DiscPoint, Family};

    fn grid(step: f64, max: f64) -> Vec<f64> {
        (0..=(max / step).round() as usize)
            .map(|i| i as f64 * step)
            .collect()
    }

    #[test]
    fn p_series() {
        let z = ZeroSequence::from_family(Family::RadialPower { beta: 2.0 }, 4000).unwrap();
        let rep = convergence_exponent(&z, &grid(0.05, 3.0)).unwrap();
        assert!((0.9..=1.1).contains(&rep.estimate), "{rep:?}");
        assert!(rep.lower <= 1.0 + 1e-9 && rep.upper >= 1.0);
    }

    #[test]
    fn geometric_converges_at_zero() {
        let z = ZeroSequence::from_family(Family::Geometric { q: 1.0, c: 0.5 }, 30).unwrap();
        let g = grid(0.05, 2.0);
        let rep = convergence_exponent(&z, &g).unwrap();
        assert_eq!(rep.lower, 0.0);
        assert!(rep.upper <= g[1]);
        assert_eq!(rep.estimate, 0.0);
    }

    #[test]
    fn log2_converges_at_zero() {
        let z = ZeroSequence::from_family(Family::Log2Example, 1 << 16).unwrap();
        let g = grid(0.05, 1.0);
        let rep = convergence_exponent(&z, &g).unwrap();
        assert!(rep.upper <= g[1], "{rep:?}");
        assert_eq!(rep.estimate, 0.0);
    }

    #[test]
    fn rings_by_levels() {
        for beta in [1.5, 2.0, 2.7] {
            let z = ZeroSequence::through_level(Family::Rings { beta }, 8).unwrap();
            let rep = convergence_exponent(&z, &grid(0.05, 4.0)).unwrap();
            assert!(
                (rep.estimate - (beta - 1.0)).abs() < 0.02,
                "{beta}: {rep:?}"
            );
        }
    }

    #[test]
    fn explicit_list_refused() {
        let z = ZeroSequence::explicit(vec![DiscPoint::new(0.5, 0.0).unwrap()]);
        assert!(convergence_exponent(&z, &[0.0, 0.5]).is_err());
    }
}
