//! Order estimation: log-log regression of radial profiles.
//!
//! The orders are limsups as `r → 1`; here they are estimated by the slope of
//! `ln value` against `-ln(1 - r)` over a window of dyadic radii, with the
//! worst residual reported alongside.

use serde::{Deserialize, Serialize};

use super::profile::MeansProfile;
use crate::error::{Error, Result};

/// Result of a least-squares line fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return Err(Error::Fit(format!(
            "need at least two paired samples, got {n}"
        )));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx <= 0.0 {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    Ok(LineFit {
        slope,
        intercept,
        max_residual,
    })
}

/// Slope of `ln value` against `-ln(1 - r)` over a window of grid levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderEstimate {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
    pub window: (u32, u32),
    /// Samples entering the fit.
    pub used: usize,
    /// Window samples dropped because their value was not positive.
    pub dropped: usize,
}

impl OrderEstimate {
    /// Whether the profile vanished on the whole window (order 0 by convention).
    pub fn vanishing(&self) -> bool {
        self.used == 0
    }
}

/// Minimum number of samples an order fit accepts.
pub const MIN_FIT_SAMPLES: usize = 4;

/// `order_fit`. With `window = None` the last half of the profile is used
/// (at least [`MIN_FIT_SAMPLES`] samples), the surrogate for a limsup.
pub fn order_fit(profile: &MeansProfile, window: Option<(u32, u32)>) -> Result<OrderEstimate> {
    let chosen: Vec<_> = match window {
        Some((lo, hi)) => profile
            .samples
            .iter()
            .filter(|s| s.j >= lo && s.j <= hi)
            .copied()
            .collect(),
        None => {
            let n = profile.samples.len();
            let take = n.div_ceil(2).max(MIN_FIT_SAMPLES).min(n);
            profile.samples[n - take..].to_vec()
        }
    };
    if chosen.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!(
            "window holds {} samples, need {MIN_FIT_SAMPLES}",
            chosen.len()
        )));
    }
    let window = (chosen[0].j, chosen[chosen.len() - 1].j);
    let positive: Vec<_> = chosen
        .iter()
        .filter(|s| s.value > 0.0 && s.value.is_finite())
        .collect();
    let dropped = chosen.len() - positive.len();
    if positive.is_empty() && chosen.iter().all(|s| s.value == 0.0) {
        return Ok(OrderEstimate {
            slope: 0.0,
            intercept: f64::NEG_INFINITY,
            max_residual: 0.0,
            window,
            used: 0,
            dropped,
        });
    }
    if positive.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!(
            "only {} positive samples in window {window:?}",
            positive.len()
        )));
    }
    let xs: Vec<f64> = positive.iter().map(|s| -(1.0 - s.r).ln()).collect();
    let ys: Vec<f64> = positive.iter().map(|s| s.value.ln()).collect();
    let fit = least_squares(&xs, &ys)?;
    Ok(OrderEstimate {
        slope: fit.slope,
        intercept: fit.intercept,
        max_residual: fit.max_residual,
        window,
        used: positive.len(),
        dropped,
    })
}

/// One rung of a `ρ_p` ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderEntry {
    pub p: f64,
    pub estimate: OrderEstimate,
    pub profile: MeansProfile,
}

/// Extrapolated `ρ_∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfinityOrder {
    pub extrapolant: f64,
    pub last_slope: f64,
}

/// Allowed decrease of consecutive ladder slopes beyond their residuals.
pub const LADDER_SLACK: f64 = 0.02;

/// `ρ_∞ = lim ρ_p`, extrapolated linearly in `1/p` from the last three rungs
/// (the slopes approach their limit like `ρ_∞ - c/p`).
pub fn rho_infty_extrapolate(ladder: &[LadderEntry]) -> Result<InfinityOrder> {
    if ladder.len() < 4 {
        return Err(Error::Fit(format!(
            "ladder has {} rungs, need at least 4",
            ladder.len()
        )));
    }
    for w in ladder.windows(2) {
        if (w[1].p - 2.0 * w[0].p).abs() > 1e-12 * w[1].p {
            return Err(Error::Fit(format!(
                "ladder exponents must double: {} then {}",
                w[0].p, w[1].p
            )));
        }
        let allowance = w[0].estimate.max_residual + w[1].estimate.max_residual + LADDER_SLACK;
        if w[1].estimate.slope < w[0].estimate.slope - allowance {
            return Err(Error::Inconsistent(format!(
                "slope drops from {} (p = {}) to {} (p = {})",
                w[0].estimate.slope, w[0].p, w[1].estimate.slope, w[1].p
            )));
        }
    }
    let tail = &ladder[ladder.len() - 3..];
    let xs: Vec<f64> = tail.iter().map(|e| 1.0 / e.p).collect();
    let ys: Vec<f64> = tail.iter().map(|e| e.estimate.slope).collect();
    let fit = least_squares(&xs, &ys)?;
    Ok(InfinityOrder {
        extrapolant: fit.intercept,
        last_slope: ladder[ladder.len() - 1].estimate.slope,
    })
}
