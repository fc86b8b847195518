//! Carleson-square statistics.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::sequence::ZeroSequence;
use crate::angle;
use crate::error::{Error, Result};
use crate::means::{least_squares, order_fit, MeansProfile, OrderEstimate, Quantity, RadialGrid};
use crate::sum::CompensatedSum;

/// `S(φ, δ) = {ρe^{iθ} : ρ ≥ 1 - δ, -πδ < θ - φ ≤ πδ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonSquare {
    phi: f64,
    delta: f64,
}

impl CarlesonSquare {
    pub fn new(phi: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta {delta} not in (0, 1]"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter("phi must be finite".into()));
        }
        Ok(Self {
            phi: angle::normalize(phi),
            delta,
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Membership for a point given by depth `1 - |z|` and angle.
    pub fn contains(&self, depth: f64, theta: f64) -> bool {
        if depth > self.delta {
            return false;
        }
        let d = angle::diff(theta, self.phi);
        let half = PI * self.delta;
        -half < d && d <= half
    }
}

/// `Σ_{z_k ∈ S(φ,δ)} (1 - |z_k|)^{s+1}`, canonical order, compensated.
pub fn carleson_sum(z: &ZeroSequence, square: &CarlesonSquare, s: u32) -> f64 {
    let e = s as i32 + 1;
    let depths = z.depths();
    let end = depths.partition_point(|&d| d > square.delta());
    let mut acc = CompensatedSum::new();
    for (&d, &theta) in depths[end..].iter().zip(&z.angles()[end..]) {
        if square.contains(d, theta) {
            acc.add(d.powi(e));
        }
    }
    acc.value()
}

/// `sup_φ` of [`carleson_sum`] at fixed `δ`, exact: the half-open window's
/// sum only changes when a stored angle crosses an edge, so it suffices to
/// try windows whose closed right edge sits on a stored angle.
///
/// Returns the maximizing `φ` and the sum.
pub fn carleson_sup(z: &ZeroSequence, delta: f64, s: u32) -> Result<(f64, f64)> {
    CarlesonSquare::new(0.0, delta)?;
    let e = s as i32 + 1;
    let depths = z.depths();
    let start = depths.partition_point(|&d| d > delta);
    let mut members: Vec<(f64, usize)> =
        (start..depths.len()).map(|k| (z.angles()[k], k)).collect();
    if members.is_empty() {
        return Ok((0.0, 0.0));
    }
    if delta >= 1.0 {
        let total = crate::sum::compensated_sum(depths[start..].iter().map(|d| d.powi(e)));
        return Ok((0.0, total));
    }
    members.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let n = members.len();
    let width = TAU * delta;
    let theta_at = |k: usize| {
        if k < n {
            members[k].0
        } else {
            members[k - n].0 + TAU
        }
    };
    let weight = |k: usize| depths[members[k % n].1].powi(e);

    // right end i runs over n..2n in the unrolled list; window (θ_i - w, θ_i]
    let mut best = (f64::NEG_INFINITY, n);
    let mut left = 1;
    let mut running = CompensatedSum::new();
    for k in 1..=n {
        running.add(weight(k));
    }
    // window for right end n covers indices left..=n
    for i in n..2 * n {
        if i > n {
            running.add(weight(i));
        }
        while theta_at(left) <= theta_at(i) - width {
            running.add(-weight(left));
            left += 1;
        }
        let v = running.value();
        if v > best.0 {
            best = (v, i);
        }
    }
    // shift the winning window right by half its slack on both edges so the
    // closed right edge is not decided by rounding, then sum canonically
    let i = best.1;
    let mut first = i + 1 - n;
    while theta_at(first) <= theta_at(i) - width {
        first += 1;
    }
    let next = if i + 1 < 2 * n {
        theta_at(i + 1)
    } else {
        members[0].0 + 2.0 * TAU
    };
    let slack = (next - theta_at(i)).min(theta_at(first) - (theta_at(i) - width));
    let phi = angle::normalize(theta_at(i) + 0.5 * slack - PI * delta);
    let value = carleson_sum(z, &CarlesonSquare::new(phi, delta)?, s);
    Ok((phi, value))
}

/// One `(δ, φ, sum)` observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonSample {
    pub delta: f64,
    pub phi: f64,
    pub sum: f64,
}

/// Verdict on a target exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonTarget {
    pub gamma: f64,
    /// `max sum/δ^γ` over the fit window.
    pub c1: f64,
    /// Whether every sample satisfies `sum ≤ c1·δ^γ`.
    pub holds: bool,
}

/// Empirical fit of `sup_φ Σ_{S(φ,δ)} (1-|z|)^{s+1} ≤ C₁δ^γ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlesonReport {
    pub s: u32,
    /// Fitted exponent, clamped to `[0, s+1]`.
    pub gamma_fit: f64,
    /// Unclamped regression slope.
    pub raw_slope: f64,
    pub c1_fit: f64,
    pub samples: Vec<CarlesonSample>,
    /// Number of samples inside the fit window `δ ≥ 1 - |z_last|`.
    pub fit_samples: usize,
    pub holds_for: Option<CarlesonTarget>,
}

/// `carleson_exponent`. The fit only uses `δ` at or above the depth of the
/// last realized zero: below it the realization stops sampling `Z`.
pub fn carleson_exponent(
    z: &ZeroSequence,
    s: u32,
    delta_grid: &[f64],
    phi_resolution: usize,
    target_gamma: Option<f64>,
) -> Result<CarlesonReport> {
    if delta_grid.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 grid values of delta, got {}",
            delta_grid.len()
        )));
    }
    if delta_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter(
            "delta grid must be strictly descending".into(),
        ));
    }
    let mut samples = Vec::with_capacity(delta_grid.len());
    for &delta in delta_grid {
        let (mut phi, mut sum) = carleson_sup(z, delta, s)?;
        for k in 0..phi_resolution {
            let candidate = TAU * k as f64 / phi_resolution as f64;
            let v = carleson_sum(z, &CarlesonSquare::new(candidate, delta)?, s);
            if v > sum {
                phi = candidate;
                sum = v;
            }
        }
        samples.push(CarlesonSample { delta, phi, sum });
    }
    let floor = z.last_depth().unwrap_or(0.0);
    let window: Vec<&CarlesonSample> = samples
        .iter()
        .filter(|c| c.delta >= floor && c.sum > 0.0)
        .collect();
    if window.len() < 3 {
        return Err(Error::Fit(format!(
            "only {} usable samples above the realization floor {floor:e}",
            window.len()
        )));
    }
    let xs: Vec<f64> = window.iter().map(|c| c.delta.ln()).collect();
    let ys: Vec<f64> = window.iter().map(|c| c.sum.ln()).collect();
    let fit = least_squares(&xs, &ys)?;
    let gamma_fit = fit.slope.clamp(0.0, f64::from(s) + 1.0);
    let c1_fit = window
        .iter()
        .map(|c| c.sum / c.delta.powf(gamma_fit))
        .fold(0.0, f64::max);
    let holds_for = target_gamma.map(|gamma| {
        let c1 = window
            .iter()
            .map(|c| c.sum / c.delta.powf(gamma))
            .fold(0.0, f64::max);
        let holds = samples
            .iter()
            .all(|c| c.sum <= c1 * c.delta.powf(gamma) * (1.0 + 1e-12));
        CarlesonTarget { gamma, c1, holds }
    });
    Ok(CarlesonReport {
        s,
        gamma_fit,
        raw_slope: fit.slope,
        c1_fit,
        fit_samples: window.len(),
        samples,
        holds_for,
    })
}

/// `max_φ λ(φ, r)` profile with the decay exponent `t` it implies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub profile: MeansProfile,
    /// Decay exponent of `max_φ λ(φ, r)` in `1 - r`.
    pub t_estimate: f64,
    pub fit: OrderEstimate,
}

/// `λ(φ, r) = Σ_{z_k ∈ S(φ,(1-r)/2)} (1 - |z_k|)`, maximized over `φ` on every
/// grid radius.
pub fn lambda_profile(z: &ZeroSequence, grid: &RadialGrid) -> Result<LambdaReport> {
    let mut profile = MeansProfile::new(Quantity::LambdaMax, None);
    for g in grid.points() {
        let delta = g.depth() / 2.0;
        z.check_realized("lambda profile", delta)?;
        let (_, value) = carleson_sup(z, delta, 0)?;
        profile.push(g.j, g.r, value);
    }
    let fit = order_fit(
        &profile,
        Some((grid.points()[0].j, grid.points()[grid.len() - 1].j)),
    )?;
    Ok(LambdaReport {
        t_estimate: -fit.slope,
        profile,
        fit,
    })
}

/// Square for the level set `E_m(re^{iφ}) = S(φ, (1-r)2^{m-1})`, capped at `δ = 1`.
pub fn level_set_square(r: f64, phi: f64, m: u32) -> Result<CarlesonSquare> {
    if m == 0 {
        return Err(Error::InvalidParameter("E_0 is empty".into()));
    }
    let delta = ((1.0 - r) * f64::from(m - 1).exp2()).min(1.0);
    CarlesonSquare::new(phi, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc_zeros::{DiscPoint, Family};

    #[test]
    fn empty_square() {
        let z = ZeroSequence::empty();
        let sq = CarlesonSquare::new(1.0, 0.5).unwrap();
        assert_eq!(carleson_sum(&z, &sq, 0), 0.0);
    }

    #[test]
    fn single_zero_at_depth_delta() {
        let delta = 0.125;
        let phi = 2.0;
        let z = ZeroSequence::explicit(vec![DiscPoint::from_polar(1.0 - delta, phi).unwrap()]);
        let sq = CarlesonSquare::new(phi, delta).unwrap();
        assert!((carleson_sum(&z, &sq, 0) - delta).abs() < 1e-15);
    }

    #[test]
    fn geometric_ray_square() {
        let z = ZeroSequence::from_family(Family::Geometric { q: 1.0, c: 0.5 }, 40).unwrap();
        for m in 1..20 {
            let sq = CarlesonSquare::new(0.0, (-f64::from(m)).exp2()).unwrap();
            // oracle: finite geometric sum over realized levels m..=40
            let oracle: f64 = (m..=40).map(|j| (-f64::from(j)).exp2()).sum();
            let got = carleson_sum(&z, &sq, 0);
            assert!((got - oracle).abs() < 1e-15, "m = {m}");
            assert!((got - 2f64.powi(1 - m)).abs() < 1e-11);
        }
    }

    #[test]
    fn half_open_edges() {
        let delta = 0.25;
        let half = PI * delta;
        let z = ZeroSequence::explicit(vec![
            DiscPoint::from_polar(0.9, 1.0 + half).unwrap(),
            DiscPoint::from_polar(0.9, 1.0 - half - 1e-12).unwrap(),
        ]);
        let sq = CarlesonSquare::new(1.0, delta).unwrap();
        assert!(sq.contains(0.1, 1.0 + half));
        assert!(!sq.contains(0.1, 1.0 - half));
        assert!((carleson_sum(&z, &sq, 0) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn full_square_holds_everything() {
        let z = ZeroSequence::from_family(Family::RadialPower { beta: 0.5 }, 300).unwrap();
        let total = crate::sum::compensated_sum(z.depths().iter().map(|d| d * d));
        for phi in [0.0, 1.0, 4.0] {
            let sq = CarlesonSquare::new(phi, 1.0).unwrap();
            assert!((carleson_sum(&z, &sq, 1) - total).abs() < 1e-14);
        }
    }

    #[test]
    fn sup_dominates_grid() {
        let z = ZeroSequence::from_family(Family::RadialPower { beta: 1.0 }, 500).unwrap();
        for delta in [0.5, 0.1, 0.01] {
            let (phi, best) = carleson_sup(&z, delta, 0).unwrap();
            let at_phi = carleson_sum(&z, &CarlesonSquare::new(phi, delta).unwrap(), 0);
            assert!((at_phi - best).abs() < 1e-12 * best.max(1e-300));
            for k in 0..2000 {
                let sq = CarlesonSquare::new(TAU * k as f64 / 2000.0, delta).unwrap();
                assert!(carleson_sum(&z, &sq, 0) <= best * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn radial_ray_exponent_is_one() {
        let z = ZeroSequence::from_family(Family::Geometric { q: 1.0, c: 0.5 }, 30).unwrap();
        let grid: Vec<f64> = (1..=24).map(|m| (-f64::from(m)).exp2()).collect();
        let rep = carleson_exponent(&z, 0, &grid, 64, Some(1.0)).unwrap();
        assert!((0.9..=1.1).contains(&rep.gamma_fit), "{}", rep.gamma_fit);
    }

    #[test]
    fn lattice_exponent_is_gamma() {
        let fam = Family::GammaLattice { gamma: 0.5, s: 0 };
        let z = ZeroSequence::through_level(fam, 16).unwrap();
        let grid: Vec<f64> = (1..=16).map(|m| (-f64::from(m)).exp2()).collect();
        let rep = carleson_exponent(&z, 0, &grid, 256, None).unwrap();
        assert!((0.4..=0.6).contains(&rep.gamma_fit), "{}", rep.gamma_fit);
    }

    #[test]
    fn single_zero_plateau() {
        let d = (-5f64).exp2();
        let z = ZeroSequence::explicit(vec![DiscPoint::new(1.0 - d, 0.0).unwrap()]);
        let grid: Vec<f64> = (1..=10).map(|m| (-f64::from(m)).exp2()).collect();
        let rep = carleson_exponent(&z, 0, &grid, 16, Some(1.0)).unwrap();
        assert_eq!(rep.fit_samples, 5);
        assert!(rep.gamma_fit.abs() < 1e-9);
        let target = rep.holds_for.unwrap();
        assert!(target.holds);
        assert!((target.c1 - 1.0).abs() < 1e-12);
        assert!(carleson_exponent(&z, 0, &grid[..2], 16, None).is_err());
    }

    #[test]
    fn lambda_single_zero() {
        let d = (-6f64).exp2();
        let z = ZeroSequence::explicit(vec![DiscPoint::from_polar(1.0 - d, 1.0).unwrap()]);
        let grid = RadialGrid::dyadic(2, 10).unwrap();
        let rep = lambda_profile(&z, &grid).unwrap();
        for (g, sample) in grid.points().iter().zip(&rep.profile.samples) {
            let expected = if g.depth() / 2.0 >= d { d } else { 0.0 };
            assert!((sample.value - expected).abs() < 1e-15);
        }
        assert_eq!(rep.t_estimate, 0.0);
    }

    #[test]
    fn level_sets_are_nested() {
        let r = 1.0 - (-8f64).exp2();
        let e1 = level_set_square(r, 0.4, 1).unwrap();
        assert_eq!(e1.delta(), 1.0 - r);
        let z = ZeroSequence::from_family(Family::RadialPower { beta: 1.2 }, 2000).unwrap();
        let mut prev = 0.0;
        for m in 1..12 {
            let sq = level_set_square(r, 0.4, m).unwrap();
            let v = carleson_sum(&z, &sq, 0);
            assert!(v >= prev);
            prev = v;
        }
        assert!(level_set_square(r, 0.4, 0).is_err());
    }
}
