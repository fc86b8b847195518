//! Checks on radial growth profiles.

use super::verdict::{Expectation, Verdict};
use crate::disc_zeros::{
    carleson_exponent, convergence_exponent, counting_n, lambda_profile, DiscPoint, ZeroSequence,
};
use crate::error::Result;
use crate::means::{
    ladder_from_table, order_fit, rho_infty_extrapolate, MeansProfile, MeansTable, Quantity,
    RadialGrid, RESOLUTION_FLOOR,
};
use crate::products::tsuji_sum;

/// Slack on a single fitted exponent.
pub const EXPONENT_SLACK: f64 = 0.15;
/// Slack when two fitted quantities are compared.
pub const COMPARISON_SLACK: f64 = 0.2;
/// Slack on the order-chain inequalities.
pub const CHAIN_SLACK: f64 = 0.1;
/// Largest slope a "bounded" normalized profile may show.
pub const BOUNDED_SLOPE: f64 = 0.1;

fn normalized(profile: &MeansProfile, g: impl Fn(f64) -> f64) -> MeansProfile {
    let mut out = MeansProfile::new(profile.quantity, profile.p);
    for s in &profile.samples {
        out.push(s.j, s.r, s.value / g(s.r));
    }
    out
}

fn log_sq_plus_one(r: f64) -> f64 {
    let l = -(1.0 - r).ln();
    l * l + 1.0
}

/// Forward bound: `m_p(r, log|P_s|) = O((1-r)^{γ-s-1} log 1/(1-r))` for
/// `γ < s+1`, `O(log²(1-r) + 1)` at `γ = s+1`.
pub fn theorem1_forward_from_table(
    name: &str,
    table: &MeansTable,
    gamma: f64,
    s: u32,
) -> Result<Verdict> {
    let mut v = Verdict::new(name);
    let critical = f64::from(s) + 1.0;
    for prof in &table.mp {
        let p = prof.p.unwrap_or(1.0);
        if gamma < critical {
            let est = order_fit(prof, None)?;
            v.require(
                format!("slope_p{p}"),
                est.slope,
                Expectation::at_most(critical - gamma + EXPONENT_SLACK),
            );
            v.observe(format!("residual_p{p}"), est.max_residual);
        } else {
            let est = order_fit(&normalized(prof, log_sq_plus_one), None)?;
            v.require(
                format!("normalized_slope_p{p}"),
                est.slope,
                Expectation::at_most(BOUNDED_SLOPE),
            );
            v.observe(format!("residual_p{p}"), est.max_residual);
        }
    }
    if gamma < critical {
        v.note(format!(
            "slopes of m_p against 1/(1-r); bound s+1-γ = {}, slack {EXPONENT_SLACK}.",
            critical - gamma
        ));
    } else {
        v.note("m_p/(ln²(1/(1-r))+1) must not grow; slope bound 0.1.");
    }
    Ok(v)
}

/// Converse: the Carleson exponent, the λ decay `t` and `ρ_∞[B] = 1 - t[B]`, `s = 0`.
pub fn theorem1_converse_from_table(
    name: &str,
    zs: &ZeroSequence,
    table: &MeansTable,
    grid: &RadialGrid,
    gamma: f64,
) -> Result<Verdict> {
    let mut v = Verdict::new(name);
    let ladder = ladder_from_table(table, None)?;
    let sup = ladder
        .iter()
        .map(|e| e.estimate.slope)
        .fold(f64::NEG_INFINITY, f64::max);
    v.require(
        "sup_slope",
        sup,
        Expectation::at_most(1.0 - gamma + EXPONENT_SLACK),
    );

    let j_max = grid.points()[grid.len() - 1].j;
    let deltas: Vec<f64> = (1..=j_max + 2)
        .map(|k| 0.75 * (-f64::from(k)).exp2())
        .collect();
    let carleson = carleson_exponent(zs, 0, &deltas, 256, Some(gamma))?;
    v.require(
        "gamma_fit",
        carleson.gamma_fit,
        Expectation::between(gamma - EXPONENT_SLACK, gamma + EXPONENT_SLACK),
    );
    v.observe("carleson_c1", carleson.holds_for.map_or(f64::NAN, |t| t.c1));

    let lambda = lambda_profile(zs, grid)?;
    v.require(
        "t_estimate",
        lambda.t_estimate,
        Expectation::between(gamma - EXPONENT_SLACK, gamma + EXPONENT_SLACK),
    );
    let rho_inf = rho_infty_extrapolate(&ladder)?;
    v.observe("rho_infty", rho_inf.extrapolant);
    v.require(
        "one_minus_rho_infty_minus_t",
        (1.0 - rho_inf.extrapolant - lambda.t_estimate).abs(),
        Expectation::at_most(EXPONENT_SLACK),
    );
    v.note("A finite p ladder supports, but cannot prove, a bound uniform in p.");
    Ok(v)
}

/// `Σ |(1-|z_m|²)/(1 - z z̄_m)|^{s+1}` grows at most like
/// `(1-|z|)^{γ-s-1}` (`γ < s+1`) or `log 1/(1-|z|)` (`γ = s+1`) along the
/// ray at `angle`.
pub fn lemma_sum_bound(
    v: &mut Verdict,
    prefix: &str,
    zs: &ZeroSequence,
    gamma: f64,
    s: u32,
    grid: &RadialGrid,
    angle: f64,
) -> Result<()> {
    let mut prof = MeansProfile::new(Quantity::TsujiSum, None);
    for g in grid.points() {
        let z = DiscPoint::from_polar(g.r, angle)?;
        prof.push(g.j, g.r, tsuji_sum(z, zs, s));
    }
    let critical = f64::from(s) + 1.0;
    if gamma < critical {
        let est = order_fit(&prof, None)?;
        v.require(
            format!("{prefix}.slope"),
            est.slope,
            Expectation::at_most(critical - gamma + BOUNDED_SLOPE),
        );
    } else {
        let est = order_fit(&normalized(&prof, |r| -(1.0 - r).ln()), None)?;
        v.require(
            format!("{prefix}.normalized_slope"),
            est.slope,
            Expectation::at_most(BOUNDED_SLOPE),
        );
    }
    Ok(())
}

/// Largest `k ≥ 3` with `k ln²k ≤ x`, found by bisection; 2 when none.
pub fn log2_inverse(x: f64) -> u64 {
    let f = |k: u64| {
        let kf = k as f64;
        let l = kf.ln();
        kf * l * l
    };
    if f(3) > x {
        return 2;
    }
    let (mut lo, mut hi) = (3u64, 4u64);
    while f(hi) <= x {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f(mid) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The `1/(k ln²k)` example: the counting function, its normalized ratio and the orders
/// of the Blaschke product.
pub fn example_section3(
    counting: &ZeroSequence,
    table: &MeansTable,
    j_count: u32,
) -> Result<Verdict> {
    let mut v = Verdict::new("example_section3");
    let mut mismatches = 0usize;
    let mut ratios = Vec::new();
    for j in 1..=j_count {
        let depth = (-f64::from(j)).exp2();
        let r = 1.0 - depth;
        let n = counting_n(counting, r)?;
        let oracle = log2_inverse(1.0 / depth) - 2;
        if n as u64 != oracle {
            mismatches += 1;
        }
        if j >= 10 {
            let l = depth.ln();
            ratios.push(n as f64 * depth * l * l);
        }
    }
    let rises = ratios.windows(2).filter(|w| w[1] >= w[0]).count();
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    v.require(
        "count_mismatches",
        mismatches as f64,
        Expectation::exactly(0.0),
    )
    .require(
        "ratio_non_decreases",
        rises as f64,
        Expectation::exactly(0.0),
    )
    .require("min_ratio", min_ratio, Expectation::at_least(1.0))
    .observe("last_ratio", ratios.last().copied().unwrap_or(f64::NAN));

    let ladder = ladder_from_table(table, None)?;
    let rho_inf = rho_infty_extrapolate(&ladder)?;
    v.require(
        "rho_infty",
        rho_inf.extrapolant,
        Expectation::between(0.85, 1.1),
    );
    let rho_t = order_fit(&table.t, None)?;
    v.require("rho_T", rho_t.slope, Expectation::at_most(BOUNDED_SLOPE));
    v.note("n(r)(1-r)ln²(1-r) tends to 1 only logarithmically; it is required to decrease, not to reach 1.");
    Ok(v)
}

/// What is known in closed form about a member of the order suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Known {
    Nothing,
    /// `exp((1-z)^{-β})`: `ρ_M = β`.
    ExpPower {
        beta: f64,
    },
    /// Canonical product with `n(r) ≍ (1-r)^{-β}`; `ν` from the zeros.
    Product {
        beta: f64,
        nu: f64,
    },
}

/// One member of the order-relation suite.
pub struct OrderCase<'a> {
    pub name: &'a str,
    pub table: &'a MeansTable,
    pub max_modulus: &'a MeansProfile,
    pub known: Known,
}

/// `ρ_T ≤ ρ_M ≤ ρ_T + 1`, `ρ_M ≤ ρ_p + 1/p`, and the closed-form orders.
pub fn order_relations(cases: &[OrderCase<'_>]) -> Result<Verdict> {
    let mut v = Verdict::new("order_relations");
    for c in cases {
        let rho_t = order_fit(&c.table.t, None)?.slope;
        let rho_m = order_fit(c.max_modulus, None)?.slope;
        let ladder = ladder_from_table(c.table, None)?;
        let rho_inf = rho_infty_extrapolate(&ladder)?.extrapolant;
        let n = c.name;
        v.observe(format!("{n}.rho_T"), rho_t)
            .observe(format!("{n}.rho_M"), rho_m)
            .observe(format!("{n}.rho_infty"), rho_inf)
            .require(
                format!("{n}.T_minus_M"),
                rho_t - rho_m,
                Expectation::at_most(CHAIN_SLACK),
            )
            .require(
                format!("{n}.M_minus_T"),
                rho_m - rho_t,
                Expectation::at_most(1.0 + CHAIN_SLACK),
            );
        for e in &ladder {
            v.require(
                format!("{n}.M_minus_p{}", e.p),
                rho_m - e.estimate.slope - 1.0 / e.p,
                Expectation::at_most(CHAIN_SLACK),
            );
        }
        match c.known {
            Known::Nothing => {}
            Known::ExpPower { beta } => {
                v.require(
                    format!("{n}.rho_M_error"),
                    (rho_m - beta).abs(),
                    Expectation::at_most(0.05),
                );
            }
            Known::Product { beta, nu } => {
                v.observe(format!("{n}.nu"), nu)
                    .require(
                        format!("{n}.rho_T_error"),
                        (rho_t - (beta - 1.0)).abs(),
                        Expectation::at_most(EXPONENT_SLACK),
                    )
                    .require(
                        format!("{n}.rho_infty_minus_nu"),
                        (rho_inf - nu).abs(),
                        Expectation::at_most(COMPARISON_SLACK),
                    )
                    .require(
                        format!("{n}.nu_minus_rho_infty"),
                        nu - rho_inf,
                        Expectation::at_most(CHAIN_SLACK),
                    );
            }
        }
    }
    v.note(format!(
        "orders are slopes over the last half of the grid; chain slack {CHAIN_SLACK}."
    ));
    Ok(v)
}

/// Convergence exponent of a zero family on a fine grid of `μ`.
pub fn nu_surrogate(zs: &ZeroSequence) -> Result<f64> {
    let grid: Vec<f64> = (0..=80).map(|i| 0.05 * f64::from(i)).collect();
    Ok(convergence_exponent(zs, &grid)?.estimate)
}

/// `m_p ≤ m_q` for `p < q` at every radius, within twice the effective
/// tolerance.
pub fn means_monotone(tables: &[(&str, &MeansTable)], tol: f64) -> Verdict {
    let mut v = Verdict::new("means_monotone");
    let mut worst = f64::NEG_INFINITY;
    let mut profiles = 0usize;
    for (_, t) in tables {
        profiles += t.mp.len();
        for w in t.mp.windows(2) {
            for (a, b) in w[0].samples.iter().zip(&w[1].samples) {
                let allowed = 2.0 * tol.max(RESOLUTION_FLOOR * a.value.max(b.value));
                worst = worst.max(a.value - b.value - allowed);
            }
        }
    }
    v.require("max_excess", worst, Expectation::at_most(0.0))
        .observe("profiles", profiles as f64)
        .note("excess = m_p - m_q - 2·tol for p < q.");
    v
}
