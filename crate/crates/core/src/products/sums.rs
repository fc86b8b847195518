//! Products and sums over a realized zero sequence.

use serde::{Deserialize, Serialize};

use super::factors::{blaschke_factor_log, log_e_polar, Genus, LogModulus, Polar};
use super::kernel::kernel_polar;
use crate::disc_zeros::{DiscPoint, ZeroSequence};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Which product a truncation bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Blaschke,
    Canonical(Genus),
}

/// Bound on `|log|P(z)| - log|P_N(z)||` from the unrealized zeros of a
/// generator-backed sequence; `0` for explicit lists.
///
/// Blaschke: `|ln|b_k|| ≤ 4(1-|z_k|)/(1-|z|)` once `1-|z_k| ≤ (1-|z|)/8`.
/// Genus `q`: `|ln|E(w,q)|| ≤ 2|w|^{q+1}` for `|w| ≤ 1/2`, with
/// `|w| ≤ 2(1-|z_k|)/(1-|z|)`.
pub fn tail_bound(zs: &ZeroSequence, depth: f64, kind: ProductKind, tol: f64) -> Result<f64> {
    let Some(g) = zs.generator() else {
        return Ok(0.0);
    };
    let first = g.family.tail_max_depth(g.count);
    let (admissible, exponent) = match kind {
        ProductKind::Blaschke => (8.0 * first <= depth, 1.0),
        ProductKind::Canonical(q) => (4.0 * first <= depth, f64::from(q) + 1.0),
    };
    if !admissible {
        return Err(Error::Truncation {
            bound: f64::INFINITY,
            tol,
        });
    }
    let sum = g.family.tail_power_sum(g.count, exponent).ok_or_else(|| {
        Error::Domain(format!(
            "Σ(1-|z_k|)^{exponent} diverges for family `{}`",
            g.family.name()
        ))
    })?;
    let bound = match kind {
        ProductKind::Blaschke => 4.0 * sum / depth,
        ProductKind::Canonical(_) => 2.0 * (2.0 / depth).powf(exponent) * sum,
    };
    if bound > tol {
        return Err(Error::Truncation { bound, tol });
    }
    Ok(bound)
}

fn near_zero(z: &Polar, zs: &ZeroSequence) -> bool {
    zs.points().iter().any(|p| {
        let k = Polar::of(p);
        let s = (0.5 * (z.theta - k.theta)).sin();
        super::factors::dist_sq(z, &k, s) < 1e-6 * k.depth * k.depth
    })
}

fn finish(z: &DiscPoint, zs: &ZeroSequence, value: f64, tail_bound: f64) -> LogModulus {
    let value = if zs.points().contains(z) {
        f64::NEG_INFINITY
    } else {
        value
    };
    LogModulus {
        value,
        tail_bound,
        near_zero: near_zero(&Polar::of(z), zs),
    }
}

/// `log|B(z)|` by direct summation of factor log-moduli. A zero at the
/// origin contributes the factor `z`.
pub fn blaschke_log(z: DiscPoint, zs: &ZeroSequence, tol: f64) -> Result<LogModulus> {
    let bound = tail_bound(zs, z.depth(), ProductKind::Blaschke, tol)?;
    let mut acc = CompensatedSum::new();
    for p in zs.points() {
        let v = if p.is_origin() {
            z.modulus().ln()
        } else {
            blaschke_factor_log(z, *p)?
        };
        acc.add(v);
    }
    let value = acc.value().min(0.0);
    Ok(finish(&z, zs, value, bound))
}

/// `log|B(z)| = -Σ K(z, z_k)(1 - |z_k|)`, the kernel path.
pub fn blaschke_log_kernel(z: DiscPoint, zs: &ZeroSequence, tol: f64) -> Result<LogModulus> {
    let bound = tail_bound(zs, z.depth(), ProductKind::Blaschke, tol)?;
    let pz = Polar::of(&z);
    let mut acc = CompensatedSum::new();
    for p in zs.points() {
        let k = Polar::of(p);
        acc.add(-kernel_polar(&pz, &k) * k.depth);
    }
    let value = acc.value().min(0.0);
    Ok(finish(&z, zs, value, bound))
}

/// `log|P(z, Z, q)|` with `P = ∏ E((1-|z_k|²)/(1-z̄_k z), q)`.
pub fn canonical_product_log(
    z: DiscPoint,
    zs: &ZeroSequence,
    q: Genus,
    tol: f64,
) -> Result<LogModulus> {
    if !zs.origin_excluded() {
        return Err(Error::Domain(
            "canonical product with a zero at the origin".into(),
        ));
    }
    let bound = tail_bound(zs, z.depth(), ProductKind::Canonical(q), tol)?;
    let pz = Polar::of(&z);
    let mut acc = CompensatedSum::new();
    for p in zs.points() {
        let k = Polar::of(p);
        let (s, c) = (0.5 * (pz.theta - k.theta)).sin_cos();
        acc.add(log_e_polar(&pz, &k, s, c, q));
    }
    Ok(finish(&z, zs, acc.value(), bound))
}

/// `Σ |(1-|z_m|²)/(1 - z z̄_m)|^{s+1}`.
pub fn tsuji_sum(z: DiscPoint, zs: &ZeroSequence, s: Genus) -> f64 {
    let pz = Polar::of(&z);
    let e = 0.5 * (f64::from(s) + 1.0);
    let mut acc = CompensatedSum::new();
    for p in zs.points() {
        let k = Polar::of(p);
        let sh = (0.5 * (pz.theta - k.theta)).sin();
        // |1 - z z̄_m|² = |z - z_m|² + (1-|z|²)(1-|z_m|²)
        let denom = super::factors::dist_sq(&pz, &k, sh) + pz.one_minus_sq * k.one_minus_sq;
        acc.add((k.one_minus_sq * k.one_minus_sq / denom).powf(e));
    }
    acc.value()
}

/// `D(z_m, (1-|z_m|²)^{s+4})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalDisc {
    pub center: DiscPoint,
    pub radius: f64,
}

impl ExceptionalDisc {
    /// Whether the circle `|z| = r` meets the open disc.
    pub fn meets_circle(&self, r: f64) -> bool {
        (self.center.modulus() - r).abs() < self.radius
    }

    pub fn contains(&self, z: DiscPoint) -> bool {
        (z.to_complex() - self.center.to_complex()).norm() < self.radius
    }
}

pub fn exceptional_discs(zs: &ZeroSequence, s: Genus) -> Vec<ExceptionalDisc> {
    zs.points()
        .iter()
        .map(|p| {
            let d = p.depth();
            ExceptionalDisc {
                center: *p,
                radius: (d * (2.0 - d)).powi(s as i32 + 4),
            }
        })
        .collect()
}
