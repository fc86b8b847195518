//! Checks on the kernel and on single product evaluations.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::verdict::{Expectation, Verdict};
use crate::disc_zeros::{DiscPoint, Family, ZeroSequence};
use crate::error::Result;
use crate::means::circle_means;
use crate::products::{
    blaschke_log, blaschke_log_kernel, canonical_product_log, kernel_K, kernel_boundary,
    kernel_lower_bound, ProductEvaluator, ProductKind,
};

const STRATA: [f64; 4] = [0.5, 0.9, 0.99, 0.9999];

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Angle near `center`: uniform half the time, otherwise within a few
/// multiples of `scale` so near-diagonal pairs are well represented.
fn sample_angle(r: &mut ChaCha8Rng, center: f64, scale: f64) -> f64 {
    if r.gen_bool(0.5) {
        r.gen_range(0.0..TAU)
    } else {
        let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        center + sign * scale * 10f64.powf(r.gen_range(-3.0..1.0))
    }
}

/// `K(z, ζ) ≥ (1/12)(1-|z|²)/|z-ζ|²` whenever `1-|ζ| ≤ (1-|z|)/2`.
pub fn check_kernel_inequality(n_samples: usize, seed: u64) -> Result<Verdict> {
    let mut r = rng(seed, 1);
    let mut violations = 0usize;
    let mut min_ratio = f64::INFINITY;
    for i in 0..n_samples {
        let modulus = STRATA[i % STRATA.len()];
        let dz = 1.0 - modulus;
        let tz = r.gen_range(0.0..TAU);
        let z = DiscPoint::from_polar(modulus, tz)?;
        let depth = dz * 0.5 * (1.0 - r.gen::<f64>());
        let zeta = Complex64::from_polar(1.0 - depth, sample_angle(&mut r, tz, dz));
        let k = kernel_K(z, zeta)?;
        let bound = kernel_lower_bound(z, zeta);
        if !(k >= bound) {
            violations += 1;
        }
        min_ratio = min_ratio.min(k / bound);
    }
    let mut v = Verdict::new("kernel");
    v.require("violations", violations as f64, Expectation::exactly(0.0))
        .observe("samples", n_samples as f64)
        .observe("min_ratio", min_ratio)
        .note("|z| stratified over {0.5, 0.9, 0.99, 0.9999}; zero violations required.");
    Ok(v)
}

/// `K ≥ 0` on arbitrary pairs and the Poisson limit at `|ζ| = 1`.
pub fn check_kernel_positivity(n_samples: usize, seed: u64) -> Result<Verdict> {
    let mut r = rng(seed, 2);
    let mut negative = 0usize;
    for i in 0..n_samples {
        let modulus = STRATA[i % STRATA.len()];
        let tz = r.gen_range(0.0..TAU);
        let z = DiscPoint::from_polar(modulus, tz)?;
        let depth = 10f64.powf(r.gen_range(-12.0..0.0));
        let zeta = Complex64::from_polar(1.0 - depth, sample_angle(&mut r, tz, 1.0 - modulus));
        if z.to_complex() == zeta {
            continue;
        }
        let k = kernel_K(z, zeta)?;
        if !(k >= 0.0) {
            negative += 1;
        }
    }
    // exact boundary points cannot be passed as a rounded complex number
    let mut worst = 0.0f64;
    let boundary_samples = n_samples.min(100_000);
    for i in 0..boundary_samples {
        let modulus = [0.0, 0.5, 0.9, 0.99][i % 4];
        let tz = r.gen_range(0.0..TAU);
        let z = DiscPoint::from_polar(modulus, tz)?;
        let theta = sample_angle(&mut r, tz, 0.01);
        let e = Complex64::from_polar(1.0, theta);
        let poisson = (1.0 - z.to_complex().norm_sqr()) / (e - z.to_complex()).norm_sqr();
        let k = kernel_boundary(z, theta);
        worst = worst.max(((k - poisson) / poisson).abs());
    }
    let mut v = Verdict::new("kernel_positivity");
    v.require("negative", negative as f64, Expectation::exactly(0.0))
        .require("poisson_rel_error", worst, Expectation::at_most(1e-12))
        .observe("samples", n_samples as f64)
        .observe("boundary_samples", boundary_samples as f64);
    Ok(v)
}

fn random_zeros(r: &mut ChaCha8Rng, n: usize) -> Result<ZeroSequence> {
    let pts = (0..n)
        .map(|_| {
            let depth = 10f64.powf(r.gen_range(-3.0..0.0)).min(0.999);
            DiscPoint::from_polar(1.0 - depth, r.gen_range(0.0..TAU))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroSequence::explicit(pts))
}

/// Direct factors and the kernel sum give the same `log|B|`.
pub fn check_representation(n_products: usize, n_points: usize, seed: u64) -> Result<Verdict> {
    let mut r = rng(seed, 3);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_diff = 0.0f64;
    for _ in 0..n_products {
        let zs = random_zeros(&mut r, 50)?;
        for _ in 0..n_points {
            let z = DiscPoint::from_polar(r.gen_range(0.0..0.99), r.gen_range(0.0..TAU))?;
            let a = blaschke_log(z, &zs, 1.0)?;
            let b = blaschke_log_kernel(z, &zs, 1.0)?;
            let diff = (a.value - b.value).abs();
            worst_diff = worst_diff.max(diff);
            worst_excess = worst_excess.max(diff - 1e-9 - a.tail_bound - b.tail_bound);
        }
    }
    let mut v = Verdict::new("representation");
    v.require("max_excess", worst_excess, Expectation::at_most(0.0))
        .observe("max_diff", worst_diff)
        .note("excess = |direct - kernel| - 1e-9 - tail bounds.");
    Ok(v)
}

/// Signed circle mean of `log|B|` against `Σ ln max(|z_k|, r)`.
pub fn check_jensen(n_products: usize, seed: u64) -> Result<Verdict> {
    let mut r = rng(seed, 4);
    let radii = [0.35, 0.55, 0.75, 0.9, 0.97];
    let mut worst = 0.0f64;
    for _ in 0..n_products {
        let zs = random_zeros(&mut r, 50)?;
        let f = ProductEvaluator::new(&zs, ProductKind::Blaschke)?;
        for &base in &radii {
            let mut rad: f64 = base;
            // keep the circle clear of zeros
            while zs.points().iter().any(|p| (p.modulus() - rad).abs() < 1e-6) {
                rad += 2e-6;
            }
            let depth = 1.0 - rad;
            let mean = circle_means(&f, rad, depth, &[], 1e-10)?.signed_mean;
            let exact: f64 = zs.points().iter().map(|p| p.modulus().max(rad).ln()).sum();
            worst = worst.max((mean - exact).abs());
        }
    }
    let mut v = Verdict::new("jensen");
    v.require("max_error", worst, Expectation::at_most(1e-8))
        .observe("products", n_products as f64);
    Ok(v)
}

/// Doubling the realization moves `log|P_q|` by no more than the reported
/// tail bound.
pub fn check_truncation_honesty(n_instances: usize, seed: u64) -> Result<Verdict> {
    let mut r = rng(seed, 5);
    let mut worst = f64::NEG_INFINITY;
    let mut refused = 0usize;
    for i in 0..n_instances {
        let q: u32 = r.gen_range(0..3);
        let (family, n) = if i % 2 == 0 {
            // Σ d^{q+1} converges like Σ k^{-2} or faster
            let beta = r.gen_range(0.3..(0.5 * f64::from(q + 1)).min(0.9));
            (Family::RadialPower { beta }, r.gen_range(200..2000))
        } else {
            let c: f64 = r.gen_range(0.5..0.95);
            // tail depth below (1-|z|)/40 so the bound applies; the doubled
            // realization must stay above depth 2^{-52}
            let least = (0.025f64.ln() / c.ln()).ceil() as usize;
            let most = (26.0 / -c.log2()) as usize;
            (Family::Geometric { q: 1.0, c }, r.gen_range(least..most))
        };
        let short = ZeroSequence::from_family(family, n)?;
        let long = ZeroSequence::from_family(family, 2 * n)?;
        let z = DiscPoint::from_polar(r.gen_range(0.0..0.9), r.gen_range(0.0..TAU))?;
        let (a, b) = match (
            canonical_product_log(z, &short, q, 1.0),
            canonical_product_log(z, &long, q, 1.0),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                refused += 1;
                continue;
            }
        };
        worst = worst.max((a.value - b.value).abs() - a.tail_bound);
    }
    let mut v = Verdict::new("truncation");
    v.require("max_excess", worst, Expectation::at_most(0.0))
        .require("refused", refused as f64, Expectation::exactly(0.0))
        .note("excess = |log|P_q|(Z_N) - log|P_q|(Z_2N)| - tail_bound(Z_N).");
    Ok(v)
}
