//! Radial growth functionals on a single circle.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{GridPoint, RadialGrid};
use super::orders::{order_fit, LadderEntry};
use super::profile::{MeansProfile, Quantity};
use super::quadrature::integrate_circle;
use crate::error::{Error, Result};
use crate::function::{CirclePoint, DiscFunction};

/// Circle means of `log|f|` at one radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleMeans {
    pub r: f64,
    /// `(1/2π)∫ log|f|`, the quantity in Jensen's formula.
    pub signed_mean: f64,
    /// `T(r, f) = (1/2π)∫ log⁺|f|`.
    pub t: f64,
    /// `(p, m_p(r, f))` with `m_p = ((1/2π)∫ |log|f||^p)^{1/p}`.
    pub mp: Vec<(f64, f64)>,
    pub panels: usize,
}

/// Relative precision floor: targets below `RESOLUTION_FLOOR·max|log|f||`
/// are not resolvable in binary64 and are raised to it.
pub const RESOLUTION_FLOOR: f64 = 1e-12;

/// Computes the signed mean, `T` and every `m_p` of one circle in a single
/// adaptive pass. Each reported value is accurate to
/// `max(tol, RESOLUTION_FLOOR·max|log|f||)`.
pub fn circle_means(
    f: &dyn DiscFunction,
    r: f64,
    depth: f64,
    p_list: &[f64],
    tol: f64,
) -> Result<CircleMeans> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if let Some(&p) = p_list.iter().find(|&&p| !(p >= 1.0)) {
        return Err(Error::InvalidParameter(format!(
            "exponent p = {p} must be ≥ 1"
        )));
    }
    if f.zero_on_circle(depth) {
        return Err(Error::SingularConfiguration { r });
    }
    let features = f.features(depth);
    let eval = |theta: f64| f.log_modulus(CirclePoint { r, depth, theta });

    // scale for the |log|^p components so high powers stay in range
    let probes = 256;
    let mut scale: f64 = 0.0;
    for i in 0..probes {
        let v = eval(TAU * (i as f64 + 0.5) / probes as f64);
        if v.is_finite() {
            scale = scale.max(v.abs());
        }
    }
    for &a in &features {
        for off in [-1e-3, 1e-3] {
            let v = eval(a + off * depth);
            if v.is_finite() {
                scale = scale.max(v.abs());
            }
        }
    }
    if scale == 0.0 {
        scale = 1.0;
    }

    let tol = tol.max(RESOLUTION_FLOOR * scale);
    let dim = 2 + p_list.len();
    let integrand = |theta: f64, out: &mut [f64]| {
        let v = eval(theta);
        out[0] = v;
        out[1] = v.max(0.0);
        let a = v.abs() / scale;
        for (k, &p) in p_list.iter().enumerate() {
            out[2 + k] = a.powf(p);
        }
    };
    let targets = |totals: &[f64]| {
        let mut t = vec![TAU * tol; dim];
        for (k, &p) in p_list.iter().enumerate() {
            let mean = (totals[2 + k] / TAU).max(0.0);
            let mp = scale * mean.powf(1.0 / p);
            // δm_p ≈ m_p·δI/(p·I) ≤ tol
            t[2 + k] = TAU * p * tol * mean / mp.max(tol);
        }
        t
    };
    let res = integrate_circle(&integrand, dim, &features, targets)?;
    if res.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Quadrature(format!(
            "non-finite circle mean at r = {r}"
        )));
    }
    let mp = p_list
        .iter()
        .enumerate()
        .map(|(k, &p)| (p, scale * (res.values[2 + k] / TAU).max(0.0).powf(1.0 / p)))
        .collect();
    Ok(CircleMeans {
        r,
        signed_mean: res.values[0] / TAU,
        t: (res.values[1] / TAU).max(0.0),
        mp,
        panels: res.panels,
    })
}

/// `m_p(r, f)` alone.
pub fn circle_mean_p(f: &dyn DiscFunction, r: f64, p: f64, tol: f64) -> Result<f64> {
    Ok(circle_means(f, r, 1.0 - r, &[p], tol)?.mp[0].1)
}

/// Signed circle mean `(1/2π)∫ log|f(re^{iθ})| dθ`.
pub fn signed_circle_mean(f: &dyn DiscFunction, r: f64, tol: f64) -> Result<f64> {
    Ok(circle_means(f, r, 1.0 - r, &[], tol)?.signed_mean)
}

/// Nevanlinna characteristic `T(r, f)`.
#[allow(non_snake_case)]
pub fn nevanlinna_T(f: &dyn DiscFunction, r: f64, tol: f64) -> Result<f64> {
    Ok(circle_means(f, r, 1.0 - r, &[], tol)?.t)
}

const SCAN_NODES: usize = 4096;
const REFINE_CANDIDATES: usize = 8;

/// `log M(r, f)`: coarse scan of 4096 angles (plus feature angles) followed
/// by golden-section refinement of the best candidates.
pub fn max_modulus(f: &dyn DiscFunction, r: f64, depth: f64, tol: f64) -> Result<f64> {
    if f.zero_on_circle(depth) {
        return Err(Error::SingularConfiguration { r });
    }
    let eval = |theta: f64| f.log_modulus(CirclePoint { r, depth, theta });
    let h = TAU / SCAN_NODES as f64;
    let mut candidates: Vec<(f64, f64)> = (0..SCAN_NODES)
        .map(|i| h * i as f64)
        .chain(f.features(depth))
        .map(|t| (t, eval(t)))
        .collect();
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut best = candidates[0].1;
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    for &(t0, _) in candidates.iter().take(REFINE_CANDIDATES) {
        let (mut a, mut b) = (t0 - h, t0 + h);
        let mut c = b - invphi * (b - a);
        let mut d = a + invphi * (b - a);
        let (mut fc, mut fd) = (eval(c), eval(d));
        while (b - a) > tol.max(1e-15) * h && (b - a) > 1e-15 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = eval(d);
            }
        }
        best = best.max(fc).max(fd);
    }
    if best.is_nan() {
        return Err(Error::Quadrature(format!(
            "maximum modulus undefined at r = {r}"
        )));
    }
    Ok(best)
}

/// Circle means over a whole grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeansTable {
    pub signed: MeansProfile,
    pub t: MeansProfile,
    pub mp: Vec<MeansProfile>,
}

impl MeansTable {
    /// Largest violation of `m_p ≤ m_q` for `p < q` at a common radius.
    pub fn monotonicity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for w in self.mp.windows(2) {
            for (a, b) in w[0].samples.iter().zip(&w[1].samples) {
                worst = worst.max(a.value - b.value);
            }
        }
        worst
    }
}

/// Evaluates [`circle_means`] on every grid radius (in parallel, reduced in
/// grid order).
pub fn means_table(
    f: &dyn DiscFunction,
    grid: &RadialGrid,
    p_list: &[f64],
    tol: f64,
) -> Result<MeansTable> {
    let rows: Vec<(GridPoint, CircleMeans)> = grid
        .points()
        .par_iter()
        .map(|g| circle_means(f, g.r, g.depth(), p_list, tol).map(|m| (*g, m)))
        .collect::<Result<_>>()?;
    let mut signed = MeansProfile::new(Quantity::SignedMean, None);
    let mut t = MeansProfile::new(Quantity::T, None);
    let mut mp: Vec<MeansProfile> = p_list
        .iter()
        .map(|&p| MeansProfile::new(Quantity::Mp, Some(p)))
        .collect();
    for (g, m) in rows {
        signed.push(g.j, g.r, m.signed_mean);
        t.push(g.j, g.r, m.t);
        for (prof, &(_, v)) in mp.iter_mut().zip(&m.mp) {
            prof.push(g.j, g.r, v);
        }
    }
    Ok(MeansTable { signed, t, mp })
}

/// `log⁺M(r, f)` over a grid. A bounded function (`log M ≤ 0`) gives the
/// zero profile and so order 0.
pub fn max_modulus_profile(
    f: &dyn DiscFunction,
    grid: &RadialGrid,
    tol: f64,
) -> Result<MeansProfile> {
    let values: Vec<(GridPoint, f64)> = grid
        .points()
        .par_iter()
        .map(|g| max_modulus(f, g.r, g.depth(), tol).map(|v| (*g, v.max(0.0))))
        .collect::<Result<_>>()?;
    let mut prof = MeansProfile::new(Quantity::LogMaxModulus, None);
    for (g, v) in values {
        prof.push(g.j, g.r, v);
    }
    Ok(prof)
}

/// `ρ_p` ladder: one order fit per exponent on the `m_p` profiles.
pub fn rho_p_ladder(
    f: &dyn DiscFunction,
    grid: &RadialGrid,
    p_list: &[f64],
    tol: f64,
    window: Option<(u32, u32)>,
) -> Result<Vec<LadderEntry>> {
    let table = means_table(f, grid, p_list, tol)?;
    ladder_from_table(&table, window)
}

/// Fits every `m_p` profile of a computed table.
pub fn ladder_from_table(
    table: &MeansTable,
    window: Option<(u32, u32)>,
) -> Result<Vec<LadderEntry>> {
    table
        .mp
        .iter()
        .map(|prof| {
            Ok(LadderEntry {
                p: prof.p.unwrap_or(1.0),
                estimate: order_fit(prof, window)?,
                profile: prof.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Constant, ExpPower};

    #[test]
    fn constant_function_means() {
        let f = Constant(3.0);
        let m = circle_means(&f, 0.9, 0.1, &[1.0, 2.0, 8.0], 1e-10).unwrap();
        for (_, v) in &m.mp {
            assert!((v - 3f64.ln()).abs() < 1e-10);
        }
        assert!((m.t - 3f64.ln()).abs() < 1e-10);
        let small = Constant(0.5);
        let m = circle_means(&small, 0.5, 0.5, &[1.0], 1e-10).unwrap();
        assert!((m.mp[0].1 - 2f64.ln()).abs() < 1e-10);
        assert_eq!(m.t, 0.0);
    }

    #[test]
    fn exp_power_maximum() {
        let f = ExpPower { beta: 0.5 };
        for j in [4, 12, 20] {
            let depth = (-f64::from(j)).exp2();
            let v = max_modulus(&f, 1.0 - depth, depth, 1e-12).unwrap();
            assert!((v - depth.powf(-0.5)).abs() < 1e-9 * v);
        }
    }

    #[test]
    fn t_increases_with_r() {
        // Re 1/(1-z) > 1/2 in the disc, so T is the mean value 1 there
        let flat = ExpPower { beta: 1.0 };
        assert!((nevanlinna_T(&flat, 0.6, 1e-10).unwrap() - 1.0).abs() < 1e-8);
        let f = ExpPower { beta: 2.0 };
        let a = nevanlinna_T(&f, 0.5, 1e-10).unwrap();
        let b = nevanlinna_T(&f, 0.9, 1e-10).unwrap();
        assert!((a - 1.0).abs() < 1e-8 && b > a + 0.1, "{a} {b}");
    }

    #[test]
    fn mp_monotone_in_p() {
        let f = ExpPower { beta: 1.5 };
        let tol = 1e-8;
        let m = circle_means(&f, 0.99, 0.01, &[1.0, 2.0, 4.0, 8.0, 16.0], tol).unwrap();
        for w in m.mp.windows(2) {
            assert!(w[1].1 >= w[0].1 - 2.0 * tol);
        }
    }
}
