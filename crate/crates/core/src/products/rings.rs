//! Closed-form products over the rings family.
//!
//! For `m` zeros `ζ_i = ρe^{i(θ₀ + 2πi/m)}` and `u = (ρe^{-iθ₀}z)^m`,
//!
//! * `∏|ζ_i - z| = |z^m - ρ^m e^{imθ₀}|` and `∏|1 - ζ̄_i z| = |1 - u|`;
//! * `Σ_i w_i^n = (1-ρ²)^n m Σ_{s≥0} C(sm+n-1, n-1) u^s` for
//!   `w_i = (1-ρ²)/(1 - ζ̄_i z)`,
//!
//! so a whole ring costs a handful of transcendental calls whatever `m` is.

use num_complex::Complex64;

use super::factors::Genus;
use super::sums::ProductKind;
use crate::disc_zeros::Family;
use crate::error::{Error, Result};
use crate::function::{CirclePoint, DiscFunction};

/// Deepest level ever summed; keeps `m = 2^{βj}` finite.
const MAX_LEVEL: u32 = 1000;

/// Product over levels `1..=levels` of the rings family.
#[derive(Debug, Clone)]
pub struct RingProduct {
    beta: f64,
    kind: ProductKind,
    levels: u32,
    tail_bound: f64,
    /// Per level: `m` as a float, `1 - ρ`, offset angle, and `P_n` coefficients.
    rings: Vec<Ring>,
}

#[derive(Debug, Clone)]
struct Ring {
    m: f64,
    depth: f64,
    offset: f64,
    /// `coeffs[n-1][k]`: coefficient of `s^k` in `C(sm+n-1, n-1)`.
    coeffs: Vec<Vec<f64>>,
}

impl RingProduct {
    /// Exactly the realized levels `1..=levels`.
    pub fn with_levels(beta: f64, kind: ProductKind, levels: u32) -> Result<Self> {
        Family::Rings { beta }.validate()?;
        if levels > MAX_LEVEL {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_LEVEL} levels"
            )));
        }
        let rings = (1..=levels).map(|j| Ring::new(beta, j, kind)).collect();
        Ok(Self {
            beta,
            kind,
            levels,
            tail_bound: 0.0,
            rings,
        })
    }

    /// The canonical product of the infinite family, truncated where the
    /// omitted levels change `log|P|` by at most `tol` on every circle of depth
    /// at least `min_depth`.
    pub fn infinite(beta: f64, q: Genus, min_depth: f64, tol: f64) -> Result<Self> {
        let e = f64::from(q) + 1.0;
        if e <= beta {
            return Err(Error::Domain(format!(
                "genus {q} too small: Σ m_j 2^(-j(q+1)) diverges for beta = {beta}"
            )));
        }
        if !(min_depth > 0.0 && tol > 0.0) {
            return Err(Error::InvalidParameter(
                "min_depth and tol must be positive".into(),
            ));
        }
        let bound_after = |l: u32| {
            let next = f64::from(l + 1);
            let sum = (next * (beta - e)).exp2() / (1.0 - (beta - e).exp2())
                + (-next * e).exp2() / (1.0 - (-e).exp2());
            2.0 * (2.0 / min_depth).powf(e) * sum
        };
        let mut levels = 1;
        while levels < MAX_LEVEL
            && (4.0 * (-f64::from(levels + 1)).exp2() > min_depth || bound_after(levels) > tol)
        {
            levels += 1;
        }
        let bound = bound_after(levels);
        if bound > tol {
            return Err(Error::Truncation { bound, tol });
        }
        let mut p = Self::with_levels(beta, ProductKind::Canonical(q), levels)?;
        p.tail_bound = bound;
        Ok(p)
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Bound on the omitted levels' contribution.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }
}

impl Ring {
    fn new(beta: f64, j: u32, kind: ProductKind) -> Self {
        let m = (f64::from(j) * beta).exp2().ceil();
        let q = match kind {
            ProductKind::Blaschke => 0,
            ProductKind::Canonical(q) => q,
        };
        let coeffs = (1..=q)
            .map(|n| {
                // ∏_{l=1}^{n-1} (m s + l)/l
                let mut c = vec![1.0];
                for l in 1..n {
                    let lf = f64::from(l);
                    let mut next = vec![0.0; c.len() + 1];
                    for (k, &v) in c.iter().enumerate() {
                        next[k] += v;
                        next[k + 1] += v * m / lf;
                    }
                    c = next;
                }
                c
            })
            .collect();
        Ring {
            m,
            depth: (-f64::from(j)).exp2(),
            offset: Family::ring_offset(j),
            coeffs,
        }
    }

    fn eval(&self, z: &CirclePoint, kind: ProductKind) -> f64 {
        let m = self.m;
        let ln_r = (-z.depth).ln_1p();
        let ln_rho = (-self.depth).ln_1p();
        let x = self.depth * (2.0 - self.depth);
        let s = sin_multiple(m, 0.5 * (z.theta - self.offset));
        let s2 = s * s;

        // ln|r^m e^{imψ} - ρ^m| = m ln max(r, ρ) + ½ ln((1-t)² + 4t sin²(mψ/2))
        let gap = m * (ln_r - ln_rho).abs();
        let t = (-gap).exp();
        let one_minus_t = -(-gap).exp_m1();
        let residual = 0.5 * (one_minus_t * one_minus_t + 4.0 * t * s2).ln();
        let ln_max = ln_r.max(ln_rho);

        let lu = m * (ln_r + ln_rho);
        let q = match kind {
            ProductKind::Blaschke => 0,
            ProductKind::Canonical(q) => q,
        };
        let negligible = lu + f64::from(q.max(1)) * m.ln() < -40.0;
        if negligible {
            return match kind {
                ProductKind::Blaschke => m * ln_max + residual,
                ProductKind::Canonical(q) => {
                    let constant = if ln_rho >= ln_r {
                        remainder(x, q)
                    } else {
                        ln_rho + ln_r + partial_log_series(x, q)
                    };
                    m * constant + residual
                }
            };
        }

        let abs_u = lu.exp();
        let one_minus_abs_u = -lu.exp_m1();
        let ln_den = 0.5 * (one_minus_abs_u * one_minus_abs_u + 4.0 * abs_u * s2).ln();
        let blaschke = m * ln_max + residual - ln_den;
        match kind {
            ProductKind::Blaschke => blaschke,
            ProductKind::Canonical(q) => {
                // u = |u| e^{imψ}; 1 - u from the half-angle sine
                let c_full = 1.0 - 2.0 * s2;
                let s_full = 2.0 * s * sin_multiple_cos(m, 0.5 * (z.theta - self.offset));
                let u = Complex64::new(abs_u * c_full, abs_u * s_full);
                let one_minus_u =
                    Complex64::new(one_minus_abs_u + 2.0 * abs_u * s2, -abs_u * s_full);
                let mut acc = m * ln_rho + blaschke;
                let mut xn = 1.0;
                for n in 1..=q {
                    xn *= x;
                    let f = series_sum(&self.coeffs[n as usize - 1], u, one_minus_u);
                    acc += xn * m * f.re / f64::from(n);
                }
                acc
            }
        }
    }
}

/// `sin(m·a)` for a possibly huge integer-valued `m`, using the exact
/// product split `m·a = p + e`.
fn sin_multiple(m: f64, a: f64) -> f64 {
    let p = m * a;
    let e = m.mul_add(a, -p);
    let (sp, cp) = p.sin_cos();
    sp + e * cp
}

fn sin_multiple_cos(m: f64, a: f64) -> f64 {
    let p = m * a;
    let e = m.mul_add(a, -p);
    let (sp, cp) = p.sin_cos();
    cp - e * sp
}

/// `Σ_{n≤q} x^n/n`.
fn partial_log_series(x: f64, q: Genus) -> f64 {
    let mut acc = 0.0;
    let mut xn = 1.0;
    for n in 1..=q {
        xn *= x;
        acc += xn / f64::from(n);
    }
    acc
}

/// `ln(1 - x) + Σ_{n≤q} x^n/n = -Σ_{n>q} x^n/n`.
fn remainder(x: f64, q: Genus) -> f64 {
    if x >= 0.5 {
        return (-x).ln_1p() + partial_log_series(x, q);
    }
    let mut xn = x.powi(q as i32);
    let mut acc = 0.0;
    let mut n = q + 1;
    loop {
        xn *= x;
        let term = xn / f64::from(n);
        acc -= term;
        if term <= 1e-18 * acc.abs() || n > q + 400 {
            return acc;
        }
        n += 1;
    }
}

/// `Σ_k c_k Σ_{s≥0} s^k u^s` with `Σ s^k u^s = u A_k(u)/(1-u)^{k+1}` for
/// `k ≥ 1`, `A_k` the Eulerian polynomials.
fn series_sum(coeffs: &[f64], u: Complex64, one_minus_u: Complex64) -> Complex64 {
    let inv = one_minus_u.inv();
    let mut total = coeffs[0] * inv;
    let mut eulerian = vec![1.0];
    let mut inv_pow = inv;
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        if k > 1 {
            let kk = k as f64;
            let mut next = vec![0.0; k];
            for (i, v) in next.iter_mut().enumerate() {
                let fi = i as f64;
                let keep = eulerian.get(i).copied().unwrap_or(0.0) * (fi + 1.0);
                let shift = if i > 0 {
                    eulerian.get(i - 1).copied().unwrap_or(0.0) * (kk - fi)
                } else {
                    0.0
                };
                *v = keep + shift;
            }
            eulerian = next;
        }
        inv_pow *= inv;
        let mut poly = Complex64::new(0.0, 0.0);
        for &a in eulerian.iter().rev() {
            poly = poly * u + a;
        }
        total += c * u * poly * inv_pow;
    }
    total
}

impl DiscFunction for RingProduct {
    fn log_modulus(&self, z: CirclePoint) -> f64 {
        let mut acc = 0.0;
        for ring in &self.rings {
            acc += ring.eval(&z, self.kind);
        }
        match self.kind {
            ProductKind::Blaschke => acc.min(0.0),
            ProductKind::Canonical(_) => acc,
        }
    }

    fn features(&self, depth: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for ring in &self.rings {
            let spacing = std::f64::consts::TAU / ring.m;
            if ring.m <= 1024.0 && (ring.depth - depth).abs() <= 4.0 * spacing {
                for i in 0..ring.m as usize {
                    out.push(ring.offset + spacing * i as f64);
                }
            }
        }
        out
    }

    fn zero_on_circle(&self, depth: f64) -> bool {
        self.rings.iter().any(|r| r.depth == depth)
    }
}
