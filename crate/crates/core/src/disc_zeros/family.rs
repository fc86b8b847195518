//! Generators for the zero-set families used throughout the crate.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::point::DiscPoint;
use crate::angle;
use crate::error::{Error, Result};

/// Fractional part of the golden ratio; drives equidistributed angles.
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// A generator-backed zero-set family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum Family {
    /// `1 - |z_k| = k^{-1/β}`, `k ≥ 2`, golden-angle arguments.
    RadialPower { beta: f64 },
    /// `1 - |z_k| = q·c^k`, `k ≥ 1`, all on the positive axis.
    Geometric { q: f64, c: f64 },
    /// `z_k = 1 - 1/(k ln²k)`, `k ≥ 3`.
    #[serde(rename = "log2")]
    Log2Example,
    /// Level `j ≥ 1` holds `⌈2^{j(s+1-γ)}⌉` zeros of modulus `1 - 2^{-j}`,
    /// equally spaced inside the arc of width `2π·2^{-j}` centred at angle 0.
    GammaLattice { gamma: f64, s: u32 },
    /// Level `j ≥ 1` is a full ring of `⌈2^{βj}⌉` equally spaced zeros of
    /// modulus `1 - 2^{-j}`, rotated by the golden angle from level to level.
    Rings { beta: f64 },
}

/// Family plus the number of realized points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    #[serde(flatten)]
    pub family: Family,
    pub count: usize,
}

/// Tail of a family whose unrealized zeros all lie on one ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayTail {
    pub angle: f64,
    /// Estimate of `Σ_tail (1 - |z_k|²)/2`.
    pub mass: f64,
    /// Absolute error of `mass`.
    pub mass_error: f64,
    /// Largest `1 - |z_k|` in the tail.
    pub max_depth: f64,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::RadialPower { .. } => "radial-power",
            Family::Geometric { .. } => "geometric",
            Family::Log2Example => "log2",
            Family::GammaLattice { .. } => "gamma-lattice",
            Family::Rings { .. } => "rings",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            Family::RadialPower { beta } if !(beta > 0.0 && beta.is_finite()) => {
                bad(format!("radial-power needs beta > 0, got {beta}"))
            }
            Family::Geometric { c, .. } if !(c > 0.0 && c < 1.0) => {
                bad(format!("geometric needs c in (0,1), got {c}"))
            }
            Family::Geometric { q, c } if !(q > 0.0 && q * c < 1.0) => {
                bad(format!("geometric needs q > 0 and q·c < 1, got q = {q}"))
            }
            Family::GammaLattice { gamma, s } if !(gamma > 0.0 && gamma <= f64::from(s) + 1.0) => {
                bad(format!(
                    "gamma-lattice needs gamma in (0, s+1], got {gamma} with s = {s}"
                ))
            }
            Family::Rings { beta } if !(beta > 0.0 && beta <= 30.0) => {
                bad(format!("rings needs beta in (0, 30], got {beta}"))
            }
            _ => Ok(()),
        }
    }

    /// Number of zeros on level `j` for level-structured families.
    pub fn level_size(&self, j: u32) -> Option<usize> {
        let exponent = match *self {
            Family::GammaLattice { gamma, s } => f64::from(s) + 1.0 - gamma,
            Family::Rings { beta } => beta,
            _ => return None,
        };
        Some((f64::from(j) * exponent).exp2().ceil() as usize)
    }

    /// Angle of the first zero on level `j` of the rings family.
    pub fn ring_offset(j: u32) -> f64 {
        TAU * (f64::from(j) * GOLDEN).fract()
    }

    /// Total number of zeros on levels `1..=levels`.
    pub fn count_through_level(&self, levels: u32) -> Option<usize> {
        (1..=levels).map(|j| self.level_size(j)).sum()
    }

    /// Depth `1 - |z|` and angle of the point with generation index `index`
    /// (zero-based).
    pub fn depth_and_angle(&self, index: usize) -> (f64, f64) {
        match *self {
            Family::RadialPower { beta } => {
                let k = index as f64 + 2.0;
                (k.powf(-1.0 / beta), TAU * (k * GOLDEN).fract())
            }
            Family::Geometric { q, c } => (q * c.powi(index as i32 + 1), 0.0),
            Family::Log2Example => {
                let k = index as f64 + 3.0;
                let l = k.ln();
                (1.0 / (k * l * l), 0.0)
            }
            Family::GammaLattice { .. } | Family::Rings { .. } => {
                let (j, i) = self.level_position(index);
                let m = self.level_size(j).unwrap_or(1) as f64;
                let depth = (-f64::from(j)).exp2();
                let theta = match self {
                    Family::GammaLattice { .. } => TAU * depth * ((i as f64 + 0.5) / m - 0.5),
                    _ => TAU * (f64::from(j) * GOLDEN).fract() + TAU * i as f64 / m,
                };
                (depth, angle::normalize(theta))
            }
        }
    }

    /// Level and in-level index of a generation index.
    fn level_position(&self, mut index: usize) -> (u32, usize) {
        let mut j = 1;
        loop {
            let m = self.level_size(j).unwrap_or(usize::MAX);
            if index < m {
                return (j, index);
            }
            index -= m;
            j += 1;
        }
    }

    /// Generates the first `count` points, in generation order.
    pub fn generate(&self, count: usize) -> Result<Vec<DiscPoint>> {
        self.validate()?;
        let mut out = Vec::with_capacity(count);
        match self {
            Family::GammaLattice { .. } | Family::Rings { .. } => {
                let mut j = 1;
                'levels: loop {
                    let m = self.level_size(j).unwrap_or(1);
                    let depth = (-f64::from(j)).exp2();
                    for i in 0..m {
                        if out.len() == count {
                            break 'levels;
                        }
                        let theta = match self {
                            Family::GammaLattice { .. } => {
                                TAU * depth * ((i as f64 + 0.5) / m as f64 - 0.5)
                            }
                            _ => TAU * (f64::from(j) * GOLDEN).fract() + TAU * i as f64 / m as f64,
                        };
                        out.push(point_at(depth, angle::normalize(theta))?);
                    }
                    if out.len() == count {
                        break;
                    }
                    j += 1;
                }
            }
            _ => {
                for index in 0..count {
                    let (d, theta) = self.depth_and_angle(index);
                    out.push(point_at(d, theta)?);
                }
            }
        }
        Ok(out)
    }

    /// Upper bound on `Σ_{k > count} (1 - |z_k|)^exponent`, or `None` when the
    /// tail sum diverges.
    pub fn tail_power_sum(&self, count: usize, exponent: f64) -> Option<f64> {
        let e = exponent;
        match *self {
            Family::RadialPower { beta } => {
                let a = e / beta;
                if a <= 1.0 {
                    return None;
                }
                // terms k ≥ count + 2 are unrealized; bound by ∫_{count+1}^∞ x^{-a}
                let start = count as f64 + 1.0;
                Some(start.powf(1.0 - a) / (a - 1.0))
            }
            Family::Geometric { q, c } => {
                let ce = c.powf(e);
                Some(q.powf(e) * ce.powi(count as i32 + 1) / (1.0 - ce) * (1.0 + 1e-12))
            }
            Family::Log2Example => {
                // Σ_{k>K} g(k)^e ≤ g(K+1)^{e-1} Σ_{k>K} g(k) ≤ g(K+1)^{e-1}/ln K
                let last = count as f64 + 2.0;
                let first_tail = self.depth_and_angle(count).0;
                Some(first_tail.powf(e - 1.0).min(1.0) / last.ln())
            }
            Family::GammaLattice { .. } | Family::Rings { .. } => {
                let a = match *self {
                    Family::GammaLattice { gamma, s } => f64::from(s) + 1.0 - gamma,
                    Family::Rings { beta } => beta,
                    _ => unreachable!(),
                };
                if e <= a {
                    return None;
                }
                let (level, used) = if count == 0 {
                    (0, 0)
                } else {
                    let (j, i) = self.level_position(count - 1);
                    (j, i + 1)
                };
                let mut bound = 0.0;
                if level > 0 {
                    let m = self.level_size(level).unwrap_or(0);
                    bound += (m - used) as f64 * (-(f64::from(level)) * e).exp2();
                }
                let next = f64::from(level + 1);
                bound += (next * (a - e)).exp2() / (1.0 - (a - e).exp2());
                bound += (-next * e).exp2() / (1.0 - (-e).exp2());
                Some(bound)
            }
        }
    }

    /// The largest depth among unrealized points.
    pub fn tail_max_depth(&self, count: usize) -> f64 {
        self.depth_and_angle(count).0
    }

    /// Tail description for families whose zeros all lie on a single ray.
    pub fn ray_tail(&self, count: usize) -> Option<RayTail> {
        match *self {
            Family::Geometric { q, c } => {
                let first = q * c.powi(count as i32 + 1);
                let s1 = first / (1.0 - c);
                let s2 = first * first / (1.0 - c * c);
                Some(RayTail {
                    angle: 0.0,
                    mass: s1 - 0.5 * s2,
                    mass_error: 1e-16 * s1,
                    max_depth: first,
                })
            }
            Family::Log2Example => {
                // Euler–Maclaurin for Σ_{k>K} 1/(k ln²k)
                let k = count as f64 + 2.0;
                let l = k.ln();
                let g = 1.0 / (k * l * l);
                let dg = -(l + 2.0) / (k * k * l * l * l);
                let s1 = 1.0 / l - 0.5 * g - dg / 12.0;
                let s2 = log2_square_tail(k);
                Some(RayTail {
                    angle: 0.0,
                    mass: s1 - 0.5 * s2,
                    mass_error: 1.0 / (k.powi(3) * l * l) + 1e-12 * s1,
                    max_depth: self.depth_and_angle(count).0,
                })
            }
            _ => None,
        }
    }

    /// Builds a family from the command-line descriptor.
    pub fn from_descriptor(
        name: &str,
        gamma: Option<f64>,
        beta: Option<f64>,
        c: Option<f64>,
        q: Option<f64>,
        genus: Option<u32>,
    ) -> Result<Family> {
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| Error::InvalidParameter(format!("family `{name}` requires --{flag}")))
        };
        let family = match name {
            "radial-power" => Family::RadialPower {
                beta: need(beta, "beta")?,
            },
            "geometric" => Family::Geometric {
                q: q.unwrap_or(1.0),
                c: need(c, "c")?,
            },
            "log2" | "log2-example" => Family::Log2Example,
            "gamma-lattice" => Family::GammaLattice {
                gamma: need(gamma, "gamma")?,
                s: genus.unwrap_or(0),
            },
            "rings" => Family::Rings {
                beta: need(beta, "beta")?,
            },
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        family.validate()?;
        Ok(family)
    }
}

fn point_at(depth: f64, theta: f64) -> Result<DiscPoint> {
    if theta == 0.0 {
        DiscPoint::new(1.0 - depth, 0.0)
    } else {
        DiscPoint::from_polar(1.0 - depth, theta)
    }
}

/// `Σ_{k>K} 1/(k ln²k)²` by Euler–Maclaurin; the integral
/// `∫_K^∞ dx/(x² ln⁴x) = ∫_0^∞ e^{-L-t}(L+t)^{-4} dt`, `L = ln K`, by Simpson.
fn log2_square_tail(k: f64) -> f64 {
    let l = k.ln();
    let h = 60.0 / 4000.0;
    let f = |t: f64| (-t).exp() * (l + t).powi(-4);
    let mut acc = f(0.0) + f(60.0);
    for i in 1..4000 {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(h * f64::from(i));
    }
    let integral = (-l).exp() * acc * h / 3.0;
    let g = 1.0 / (k * l * l);
    let dg = -2.0 * g * g * (l + 2.0) / (k * l);
    integral - 0.5 * g * g - dg / 12.0
}
