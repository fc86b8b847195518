//! Product evaluators for the circle-means machinery.

use super::factors::{log_b_polar, log_e_polar, Polar};
use super::sums::ProductKind;
use crate::disc_zeros::{Family, ZeroSequence};
use crate::error::{Error, Result};
use crate::function::{CirclePoint, DiscFunction};
use crate::means::quadrature::gauss_kronrod;

/// `log|B|` or `log|P_q|` of a finite zero sequence, as a function in its own
/// right. Zeros sharing an angle are grouped so each group costs one sine.
#[derive(Debug, Clone)]
pub struct ProductEvaluator {
    kind: ProductKind,
    angles: Vec<f64>,
    starts: Vec<usize>,
    depths: Vec<f64>,
    /// Within-group suffix sums of `d` and `d²` (depths run deepest first).
    suffix: Vec<(f64, f64)>,
    tail: Option<Log2Tail>,
}

/// Shallow zeros of a group are summed by a second-order expansion of
/// `ln(1 + x)` once every expansion parameter is below this.
const SERIES_ETA: f64 = 1e-4;

/// The unrealized zeros `1 - 1/(k ln²k)`, `k ≥ first`, on the positive axis,
/// summed by the midpoint Euler–Maclaurin rule.
#[derive(Debug, Clone, Copy)]
struct Log2Tail {
    first: f64,
    max_depth: f64,
}

impl ProductEvaluator {
    pub fn new(zs: &ZeroSequence, kind: ProductKind) -> Result<Self> {
        if matches!(kind, ProductKind::Canonical(_)) && !zs.origin_excluded() {
            return Err(Error::Domain(
                "canonical product with a zero at the origin".into(),
            ));
        }
        let mut order: Vec<usize> = (0..zs.len()).collect();
        let (a, d) = (zs.angles(), zs.depths());
        order.sort_by(|&i, &j| a[i].total_cmp(&a[j]).then(d[j].total_cmp(&d[i])));
        let mut angles = Vec::new();
        let mut starts = Vec::new();
        let mut depths = Vec::with_capacity(zs.len());
        for &i in &order {
            if angles.last() != Some(&a[i]) {
                angles.push(a[i]);
                starts.push(depths.len());
            }
            depths.push(d[i]);
        }
        starts.push(depths.len());
        let mut suffix = vec![(0.0, 0.0); depths.len()];
        for w in starts.windows(2) {
            let (mut s1, mut s2) = (0.0, 0.0);
            for i in (w[0]..w[1]).rev() {
                s1 += depths[i];
                s2 += depths[i] * depths[i];
                suffix[i] = (s1, s2);
            }
        }
        Ok(Self {
            kind,
            angles,
            starts,
            depths,
            suffix,
            tail: None,
        })
    }

    /// Blaschke product of the full infinite zero set of the log² example:
    /// realized zeros exactly, the rest through the tail rule.
    pub fn log2_example(zs: &ZeroSequence) -> Result<Self> {
        let g = zs
            .generator()
            .filter(|g| g.family == Family::Log2Example)
            .ok_or_else(|| Error::InvalidParameter("not a log2 realization".into()))?;
        let mut e = Self::new(zs, ProductKind::Blaschke)?;
        e.tail = Some(Log2Tail {
            first: g.count as f64 + 3.0,
            max_depth: g.family.tail_max_depth(g.count),
        });
        Ok(e)
    }

    /// Deepest circle depth at which the tail rule is trusted.
    pub fn min_depth(&self) -> f64 {
        self.tail.map_or(0.0, |t| 8.0 * t.max_depth)
    }

    fn group_sum(&self, z: &Polar, g: usize) -> f64 {
        let (s, c) = (0.5 * (z.theta - self.angles[g])).sin_cos();
        let range = self.starts[g]..self.starts[g + 1];
        let mut acc = 0.0;
        match self.kind {
            ProductKind::Blaschke => {
                let s2 = 4.0 * (1.0 - z.depth) * s * s;
                // |z - ζ|² = D0 + D1·d + d² as a polynomial in the zero's depth
                let d0 = z.depth * z.depth + s2;
                let d1 = -(2.0 * z.depth + s2);
                let ratio = z.one_minus_sq / d0;
                let cutoff = SERIES_ETA / (d1.abs() / d0 + 1.0 + ratio);
                let split =
                    range.start + self.depths[range.clone()].partition_point(|&d| d > cutoff);
                if split < range.end {
                    let (m1, m2) = self.suffix[split];
                    let c2 = -ratio * (1.0 + 2.0 * d1 / d0) - 2.0 * ratio * ratio;
                    acc += 2.0 * ratio * m1 + c2 * m2;
                }
                for &d in &self.depths[range.start..split] {
                    let dr = d - z.depth;
                    let dist = dr * dr + s2 * (1.0 - d);
                    if dist == 0.0 {
                        return f64::NEG_INFINITY;
                    }
                    acc += (z.one_minus_sq * d * (2.0 - d) / dist).ln_1p();
                }
                -0.5 * acc
            }
            ProductKind::Canonical(q) => {
                for &d in &self.depths[range] {
                    let k = Polar {
                        depth: d,
                        theta: self.angles[g],
                        one_minus_sq: d * (2.0 - d),
                    };
                    acc += log_e_polar(z, &k, s, c, q);
                }
                acc
            }
        }
    }
}

impl Log2Tail {
    /// `Σ_{k ≥ first} ln|b_k(z)|`.
    fn eval(&self, z: &Polar) -> f64 {
        let sin_half = (0.5 * z.theta).sin();
        let term = |g: f64| {
            let k = Polar {
                depth: g,
                theta: 0.0,
                one_minus_sq: g * (2.0 - g),
            };
            log_b_polar(z, &k, sin_half)
        };
        let depth_at = |x: f64| {
            let l = x.ln();
            1.0 / (x * l * l)
        };
        // ∫_{first-½}^∞ term(g(x)) dx with v = 1/ln x, where dx = dv/(v² g)
        let v0 = 1.0 / (self.first - 0.5).ln();
        let integrand = |v: f64, out: &mut [f64]| {
            let g = v * v * (-1.0 / v).exp();
            out[0] = if g < 1e-100 {
                // term(g)/g → -(1-|z|²)/|z - 1|²; subnormal g would lose digits
                let dist = z.depth * z.depth + 4.0 * (1.0 - z.depth) * sin_half * sin_half;
                -z.one_minus_sq / dist
            } else {
                term(g) / g
            };
        };
        let panels = 4;
        let mut integral = 0.0;
        for i in 0..panels {
            let a = v0 * i as f64 / panels as f64;
            let b = v0 * (i + 1) as f64 / panels as f64;
            integral += gauss_kronrod(&integrand, a, b, 1).0[0];
        }
        let x0 = self.first - 0.5;
        let slope = term(depth_at(x0 + 0.5)) - term(depth_at(x0 - 0.5));
        integral + slope / 24.0
    }
}

impl DiscFunction for ProductEvaluator {
    fn log_modulus(&self, z: CirclePoint) -> f64 {
        let pz = Polar::circle(&z);
        let mut acc = 0.0;
        for g in 0..self.angles.len() {
            acc += self.group_sum(&pz, g);
        }
        if let Some(t) = &self.tail {
            acc += t.eval(&pz);
        }
        match self.kind {
            ProductKind::Blaschke => acc.min(0.0),
            ProductKind::Canonical(_) => acc,
        }
    }

    fn features(&self, depth: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let mut last_kept = f64::NEG_INFINITY;
        for g in 0..self.angles.len() {
            let range = self.starts[g]..self.starts[g + 1];
            let gap = self.depths[range]
                .iter()
                .map(|d| (d - depth).abs())
                .fold(f64::INFINITY, f64::min);
            if gap <= 2.0 * depth && self.angles[g] - last_kept > 0.25 * gap.max(1e-300) {
                out.push(self.angles[g]);
                last_kept = self.angles[g];
            }
        }
        if self.tail.is_some() {
            out.push(0.0);
        }
        out
    }

    fn zero_on_circle(&self, depth: f64) -> bool {
        self.depths.contains(&depth)
    }
}
