//! Elementary factors and single Blaschke factors.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::disc_zeros::DiscPoint;
use crate::error::{Error, Result};
use crate::function::CirclePoint;

/// Genus of a canonical product; `0` gives the Blaschke product up to the
/// constant `∏|z_k|`.
pub type Genus = u32;

/// `log|P(z)|` together with a rigorous bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogModulus {
    /// `-∞` exactly when `z` is a realized zero.
    #[serde(serialize_with = "ser_extended", deserialize_with = "de_extended")]
    pub value: f64,
    pub tail_bound: f64,
    /// `z` lies within `10⁻³(1 - |z_k|)` of some zero.
    pub near_zero: bool,
}

fn ser_extended<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v < 0.0 {
        s.serialize_str("-inf")
    } else {
        s.serialize_str("nan")
    }
}

fn de_extended<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(v) => Ok(v),
        Raw::Str(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
        Raw::Str(s) => Err(serde::de::Error::custom(format!("bad log-modulus `{s}`"))),
    }
}

/// `E(w, q) = (1 - w) exp(w + w²/2 + ⋯ + w^q/q)`.
pub fn elementary_factor(w: Complex64, q: Genus) -> Complex64 {
    let mut exponent = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for j in 1..=q {
        power *= w;
        exponent += power / f64::from(j);
    }
    (Complex64::new(1.0, 0.0) - w) * exponent.exp()
}

/// `ln|E(w, q)|`. For `|w| < 1/2` this sums `-Re Σ_{j>q} w^j/j`, which avoids
/// the cancellation between `ln|1 - w|` and the exponent.
pub fn log_abs_elementary_factor(w: Complex64, q: Genus) -> f64 {
    let m = w.norm();
    if m < 0.5 {
        let mut power = w.powu(q);
        let mut acc = 0.0;
        let mut j = q + 1;
        loop {
            power *= w;
            let term = power.re / f64::from(j);
            acc -= term;
            if power.norm() < 1e-18 * acc.abs().max(f64::MIN_POSITIVE) || j > q + 200 {
                break;
            }
            j += 1;
        }
        return acc;
    }
    let one_minus = Complex64::new(1.0, 0.0) - w;
    let mut acc = one_minus.norm().ln();
    let mut power = Complex64::new(1.0, 0.0);
    for j in 1..=q {
        power *= w;
        acc += power.re / f64::from(j);
    }
    acc
}

/// `ln|z̄_k(z_k - z)/(|z_k|(1 - z̄_k z))|` by complex arithmetic; `≤ 0`.
pub fn blaschke_factor_log(z: DiscPoint, zk: DiscPoint) -> Result<f64> {
    if zk.is_origin() {
        return Err(Error::Domain("Blaschke factor at the origin".into()));
    }
    if z == zk {
        return Ok(f64::NEG_INFINITY);
    }
    let (a, b) = (z.to_complex(), zk.to_complex());
    let v =
        (b - z.to_complex()).norm().ln() - (Complex64::new(1.0, 0.0) - b.conj() * a).norm().ln();
    Ok(v.min(0.0))
}

/// Polar data of a zero with the quantities every factor needs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Polar {
    pub depth: f64,
    pub theta: f64,
    /// `1 - ρ²`.
    pub one_minus_sq: f64,
}

impl Polar {
    pub fn of(p: &DiscPoint) -> Self {
        let d = p.depth();
        Self {
            depth: d,
            theta: p.angle(),
            one_minus_sq: d * (2.0 - d),
        }
    }

    pub fn circle(z: &CirclePoint) -> Self {
        Self {
            depth: z.depth,
            theta: z.theta,
            one_minus_sq: z.depth * (2.0 - z.depth),
        }
    }
}

/// `|z - ζ|² = (r - ρ)² + 4rρ sin²((φ - θ)/2)` from depths.
pub(crate) fn dist_sq(z: &Polar, zeta: &Polar, sin_half: f64) -> f64 {
    let dr = zeta.depth - z.depth;
    dr * dr + 4.0 * (1.0 - z.depth) * (1.0 - zeta.depth) * sin_half * sin_half
}

/// `ln|b_ζ(z)| = -½ ln(1 + (1-|z|²)(1-|ζ|²)/|z-ζ|²)`, exact-cancellation free.
pub(crate) fn log_b_polar(z: &Polar, zeta: &Polar, sin_half: f64) -> f64 {
    let d = dist_sq(z, zeta, sin_half);
    if d == 0.0 {
        return f64::NEG_INFINITY;
    }
    -0.5 * (z.one_minus_sq * zeta.one_minus_sq / d).ln_1p()
}

/// `w = (1 - |ζ|²)/(1 - ζ̄z)` with `1 - ζ̄z` built from depths.
pub(crate) fn w_polar(z: &Polar, zeta: &Polar, sin_half: f64, cos_half: f64) -> Complex64 {
    let rr = (1.0 - z.depth) * (1.0 - zeta.depth);
    let one_minus_rr = z.depth + zeta.depth - z.depth * zeta.depth;
    let re = one_minus_rr + 2.0 * rr * sin_half * sin_half;
    let im = -2.0 * rr * sin_half * cos_half;
    let c = Complex64::new(re, im);
    zeta.one_minus_sq * c.conj() / c.norm_sqr()
}

/// `ln|E(w_ζ(z), q)|` for the canonical-product factor of `ζ`.
pub(crate) fn log_e_polar(z: &Polar, zeta: &Polar, sin_half: f64, cos_half: f64, q: Genus) -> f64 {
    let w = w_polar(z, zeta, sin_half, cos_half);
    if w.norm() < 0.5 {
        return log_abs_elementary_factor(w, q);
    }
    let mut acc = (-zeta.depth).ln_1p() + log_b_polar(z, zeta, sin_half);
    let mut power = Complex64::new(1.0, 0.0);
    for j in 1..=q {
        power *= w;
        acc += power.re / f64::from(j);
    }
    acc
}
