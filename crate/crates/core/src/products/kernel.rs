//! The kernel `K(z, ζ)` linking `log|B|` to the zero distribution.

use num_complex::Complex64;

use super::factors::{dist_sq, Polar};
use crate::angle;
use crate::disc_zeros::DiscPoint;
use crate::error::{Error, Result};

/// Below this `1 - |ζ|` the boundary (Poisson) branch is used.
pub const BOUNDARY_SWITCH: f64 = 1e-14;

/// `K(z, ζ) = ln(1 + (1-|z|²)(1-|ζ|²)/|z-ζ|²) / (2(1-|ζ|))`, so that
/// `ln|b_ζ(z)| = -(1-|ζ|) K(z, ζ)`. For `|ζ| = 1` this is the Poisson kernel
/// `(1-|z|²)/|ζ-z|²`.
#[allow(non_snake_case)]
pub fn kernel_K(z: DiscPoint, zeta: Complex64) -> Result<f64> {
    let rho = zeta.norm();
    if !(rho <= 1.0) {
        return Err(Error::OutsideDisc {
            re: zeta.re,
            im: zeta.im,
        });
    }
    if z.to_complex() == zeta {
        return Err(Error::Pole);
    }
    let depth = if zeta.im == 0.0 {
        1.0 - zeta.re.abs()
    } else {
        1.0 - rho
    };
    let theta = if rho == 0.0 {
        0.0
    } else {
        angle::normalize(zeta.arg())
    };
    let v = kernel_polar(
        &Polar::of(&z),
        &Polar {
            depth,
            theta,
            one_minus_sq: depth * (2.0 - depth),
        },
    );
    if v.is_infinite() {
        return Err(Error::Pole);
    }
    Ok(v)
}

/// `K(z, e^{iθ})`, the Poisson kernel, for an exact boundary angle.
pub fn kernel_boundary(z: DiscPoint, theta: f64) -> f64 {
    kernel_polar(
        &Polar::of(&z),
        &Polar {
            depth: 0.0,
            theta: angle::normalize(theta),
            one_minus_sq: 0.0,
        },
    )
}

/// [`kernel_K`] on polar data; `+∞` when the points coincide.
pub(crate) fn kernel_polar(z: &Polar, zeta: &Polar) -> f64 {
    let sin_half = (0.5 * (z.theta - zeta.theta)).sin();
    if zeta.depth < BOUNDARY_SWITCH {
        let boundary = Polar {
            depth: 0.0,
            theta: zeta.theta,
            one_minus_sq: 0.0,
        };
        return z.one_minus_sq / dist_sq(z, &boundary, sin_half);
    }
    let d = dist_sq(z, zeta, sin_half);
    if d == 0.0 {
        return f64::INFINITY;
    }
    (z.one_minus_sq * zeta.one_minus_sq / d).ln_1p() / (2.0 * zeta.depth)
}

/// Right side of the lower bound `K(z, ζ) ≥ (1/12)(1-|z|²)/|z-ζ|²`, valid
/// when `1 - |ζ| ≤ (1 - |z|)/2`.
pub fn kernel_lower_bound(z: DiscPoint, zeta: Complex64) -> f64 {
    let pz = Polar::of(&z);
    let depth = if zeta.im == 0.0 {
        1.0 - zeta.re.abs()
    } else {
        1.0 - zeta.norm()
    };
    let pk = Polar {
        depth,
        theta: angle::normalize(zeta.arg()),
        one_minus_sq: 0.0,
    };
    let sin_half = (0.5 * (pz.theta - pk.theta)).sin();
    pz.one_minus_sq / (12.0 * dist_sq(&pz, &pk, sin_half))
}
