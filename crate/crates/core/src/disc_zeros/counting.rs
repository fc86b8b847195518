//! Counting functions and Linden box counts.

use std::f64::consts::{PI, TAU};

use super::sequence::ZeroSequence;
use crate::angle;
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// `n(r)`: number of stored zeros with `|z_k| ≤ r`.
pub fn counting_n(z: &ZeroSequence, r: f64) -> Result<usize> {
    check_radius(r)?;
    let depth = 1.0 - r;
    z.check_realized("counting_n", depth)?;
    Ok(z.depths().partition_point(|&d| d >= depth))
}

/// Nevanlinna counting function `N(r) = ∫_0^r n(t)/t dt = Σ_{|z_k| ≤ r} ln(r/|z_k|)`.
#[allow(non_snake_case)]
pub fn counting_N(z: &ZeroSequence, r: f64) -> Result<f64> {
    if !z.origin_excluded() {
        return Err(Error::Domain(
            "N(r) is undefined with a zero at the origin".into(),
        ));
    }
    let n = counting_n(z, r)?;
    let ln_r = (-(1.0 - r)).ln_1p();
    let mut acc = CompensatedSum::new();
    for &d in &z.depths()[..n] {
        acc.add(ln_r - (-d).ln_1p());
    }
    Ok(acc.value())
}

/// `ν(re^{iφ})`: zeros in the closed box
/// `{ρe^{iθ} : r ≤ ρ ≤ (1+r)/2, |θ - φ| ≤ π(1-r)/2}`.
pub fn box_count_nu(z: &ZeroSequence, r: f64, phi: f64) -> Result<usize> {
    let (lo, hi) = annulus_range(z, r)?;
    let half = PI * (1.0 - r) / 2.0;
    Ok(z.angles()[lo..hi]
        .iter()
        .filter(|&&theta| angle::diff(theta, phi).abs() <= half)
        .count())
}

/// `ν₁(r) = max_φ ν(re^{iφ})`, exact via a sweep over windows anchored at
/// stored angles.
pub fn nu_max(z: &ZeroSequence, r: f64) -> Result<usize> {
    let (lo, hi) = annulus_range(z, r)?;
    let mut angles: Vec<f64> = z.angles()[lo..hi].to_vec();
    let n = angles.len();
    if n == 0 {
        return Ok(0);
    }
    let width = PI * (1.0 - r);
    if width >= TAU {
        return Ok(n);
    }
    angles.sort_by(f64::total_cmp);
    let mut best = 0;
    let mut j = 0;
    for i in 0..n {
        if j < i {
            j = i;
        }
        while j + 1 < i + n && unrolled(&angles, j + 1) - angles[i] <= width {
            j += 1;
        }
        best = best.max(j - i + 1);
    }
    Ok(best)
}

fn unrolled(angles: &[f64], k: usize) -> f64 {
    let n = angles.len();
    if k < n {
        angles[k]
    } else {
        angles[k - n] + TAU
    }
}

/// Index range of stored zeros with `r ≤ |z| ≤ (1+r)/2`.
fn annulus_range(z: &ZeroSequence, r: f64) -> Result<(usize, usize)> {
    check_radius(r)?;
    let outer = 1.0 - r;
    let inner = outer / 2.0;
    z.check_realized("box count", inner)?;
    let d = z.depths();
    let lo = d.partition_point(|&x| x > outer);
    let hi = d.partition_point(|&x| x >= inner);
    Ok((lo, hi.max(lo)))
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("radius {r} not in [0, 1)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc_zeros::{DiscPoint, Family};

    fn geometric(count: usize) -> ZeroSequence {
        ZeroSequence::from_family(Family::Geometric { q: 1.0, c: 0.5 }, count).unwrap()
    }

    #[test]
    fn counting_on_empty() {
        let z = ZeroSequence::empty();
        assert_eq!(counting_n(&z, 0.5).unwrap(), 0);
        assert_eq!(counting_N(&z, 0.5).unwrap(), 0.0);
        assert_eq!(box_count_nu(&z, 0.5, 1.0).unwrap(), 0);
        assert_eq!(nu_max(&z, 0.5).unwrap(), 0);
    }

    #[test]
    fn counting_geometric() {
        assert_eq!(counting_n(&geometric(10), 0.8).unwrap(), 2);
    }

    #[test]
    fn range_error_beyond_realization() {
        let z = geometric(3);
        assert!(matches!(counting_n(&z, 0.9), Err(Error::Range { .. })));
        assert!(matches!(counting_n(&z, 0.875), Err(Error::Range { .. })));
        assert!(counting_n(&z, 0.87).is_ok());
    }

    #[test]
    fn big_n_boundary_of_inclusion() {
        let z = ZeroSequence::explicit(vec![DiscPoint::new(0.5, 0.0).unwrap()]);
        assert_eq!(counting_N(&z, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn big_n_two_zeros() {
        let z = ZeroSequence::explicit(vec![
            DiscPoint::new(0.5, 0.0).unwrap(),
            DiscPoint::new(0.0, 0.75).unwrap(),
        ]);
        // oracle: trapezoid integration of n(t)/t on a fine grid
        let r = 0.9;
        let steps = 900_000;
        let h = r / steps as f64;
        let mut oracle = 0.0;
        for i in 0..steps {
            let t = (i as f64 + 0.5) * h;
            let n = [0.5, 0.75].iter().filter(|&&m| m <= t).count() as f64;
            oracle += n / t * h;
        }
        let value = counting_N(&z, r).unwrap();
        assert!((value - oracle).abs() < 1e-5);
        assert!((value - 0.7701).abs() < 1e-4);
    }

    #[test]
    fn origin_zero_is_domain_error() {
        let z = ZeroSequence::explicit(vec![DiscPoint::ORIGIN]);
        assert!(matches!(counting_N(&z, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn box_upper_edge_is_closed() {
        let r = 0.75;
        let phi = 1.0;
        let p = DiscPoint::from_polar((1.0 + r) / 2.0, phi).unwrap();
        let z = ZeroSequence::explicit(vec![p]);
        assert_eq!(box_count_nu(&z, r, phi).unwrap(), 1);
        assert_eq!(nu_max(&z, r).unwrap(), 1);
    }

    #[test]
    fn opposite_zeros_never_share_a_box() {
        let r = 0.5;
        let rho = 0.75;
        let z = ZeroSequence::explicit(vec![
            DiscPoint::from_polar(rho, 0.0).unwrap(),
            DiscPoint::from_polar(rho, PI).unwrap(),
        ]);
        assert_eq!(nu_max(&z, r).unwrap(), 1);
    }
}
