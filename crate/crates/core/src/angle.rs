use std::f64::consts::{PI, TAU};

/// Normalizes an angle to `[0, 2π)`.
#[inline]
pub fn normalize(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Angular difference `a - b` reduced to `(-π, π]`.
#[inline]
pub fn diff(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(TAU);
    if d > PI {
        d -= TAU;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_is_half_open() {
        assert_eq!(diff(PI, 0.0), PI);
        assert_eq!(diff(0.0, PI), PI);
        assert!((diff(0.1, TAU - 0.1) - 0.2).abs() < 1e-15);
        assert!((diff(TAU - 0.1, 0.1) + 0.2).abs() < 1e-15);
    }

    #[test]
    fn normalize_range() {
        for t in [-7.0, -TAU, 0.0, 3.0, TAU, 100.0] {
            let n = normalize(t);
            assert!((0.0..TAU).contains(&n));
        }
    }
}
