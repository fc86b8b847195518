//! Functions analytic in the disc, seen through their log-modulus.

/// A point on the circle `|z| = r`, carrying `1 - r` exactly so evaluators
/// never re-derive it by cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    pub r: f64,
    pub depth: f64,
    pub theta: f64,
}

impl CirclePoint {
    pub fn new(r: f64, theta: f64) -> Self {
        Self {
            r,
            depth: 1.0 - r,
            theta,
        }
    }
}

/// Log-modulus evaluator shared read-only across quadrature workers.
pub trait DiscFunction: Sync {
    /// `log|f(z)|`; `-∞` on a zero.
    fn log_modulus(&self, z: CirclePoint) -> f64;

    /// Angles where `log|f|` on the circle of radius `1 - depth` varies on a
    /// scale much finer than the circle: nearby zeros, boundary singularities.
    fn features(&self, _depth: f64) -> Vec<f64> {
        Vec::new()
    }

    /// Whether a zero lies exactly on the circle of radius `1 - depth`.
    fn zero_on_circle(&self, _depth: f64) -> bool {
        false
    }
}

/// `f ≡ c` with `c > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl DiscFunction for Constant {
    fn log_modulus(&self, _z: CirclePoint) -> f64 {
        self.0.ln()
    }
}

/// `f(z) = exp((1 - z)^{-β})`, of maximum-modulus order `β`.
#[derive(Debug, Clone, Copy)]
pub struct ExpPower {
    pub beta: f64,
}

impl DiscFunction for ExpPower {
    fn log_modulus(&self, z: CirclePoint) -> f64 {
        let (s_half, c_half) = (0.5 * z.theta).sin_cos();
        // 1 - z = (1 - r) + 2r sin²(θ/2) - i r sin θ
        let re = z.depth + 2.0 * z.r * s_half * s_half;
        let im = -2.0 * z.r * s_half * c_half;
        let modulus = re.hypot(im);
        let arg = im.atan2(re);
        modulus.powf(-self.beta) * (self.beta * arg).cos()
    }

    fn features(&self, _depth: f64) -> Vec<f64> {
        vec![0.0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn exp_power_matches_complex_arithmetic() {
        let f = ExpPower { beta: 0.7 };
        for &(r, t) in &[(0.3, 1.0), (0.9, -0.2), (0.99, 3.0)] {
            let z = Complex64::from_polar(r, t);
            let expected = (Complex64::new(1.0, 0.0) - z).powf(-0.7).re;
            let got = f.log_modulus(CirclePoint::new(r, t));
            assert!((got - expected).abs() < 1e-12 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn exp_power_max_on_positive_axis() {
        let f = ExpPower { beta: 0.5 };
        let r = 1.0 - 2f64.powi(-20);
        let at_zero = f.log_modulus(CirclePoint::new(r, 0.0));
        assert!((at_zero - 2f64.powi(10)).abs() < 1e-9);
    }
}
