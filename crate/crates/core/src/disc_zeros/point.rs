use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Error, Result};

/// A point strictly inside the unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct DiscPoint {
    re: f64,
    im: f64,
}

#[derive(Deserialize)]
struct RawPoint {
    re: f64,
    im: f64,
}

impl TryFrom<RawPoint> for DiscPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        DiscPoint::new(raw.re, raw.im)
    }
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) || re * re + im * im >= 1.0 || re.hypot(im) >= 1.0 {
            return Err(Error::OutsideDisc { re, im });
        }
        Ok(Self { re, im })
    }

    /// Builds `modulus · e^{i·angle}`.
    pub fn from_polar(modulus: f64, angle: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&modulus) {
            return Err(Error::OutsideDisc {
                re: modulus,
                im: 0.0,
            });
        }
        let (s, c) = angle.sin_cos();
        Self::new(modulus * c, modulus * s)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// `1 - |z|`. Exact for points on the real axis.
    pub fn depth(&self) -> f64 {
        if self.im == 0.0 {
            1.0 - self.re.abs()
        } else {
            1.0 - self.modulus()
        }
    }

    /// Argument normalized to `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        if self.re == 0.0 && self.im == 0.0 {
            0.0
        } else {
            angle::normalize(self.im.atan2(self.re))
        }
    }

    pub fn is_origin(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_and_outside() {
        assert!(DiscPoint::new(1.0, 0.0).is_err());
        assert!(DiscPoint::new(0.8, 0.6).is_err());
        assert!(DiscPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiscPoint::new(0.5, 0.5).is_ok());
    }

    #[test]
    fn depth_on_axis_is_exact() {
        let p = DiscPoint::new(1.0 - 2f64.powi(-30), 0.0).unwrap();
        assert_eq!(p.depth(), 2f64.powi(-30));
    }

    #[test]
    fn deserialize_validates() {
        let bad: std::result::Result<DiscPoint, _> = serde_json::from_str(r#"{"re":1.5,"im":0}"#);
        assert!(bad.is_err());
    }
}
