use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Which radial quantity a profile samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `log⁺M(r, f)`, the positive part of the maximal log-modulus.
    LogMaxModulus,
    /// Nevanlinna characteristic `T(r, f)`.
    T,
    /// `m_p(r, f)`.
    Mp,
    /// Signed circle mean of `log|f|`.
    SignedMean,
    /// Counting function `n(r)`.
    Count,
    /// Linden's `ν₁(r)`.
    NuMax,
    /// `max_φ λ(φ, r)`.
    LambdaMax,
    /// `Σ |(1-|z_m|²)/(1 - z z̄_m)|^{s+1}` along a ray.
    TsujiSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub j: u32,
    pub r: f64,
    pub value: f64,
}

/// Samples `(r, value)` of a radial growth quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeansProfile {
    pub quantity: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub samples: Vec<ProfileSample>,
}

impl MeansProfile {
    pub fn new(quantity: Quantity, p: Option<f64>) -> Self {
        Self {
            quantity,
            p,
            samples: Vec::new(),
        }
    }

    pub fn push(&mut self, j: u32, r: f64, value: f64) {
        self.samples.push(ProfileSample { j, r, value });
    }

    /// CSV with header `r,value`; binary64 values use shortest round-trip
    /// decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,value\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{}", s.r, s.value);
        }
        out
    }
}
