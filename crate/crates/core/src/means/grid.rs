use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deepest radius the grids allow: below `2^-26` the subtraction `1 - r`
/// no longer carries enough digits for slope fitting.
pub const MAX_LEVEL: f64 = 26.0;

/// One radius of a [`RadialGrid`]: `r = 1 - scale·2^{-j}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub j: u32,
    pub r: f64,
}

impl GridPoint {
    /// `1 - r`, exact for the dyadic constructions below.
    pub fn depth(&self) -> f64 {
        1.0 - self.r
    }
}

/// Strictly ascending radii approaching the boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    points: Vec<GridPoint>,
}

impl RadialGrid {
    /// `r_j = 1 - 2^{-j}` for `j = j_min..=j_max`.
    pub fn dyadic(j_min: u32, j_max: u32) -> Result<Self> {
        Self::scaled(j_min, j_max, 1.0)
    }

    /// `r_j = 1 - scale·2^{-j}`. A scale of 3/4 puts every circle strictly
    /// between two dyadic levels.
    pub fn scaled(j_min: u32, j_max: u32, scale: f64) -> Result<Self> {
        if j_min > j_max || j_min == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid needs 1 ≤ j_min ≤ j_max, got {j_min}..{j_max}"
            )));
        }
        if !(scale > 0.0 && scale <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "grid scale {scale} not in (0, 1]"
            )));
        }
        if -(scale.log2()) + f64::from(j_max) > MAX_LEVEL + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "grid reaches beyond 1 - 2^-{MAX_LEVEL}"
            )));
        }
        let points = (j_min..=j_max)
            .map(|j| GridPoint {
                j,
                r: 1.0 - scale * (-f64::from(j)).exp2(),
            })
            .collect();
        Ok(Self { points })
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
