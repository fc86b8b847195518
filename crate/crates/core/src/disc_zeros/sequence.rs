use serde::{Deserialize, Serialize};

use super::family::{Family, Generator};
use super::point::DiscPoint;
use crate::error::{Error, Result};

/// A finite realization of a zero set in the disc, ordered by nondecreasing
/// modulus (ties broken by angle).
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSequence {
    points: Vec<DiscPoint>,
    generator: Option<Generator>,
    origin_excluded: bool,
    depths: Vec<f64>,
    angles: Vec<f64>,
}

impl ZeroSequence {
    /// Wraps an explicit list. The list is the whole zero set: no range checks
    /// apply to it.
    pub fn explicit(points: Vec<DiscPoint>) -> Self {
        Self::canonical(points, None)
    }

    pub fn empty() -> Self {
        Self::explicit(Vec::new())
    }

    /// `make_sequence`: the first `count` points of a family.
    pub fn from_family(family: Family, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter("count must be at least 1".into()));
        }
        let points = family.generate(count)?;
        Ok(Self::canonical(points, Some(Generator { family, count })))
    }

    /// Realizes complete levels `1..=levels` of a level-structured family.
    pub fn through_level(family: Family, levels: u32) -> Result<Self> {
        let count = family.count_through_level(levels).ok_or_else(|| {
            Error::InvalidParameter(format!("family `{}` has no levels", family.name()))
        })?;
        Self::from_family(family, count)
    }

    /// Rebuilds from serialized parts.
    pub fn from_parts(points: Vec<DiscPoint>, generator: Option<Generator>) -> Result<Self> {
        if let Some(g) = generator {
            g.family.validate()?;
            if g.count != points.len() {
                return Err(Error::Parse(format!(
                    "generator count {} does not match {} points",
                    g.count,
                    points.len()
                )));
            }
        }
        Ok(Self::canonical(points, generator))
    }

    fn canonical(mut points: Vec<DiscPoint>, generator: Option<Generator>) -> Self {
        points.sort_by(|a, b| {
            a.modulus()
                .total_cmp(&b.modulus())
                .then(a.angle().total_cmp(&b.angle()))
        });
        let origin_excluded = !points.iter().any(DiscPoint::is_origin);
        let depths = points.iter().map(DiscPoint::depth).collect();
        let angles = points.iter().map(DiscPoint::angle).collect();
        Self {
            points,
            generator,
            origin_excluded,
            depths,
            angles,
        }
    }

    pub fn points(&self) -> &[DiscPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    pub fn origin_excluded(&self) -> bool {
        self.origin_excluded
    }

    /// `1 - |z_k|` in canonical order (nonincreasing).
    pub fn depths(&self) -> &[f64] {
        &self.depths
    }

    /// Arguments in `[0, 2π)`, canonical order.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Same family with `count` points; `None` for explicit lists.
    pub fn extended(&self, count: usize) -> Option<Result<Self>> {
        self.generator.map(|g| Self::from_family(g.family, count))
    }

    /// Smallest realized depth, i.e. `1 - |z|` of the last stored point.
    pub fn last_depth(&self) -> Option<f64> {
        self.depths.last().copied()
    }

    /// Rejects queries reaching depth `depth` or shallower than the realization
    /// covers. Explicit lists are complete and always pass.
    pub(crate) fn check_realized(&self, what: &'static str, depth: f64) -> Result<()> {
        if self.generator.is_none() {
            return Ok(());
        }
        match self.last_depth() {
            Some(last) if last < depth => Ok(()),
            Some(last) => Err(Error::Range {
                what,
                requested: 1.0 - depth,
                realized: 1.0 - last,
            }),
            None => Ok(()),
        }
    }
}

/// Serialized form of a [`ZeroSequence`].
#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct SequenceRecord {
    pub points: Vec<DiscPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_nondecreasing() {
        let pts = vec![
            DiscPoint::new(0.9, 0.0).unwrap(),
            DiscPoint::new(0.0, 0.3).unwrap(),
            DiscPoint::new(-0.5, 0.0).unwrap(),
        ];
        let z = ZeroSequence::explicit(pts);
        let m: Vec<f64> = z.points().iter().map(|p| p.modulus()).collect();
        assert_eq!(m, vec![0.3, 0.5, 0.9]);
        assert!(z.origin_excluded());
    }

    #[test]
    fn origin_flag() {
        let z = ZeroSequence::explicit(vec![DiscPoint::ORIGIN]);
        assert!(!z.origin_excluded());
    }

    #[test]
    fn deterministic_family() {
        let fam = Family::RadialPower { beta: 1.5 };
        let a = ZeroSequence::from_family(fam, 200).unwrap();
        let b = ZeroSequence::from_family(fam, 200).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 200);
    }

    #[test]
    fn zero_count_rejected() {
        assert!(ZeroSequence::from_family(Family::Log2Example, 0).is_err());
    }
}
