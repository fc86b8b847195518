//! The default instances and the full check suite.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::growth::{self, Known, OrderCase};
use super::pointwise;
use super::verdict::Verdict;
use crate::disc_zeros::{Family, ZeroSequence};
use crate::error::{Error, Result};
use crate::function::{DiscFunction, ExpPower};
use crate::means::{max_modulus_profile, means_table, MeansProfile, MeansTable, RadialGrid};
use crate::products::{ProductEvaluator, ProductKind, RingProduct};

/// Names accepted by [`run_suite`], in run order.
pub const CHECKS: [&str; 12] = [
    "kernel",
    "kernel_positivity",
    "representation",
    "jensen",
    "truncation",
    "theorem1_forward",
    "theorem1_boundary",
    "theorem1_converse",
    "lemma_sum_bound",
    "example_section3",
    "order_relations",
    "means_monotone",
];

/// Levels realized beyond the deepest grid circle.
pub const LATTICE_MARGIN: u32 = 4;
/// Realized zeros of the log² example behind its tail rule.
pub const LOG2_REALIZED: usize = 1 << 18;
/// Realized zeros of the log² example for the counting sub-check; the last
/// one lies beyond `1 - 2^{-26}`.
pub const LOG2_COUNTING: usize = 600_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub kernel_samples: usize,
    pub j_min: u32,
    pub j_max: u32,
    pub grid_scale: f64,
    pub p_list: Vec<f64>,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            kernel_samples: 1_000_000,
            j_min: 8,
            j_max: 20,
            grid_scale: 0.75,
            p_list: vec![1.0, 2.0, 4.0, 8.0, 16.0],
            tol: 1e-6,
        }
    }
}

impl SuiteConfig {
    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::scaled(self.j_min, self.j_max, self.grid_scale)
    }
}

struct Profiles {
    table: MeansTable,
    max_modulus: Option<MeansProfile>,
}

/// Instances of the suite, each built and measured at most once.
pub struct Workbench<'a> {
    config: SuiteConfig,
    grid: RadialGrid,
    progress: &'a (dyn Fn(&str) + Sync),
    lattice_zeros: OnceLock<ZeroSequence>,
    ray_zeros: OnceLock<ZeroSequence>,
    lattice: OnceLock<Profiles>,
    ray: OnceLock<Profiles>,
    log2: OnceLock<Profiles>,
    orders: OnceLock<Vec<(String, Profiles, Known)>>,
}

impl<'a> Workbench<'a> {
    pub fn new(config: SuiteConfig, progress: &'a (dyn Fn(&str) + Sync)) -> Result<Self> {
        let grid = config.grid()?;
        if config.p_list.len() < 4 {
            return Err(Error::InvalidParameter(
                "the p ladder needs at least 4 rungs".into(),
            ));
        }
        Ok(Self {
            config,
            grid,
            progress,
            lattice_zeros: OnceLock::new(),
            ray_zeros: OnceLock::new(),
            lattice: OnceLock::new(),
            ray: OnceLock::new(),
            log2: OnceLock::new(),
            orders: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.config
    }

    fn min_depth(&self) -> f64 {
        self.grid.points()[self.grid.len() - 1].depth()
    }

    fn measure(&self, name: &str, f: &dyn DiscFunction, with_max: bool) -> Result<Profiles> {
        (self.progress)(&format!("means: {name}"));
        let table = means_table(f, &self.grid, &self.config.p_list, self.config.tol)?;
        let max_modulus = if with_max {
            (self.progress)(&format!("max modulus: {name}"));
            Some(max_modulus_profile(f, &self.grid, self.config.tol)?)
        } else {
            None
        };
        Ok(Profiles { table, max_modulus })
    }

    fn cached<T>(cell: &OnceLock<T>, build: impl FnOnce() -> Result<T>) -> Result<&T> {
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let v = build()?;
        Ok(cell.get_or_init(|| v))
    }

    /// γ = 1/2, s = 0 lattice through `j_max + LATTICE_MARGIN` levels.
    pub fn lattice_zeros(&self) -> Result<&ZeroSequence> {
        Self::cached(&self.lattice_zeros, || {
            ZeroSequence::through_level(
                Family::GammaLattice { gamma: 0.5, s: 0 },
                self.config.j_max + LATTICE_MARGIN,
            )
        })
    }

    /// Dyadic radial ray `1 - 2^{-k}`, realized 20 levels past the grid.
    pub fn ray_zeros(&self) -> Result<&ZeroSequence> {
        Self::cached(&self.ray_zeros, || {
            ZeroSequence::from_family(
                Family::Geometric { q: 1.0, c: 0.5 },
                self.config.j_max as usize + 20,
            )
        })
    }

    pub fn lattice_table(&self) -> Result<&MeansTable> {
        let p = Self::cached(&self.lattice, || {
            let f = ProductEvaluator::new(self.lattice_zeros()?, ProductKind::Blaschke)?;
            self.measure("gamma-lattice", &f, false)
        })?;
        Ok(&p.table)
    }

    pub fn ray_table(&self) -> Result<&MeansTable> {
        let p = Self::cached(&self.ray, || {
            let f = ProductEvaluator::new(self.ray_zeros()?, ProductKind::Blaschke)?;
            self.measure("dyadic ray", &f, false)
        })?;
        Ok(&p.table)
    }

    fn log2_profiles(&self) -> Result<&Profiles> {
        Self::cached(&self.log2, || {
            let zs = ZeroSequence::from_family(Family::Log2Example, LOG2_REALIZED)?;
            let f = ProductEvaluator::log2_example(&zs)?;
            if f.min_depth() > self.min_depth() {
                return Err(Error::Range {
                    what: "log2 example",
                    requested: 1.0 - self.min_depth(),
                    realized: 1.0 - f.min_depth(),
                });
            }
            self.measure("log2 example", &f, true)
        })
    }

    fn order_profiles(&self) -> Result<&Vec<(String, Profiles, Known)>> {
        Self::cached(&self.orders, || {
            let mut out = Vec::new();
            for beta in [0.5, 1.0, 2.0] {
                let name = format!("exp_power_{beta}");
                let p = self.measure(&name, &ExpPower { beta }, true)?;
                out.push((name, p, Known::ExpPower { beta }));
            }
            // genus s ≥ [ν] + 1 with ν = β - 1
            for (beta, q) in [(1.5, 1), (2.0, 2)] {
                let name = format!("rings_{beta}");
                let f = RingProduct::infinite(beta, q, self.min_depth(), 1e-8)?;
                let p = self.measure(&name, &f, true)?;
                let zs = ZeroSequence::through_level(Family::Rings { beta }, 8)?;
                let nu = growth::nu_surrogate(&zs)?;
                out.push((name, p, Known::Product { beta, nu }));
            }
            Ok(out)
        })
    }

    /// Runs one named check.
    pub fn run(&self, name: &str) -> Result<Verdict> {
        let c = &self.config;
        (self.progress)(&format!("check: {name}"));
        match name {
            "kernel" => pointwise::check_kernel_inequality(c.kernel_samples, c.seed),
            "kernel_positivity" => pointwise::check_kernel_positivity(c.kernel_samples, c.seed),
            "representation" => pointwise::check_representation(100, 100, c.seed),
            "jensen" => pointwise::check_jensen(20, c.seed),
            "truncation" => pointwise::check_truncation_honesty(50, c.seed),
            "theorem1_forward" => {
                growth::theorem1_forward_from_table(name, self.lattice_table()?, 0.5, 0)
            }
            "theorem1_boundary" => {
                let mut v = growth::theorem1_forward_from_table(name, self.ray_table()?, 1.0, 0)?;
                v.note("The dyadic ray is uniformly separated, so this also covers interpolating products.");
                Ok(v)
            }
            "theorem1_converse" => growth::theorem1_converse_from_table(
                name,
                self.lattice_zeros()?,
                self.lattice_table()?,
                &self.grid,
                0.5,
            ),
            "lemma_sum_bound" => {
                let mut v = Verdict::new(name);
                growth::lemma_sum_bound(
                    &mut v,
                    "lattice",
                    self.lattice_zeros()?,
                    0.5,
                    0,
                    &self.grid,
                    0.0,
                )?;
                growth::lemma_sum_bound(&mut v, "ray", self.ray_zeros()?, 1.0, 0, &self.grid, 0.0)?;
                v.note("sums along the ray through the zeros, where they are largest.");
                Ok(v)
            }
            "example_section3" => {
                let counting = ZeroSequence::from_family(Family::Log2Example, LOG2_COUNTING)?;
                growth::example_section3(&counting, &self.log2_profiles()?.table, 26)
            }
            "order_relations" => {
                let log2 = self.log2_profiles()?;
                let others = self.order_profiles()?;
                let mut cases = vec![OrderCase {
                    name: "log2",
                    table: &log2.table,
                    max_modulus: log2.max_modulus.as_ref().expect("measured with maximum"),
                    known: Known::Nothing,
                }];
                for (n, p, k) in others {
                    cases.push(OrderCase {
                        name: n,
                        table: &p.table,
                        max_modulus: p.max_modulus.as_ref().expect("measured with maximum"),
                        known: *k,
                    });
                }
                growth::order_relations(&cases)
            }
            "means_monotone" => {
                let mut tables: Vec<(&str, &MeansTable)> = vec![
                    ("lattice", self.lattice_table()?),
                    ("ray", self.ray_table()?),
                    ("log2", &self.log2_profiles()?.table),
                ];
                for (n, p, _) in self.order_profiles()? {
                    tables.push((n, &p.table));
                }
                Ok(growth::means_monotone(&tables, c.tol))
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown check `{other}`; expected one of {}",
                CHECKS.join(", ")
            ))),
        }
    }
}

/// Runs `only` (or every check) in the order of [`CHECKS`].
pub fn run_suite(
    config: SuiteConfig,
    only: &[String],
    progress: &(dyn Fn(&str) + Sync),
) -> Result<Vec<Verdict>> {
    if let Some(bad) = only.iter().find(|n| !CHECKS.contains(&n.as_str())) {
        return Err(Error::InvalidParameter(format!(
            "unknown check `{bad}`; expected one of {}",
            CHECKS.join(", ")
        )));
    }
    let bench = Workbench::new(config, progress)?;
    CHECKS
        .iter()
        .filter(|n| only.is_empty() || only.iter().any(|o| o == *n))
        .map(|n| bench.run(n))
        .collect()
}
