//! Integral means, maximum modulus and growth-order estimation.

mod functionals;
mod grid;
mod orders;
mod profile;
pub mod quadrature;

pub use functionals::{
    circle_mean_p, circle_means, ladder_from_table, max_modulus, max_modulus_profile, means_table,
    nevanlinna_T, rho_p_ladder, signed_circle_mean, CircleMeans, MeansTable, RESOLUTION_FLOOR,
};
pub use grid::{GridPoint, RadialGrid, MAX_LEVEL};
pub use orders::{
    least_squares, order_fit, rho_infty_extrapolate, InfinityOrder, LadderEntry, LineFit,
    OrderEstimate, LADDER_SLACK, MIN_FIT_SAMPLES,
};
pub use profile::{MeansProfile, ProfileSample, Quantity};
