//! Zero sets in the unit disc: families, counting functions and Carleson
//! statistics.

mod carleson;
mod convergence;
mod counting;
mod family;
pub mod io;
mod point;
mod sequence;

pub use carleson::{
    carleson_exponent, carleson_sum, carleson_sup, lambda_profile, level_set_square,
    CarlesonReport, CarlesonSample, CarlesonSquare, CarlesonTarget, LambdaReport,
};
pub use convergence::{convergence_exponent, ConvergenceReport, TailRatio, DIVERGENCE_THRESHOLD};
pub use counting::{box_count_nu, counting_N, counting_n, nu_max};
pub use family::{Family, Generator, RayTail};
pub use point::DiscPoint;
pub use sequence::ZeroSequence;
