//! Blaschke products, canonical products of genus `q` and the kernel `K`.

mod evaluator;
mod factors;
mod kernel;
mod rings;
mod sums;

pub use evaluator::ProductEvaluator;
pub use factors::{
    blaschke_factor_log, elementary_factor, log_abs_elementary_factor, Genus, LogModulus,
};
pub use kernel::{kernel_K, kernel_boundary, kernel_lower_bound, BOUNDARY_SWITCH};
pub use rings::RingProduct;
pub use sums::{
    blaschke_log, blaschke_log_kernel, canonical_product_log, exceptional_discs, tail_bound,
    tsuji_sum, ExceptionalDisc, ProductKind,
};
