//! Reproducible numerical checks of the growth theorems.
//!
//! Every check returns a [`Verdict`] whose `passed` flag is a function of its
//! recorded numbers alone. Bounds of the form `≤ C·g(r)` are checked as
//! slope or boundedness statements, never against a specific constant.

mod growth;
mod pointwise;
mod suite;
mod verdict;

pub use growth::{
    example_section3, lemma_sum_bound, log2_inverse, means_monotone, nu_surrogate, order_relations,
    theorem1_converse_from_table, theorem1_forward_from_table, Known, OrderCase, BOUNDED_SLOPE,
    CHAIN_SLACK, COMPARISON_SLACK, EXPONENT_SLACK,
};
pub use pointwise::{
    check_jensen, check_kernel_inequality, check_kernel_positivity, check_representation,
    check_truncation_honesty,
};
pub use suite::{
    run_suite, SuiteConfig, Workbench, CHECKS, LATTICE_MARGIN, LOG2_COUNTING, LOG2_REALIZED,
};
pub use verdict::{Expectation, Verdict};
