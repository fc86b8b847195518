//! Growth of analytic functions in the unit disc from the distribution of
//! their zeros: zero-set statistics, canonical and Blaschke products,
//! integral means and growth orders.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angle;
pub mod cli;
pub mod disc_zeros;
pub mod error;
pub mod function;
pub mod means;
pub mod products;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/zero-sets.md")]
    mod zero_sets {}
    #[doc = include_str!("../../../book/src/carleson.md")]
    mod carleson {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    mod kernel {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/means-and-orders.md")]
    mod means_and_orders {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
