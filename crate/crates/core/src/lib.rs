//! Finite-blocklength bounds for joint source-channel coding of a binary
//! source over binary symmetric channels, with exact oracles for small
//! instances.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod broadcast;
pub mod error;
pub mod info;
pub mod oracles;
pub mod scalar;

pub use bounds::{LowerBoundReport, SumDistortionReport, SystemParams, CORRECTION_ORDER};
pub use broadcast::{BinaryBroadcastParams, ErasureParams, GaussianBroadcastParams, RegionPoint};
pub use error::{Error, Result};
pub use info::{to_bits, InfoFn, Probability};
