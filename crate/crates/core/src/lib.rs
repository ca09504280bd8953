//! Kernels for the power-sum quotient
//!
//! ```text
//! Q(x, y) = (M1(x) - M1(y)) (M2(y) - M2(x)) / (M3(x) + M3(y)),   M_p(x) = sum_i x_i^p
//! ```
//!
//! over positive orthants, its sharp linear growth `sup Q ~ c* n`, and the
//! consequences for the cone of matrices `M` with `Psi_M(z, s) > 0`.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats, threading
//! and the command line live in the `psq` crate.
//!
//! Modules:
//! - [`power_sums`]: validated positive vectors, `M_1..M_3`, and `Q`.
//! - [`exact`]: the same quotient over arbitrary-precision rationals.
//! - [`structured`]: closed-form constants, the reduced two-variable problem,
//!   `sup Q` over block configurations, and the witness families.
//! - [`cone`]: `Psi_M`, sign patterns, diagonal dominance, and the
//!   thresholds `b_d` for the equal-off-diagonal family `M_d(b)`.
//! - [`oracle`]: unstructured multistart ascent used to cross-check
//!   [`structured::sup_q`].
#![no_std]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod cone;
mod error;
pub mod exact;
pub mod oracle;
pub mod power_sums;
pub mod search;
pub mod structured;
pub mod sum;

pub use error::{Error, Result};
pub use power_sums::{power_sums, quotient_q, PositiveVector, PowerSumTriple, QuotientValue};
pub use structured::{c_star, sup_q, Constants, StructuredConfig, SupQResult};
