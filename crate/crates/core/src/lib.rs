//! Exact computation of the signed, compactly supported Poincaré polynomials
//! of moduli spaces of stable Higgs bundles over real and complex curves.
//!
//! The crate is `no_std` (it needs `alloc`). Polynomial arithmetic is exact
//! throughout; no floating point is used anywhere.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod mellit;
pub mod partitions;
pub mod rank2;
pub mod specialization;
pub mod verify;
pub mod zeta;

/// Identifies the algorithm that produced a cached `A_{g,r}`; bumped
/// whenever results could change.
pub const ENGINE_VERSION: &str = concat!("higgs-betti-core/", env!("CARGO_PKG_VERSION"), "+lazy-log.1");
