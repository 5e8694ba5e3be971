//! Multi-photon Hong-Ou-Mandel interference with mode mismatch.
//!
//! Everything here is `no_std` with `alloc`. Angular frequencies are in
//! rad/ps and times in ps throughout.

#![no_std]

extern crate alloc;

mod error;
pub mod quadrature;
pub mod special;

pub mod spectral;
pub mod polarization;
pub mod fock;
pub mod oracle;
pub mod coherent;
pub mod channels;
pub mod swap;
pub mod protocols;

pub use error::{Error, Result};
pub use num_complex::Complex64;
