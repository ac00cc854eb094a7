//! Capacity-region bounds, symmetric-capacity and degrees-of-freedom
//! analysis, and a Monte-Carlo coding simulator for the two-user Gaussian
//! interference channel with power-constrained, code-aware jammers.
//!
//! The crate is organized around power ratios: [`params`] reduces a physical
//! channel to signal/interference/jammer-to-noise ratios, [`regions`] builds
//! and queries the rate-region bounds, [`ratesplit`] checks the underlying
//! common/private split system and projects it, [`dof`] evaluates the
//! high-power scaling, and [`avcsim`] simulates the actual coding scheme
//! against configurable adversaries. Grid sweeps and trials run data-parallel
//! under the default `parallel` feature and fall back to plain loops without
//! it.

pub mod avcsim;
pub mod dof;
pub mod error;
pub mod exec;
pub mod params;
pub mod ratesplit;
pub mod regions;

pub use error::{Error, Result};
