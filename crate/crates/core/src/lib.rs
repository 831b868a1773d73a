//! Exact chiral data and diagonal full field algebra structure.
//!
//! Modules:
//! - [`exactnum`]: arithmetic in ℚ(ζ_N) and complex embedding.
//! - [`fusiondata`]: labels, duals, weights and fusion multiplicities.
//! - [`chiraldata`]: F tensor, S₃ action, pairing, dual bases and chiral identities.
//! - [`ffalgebra`]: the diagonal full field algebra structure tensor and its checks.

pub mod chiraldata;
pub mod exactnum;
pub mod ffalgebra;
pub mod fusiondata;
pub mod report;
