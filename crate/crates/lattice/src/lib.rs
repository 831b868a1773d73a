//! Rank-one lattice vertex operator backend.

pub mod checks;
pub mod derive;
pub mod fock;
pub mod full;
pub mod series;
pub mod spec;
pub mod vertex;

pub use fock::{ExactVector, FockVec, FockVector, Partition, State};
pub use full::{FullAlgebra, FullOutput, FullVector};
pub use series::BivariateSeries;
pub use spec::{LatticeError, LatticeSpec};
