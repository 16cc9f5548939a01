//! Homology of matched pairs of finite categories.

pub mod abelian;
pub mod catalog;
pub mod category;
pub mod chain_maps;
pub mod cocycle;
pub mod complexes;
pub mod matched_pair;
pub mod odometer;
pub mod spectral;
pub mod error;
pub mod gen;

pub use error::{Error, Result};
