pub mod criteria;
pub mod duality;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod fracket;
pub mod gen;
pub mod lattice;
pub mod mmatrix;
pub mod pair;
pub mod sgraph;

pub use error::{Error, Result};
