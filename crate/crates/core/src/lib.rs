pub mod cli;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod milp;
pub mod solver;

pub use error::{Error, Result};
