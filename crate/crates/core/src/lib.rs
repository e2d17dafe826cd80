//! Construction, certification and exact verification of d-independent
//! sets in 1-planar graphs.

pub mod bounds;
pub mod certify;
pub mod cli;
pub mod error;
pub mod export;
pub mod families;
pub mod graph_core;
mod sketch;
pub mod solver;
pub mod transforms;

pub use error::{Error, Result};
