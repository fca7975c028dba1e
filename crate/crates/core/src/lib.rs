//! Gray-code state preparation for qudit registers.

pub mod angles;
pub mod circuit;
pub mod compositions;
pub mod error;
pub mod limits;
pub mod operators;
pub mod pipeline;
pub mod simulator;
pub mod states;

pub use error::{Error, Result};
