pub mod arith;
pub mod cli;
pub mod error;
pub mod harmonics;
pub mod lattice;
pub mod report;
pub mod spatial;
pub mod twosquares;
pub mod verify;

pub use error::{Error, Result};
