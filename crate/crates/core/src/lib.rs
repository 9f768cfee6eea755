pub mod cli;
pub mod configspace;
pub mod error;
pub mod exactcheck;
pub mod formeval;
pub mod grasspoly;
pub mod polylog;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};
