pub mod arith;
pub mod cli;
pub mod cyclo;
pub mod epsilon;
pub mod error;
pub mod finitefield;
pub mod localfield;

pub use error::{Error, Result};
