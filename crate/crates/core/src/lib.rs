#![cfg_attr(not(test), no_std)]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod grid;
pub mod passivity;
pub mod perf;
pub mod model;
pub mod optimize;
pub mod poly;
pub mod rational;
pub mod stability;
pub mod tol;

pub use error::{Error, Infeasibility, Result};
