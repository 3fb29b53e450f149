pub mod calculus;
pub mod energize;
pub mod error;
pub mod exact;
pub mod graphs;
pub mod io;
pub mod param;
pub mod report;
pub mod setsys;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
