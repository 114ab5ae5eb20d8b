pub mod bounds;
pub mod cyclic;
pub mod distance;
pub mod error;
pub mod finite_field;
pub mod fourier;
pub mod spectrum;

pub use error::{Error, Result};
