//! Exact equivariant localization on Grassmannians and coefficientwise
//! verification of projection formulas on ind-Grassmannians.

pub mod error;
pub mod grassmann;
pub mod models;
pub mod parallel;
pub mod plethysm;
pub mod projection;
pub mod series;

pub use error::{Error, Result};
