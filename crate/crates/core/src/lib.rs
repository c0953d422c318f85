pub mod curvature;
pub mod error;
pub mod geometry;
pub mod io;
pub mod quadrature;
pub mod report;
pub mod spinor;
pub mod topology;

pub use error::{Error, Result};
