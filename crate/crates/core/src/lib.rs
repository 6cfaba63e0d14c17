pub mod canon;
pub mod cli;
pub mod coeff;
pub mod conject;
pub mod error;
pub mod expnat;
pub mod matgrid;
pub mod minors;
pub mod oqpq;
pub mod qcomb;
pub mod uqminus;

pub use error::{Error, Result};
