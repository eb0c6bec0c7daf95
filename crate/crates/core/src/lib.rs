pub mod angle_op;
pub mod cartesian;
pub mod cheb;
pub mod error;
pub mod coeff_rep;
pub mod gauss;
pub mod linalg;
pub mod orbit_eval;
pub mod poly;
pub mod reproduce;
pub mod trig;
pub mod weyl;

pub use error::{Error, Result};
