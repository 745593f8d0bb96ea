pub mod algebra;
pub mod artrans;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod modcat;
pub mod tautilt;

pub use error::{Error, Result};
