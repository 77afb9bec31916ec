pub mod error;
pub mod jet;
pub mod jet2;
pub mod expr;
pub mod geom;

pub use error::{Error, Result};
