pub mod bounds;
pub mod composite;
pub mod error;
pub mod exactness;
pub mod numeric;
pub mod peano;
pub mod rules;

pub use error::{Error, Result};
