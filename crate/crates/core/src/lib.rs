pub mod algebra;
pub mod analysis;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod harness;
pub mod linalg;
pub mod resolution;
pub mod semigroup_ng;
pub mod stanley_reisner;
pub mod toric;
pub mod trace;

pub use error::{Error, Result};
