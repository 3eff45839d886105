//! Crystal combinatorics for the queer Lie superalgebra `q(n)`.

pub mod character;
pub mod crystal;
pub mod cutting;
pub mod error;
pub mod finite;
pub mod graph;
pub mod limit;
pub mod tableau;
pub mod weight;
pub mod xi;

pub use error::{Error, Result};
