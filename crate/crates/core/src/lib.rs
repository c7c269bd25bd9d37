//! Global resilience of graphs with respect to Hamiltonicity and perfect
//! matchings, with the expander/booster machinery used to certify it.

pub mod bitset;
pub mod bounds;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod graph;
pub mod lab;
pub mod posa;
pub mod random;
pub mod properties;
pub mod resilience;
pub mod stats;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, Graph};
