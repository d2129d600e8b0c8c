//! Exact maximum weight stable set for graphs with no induced claw and no
//! induced net.

pub mod canonical;
pub mod cli;
pub mod decompose;
pub mod detect;
pub mod error;
pub mod gen;
pub mod graph;
pub mod interval;
pub mod oracle;
pub mod order;
pub mod solver;
pub mod twins;
pub mod wings;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, NodeSet, Weight};
