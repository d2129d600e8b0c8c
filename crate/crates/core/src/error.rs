use thiserror::Error;

use crate::detect::PatternWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The input contains a forbidden induced subgraph.
    #[error("input is not claw/net-free: found {0}")]
    Forbidden(PatternWitness),

    /// A structural property guaranteed for {claw, net}-free inputs failed.
    /// `witness` lists the nodes involved, in the ids of the graph that was
    /// being processed.
    #[error("structure violation: {what} (witness {witness:?})")]
    Structure { what: String, witness: Vec<usize> },

    #[error("oracle refused: {n} nodes exceeds the limit of {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn structure(what: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::Structure {
            what: what.into(),
            witness,
        }
    }

    /// True for errors that certify a defect of the input graph rather than
    /// a usage or I/O problem.
    pub fn is_contract_violation(&self) -> bool {
        matches!(self, Error::Forbidden(_) | Error::Structure { .. })
    }
}
