use thiserror::Error;

use crate::rootdata::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("Weyl group exceeds {limit} elements; only small finite types are supported")]
    WeylGroupTooLarge { limit: usize },

    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {weight} has length {got}, expected rank {rank}")]
    RankMismatch { weight: Weight, got: usize, rank: usize },

    #[error("{0} is not a root of this root system")]
    NotARoot(Weight),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {weight} is not dominant for the Levi factor {levi:?}")]
    NotLeviDominant { weight: Weight, levi: Vec<usize> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("empty weight filtration")]
    EmptyFiltration,

    #[error("routes disagree for {expr}: filtration gives {route_a}, Levi decomposition gives {route_b}")]
    RouteDisagreement {
        expr: String,
        route_a: String,
        route_b: String,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Parse(#[from] crate::bundles::ParseError),
}
