//! Dirichlet matroids of electrical networks, computed exactly.

pub mod biased;
pub mod circular;
pub mod dirichlet;
pub mod edgeset;
pub mod electrical;
pub mod exec;
pub mod field;
pub mod intpoly;
pub mod linrep;
pub mod matroid;
pub mod network;
pub mod poly;
pub mod qpoly;

pub use edgeset::EdgeSet;
pub use exec::Exec;
pub use intpoly::IntPoly;
pub use matroid::{Matroid, MatroidError};
pub use network::{Network, NetworkError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Circular(#[from] circular::CircularError),
    #[error("unknown label {0}")]
    UnknownLabel(String),
}
