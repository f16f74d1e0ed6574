//! Visual cryptography schemes over general and graph-based access
//! structures.
//!
//! The crate builds share matrices, verifies them exactly against the five
//! scheme models, checks lower-bound certificates, computes optimal pixel
//! expansion by exhaustive search on small structures, and encrypts binary
//! images into stackable shares.

pub mod access;
pub mod bounds;
pub mod construct;
pub mod error;
pub mod graph_algos;
pub mod imaging;
pub mod matrix;
pub mod search;
pub mod verify;

pub use access::{AccessStructure, Edge, Graph, SetClass, SetKind, Subset};
pub use bounds::{BoundBudget, BoundCertificate, BoundKind, ModelTag};
pub use error::{Result, VcsError};
pub use graph_algos::{
    Biclique, BicliqueCover, InducedMatching, StrongBicliqueCovering, StrongColoring,
};
pub use imaging::{BinaryImage, Geometry, Layout, Readout, ShareSet};
pub use matrix::{
    weight, BasisModel, BasisScheme, BitMatrix, CollectionModel, CollectionScheme, Column,
    ColumnMultiset, Scheme,
};
pub use num_rational::Rational64;
pub use search::{SearchConfig, SearchLimits, SearchOutcome, SearchProgress};
pub use verify::{
    verify_basis, verify_collections, verify_scheme, Direction, VerifyOptions, VerifyReport,
};
