//! Embedded homology and super-persistent homology of super-hypergraphs.
//!
//! A super-hypergraph is a pair `(H, X)` of a Δ-set `X` and a graded subset
//! `H` of its cells. This crate builds such pairs from families of subgraphs
//! of a working graph, computes their embedded homology over a field, and
//! computes persistence barcodes and correlation matrices for filtrations
//! induced by scoring schemes.
//!
//! Module map:
//!
//! * [`field`]: exact linear algebra over GF(2), GF(p) and the rationals
//! * [`delta`]: Δ-sets, graded subsets, closures, regularity and completeness
//! * [`graph`]: multigraphs, subgraphs, clique/neighborhood/path complexes
//! * [`faces`]: face-operation families turning subgraph families into Δ-sets
//! * [`homology`]: chain complexes, infimum/supremum complexes, Betti tables
//! * [`scoring`]: scoring schemes on subgraphs
//! * [`persistence`]: filtrations, persistence modules, barcodes, triangles

pub mod delta;
pub mod exec;
pub mod faces;
pub mod field;
pub mod graph;
pub mod homology;
pub mod persistence;
pub mod scoring;

pub use delta::{CellId, DeltaMorphism, DeltaSet, GradedSubset, SuperHypergraph};
pub use exec::Execution;
pub use field::{FieldMatrix, FieldSpec, Scalar, SubspaceBasis};
pub use graph::{MultiGraph, Subgraph, VertexOrder};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] field::LinalgError),
    #[error("cell {cell} has {found} faces, expected {expected}")]
    FaceCount {
        cell: CellId,
        expected: usize,
        found: usize,
    },
    #[error("face {position} of cell {cell} points to missing cell {target}")]
    FaceOutOfRange {
        cell: CellId,
        position: usize,
        target: usize,
    },
    #[error("Δ-identity d_{i} d_{j} = d_{j} d_{} fails at cell {cell}", .i + 1)]
    DeltaIdentity { cell: CellId, i: usize, j: usize },
    #[error("graded subset refers to missing cell {0}")]
    MissingCell(CellId),
    #[error("complex is not closed under faces: {0}")]
    NotClosed(String),
    #[error("super-hypergraph is not regular: {0}")]
    NotRegular(String),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid subgraph family: {0}")]
    Family(String),
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("scoring failed: {0}")]
    Scoring(String),
    #[error("input is not dominated by a graph: {0}")]
    NotDominated(String),
    #[error("scoring scheme is not regular on this Δ-set: {0}")]
    NonRegularScheme(String),
    #[error("persistence module violates the composition law: {0}")]
    CompositionLaw(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
