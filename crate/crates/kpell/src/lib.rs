//! Graphs on words over {0, ..., k} whose maximal runs of the top letter
//! have even length, with adjacency given by unit letter changes and the
//! (k-1)(k-1) <-> kk exchange.
//!
//! The crate covers construction and export of the graphs, their metric
//! invariants (eccentricities, center, periphery, medians), counting
//! results (edges, degrees, hypercube subgraphs), Hamiltonian paths, and
//! the embedding into binary strings without consecutive ones.

#![forbid(unsafe_code)]

pub mod counting;
pub mod embed;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod seqs;
pub mod words;

pub use error::{Error, Result};

/// Resource limits for operations whose cost grows with the graph.
///
/// Every potentially large computation takes a budget and fails with
/// [`Error::BudgetExceeded`] instead of exhausting memory. The defaults are
/// sized for a few-GB machine.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of vertices to enumerate or store.
    pub vertices: u64,
    /// Maximum vertex count for all-source distance sweeps.
    pub bfs_vertices: u64,
    /// Maximum vertex count for brute-force subgraph searches and full
    /// distance matrices.
    pub dense_vertices: u64,
    /// Maximum vertex degree admitted by induced-cube enumeration.
    pub cube_max_degree: u64,
    /// Vertex count up to which median verification checks every triple.
    pub median_exhaustive: u64,
    /// Number of sampled triples for randomized median verification.
    pub median_samples: u64,
    /// Maximum vertex count for Hamiltonian path construction.
    pub hamiltonian_vertices: u64,
    /// Maximum binary-string length for embedding verification.
    pub embedding_dim: u64,
    /// Maximum binary-string length for which the target graph of the
    /// embedding is materialized rather than checked implicitly.
    pub materialized_dim: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            vertices: 2_000_000,
            bfs_vertices: 200_000,
            dense_vertices: 5_000,
            cube_max_degree: 40,
            median_exhaustive: 300,
            median_samples: 100_000,
            hamiltonian_vertices: 50_000,
            embedding_dim: 40,
            materialized_dim: 28,
        }
    }
}

impl Budget {
    /// Budget scaled for quick interactive use.
    pub fn small() -> Self {
        Budget {
            vertices: 100_000,
            bfs_vertices: 20_000,
            dense_vertices: 1_000,
            cube_max_degree: 30,
            median_exhaustive: 150,
            median_samples: 10_000,
            hamiltonian_vertices: 5_000,
            embedding_dim: 30,
            materialized_dim: 20,
        }
    }
}
