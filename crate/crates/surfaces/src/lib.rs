//! Embeddings and low-crossing drawings of complete and complete bipartite
//! graphs in closed surfaces.
//!
//! The library is organized around rotation systems with edge signatures as
//! the sole representation of a cellular embedding. On top of that sit
//! drawings (embeddings of planarized graphs with a crossing ledger), current
//! graphs and their derived embeddings, embedding surgeries (flips, handles,
//! crosscaps, doubling, diamond sums, vertex merges), a backtracking search
//! over face-constrained embeddings, and construction drivers backed by a
//! small catalog of bundled rotation systems and a result cache.

pub mod catalog;
pub mod current;
pub mod drawing;
pub mod embedding;
pub mod format;
pub mod formula;
pub mod graph;
pub mod rotation;
pub mod search;
pub mod skeleton;
pub mod surface;
pub mod transform;
pub mod vertex;

mod error;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use surface::SurfaceId;
pub use vertex::VertexId;
