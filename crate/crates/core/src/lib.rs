//! Minimal Laplacian energy graphs.
//!
//! Builds connected graphs of minimum Laplacian energy for a given number of
//! vertices and edges, and certifies their energy, vertex/edge connectivity
//! and algebraic connectivity. Also ships the validation harness: exhaustive
//! small-graph search and consensus-dynamics simulation.

pub mod connectivity;
pub mod consensus;
pub mod constructor;
pub mod energy;
pub mod error;
pub mod graph;
pub mod search;
pub mod spectral;
pub mod verify;

pub use constructor::{construct, select_case, Case, ConstructionPlan};
pub use energy::{laplacian_energy, min_energy_value, EnergyValue};
pub use error::*;
pub use graph::{DegreeSequence, Format, Graph, LaplacianMatrix};
