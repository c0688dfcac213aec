//! Digital topology on `Z^n`: adjacency pairs, digital `(n-1)`-manifolds,
//! the simplicial complexes `K(M)` / `K'(M)` built from them, and a
//! desk-scale checker for the discrete Jordan-Brouwer theorem.

pub mod adjacency;
pub mod cli;
pub mod complex;
pub mod error;
pub mod exact;
pub mod io;
pub mod jordan;
pub mod lattice;
pub mod manifold;
pub mod pseudomanifold;
pub mod separation;

pub use adjacency::{AdjacencyPair, AdjacencySpec, ComponentLabeling, PointSet, Region};
pub use error::{Error, Result};
pub use lattice::{Cube, HalfPoint, LatticePoint, Translation};
