//! Exact computations on Hilbert schemes of points on Picard-rank-1 K3
//! surfaces: movable cones and their walls via Pell equations and the Mukai
//! lattice, together with Seshadri-constant bounds and the closed forms
//! coming from nested Hilbert schemes.
//!
//! ```
//! use cone_walls::cones::{enumerate_walls, movable_boundary};
//!
//! // H·H = 10, X^[3]
//! let cone = movable_boundary(3, 5).unwrap();
//! assert_eq!(cone.mu.to_string(), "30/19");
//! let walls = enumerate_walls(3, 5, None).unwrap();
//! assert_eq!(walls.walls.len(), 2);
//! ```

pub mod arith;
pub mod cones;
pub mod error;
pub mod lattice;
pub mod nested;
pub mod pell;
pub mod seshadri;

pub use error::{Error, Result};
pub use lattice::{DivisorRay, MukaiVector};
pub use pell::PellSolution;
