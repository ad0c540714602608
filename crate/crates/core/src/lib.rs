//! Construction, verification, bounds and exact solving of `(t, r)` broadcast
//! dominating sets on finite grid graphs.
//!
//! A tower of strength `t` supplies `max(t - dist, 0)` signal to every
//! vertex; a `(t, r)` broadcast is a tower set giving every vertex total
//! signal at least `r`.

pub mod bounds;
pub mod construction;
pub mod error;
pub mod exact;
pub mod grid;
pub mod io;
pub mod lattice;

pub use error::{Error, Result};
pub use grid::{BroadcastParams, Coord, GridDims, TowerSet};
