use thiserror::Error;

use crate::grid::Coord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller-supplied argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A tower pattern failed validation at the given vertex.
    #[error("lattice does not dominate: vertex {0} receives less than 2 signal")]
    InvalidLattice(Coord),

    /// Two halo towers were clamped onto the same grid vertex, or onto a kept tower.
    #[error("replacement collision: {from} clamps onto occupied vertex {to}")]
    Collision { from: Coord, to: Coord },

    /// A constructed set failed the broadcast verifier.
    #[error("construction failed verification: {deficient} deficient vertices, first at {first}")]
    Verification { deficient: usize, first: Coord },

    #[error("construction used {size} towers, above the upper bound {bound}")]
    BoundExceeded { size: usize, bound: u64 },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
