//! Explicit `(t, 2)` broadcasts on finite grids.
//!
//! Paths are covered by towers spaced `2(t-1)` apart. For `m, n > 1` the grid
//! `G` is letterboxed: it sits centred inside a host grid `H` padded by
//! `t-2` on every side, the towers of a rectilinear lattice inside `H` are
//! taken, and every tower in the padding is moved to its nearest vertex of
//! `G`. Moving a tower that way never increases its distance to any vertex of
//! `G`, so the signal at every vertex of `G` can only grow.

use crate::bounds::upper_t2;
use crate::error::{invalid, Error, Result};
use crate::grid::{check_broadcast, BroadcastParams, Coord, GridDims, TowerSet};
use crate::lattice::{DiamondLattice, PatternVerdict};

/// `G_{m,n}` centred inside its host grid `H` with a halo of width `t-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Embedding {
    grid: GridDims,
    halo: i64,
}

impl Embedding {
    pub fn new(grid: GridDims, t: u32) -> Result<Self> {
        check_t(t)?;
        Ok(Embedding { grid, halo: i64::from(t) - 2 })
    }

    pub fn grid(&self) -> GridDims {
        self.grid
    }

    pub fn halo(&self) -> i64 {
        self.halo
    }

    /// Lower-left vertex of `H`.
    pub fn host_lo(&self) -> Coord {
        Coord::new(-self.halo, -self.halo)
    }

    /// Upper-right vertex of `H`.
    pub fn host_hi(&self) -> Coord {
        Coord::new(self.grid.m() as i64 - 1 + self.halo, self.grid.n() as i64 - 1 + self.halo)
    }

    pub fn host_dims(&self) -> GridDims {
        let pad = 2 * self.halo as usize;
        GridDims::new(self.grid.m() + pad, self.grid.n() + pad).expect("host is nonempty")
    }

    pub fn in_host(&self, v: Coord) -> bool {
        let (lo, hi) = (self.host_lo(), self.host_hi());
        (lo.x..=hi.x).contains(&v.x) && (lo.y..=hi.y).contains(&v.y)
    }

    pub fn in_halo(&self, v: Coord) -> bool {
        self.in_host(v) && !self.grid.contains(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Replacement {
    pub from: Coord,
    pub to: Coord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    /// Final broadcast, entirely inside the grid.
    pub towers: TowerSet,
    /// Anchor of the lattice the towers were cut from.
    pub anchor: Coord,
    /// Lattice towers inside the host grid before replacement.
    pub raw_count: usize,
    /// Halo towers and the grid vertices they were moved to, in `from` order.
    pub replacements: Vec<Replacement>,
}

fn check_t(t: u32) -> Result<()> {
    if t < 3 {
        return Err(invalid(format!("(t,2) constructions need t >= 3, got {t}")));
    }
    Ok(())
}

fn verify(dims: GridDims, t: u32, towers: &TowerSet) -> Result<()> {
    let report = check_broadcast(dims, BroadcastParams::new(t, 2)?, towers);
    match report.deficiencies().first() {
        None => Ok(()),
        Some(first) => Err(Error::Verification { deficient: report.deficiencies().len(), first: first.at }),
    }
}

/// The unique grid vertex nearest to `v` in Manhattan distance.
pub fn clamp_to_grid(v: Coord, dims: GridDims) -> Coord {
    Coord::new(v.x.clamp(0, dims.m() as i64 - 1), v.y.clamp(0, dims.n() as i64 - 1))
}

/// `(t, 2)` broadcast on the path `G_{m,1}`: `ceil((m+1) / 2(t-1))` towers at
/// `t-2, 3t-4, ...`, the last one pulled back onto the path if it overshoots.
pub fn path_construct(m: usize, t: u32) -> Result<TowerSet> {
    check_t(t)?;
    if m == 0 {
        return Err(invalid("path length must be at least 1"));
    }
    let spacing = 2 * (i64::from(t) - 1);
    let last = m as i64 - 1;
    let k = (m as i64 + 1 + spacing - 1) / spacing;
    let towers: TowerSet =
        (0..k).map(|i| Coord::new((i64::from(t) - 2 + spacing * i).min(last), 0)).collect();
    debug_assert_eq!(towers.len() as i64, k);
    verify(GridDims::new(m, 1)?, t, &towers)?;
    Ok(towers)
}

/// Letterbox construction from one lattice.
///
/// Non-rectilinear lattices must pass [`DiamondLattice::validate`] first.
pub fn letterbox_construct(dims: GridDims, t: u32, lattice: &DiamondLattice) -> Result<ConstructionResult> {
    check_t(t)?;
    if dims.m() < 2 || dims.n() < 2 {
        return Err(invalid(format!("letterboxing needs m, n > 1, got {dims}")));
    }
    if lattice.t() != t {
        return Err(invalid(format!("lattice has strength {}, expected {t}", lattice.t())));
    }
    if !lattice.is_rectilinear() {
        if let PatternVerdict::Counterexample(v) = lattice.validate() {
            return Err(Error::InvalidLattice(v));
        }
    }

    let embedding = Embedding::new(dims, t)?;
    let raw = lattice.towers_in_window(embedding.host_lo(), embedding.host_hi());
    let mut towers: TowerSet = raw.iter().filter(|&v| dims.contains(v)).collect();
    let mut replacements = Vec::new();
    for from in raw.iter().filter(|&v| !dims.contains(v)) {
        let to = clamp_to_grid(from, dims);
        if !towers.insert(to) {
            return Err(Error::Collision { from, to });
        }
        replacements.push(Replacement { from, to });
    }
    verify(dims, t, &towers)?;

    Ok(ConstructionResult { towers, anchor: lattice.anchor(), raw_count: raw.len(), replacements })
}

/// Host-grid tower count of the rectilinear lattice for every anchor of the
/// fundamental domain `[0, 2(t-1))^2`, in lexicographic anchor order.
pub fn anchor_sweep(dims: GridDims, t: u32) -> Result<Vec<(Coord, u64)>> {
    let embedding = Embedding::new(dims, t)?;
    let base = DiamondLattice::rectilinear(t, Coord::new(0, 0))?;
    let period = 2 * (i64::from(t) - 1);
    let mut counts = Vec::with_capacity((period * period) as usize);
    for x in 0..period {
        for y in 0..period {
            let anchor = Coord::new(x, y);
            let count = base.with_anchor(anchor).count_in_window(embedding.host_lo(), embedding.host_hi());
            counts.push((anchor, count));
        }
    }
    Ok(counts)
}

/// Letterbox construction at the anchor with the fewest host-grid towers,
/// ties going to the lexicographically smallest anchor.
pub fn best_anchor_construct(dims: GridDims, t: u32) -> Result<ConstructionResult> {
    check_t(t)?;
    let sweep = anchor_sweep(dims, t)?;
    let (anchor, _) = sweep
        .iter()
        .copied()
        .reduce(|best, next| if next.1 < best.1 { next } else { best })
        .expect("fundamental domain is nonempty");
    letterbox_construct(dims, t, &DiamondLattice::rectilinear(t, anchor)?)
}

/// A verified `(t, 2)` broadcast of size at most [`upper_t2`] for any grid.
pub fn construct(dims: GridDims, t: u32) -> Result<TowerSet> {
    check_t(t)?;
    let towers = if dims.n() == 1 {
        path_construct(dims.m(), t)?
    } else if dims.m() == 1 {
        path_construct(dims.n(), t)?.transpose()
    } else {
        best_anchor_construct(dims, t)?.towers
    };
    verify(dims, t, &towers)?;
    let bound = upper_t2(dims.m() as u64, dims.n() as u64, t)?;
    if towers.len() as u64 > bound {
        return Err(Error::BoundExceeded { size: towers.len(), bound });
    }
    Ok(towers)
}
