//! Grid geometry, signal arithmetic and the broadcast verifier.
//!
//! A finite grid `G_{m,n}` has vertices `(x, y)` with `0 <= x < m` and
//! `0 <= y < n`; `(0, 0)` is the lower-left corner. Distances are Manhattan
//! distances, which coincide with shortest-path lengths on the grid graph.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Result};

/// Largest accepted signal strength. Together with [`MAX_TOWERS`] this keeps
/// every signal total far below `u64::MAX`.
pub const MAX_STRENGTH: u32 = 10_000;

/// Largest tower count accepted by [`signal_field`].
pub const MAX_TOWERS: usize = 1_000_000;

/// An integer lattice point. Coordinates may be negative; membership in a
/// finite grid is always checked against a [`GridDims`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const fn new(x: i64, y: i64) -> Self {
        Coord { x, y }
    }

    pub const fn offset(self, dx: i64, dy: i64) -> Self {
        Coord::new(self.x + dx, self.y + dy)
    }

    pub const fn transpose(self) -> Self {
        Coord::new(self.y, self.x)
    }
}

impl From<(i64, i64)> for Coord {
    fn from((x, y): (i64, i64)) -> Self {
        Coord::new(x, y)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Dimensions of the `m x n` grid graph: `m` vertices along x, `n` along y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDims {
    m: usize,
    n: usize,
}

impl GridDims {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(invalid(format!("grid dimensions must be positive, got {m}x{n}")));
        }
        Ok(GridDims { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices, `m * n`.
    pub fn len(&self) -> usize {
        self.m * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn transpose(&self) -> Self {
        GridDims { m: self.n, n: self.m }
    }

    pub fn contains(&self, v: Coord) -> bool {
        v.x >= 0 && v.y >= 0 && (v.x as u64) < self.m as u64 && (v.y as u64) < self.n as u64
    }

    /// Dense index of a vertex. Index order equals lexicographic `(x, y)` order.
    pub fn index(&self, v: Coord) -> Option<usize> {
        self.contains(v).then(|| v.x as usize * self.n + v.y as usize)
    }

    pub fn coord(&self, index: usize) -> Coord {
        debug_assert!(index < self.len());
        Coord::new((index / self.n) as i64, (index % self.n) as i64)
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.len()).map(move |i| self.coord(i))
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

/// Signal strength `t` and required signal `r` of a `(t, r)` broadcast.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BroadcastParams {
    t: u32,
    r: u32,
}

impl BroadcastParams {
    pub fn new(t: u32, r: u32) -> Result<Self> {
        check_strength(t)?;
        if r == 0 {
            return Err(invalid("required signal r must be at least 1"));
        }
        Ok(BroadcastParams { t, r })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

pub(crate) fn check_strength(t: u32) -> Result<()> {
    if t == 0 || t > MAX_STRENGTH {
        return Err(invalid(format!("signal strength t={t} outside 1..={MAX_STRENGTH}")));
    }
    Ok(())
}

/// A deduplicated set of tower positions, iterated in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TowerSet(BTreeSet<Coord>);

impl TowerSet {
    pub fn new() -> Self {
        TowerSet(BTreeSet::new())
    }

    /// Inserts a tower; returns `false` if it was already present.
    pub fn insert(&mut self, v: Coord) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Coord) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: Coord) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Coord> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Coord> {
        self.iter().collect()
    }

    pub fn translate(&self, dx: i64, dy: i64) -> TowerSet {
        self.iter().map(|c| c.offset(dx, dy)).collect()
    }

    pub fn transpose(&self) -> TowerSet {
        self.iter().map(Coord::transpose).collect()
    }
}

impl FromIterator<Coord> for TowerSet {
    fn from_iter<I: IntoIterator<Item = Coord>>(iter: I) -> Self {
        TowerSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a TowerSet {
    type Item = &'a Coord;
    type IntoIter = std::collections::btree_set::Iter<'a, Coord>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Total signal received by every vertex of a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalField {
    dims: GridDims,
    values: Vec<u64>,
}

impl SignalField {
    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn get(&self, v: Coord) -> Option<u64> {
        self.dims.index(v).map(|i| self.values[i])
    }

    /// Values in lexicographic vertex order.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn min(&self) -> u64 {
        self.values.iter().copied().min().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coord, u64)> + '_ {
        self.values.iter().enumerate().map(|(i, &s)| (self.dims.coord(i), s))
    }

    /// Row `y` read left to right.
    pub fn row(&self, y: usize) -> Vec<u64> {
        (0..self.dims.m).map(|x| self.values[x * self.dims.n + y]).collect()
    }
}

pub fn manhattan_dist(u: Coord, v: Coord) -> u64 {
    u.x.abs_diff(v.x) + u.y.abs_diff(v.y)
}

/// Signal `max(t - dist, 0)` that a tower of strength `t` supplies to `v`.
pub fn signal(t: u32, tower: Coord, v: Coord) -> Result<u64> {
    check_strength(t)?;
    Ok(u64::from(t).saturating_sub(manhattan_dist(tower, v)))
}

/// Sums the signal of every tower over the vertices of `dims`. Towers outside
/// the grid are allowed and still radiate into it.
///
/// # Panics
///
/// If `t` is outside `1..=MAX_STRENGTH` or there are more than
/// [`MAX_TOWERS`] towers.
pub fn signal_field(dims: GridDims, t: u32, towers: &TowerSet) -> SignalField {
    assert!(check_strength(t).is_ok(), "signal strength {t} out of range");
    assert!(towers.len() <= MAX_TOWERS, "too many towers: {}", towers.len());

    let (m, n) = (dims.m as i64, dims.n as i64);
    let reach = i64::from(t) - 1;
    let mut values = vec![0u64; dims.len()];
    for tower in towers.iter() {
        for x in (tower.x - reach).max(0)..=(tower.x + reach).min(m - 1) {
            let left = reach - (x - tower.x).abs();
            let row = x as usize * dims.n;
            for y in (tower.y - left).max(0)..=(tower.y + left).min(n - 1) {
                let d = (x - tower.x).abs() + (y - tower.y).abs();
                values[row + y as usize] += (i64::from(t) - d) as u64;
            }
        }
    }
    SignalField { dims, values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deficiency {
    pub at: Coord,
    pub signal: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Every vertex below the required signal, in lexicographic order.
    Deficient(Vec<Deficiency>),
}

/// Result of [`check_broadcast`]. Towers outside the grid do not invalidate
/// the verdict but are reported, since a final broadcast must lie inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub outside_towers: Vec<Coord>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }

    pub fn deficiencies(&self) -> &[Deficiency] {
        match &self.verdict {
            Verdict::Valid => &[],
            Verdict::Deficient(list) => list,
        }
    }
}

pub fn check_broadcast(dims: GridDims, params: BroadcastParams, towers: &TowerSet) -> CheckReport {
    let field = signal_field(dims, params.t, towers);
    let required = u64::from(params.r);
    let deficient: Vec<_> =
        field.iter().filter(|&(_, s)| s < required).map(|(at, signal)| Deficiency { at, signal }).collect();
    let outside_towers = towers.iter().filter(|&c| !dims.contains(c)).collect();
    CheckReport {
        verdict: if deficient.is_empty() { Verdict::Valid } else { Verdict::Deficient(deficient) },
        outside_towers,
    }
}
