//! Infinite periodic `(t, 2)` tower patterns.
//!
//! A [`DiamondLattice`] places towers at `anchor + a*u + b*v` for all integers
//! `a, b`, where `u = (t-1, t-1)` and `v = (c, c - 2(t-1))` for a shear `c`.
//! With `c = t-1` the broadcast outlines (the diamonds at distance `t-1`)
//! meet edge to edge along diagonals; this is the rectilinear pattern used by
//! the letterbox construction. Every shear has `|det| = 2(t-1)^2`.

use num_rational::Ratio;

use crate::error::{invalid, Result};
use crate::grid::{check_strength, signal_field, Coord, GridDims, TowerSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiamondLattice {
    t: u32,
    anchor: Coord,
    basis: [Coord; 2],
    shear: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternVerdict {
    Valid,
    /// First vertex (lexicographic, inside the checked core window) receiving
    /// less than 2 signal.
    Counterexample(Coord),
}

impl DiamondLattice {
    /// The rectilinear pattern with basis `((t-1, t-1), (t-1, -(t-1)))`.
    pub fn rectilinear(t: u32, anchor: Coord) -> Result<Self> {
        Self::sheared(t, anchor, i64::from(t) - 1)
    }

    /// Pattern with second generator `(c, c - 2(t-1))`.
    pub fn sheared(t: u32, anchor: Coord, c: i64) -> Result<Self> {
        check_pattern_strength(t)?;
        let s = i64::from(t) - 1;
        Ok(DiamondLattice { t, anchor, basis: [Coord::new(s, s), Coord::new(c, c - 2 * s)], shear: Some(c) })
    }

    /// Arbitrary non-degenerate basis, for experimenting with patterns that
    /// are not diamond tilings.
    pub fn from_basis(t: u32, anchor: Coord, u: Coord, v: Coord) -> Result<Self> {
        check_pattern_strength(t)?;
        if u.x * v.y - u.y * v.x == 0 {
            return Err(invalid(format!("degenerate lattice basis {u}, {v}")));
        }
        Ok(DiamondLattice { t, anchor, basis: [u, v], shear: None })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn anchor(&self) -> Coord {
        self.anchor
    }

    pub fn basis(&self) -> [Coord; 2] {
        self.basis
    }

    /// The shear `c`, when the lattice was built from one.
    pub fn shear(&self) -> Option<i64> {
        self.shear
    }

    pub fn is_rectilinear(&self) -> bool {
        self.shear == Some(i64::from(self.t) - 1)
    }

    /// Same pattern translated so that it passes through `anchor`.
    pub fn with_anchor(&self, anchor: Coord) -> Self {
        DiamondLattice { anchor, ..*self }
    }

    /// Signed basis determinant.
    pub fn determinant(&self) -> i64 {
        let [u, v] = self.basis;
        u.x * v.y - u.y * v.x
    }

    /// Towers per vertex in the limit, `1 / |det|`.
    pub fn density(&self) -> Ratio<i64> {
        Ratio::new(1, self.determinant().abs())
    }

    /// Integer coefficients `(a, b)` with `p = anchor + a*u + b*v`, if any.
    pub fn coefficients(&self, p: Coord) -> Option<(i64, i64)> {
        let [u, v] = self.basis;
        let (dx, dy) = (p.x - self.anchor.x, p.y - self.anchor.y);
        let det = self.determinant();
        let a = dx * v.y - dy * v.x;
        let b = u.x * dy - u.y * dx;
        (a % det == 0 && b % det == 0).then(|| (a / det, b / det))
    }

    pub fn contains(&self, p: Coord) -> bool {
        self.coefficients(p).is_some()
    }

    pub fn point(&self, a: i64, b: i64) -> Coord {
        let [u, v] = self.basis;
        Coord::new(self.anchor.x + a * u.x + b * v.x, self.anchor.y + a * u.y + b * v.y)
    }

    /// Towers inside the closed box `lo..=hi`, in lexicographic order.
    pub fn towers_in_window(&self, lo: Coord, hi: Coord) -> TowerSet {
        let mut out = TowerSet::new();
        self.for_each_in_window(lo, hi, |p| {
            out.insert(p);
        });
        out
    }

    /// Number of towers inside the closed box `lo..=hi`.
    pub fn count_in_window(&self, lo: Coord, hi: Coord) -> u64 {
        let mut count = 0;
        self.for_each_in_window(lo, hi, |_| count += 1);
        count
    }

    fn for_each_in_window(&self, lo: Coord, hi: Coord, mut visit: impl FnMut(Coord)) {
        if lo.x > hi.x || lo.y > hi.y {
            return;
        }
        let [_, v] = self.basis;
        let mut det = self.determinant();
        // a(p) = ((p - anchor) x v) / det is affine in p, so its extremes over
        // the box sit at the corners.
        let corners = [lo, hi, Coord::new(lo.x, hi.y), Coord::new(hi.x, lo.y)];
        let mut nums = corners.map(|p| (p.x - self.anchor.x) * v.y - (p.y - self.anchor.y) * v.x);
        if det < 0 {
            det = -det;
            nums.iter_mut().for_each(|x| *x = -*x);
        }
        let a_lo = nums.iter().min().unwrap().div_euclid(det);
        let a_hi = div_ceil(*nums.iter().max().unwrap(), det);

        for a in a_lo..=a_hi {
            let base = self.point(a, 0);
            let Some((b_lo, b_hi)) = axis_range(lo.x - base.x, hi.x - base.x, v.x).and_then(|(l0, h0)| {
                axis_range(lo.y - base.y, hi.y - base.y, v.y).map(|(l1, h1)| (l0.max(l1), h0.min(h1)))
            }) else {
                continue;
            };
            for b in b_lo..=b_hi {
                visit(self.point(a, b));
            }
        }
    }

    /// Tower fraction of the window `[0, side)^2`, exactly.
    pub fn window_density(&self, side: u32) -> Result<Ratio<i64>> {
        if side == 0 {
            return Err(invalid("window side must be at least 1"));
        }
        let hi = i64::from(side) - 1;
        let count = self.count_in_window(Coord::new(0, 0), Coord::new(hi, hi)) as i64;
        Ok(Ratio::new(count, i64::from(side) * i64::from(side)))
    }

    /// Smallest positive `(px, py)` with `(px, 0)` and `(0, py)` lattice
    /// translations. Equals `(2(t-1), 2(t-1))` for the rectilinear pattern.
    pub fn axis_periods(&self) -> (i64, i64) {
        let det = self.determinant().abs();
        let origin = self.anchor;
        let period = |step: Coord| {
            (1..=det)
                .find(|&k| self.contains(origin.offset(k * step.x, k * step.y)))
                .expect("det * e_i always lies in the lattice")
        };
        (period(Coord::new(1, 0)), period(Coord::new(0, 1)))
    }

    /// Checks that every vertex of the plane receives at least 2 signal.
    ///
    /// The pattern is invariant under the axis periods, so it suffices to
    /// check the core window `[0, px) x [0, py)` against all towers within
    /// distance `t-1` of it.
    pub fn validate(&self) -> PatternVerdict {
        let (px, py) = self.axis_periods();
        let reach = i64::from(self.t) - 1;
        let towers =
            self.towers_in_window(Coord::new(-reach, -reach), Coord::new(px - 1 + reach, py - 1 + reach));
        let core = GridDims::new(px as usize, py as usize).expect("periods are positive");
        let field = signal_field(core, self.t, &towers);
        let failing = field.iter().find(|&(_, s)| s < 2);
        match failing {
            Some((v, _)) => PatternVerdict::Counterexample(v),
            None => PatternVerdict::Valid,
        }
    }
}

fn check_pattern_strength(t: u32) -> Result<()> {
    if t < 3 {
        return Err(invalid(format!("diamond lattices need t >= 3, got {t}")));
    }
    check_strength(t)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Integers `b` with `lo <= b * step <= hi`, as an inclusive range.
fn axis_range(lo: i64, hi: i64, step: i64) -> Option<(i64, i64)> {
    match step.signum() {
        0 => (lo <= 0 && 0 <= hi).then_some((i64::MIN / 4, i64::MAX / 4)),
        1 => Some((div_ceil(lo, step), hi.div_euclid(step))),
        _ => Some((div_ceil(-hi, -step), (-lo).div_euclid(-step))),
    }
}
