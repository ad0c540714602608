//! Closed-form bounds on broadcast domination numbers of grid graphs.
//!
//! All arithmetic is exact; no bound goes through floating point.

use num_rational::Ratio;

use crate::error::{invalid, Result};

fn check_dims(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(invalid(format!("grid dimensions must be positive, got {m}x{n}")));
    }
    Ok(())
}

fn check_t2(m: u64, n: u64, t: u32) -> Result<()> {
    check_dims(m, n)?;
    if t < 3 {
        return Err(invalid(format!("(t,2) bounds need t >= 3, got {t}")));
    }
    Ok(())
}

/// `2(t-1)^2`, the number of vertices per tower in an optimal infinite `(t,2)` broadcast.
pub fn cell_area(t: u32) -> u64 {
    let s = u64::from(t) - 1;
    2 * s * s
}

/// Letterbox upper bound `floor((m+2(t-2))(n+2(t-2)) / 2(t-1)^2)` on `gamma_{t,2}`.
pub fn upper_t2(m: u64, n: u64, t: u32) -> Result<u64> {
    check_t2(m, n, t)?;
    let halo = 2 * (u64::from(t) - 2);
    Ok((m + halo) * (n + halo) / cell_area(t))
}

/// Density lower bound `mn / 2(t-1)^2`, as an exact rational.
pub fn lower_t2_exact(m: u64, n: u64, t: u32) -> Result<Ratio<i64>> {
    check_t2(m, n, t)?;
    Ok(Ratio::new((m * n) as i64, cell_area(t) as i64))
}

/// Integer form of the density lower bound: `ceil(mn / 2(t-1)^2)`.
pub fn lower_t2(m: u64, n: u64, t: u32) -> Result<u64> {
    Ok(lower_t2_exact(m, n, t)?.ceil().to_integer() as u64)
}

/// Domination number bound `floor((n+2)(m+2)/5) - 4`, stated for `m, n > 8`.
pub fn chang_bound(m: u64, n: u64) -> Result<i64> {
    if m <= 8 || n <= 8 {
        return Err(invalid(format!("Chang's bound holds for m, n > 8, got {m}x{n}")));
    }
    Ok(((m + 2) * (n + 2) / 5) as i64 - 4)
}

/// k-distance domination bound `floor((m+2k)(n+2k) / (2k^2+2k+1)) - 4`.
pub fn grez_bound(m: u64, n: u64, k: u64) -> Result<i64> {
    check_dims(m, n)?;
    if k == 0 {
        return Err(invalid("distance k must be at least 1"));
    }
    Ok(((m + 2 * k) * (n + 2 * k) / (2 * k * k + 2 * k + 1)) as i64 - 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlessingBounds {
    /// Upper bound on `gamma_{2,2}`: `floor((m+2)(n+2)/3) - 5`.
    pub b22: i64,
    /// Upper bound on `gamma_{3,2}`: `floor((m+2)(n+2)/8) - 1`.
    pub b32: i64,
}

pub fn blessing_bounds(m: u64, n: u64) -> Result<BlessingBounds> {
    check_dims(m, n)?;
    let area = (m + 2) * (n + 2);
    Ok(BlessingBounds { b22: (area / 3) as i64 - 5, b32: (area / 8) as i64 - 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub m: u64,
    pub n: u64,
    pub t: u32,
    pub upper_t2: u64,
    pub lower_t2: u64,
    /// The real-valued lower bound before rounding up.
    pub lower_exact: Ratio<i64>,
    /// `upper_t2 / lower_t2`.
    pub ratio: Ratio<i64>,
}

pub fn bound_report(m: u64, n: u64, t: u32) -> Result<BoundReport> {
    let upper = upper_t2(m, n, t)?;
    let lower = lower_t2(m, n, t)?;
    Ok(BoundReport {
        m,
        n,
        t,
        upper_t2: upper,
        lower_t2: lower,
        lower_exact: lower_t2_exact(m, n, t)?,
        ratio: Ratio::new(upper as i64, lower as i64),
    })
}
