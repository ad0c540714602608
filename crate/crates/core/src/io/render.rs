//! Text and SVG pictures of a broadcast.

use std::fmt::Write as _;

use crate::grid::{check_broadcast, BroadcastParams, Coord, GridDims, TowerSet};

const CELL: i64 = 32;

/// One line per grid row, top row (`y = n-1`) first. Deficient vertices are
/// `!` (even if they hold a tower), other towers `T`, everything else `.`.
pub fn render_ascii(dims: GridDims, params: BroadcastParams, towers: &TowerSet) -> String {
    let report = check_broadcast(dims, params, towers);
    let mut rows = vec![vec!['.'; dims.m()]; dims.n()];
    for v in towers.iter().filter(|&v| dims.contains(v)) {
        rows[v.y as usize][v.x as usize] = 'T';
    }
    for d in report.deficiencies() {
        rows[d.at.y as usize][d.at.x as usize] = '!';
    }
    let mut out = String::with_capacity(dims.len() + dims.n());
    for row in rows.iter().rev() {
        out.extend(row);
        out.push('\n');
    }
    out
}

/// Grid, towers and each tower's broadcast outline: the diamond through the
/// vertices at distance `t-1`. Deficient vertices are drawn in red.
pub fn render_svg(dims: GridDims, params: BroadcastParams, towers: &TowerSet) -> String {
    let report = check_broadcast(dims, params, towers);
    let reach = i64::from(params.t()) - 1;
    let (m, n) = (dims.m() as i64, dims.n() as i64);
    let margin = reach.max(1);
    let min_x = -margin;
    let (width, height) = ((m - 1 + 2 * margin) * CELL, (n - 1 + 2 * margin) * CELL);
    // SVG's y axis points down; grid row n-1 is drawn on top.
    let px = |c: Coord| ((c.x - min_x) * CELL, (n - 1 + margin - c.y) * CELL);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    );
    let _ = writeln!(out, r#"<g class="grid" stroke="lightgray" stroke-width="1">"#);
    for x in 0..m {
        let (a, b) = (px(Coord::new(x, 0)), px(Coord::new(x, n - 1)));
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.0, a.1, b.0, b.1);
    }
    for y in 0..n {
        let (a, b) = (px(Coord::new(0, y)), px(Coord::new(m - 1, y)));
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.0, a.1, b.0, b.1);
    }
    out.push_str("</g>\n");

    let _ = writeln!(out, r#"<g class="outlines" fill="none" stroke="steelblue" stroke-width="2">"#);
    for tower in towers.iter() {
        let corners = [(reach, 0), (0, reach), (-reach, 0), (0, -reach)]
            .map(|(dx, dy)| px(tower.offset(dx, dy)))
            .map(|(x, y)| format!("{x},{y}"))
            .join(" ");
        let _ = writeln!(out, r#"<polygon class="outline" points="{corners}"/>"#);
    }
    out.push_str("</g>\n");

    for d in report.deficiencies() {
        let (x, y) = px(d.at);
        let _ = writeln!(out, r#"<circle class="deficient" cx="{x}" cy="{y}" r="5" fill="red"/>"#);
    }
    for tower in towers.iter() {
        let (x, y) = px(tower);
        let _ = writeln!(out, r#"<circle class="tower" cx="{x}" cy="{y}" r="7" fill="navy"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
