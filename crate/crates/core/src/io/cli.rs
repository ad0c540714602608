//! The `gridcast` command line.
//!
//! Exit codes: 0 success or valid, 1 invalid broadcast or failed internal
//! verification, 2 usage or parse error, 3 search budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bounds::{bound_report, upper_t2};
use crate::construction::{best_anchor_construct, construct, letterbox_construct};
use crate::error::Error;
use crate::exact::{exact_gamma, SearchBudget, SolveStatus, DEFAULT_MAX_NODES};
use crate::grid::{check_broadcast, BroadcastParams, Coord, GridDims};
use crate::io::document::BroadcastDocument;
use crate::io::format_decimal;
use crate::io::render::{render_ascii, render_svg};
use crate::lattice::DiamondLattice;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Deficiencies printed by `verify`.
const MAX_LISTED: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "gridcast", version, about = "(t,r) broadcast domination on grid graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a (t,2) broadcast and write it as a document.
    Construct {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        /// Letterbox a single lattice anchored at X,Y.
        #[arg(long, value_parser = parse_coord, conflicts_with = "best")]
        anchor: Option<Coord>,
        /// Minimize over all anchors of the fundamental domain (the default).
        #[arg(long)]
        best: bool,
        /// Second lattice generator (c, c-2(t-1)); needs --anchor.
        #[arg(long, requires = "anchor", allow_negative_numbers = true)]
        shear: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a document is a (t,r) broadcast.
    Verify { input: PathBuf },
    /// Compute gamma_{t,r} exactly by complete search.
    Exact {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        r: u32,
        /// Node expansion cap.
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        budget: u64,
        /// Wall-clock cap in seconds.
        #[arg(long)]
        seconds: Option<f64>,
        /// Write the optimal witness as a document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the (t,2) lower and upper bounds as CSV.
    Bounds {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u32,
    },
    /// Tabulate construction sizes and bounds over a range of grids.
    Sweep {
        /// Widths: A..B (inclusive), A..=B, a comma list, or a single value.
        #[arg(long, value_parser = parse_range)]
        m: Sizes,
        #[arg(long, value_parser = parse_range)]
        n: Sizes,
        #[arg(long)]
        t: u32,
        /// Only rows with m = n.
        #[arg(long)]
        square: bool,
        /// Also solve every cell exactly, with an optional node budget.
        #[arg(long, num_args = 0..=1, default_missing_value = "10000000")]
        exact: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a document as text or SVG.
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Exact tower density of a lattice in the window [0, side)^2.
    Density {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        side: u32,
        #[arg(long, value_parser = parse_coord, default_value = "0,0")]
        anchor: Coord,
        #[arg(long, allow_negative_numbers = true)]
        shear: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Clone)]
struct Sizes(Vec<usize>);

fn parse_coord(s: &str) -> Result<Coord, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("{v:?}: {e}"));
    Ok(Coord::new(parse(x)?, parse(y)?))
}

fn parse_range(s: &str) -> Result<Sizes, String> {
    let num = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    let values: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(format!("range {s:?} is empty"));
    }
    if values.contains(&0) {
        return Err("grid sizes must be positive".into());
    }
    Ok(Sizes(values))
}

/// Failure of a subcommand, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }

    fn invalid(message: impl ToString) -> Self {
        Failure { code: EXIT_INVALID, message: message.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::usage(e),
            _ => Failure::invalid(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e)
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line against the given streams and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Construct { m, n, t, anchor, best: _, shear, out: path } => {
            cmd_construct(m, n, t, anchor, shear, path.as_deref(), out)
        }
        Command::Verify { input } => cmd_verify(&input, out, err),
        Command::Exact { m, n, t, r, budget, seconds, out: path } => {
            let budget = SearchBudget { max_nodes: budget.max(1), max_seconds: seconds };
            cmd_exact(m, n, t, r, budget, path.as_deref(), out)
        }
        Command::Bounds { m, n, t } => cmd_bounds(m, n, t, out),
        Command::Sweep { m, n, t, square, exact, out: path } => {
            cmd_sweep(&m.0, &n.0, t, square, exact, path.as_deref(), out)
        }
        Command::Render { input, format } => cmd_render(&input, format, out),
        Command::Density { t, side, anchor, shear } => cmd_density(t, side, anchor, shear, out),
    }
}

fn write_document(doc: &BroadcastDocument, path: Option<&Path>) -> Result<(), Failure> {
    if let Some(path) = path {
        fs::write(path, doc.to_text())
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn read_document(path: &Path) -> Result<BroadcastDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    BroadcastDocument::parse(&text).map_err(Failure::usage)
}

fn cmd_construct(
    m: usize,
    n: usize,
    t: u32,
    anchor: Option<Coord>,
    shear: Option<i64>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let dims = GridDims::new(m, n)?;
    let params = BroadcastParams::new(t, 2)?;
    let bound = upper_t2(m as u64, n as u64, t)?;

    let (towers, anchor, raw_count, generator) = match anchor {
        Some(anchor) => {
            let lattice = match shear {
                Some(c) => DiamondLattice::sheared(t, anchor, c)?,
                None => DiamondLattice::rectilinear(t, anchor)?,
            };
            let r = letterbox_construct(dims, t, &lattice)?;
            (r.towers, Some(r.anchor), Some(r.raw_count), "letterbox")
        }
        None if m > 1 && n > 1 => {
            let r = best_anchor_construct(dims, t)?;
            (r.towers, Some(r.anchor), Some(r.raw_count), "letterbox-best")
        }
        None => (construct(dims, t)?, None, None, "path"),
    };
    if !check_broadcast(dims, params, &towers).is_valid() {
        return Err(Failure::invalid("constructed set failed verification"));
    }

    let mut doc = BroadcastDocument::new(dims, params, &towers, true).with_generator(generator);
    doc.anchor = anchor.map(|a| [a.x, a.y]);
    doc.raw_count = raw_count;
    write_document(&doc, path)?;

    let anchor = anchor.map_or_else(|| "none".to_owned(), |a| a.to_string());
    writeln!(out, "size={} bound={bound} anchor={anchor}", towers.len())?;
    Ok(EXIT_OK)
}

fn cmd_verify(input: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let doc = read_document(input)?;
    let dims = doc.dims().map_err(Failure::usage)?;
    let params = doc.params().map_err(Failure::usage)?;
    let report = check_broadcast(dims, params, &doc.tower_set());
    for tower in &report.outside_towers {
        writeln!(err, "warning: tower {tower} lies outside the {dims} grid")?;
    }
    if report.is_valid() {
        writeln!(out, "VALID")?;
        return Ok(EXIT_OK);
    }
    let deficient = report.deficiencies();
    writeln!(out, "INVALID deficient={}", deficient.len())?;
    for d in deficient.iter().take(MAX_LISTED) {
        writeln!(out, "{} signal={}", d.at, d.signal)?;
    }
    Ok(EXIT_INVALID)
}

fn cmd_exact(
    m: usize,
    n: usize,
    t: u32,
    r: u32,
    budget: SearchBudget,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let dims = GridDims::new(m, n)?;
    let params = BroadcastParams::new(t, r)?;
    let result = exact_gamma(dims, params, budget);
    match (result.status, result.gamma, &result.witness) {
        (SolveStatus::Optimal, Some(gamma), Some(witness)) => {
            let doc = BroadcastDocument::new(dims, params, witness, true).with_generator("exact");
            write_document(&doc, path)?;
            writeln!(out, "gamma={gamma} nodes={}", result.nodes_expanded)?;
            Ok(EXIT_OK)
        }
        (SolveStatus::Infeasible, ..) => {
            writeln!(out, "INFEASIBLE nodes={}", result.nodes_expanded)?;
            Ok(EXIT_INVALID)
        }
        _ => {
            writeln!(out, "UNSOLVED nodes={}", result.nodes_expanded)?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_bounds(m: u64, n: u64, t: u32, out: &mut dyn Write) -> CmdResult {
    let report = bound_report(m, n, t)?;
    writeln!(out, "m,n,t,lower,upper,ratio")?;
    writeln!(out, "{m},{n},{t},{},{},{}", report.lower_t2, report.upper_t2, format_decimal(report.ratio, 6))?;
    Ok(EXIT_OK)
}

pub const SWEEP_HEADER: &str = "m,n,t,construct_size,upper,lower,exact,gap,ratio";

fn cmd_sweep(
    ms: &[usize],
    ns: &[usize],
    t: u32,
    square: bool,
    exact: Option<u64>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    if t < 3 {
        return Err(Failure::usage(format!("sweeps need t >= 3, got {t}")));
    }
    let cells: Vec<(usize, usize)> = ms
        .iter()
        .flat_map(|&m| ns.iter().map(move |&n| (m, n)))
        .filter(|&(m, n)| !square || m == n)
        .collect();
    if cells.is_empty() {
        return Err(Failure::usage("sweep has no cells"));
    }

    let rows: Vec<Result<String, Error>> = cells
        .par_iter()
        .map(|&(m, n)| {
            let dims = GridDims::new(m, n)?;
            let size = construct(dims, t)?.len() as u64;
            let report = bound_report(m as u64, n as u64, t)?;
            let solved = exact.and_then(|nodes| {
                exact_gamma(dims, BroadcastParams::new(t, 2).ok()?, SearchBudget::nodes(nodes)).gamma
            });
            Ok(format!(
                "{m},{n},{t},{size},{},{},{},{},{}",
                report.upper_t2,
                report.lower_t2,
                solved.map(|g| g.to_string()).unwrap_or_default(),
                report.upper_t2 - size,
                format_decimal(report.ratio, 6),
            ))
        })
        .collect();

    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for row in rows {
        csv.push_str(&row?);
        csv.push('\n');
    }
    match path {
        Some(path) => fs::write(path, csv)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_render(input: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let doc = read_document(input)?;
    let dims = doc.dims().map_err(Failure::usage)?;
    let params = doc.params().map_err(Failure::usage)?;
    let towers = doc.tower_set();
    let text = match format {
        Format::Ascii => render_ascii(dims, params, &towers),
        Format::Svg => render_svg(dims, params, &towers),
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_density(t: u32, side: u32, anchor: Coord, shear: Option<i64>, out: &mut dyn Write) -> CmdResult {
    let lattice = match shear {
        Some(c) => DiamondLattice::sheared(t, anchor, c)?,
        None => DiamondLattice::rectilinear(t, anchor)?,
    };
    let density = lattice.window_density(side)?;
    writeln!(
        out,
        "towers={} area={} density={} limit={}",
        density * i64::from(side) * i64::from(side),
        u64::from(side) * u64::from(side),
        density,
        lattice.density()
    )?;
    Ok(EXIT_OK)
}
