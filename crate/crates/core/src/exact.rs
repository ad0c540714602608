//! Exact broadcast domination numbers on small grids.
//!
//! `gamma_{t,r}` is found by iterative deepening on the tower count `k`. Each
//! level is a complete depth-first search that branches on the
//! lexicographically first deficient vertex: some tower within distance
//! `t-1` of it must be chosen. Once a candidate's subtree is exhausted the
//! candidate is excluded from its later siblings, so every tower set is
//! visited at most once per level.

use std::time::{Duration, Instant};

use crate::bounds::lower_t2;
use crate::grid::{check_broadcast, BroadcastParams, Coord, GridDims, TowerSet};

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    /// Cap on search-tree node expansions, summed over all levels of a solve.
    pub max_nodes: u64,
    pub max_seconds: Option<f64>,
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes: max_nodes.max(1), max_seconds: None }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::nodes(DEFAULT_MAX_NODES)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeOutcome {
    Found(TowerSet),
    /// The search space was exhausted: no broadcast of this size exists.
    Infeasible,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeSearch {
    pub outcome: SizeOutcome,
    pub nodes_expanded: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    BudgetExhausted,
    /// Even a tower on every vertex falls short; only possible when `r > t`.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub gamma: Option<usize>,
    pub witness: Option<TowerSet>,
    pub nodes_expanded: u64,
}

/// Searches for a `(t, r)` broadcast with exactly `k` towers.
pub fn find_broadcast_of_size(
    dims: GridDims,
    params: BroadcastParams,
    k: usize,
    budget: SearchBudget,
) -> SizeSearch {
    let deadline = budget.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s));
    let mut search = Search::new(dims, params, budget.max_nodes, deadline);
    let outcome = search.run(k);
    SizeSearch { outcome, nodes_expanded: search.nodes }
}

/// Smallest `k` admitted by proven lower bounds: the density bound for
/// `r >= 2, t >= 3` (a `(t, r)` broadcast is also a `(t, 2)` one), else 1.
pub fn starting_size(dims: GridDims, params: BroadcastParams) -> usize {
    if params.t() >= 3 && params.r() >= 2 {
        lower_t2(dims.m() as u64, dims.n() as u64, params.t()).expect("t >= 3") as usize
    } else {
        1
    }
}

/// `gamma_{t,r}(G_{m,n})`, deepening from [`starting_size`].
pub fn exact_gamma(dims: GridDims, params: BroadcastParams, budget: SearchBudget) -> SolveResult {
    exact_gamma_from(dims, params, starting_size(dims, params), budget)
}

/// Iterative deepening from an explicit first level. Starting at 1 makes
/// every level below `gamma` an exhaustive infeasibility certificate.
pub fn exact_gamma_from(
    dims: GridDims,
    params: BroadcastParams,
    start: usize,
    budget: SearchBudget,
) -> SolveResult {
    let deadline = budget.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s));
    let mut nodes = 0;
    let mut status = SolveStatus::Infeasible;
    for k in start..=dims.len() {
        let remaining = budget.max_nodes.saturating_sub(nodes);
        let mut search = Search::new(dims, params, remaining, deadline);
        let outcome = search.run(k);
        nodes += search.nodes;
        match outcome {
            SizeOutcome::Found(witness) => {
                return SolveResult {
                    status: SolveStatus::Optimal,
                    gamma: Some(k),
                    witness: Some(witness),
                    nodes_expanded: nodes,
                }
            }
            SizeOutcome::Infeasible => {}
            SizeOutcome::BudgetExhausted => {
                status = SolveStatus::BudgetExhausted;
                break;
            }
        }
    }
    SolveResult { status, gamma: None, witness: None, nodes_expanded: nodes }
}

enum Step {
    Found,
    Failed,
    Exhausted,
}

struct Search {
    dims: GridDims,
    required: u64,
    /// For every cell, the cells it reaches with positive signal.
    reach: Vec<Vec<(usize, u64)>>,
    signal: Vec<u64>,
    deficit: u64,
    blocked: Vec<bool>,
    placed: Vec<usize>,
    /// Largest deficit one tower can remove on an empty grid.
    tower_cap: u64,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    scratch: Vec<u64>,
}

impl Search {
    fn new(dims: GridDims, params: BroadcastParams, max_nodes: u64, deadline: Option<Instant>) -> Self {
        let t = i64::from(params.t());
        let required = u64::from(params.r());
        let reach: Vec<Vec<(usize, u64)>> = dims
            .vertices()
            .map(|c| {
                let mut out = Vec::new();
                for dx in -(t - 1)..=(t - 1) {
                    let left = t - 1 - dx.abs();
                    for dy in -left..=left {
                        if let Some(i) = dims.index(c.offset(dx, dy)) {
                            out.push((i, (t - dx.abs() - dy.abs()) as u64));
                        }
                    }
                }
                out
            })
            .collect();
        let tower_cap =
            reach.iter().map(|cells| cells.iter().map(|&(_, s)| s.min(required)).sum()).max().unwrap_or(0);
        Search {
            dims,
            required,
            reach,
            signal: vec![0; dims.len()],
            deficit: required * dims.len() as u64,
            blocked: vec![false; dims.len()],
            placed: Vec::new(),
            tower_cap,
            nodes: 0,
            max_nodes,
            deadline,
            scratch: Vec::with_capacity(dims.len()),
        }
    }

    fn run(&mut self, k: usize) -> SizeOutcome {
        if k > self.dims.len() {
            return SizeOutcome::Infeasible;
        }
        match self.search(k) {
            Step::Exhausted => SizeOutcome::BudgetExhausted,
            Step::Failed => SizeOutcome::Infeasible,
            Step::Found => {
                let mut towers: TowerSet = self.placed.iter().map(|&i| self.dims.coord(i)).collect();
                // Extra towers never hurt; pad with the first free vertices.
                for v in self.dims.vertices() {
                    if towers.len() == k {
                        break;
                    }
                    towers.insert(v);
                }
                SizeOutcome::Found(towers)
            }
        }
    }

    fn shortfall(&self, cell: usize) -> u64 {
        self.required.saturating_sub(self.signal[cell])
    }

    fn gain(&self, cell: usize) -> u64 {
        self.reach[cell].iter().map(|&(u, s)| s.min(self.shortfall(u))).sum()
    }

    fn place(&mut self, cell: usize) {
        for i in 0..self.reach[cell].len() {
            let (u, s) = self.reach[cell][i];
            let before = self.shortfall(u);
            self.signal[u] += s;
            self.deficit -= before - self.shortfall(u);
        }
        self.placed.push(cell);
        self.blocked[cell] = true;
    }

    fn unplace(&mut self, cell: usize) {
        for i in 0..self.reach[cell].len() {
            let (u, s) = self.reach[cell][i];
            let before = self.shortfall(u);
            self.signal[u] -= s;
            self.deficit += self.shortfall(u) - before;
        }
        self.placed.pop();
        self.blocked[cell] = false;
    }

    /// Upper bound on the deficit `remaining` more towers can remove. The
    /// removable deficit is submodular, so current gains only shrink.
    fn repair_bound(&mut self, remaining: usize) -> u64 {
        let mut gains = std::mem::take(&mut self.scratch);
        gains.clear();
        gains.extend(
            (0..self.dims.len()).filter(|&c| !self.blocked[c]).map(|c| self.gain(c)).filter(|&g| g > 0),
        );
        let bound = if gains.len() <= remaining {
            gains.iter().sum()
        } else {
            gains.select_nth_unstable_by(remaining - 1, |a, b| b.cmp(a));
            gains[..remaining].iter().sum()
        };
        self.scratch = gains;
        bound
    }

    fn out_of_budget(&self) -> bool {
        if self.nodes >= self.max_nodes {
            return true;
        }
        match self.deadline {
            Some(deadline) if self.nodes.is_multiple_of(1024) => Instant::now() >= deadline,
            _ => false,
        }
    }

    fn search(&mut self, remaining: usize) -> Step {
        if self.deficit == 0 {
            return Step::Found;
        }
        if remaining == 0 {
            return Step::Failed;
        }
        if self.out_of_budget() {
            return Step::Exhausted;
        }
        self.nodes += 1;

        if (remaining as u64) * self.tower_cap < self.deficit || self.repair_bound(remaining) < self.deficit {
            return Step::Failed;
        }

        let target = (0..self.dims.len())
            .find(|&c| self.shortfall(c) > 0)
            .expect("positive deficit has a deficient vertex");
        let mut candidates: Vec<(u64, usize)> = self.reach[target]
            .iter()
            .map(|&(c, _)| c)
            .filter(|&c| !self.blocked[c])
            .map(|c| (self.gain(c), c))
            .collect();
        if self.placed.is_empty() {
            let reps = root_representatives(self.dims, self.dims.coord(target));
            candidates.retain(|&(_, c)| reps(self.dims.coord(c)));
        }
        candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut excluded = Vec::with_capacity(candidates.len());
        let mut step = Step::Failed;
        for (_, cell) in candidates {
            self.place(cell);
            let child = self.search(remaining - 1);
            if matches!(child, Step::Found) {
                step = Step::Found;
                break;
            }
            self.unplace(cell);
            if matches!(child, Step::Exhausted) {
                step = Step::Exhausted;
                break;
            }
            self.blocked[cell] = true;
            excluded.push(cell);
        }
        for cell in excluded {
            self.blocked[cell] = false;
        }
        step
    }
}

/// The grid's symmetries: the four axis flips, plus the four transposed
/// variants when the grid is square.
pub fn grid_symmetries(dims: GridDims) -> Vec<Box<dyn Fn(Coord) -> Coord>> {
    let (mx, my) = (dims.m() as i64 - 1, dims.n() as i64 - 1);
    let mut out: Vec<Box<dyn Fn(Coord) -> Coord>> = vec![
        Box::new(|c| c),
        Box::new(move |c| Coord::new(mx - c.x, c.y)),
        Box::new(move |c| Coord::new(c.x, my - c.y)),
        Box::new(move |c| Coord::new(mx - c.x, my - c.y)),
    ];
    if dims.m() == dims.n() {
        out.push(Box::new(|c| Coord::new(c.y, c.x)));
        out.push(Box::new(move |c| Coord::new(mx - c.y, c.x)));
        out.push(Box::new(move |c| Coord::new(c.y, my - c.x)));
        out.push(Box::new(move |c| Coord::new(mx - c.y, my - c.x)));
    }
    out
}

/// Root-level symmetry filter: keeps the lexicographically smallest member of
/// each orbit under the symmetries that fix the branching vertex. Only those
/// symmetries preserve the root's branching choice, so the filter is sound.
fn root_representatives(dims: GridDims, target: Coord) -> impl Fn(Coord) -> bool {
    let stabilizer: Vec<_> = grid_symmetries(dims).into_iter().filter(|g| g(target) == target).collect();
    move |c| stabilizer.iter().all(|g| c <= g(c))
}

/// True if the result carries a witness of size `gamma` that verifies.
pub fn witness_is_valid(dims: GridDims, params: BroadcastParams, result: &SolveResult) -> bool {
    match (&result.witness, result.gamma) {
        (Some(w), Some(gamma)) => w.len() == gamma && check_broadcast(dims, params, w).is_valid(),
        _ => false,
    }
}
