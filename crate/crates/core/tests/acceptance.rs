//! Acceptance criteria. Run with `cargo test -p gridcast --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_rational::Ratio;

use gridcast::bounds::{blessing_bounds, bound_report, lower_t2, upper_t2};
use gridcast::construction::{anchor_sweep, construct, letterbox_construct, Embedding, Replacement};
use gridcast::exact::{exact_gamma, exact_gamma_from, SearchBudget, SolveStatus};
use gridcast::grid::{check_broadcast, BroadcastParams, Coord, GridDims, TowerSet};
use gridcast::io::cli::run;
use gridcast::io::BroadcastDocument;
use gridcast::lattice::{DiamondLattice, PatternVerdict};

type Outcome = Result<String, String>;

fn c(x: i64, y: i64) -> Coord {
    Coord::new(x, y)
}

fn dims(m: usize, n: usize) -> GridDims {
    GridDims::new(m, n).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_paths() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (m, want) in [(17, 3), (5, 1)] {
        let path = dir.path().join(format!("path{m}.json"));
        let args = ["gridcast", "construct", "--m", &m.to_string(), "--n", "1", "--t", "4", "--out"];
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let args = args.iter().map(|s| s.to_string()).chain([path.display().to_string()]);
        let code = run(args, &mut out, &mut err);
        ensure(code == 0, || format!("{m}x1: exit {code}: {}", String::from_utf8_lossy(&err)))?;
        let doc = BroadcastDocument::parse(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let towers = doc.tower_set();
        ensure(towers.len() == want, || format!("{m}x1: {} towers, want {want}", towers.len()))?;
        let report = check_broadcast(dims(m, 1), BroadcastParams::new(4, 2).unwrap(), &towers);
        ensure(report.is_valid(), || format!("{m}x1: not a (4,2) broadcast"))?;
    }
    Ok("17x1 -> 3 towers, 5x1 -> 1 tower, both valid".into())
}

fn ac2_letterbox_layout() -> Outcome {
    let lattice = DiamondLattice::rectilinear(4, c(1, 4)).map_err(|e| e.to_string())?;
    let result = letterbox_construct(dims(12, 6), 4, &lattice).map_err(|e| e.to_string())?;
    let expected: TowerSet =
        [(1, 4), (4, 1), (7, 4), (10, 1), (0, 1), (1, 0), (7, 0), (0, 5), (4, 5), (10, 5), (11, 0), (11, 4)]
            .into_iter()
            .map(Coord::from)
            .collect();
    ensure(result.towers == expected, || format!("towers {:?}", result.towers.to_vec()))?;
    ensure(result.replacements.len() == 8, || format!("{} replacements", result.replacements.len()))?;
    ensure(result.raw_count == result.towers.len(), || "cardinality changed".into())?;
    let emb = Embedding::new(dims(12, 6), 4).map_err(|e| e.to_string())?;
    ensure(
        result
            .replacements
            .iter()
            .all(|&Replacement { from, to }| emb.in_halo(from) && dims(12, 6).contains(to)),
        || "replacement outside halo or grid".into(),
    )?;
    Ok("12 towers, 8 replacements, cardinality preserved".into())
}

fn ac3_host_count() -> Outcome {
    let g = dims(12, 6);
    let emb = Embedding::new(g, 3).map_err(|e| e.to_string())?;
    let host = emb.host_dims();
    ensure((host.m(), host.n()) == (14, 8), || format!("host {host}"))?;
    let lattice = DiamondLattice::rectilinear(3, c(-2, -2)).map_err(|e| e.to_string())?;
    let raw = lattice.count_in_window(emb.host_lo(), emb.host_hi());
    let bound = upper_t2(12, 6, 3).map_err(|e| e.to_string())?;
    ensure(raw == 14 && bound == 14, || format!("raw {raw}, bound {bound}"))?;
    let result = letterbox_construct(g, 3, &lattice).map_err(|e| e.to_string())?;
    ensure(result.raw_count == 14, || format!("raw_count {}", result.raw_count))?;
    Ok("14 lattice towers in the 14x8 host = upper bound 14".into())
}

fn ac4_upper_bound_sweep() -> Outcome {
    let mut count = 0;
    for t in 3u32..=6 {
        let h = 2 * (u64::from(t) - 2);
        let cell = 2 * (u64::from(t) - 1).pow(2);
        for m in 1..=40usize {
            for n in 1..=40usize {
                let g = dims(m, n);
                let towers = construct(g, t).map_err(|e| format!("{m}x{n} t={t}: {e}"))?;
                let report = check_broadcast(g, BroadcastParams::new(t, 2).unwrap(), &towers);
                ensure(report.is_valid(), || format!("{m}x{n} t={t}: invalid"))?;
                let bound = (m as u64 + h) * (n as u64 + h) / cell;
                ensure(towers.len() as u64 <= bound, || {
                    format!("{m}x{n} t={t}: {} > {bound}", towers.len())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances valid and within bound"))
}

fn ac5_sandwich() -> Outcome {
    let mut count = 0;
    for t in [3u32, 4] {
        let params = BroadcastParams::new(t, 2).unwrap();
        for m in 1..=6usize {
            for n in 1..=6usize {
                let g = dims(m, n);
                let solved = exact_gamma(g, params, SearchBudget::default());
                ensure(solved.status == SolveStatus::Optimal, || {
                    format!("{m}x{n} t={t}: {:?}", solved.status)
                })?;
                let gamma = solved.gamma.unwrap();
                let witness = solved.witness.as_ref().unwrap();
                ensure(check_broadcast(g, params, witness).is_valid() && witness.len() == gamma, || {
                    format!("{m}x{n} t={t}: bad witness")
                })?;
                // The lower bound is certified by a search that does not start from it.
                let from_one = exact_gamma_from(g, params, 1, SearchBudget::default());
                ensure(from_one.gamma == Some(gamma), || {
                    format!("{m}x{n} t={t}: from 1 got {:?}, from bound {gamma}", from_one.gamma)
                })?;
                let lower = lower_t2(m as u64, n as u64, t).unwrap() as usize;
                let built = construct(g, t).unwrap().len();
                ensure(lower <= gamma && gamma <= built, || {
                    format!("{m}x{n} t={t}: {lower} <= {gamma} <= {built} fails")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, lower <= gamma <= construct"))
}

/// Smallest `k` such that some `k`-subset is a broadcast, by plain enumeration.
fn naive_gamma(m: usize, n: usize, t: u32, r: u32) -> Option<usize> {
    let cells: Vec<(i64, i64)> = (0..m as i64).cartesian_product(0..n as i64).collect();
    let covers = |set: &[&(i64, i64)]| {
        cells.iter().all(|&(x, y)| {
            let total: i64 =
                set.iter().map(|&&(a, b)| (i64::from(t) - (x - a).abs() - (y - b).abs()).max(0)).sum();
            total >= i64::from(r)
        })
    };
    (1..=cells.len()).find(|&k| cells.iter().combinations(k).any(|s| covers(&s)))
}

fn ac6_oracle() -> Outcome {
    let mut count = 0;
    for m in 1..=16usize {
        for n in 1..=16 / m {
            for t in 2u32..=4 {
                for r in 1u32..=2 {
                    let solved =
                        exact_gamma(dims(m, n), BroadcastParams::new(t, r).unwrap(), SearchBudget::default());
                    let naive = naive_gamma(m, n, t, r);
                    ensure(solved.gamma == naive, || {
                        format!("{m}x{n} t={t} r={r}: solver {:?}, naive {naive:?}", solved.gamma)
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instances agree with subset enumeration"))
}

fn ac7_density() -> Outcome {
    for t in 3u32..=8 {
        let period = 2 * (t - 1);
        let want = Ratio::new(1, i64::from(period) * i64::from(t - 1));
        let lattice = DiamondLattice::rectilinear(t, c(0, 0)).unwrap();
        for k in 1..=5 {
            let got = lattice.window_density(period * k).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("t={t} side={}: {got} != {want}", period * k))?;
        }
    }
    Ok("window density = 1/(2(t-1)^2) for t=3..8, k=1..5".into())
}

fn ac8_patterns() -> Outcome {
    let mut count = 0;
    for t in 3u32..=8 {
        let p = 2 * (i64::from(t) - 1);
        let base = DiamondLattice::rectilinear(t, c(0, 0)).unwrap();
        for (x, y) in (0..p).cartesian_product(0..p) {
            let l = base.with_anchor(c(x, y));
            ensure(l.validate() == PatternVerdict::Valid, || format!("t={t} anchor ({x},{y})"))?;
            count += 1;
        }
    }
    let shear = DiamondLattice::sheared(3, c(0, 0), 3).unwrap();
    ensure(shear.validate() == PatternVerdict::Valid, || "t=3 shear 3".into())?;
    Ok(format!("{count} rectilinear anchors and the t=3 c=3 shear valid"))
}

fn ac9_convergence() -> Outcome {
    let ratios: Vec<Ratio<i64>> = [8u64, 16, 32, 64, 128, 256, 512]
        .iter()
        .map(|&s| bound_report(s, s, 3).map(|b| b.ratio))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(ratios.windows(2).all(|w| w[0] > w[1]), || format!("not decreasing: {ratios:?}"))?;
    let last = *ratios.last().unwrap();
    ensure(last < Ratio::new(101, 100), || format!("ratio(512) = {last}"))?;
    Ok(format!("strictly decreasing, ratio(512) = {last}"))
}

fn ac10_specialization() -> Outcome {
    for m in 1..=100u64 {
        for n in 1..=100u64 {
            let upper = upper_t2(m, n, 3).map_err(|e| e.to_string())?;
            ensure(upper == (m + 2) * (n + 2) / 8, || format!("{m}x{n}: upper {upper}"))?;
            let b32 = blessing_bounds(m, n).map_err(|e| e.to_string())?.b32;
            ensure(b32 == upper as i64 - 1, || format!("{m}x{n}: b32 {b32}"))?;
        }
    }
    Ok("10000 grids".into())
}

fn ac11_anchor_mean() -> Outcome {
    for t in 3u32..=5 {
        for (m, n) in [(5usize, 5usize), (12, 6), (9, 13)] {
            let sweep = anchor_sweep(dims(m, n), t).map_err(|e| e.to_string())?;
            let total: i64 = sweep.iter().map(|&(_, k)| k as i64).sum();
            let mean = Ratio::new(total, sweep.len() as i64);
            let h = 2 * (i64::from(t) - 2);
            let s = i64::from(t) - 1;
            let want = Ratio::new((m as i64 + h) * (n as i64 + h), 2 * s * s);
            ensure(sweep.len() as i64 == 4 * s * s, || format!("t={t}: {} anchors", sweep.len()))?;
            ensure(mean == want, || format!("{m}x{n} t={t}: mean {mean} != {want}"))?;
        }
    }
    Ok("mean raw_count exact for 9 cases".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "path layouts", limit: Duration::from_secs(1), check: ac1_paths },
        Criterion {
            id: 2,
            name: "letterbox layout, anchor (1,4)",
            limit: Duration::from_secs(1),
            check: ac2_letterbox_layout,
        },
        Criterion {
            id: 3,
            name: "host grid lattice count",
            limit: Duration::from_secs(1),
            check: ac3_host_count,
        },
        Criterion {
            id: 4,
            name: "upper bound sweep",
            limit: Duration::from_secs(60),
            check: ac4_upper_bound_sweep,
        },
        Criterion {
            id: 5,
            name: "lower/exact/construct sandwich",
            limit: Duration::from_secs(300),
            check: ac5_sandwich,
        },
        Criterion {
            id: 6,
            name: "solver vs subset enumeration",
            limit: Duration::from_secs(300),
            check: ac6_oracle,
        },
        Criterion { id: 7, name: "exact window density", limit: Duration::from_secs(1), check: ac7_density },
        Criterion { id: 8, name: "pattern validity", limit: Duration::from_secs(5), check: ac8_patterns },
        Criterion {
            id: 9,
            name: "bound ratio convergence",
            limit: Duration::from_secs(1),
            check: ac9_convergence,
        },
        Criterion {
            id: 10,
            name: "t=3 specialization",
            limit: Duration::from_secs(1),
            check: ac10_specialization,
        },
        Criterion { id: 11, name: "anchor mean", limit: Duration::from_secs(5), check: ac11_anchor_mean },
    ];

    let mut failures = 0;
    for crit in &criteria {
        let start = Instant::now();
        let outcome = (crit.check)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > crit.limit => {
                Err(format!("{detail}, but took longer than {:?}", crit.limit))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] AC{} {}: {detail} ({:.3}s)", crit.id, crit.name, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
