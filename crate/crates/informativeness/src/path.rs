//! Constructive paths between comparable experiments.
//!
//! Every path starts at the more informative experiment and ends at the
//! less informative one, moving through experiments that stay comparable
//! step by step. Continuous segments are sampled at a configurable number
//! of points so that a path is a replayable, independently checkable
//! certificate of dominance (and of cost monotonicity for monotone costs).

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::experiment::Experiment;
use crate::order::{
    binary_from_vector, binary_vector, blackwell_geq, blackwell_geq_binary, lehmann_geq_binary,
    lehmann_geq_mlrp, pp_curve, ratio,
};
use crate::tol::Tol;
use crate::Result;

/// Default number of sampled points per continuous path segment.
pub const DEFAULT_SAMPLES: usize = 16;

/// Hard cap on the number of removals in a full Lehmann path.
pub fn removal_cap(f: &Experiment) -> usize {
    10 * f.states() * f.signals()
}

/// The construction a path came from, which also fixes how it is verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    /// Two-segment parallelogram path for binary experiments.
    BinaryBlackwell,
    /// Chain of truncated reverse signal replacements (binary MLRP).
    BinaryLehmann,
    /// Mixture path `[(1-t) f, t g]` in the joint signal space.
    GeneralBlackwell,
    /// Single PP-plot chord removal for one state pair.
    LehmannRemoval,
    /// Full Lehmann path: per-state-pair sequence of splits and removals.
    LehmannFull,
}

/// What a step does.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum StepOp {
    /// The path's starting experiment.
    Start,
    /// A sampled point of a continuous garbling segment.
    Mix { segment: String },
    /// A sampled point of a (possibly truncated) reverse replacement.
    ReverseStep { j: usize, l: usize, up: bool, eps: f64 },
    /// Informativeness-preserving marker: signals split or zero columns
    /// introduced/removed.
    SplitMarker { detail: String },
    /// Informativeness-preserving marker: proportional/zero columns merged.
    MergeMarker { detail: String },
    /// Informativeness-preserving marker: signals relabeled.
    PermuteMarker { perm: Vec<usize> },
}

impl StepOp {
    /// Markers must leave the informativeness class (and any monotone cost)
    /// exactly unchanged.
    pub fn is_marker(&self) -> bool {
        matches!(
            self,
            StepOp::SplitMarker { .. } | StepOp::MergeMarker { .. } | StepOp::PermuteMarker { .. }
        )
    }
}

/// One experiment along a path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathStep {
    /// Progress coordinate in `[0, 1]` (nondecreasing, informational only).
    pub t: f64,
    pub op: StepOp,
    pub experiment: Experiment,
}

/// A replayable path certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Path {
    pub kind: PathKind,
    pub source: Experiment,
    pub target: Experiment,
    pub steps: Vec<PathStep>,
}

/// Result of replaying a path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathReport {
    pub ok: bool,
    pub steps: usize,
    pub problems: Vec<String>,
}

// ---------------------------------------------------------------------------
// Binary Blackwell path.
// ---------------------------------------------------------------------------

/// Two-segment path from `f` to `g` for binary experiments with
/// `f >= g` (Blackwell): first scale `f` toward one pooled corner, then mix
/// toward the other. When the mixing coefficients satisfy `a < b` the same
/// construction is applied to the label-swapped target, followed by a final
/// permutation marker.
pub fn binary_blackwell_path(
    f: &Experiment,
    g: &Experiment,
    tol: &Tol,
    samples: usize,
) -> Result<Path> {
    let check = blackwell_geq_binary(f, g, tol)?;
    if !check.feasible {
        return Err(Error::Degenerate(format!(
            "binary Blackwell path needs f >= g; best residual {}",
            check.residual
        )));
    }
    let fv = binary_vector(f)?;
    let (a, b) = (check.a, check.b);
    // Ties (a == b) fall into the `a >= b` branch.
    let (a, b, swapped) = if a >= b { (a, b, false) } else { (1.0 - a, 1.0 - b, true) };
    let c = if 1.0 - b > 1e-12 { (a - b) / (1.0 - b) } else { 1.0 };

    let mut steps = vec![PathStep {
        t: 0.0,
        op: StepOp::Start,
        experiment: f.clone(),
    }];
    // Segment 1: h = (1 - s (1 - c)) f, from f down to c f.
    for s in 1..=samples {
        let t = s as f64 / samples as f64;
        let scale = 1.0 - t * (1.0 - c);
        let hv: Vec<f64> = fv.iter().map(|&x| scale * x).collect();
        steps.push(PathStep {
            t: 0.5 * t,
            op: StepOp::Mix {
                segment: "scale toward low pooling".into(),
            },
            experiment: binary_from_vector(&hv)?,
        });
    }
    // Segment 2: h = c f + s b (1 - c f), from c f to a f + b (1 - f).
    for s in 1..=samples {
        let t = s as f64 / samples as f64;
        let hv: Vec<f64> = fv
            .iter()
            .map(|&x| {
                let base = c * x;
                base + t * b * (1.0 - base)
            })
            .collect();
        steps.push(PathStep {
            t: 0.5 + 0.5 * t,
            op: StepOp::Mix {
                segment: "mix toward high pooling".into(),
            },
            experiment: binary_from_vector(&hv)?,
        });
    }
    if swapped {
        let last = steps.last().unwrap().experiment.clone();
        steps.push(PathStep {
            t: 1.0,
            op: StepOp::PermuteMarker { perm: vec![1, 0] },
            experiment: last.permute(&[1, 0])?,
        });
    }
    Ok(Path {
        kind: PathKind::BinaryBlackwell,
        source: f.clone(),
        target: g.clone(),
        steps,
    })
}

// ---------------------------------------------------------------------------
// Binary Lehmann decomposition and path.
// ---------------------------------------------------------------------------

/// One reverse replacement of the binary Lehmann decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryLehmannStep {
    /// Truncation state (inclusive).
    pub l: usize,
    /// Mass moves low -> high in states `0..=l` when true, high -> low in
    /// states `l..` when false.
    pub up: bool,
    /// Transfer fraction.
    pub eps: f64,
}

/// Decomposes a binary Lehmann dominance `f >= g` into a finite chain of
/// truncated reverse signal replacements whose composition maps `f` to `g`
/// exactly. Errors unless `f >= g` in the Lehmann order.
pub fn binary_lehmann_decomposition(
    f: &Experiment,
    g: &Experiment,
    tol: &Tol,
) -> Result<Vec<BinaryLehmannStep>> {
    if !lehmann_geq_binary(f, g, tol)? {
        return Err(Error::Degenerate(
            "binary Lehmann decomposition needs f >= g".into(),
        ));
    }
    let fv = binary_vector(f)?;
    let gv = binary_vector(g)?;
    let n = fv.len();
    let k = (0..n).filter(|&i| gv[i] >= fv[i]).next_back();

    // Per-state transfer fractions.
    let eps: Vec<f64> = (0..n)
        .map(|i| {
            let e = match k {
                Some(k) if i <= k => 1.0 - ratio(1.0 - gv[i], 1.0 - fv[i]),
                _ => 1.0 - ratio(gv[i], fv[i]),
            };
            e.clamp(0.0, 1.0)
        })
        .collect();

    let mut steps = Vec::new();
    if let Some(k) = k {
        // Upper chain: states 0..=k move low -> high, outermost first.
        let mut outer = eps[k];
        push_step(&mut steps, k, true, outer);
        for l in (0..k).rev() {
            let denom = 1.0 - outer;
            let e = if denom > 1e-15 {
                ((eps[l] - outer) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            push_step(&mut steps, l, true, e);
            outer = eps[l];
        }
    }
    let first_low = k.map_or(0, |k| k + 1);
    if first_low < n {
        // Lower chain: states l.. move high -> low, innermost first.
        let mut inner = eps[first_low];
        push_step(&mut steps, first_low, false, inner);
        for l in first_low + 1..n {
            let denom = 1.0 - inner;
            let e = if denom > 1e-15 {
                ((eps[l] - inner) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            push_step(&mut steps, l, false, e);
            inner = eps[l];
        }
    }
    Ok(steps)
}

fn push_step(steps: &mut Vec<BinaryLehmannStep>, l: usize, up: bool, eps: f64) {
    if eps > 0.0 {
        steps.push(BinaryLehmannStep { l, up, eps });
    }
}

/// Applies one decomposition step to a high-signal probability vector.
fn apply_binary_step(v: &[f64], step: &BinaryLehmannStep, eps: f64) -> Vec<f64> {
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            if step.up && i <= step.l {
                x + eps * (1.0 - x)
            } else if !step.up && i >= step.l {
                x - eps * x
            } else {
                x
            }
        })
        .collect()
}

/// Builds the sampled path realizing [`binary_lehmann_decomposition`].
pub fn binary_lehmann_path(
    f: &Experiment,
    g: &Experiment,
    tol: &Tol,
    samples: usize,
) -> Result<Path> {
    let decomposition = binary_lehmann_decomposition(f, g, tol)?;
    let mut steps = vec![PathStep {
        t: 0.0,
        op: StepOp::Start,
        experiment: f.clone(),
    }];
    let mut cur = binary_vector(f)?;
    let total = decomposition.len().max(1) as f64;
    for (idx, d) in decomposition.iter().enumerate() {
        for s in 1..=samples {
            let eps = d.eps * s as f64 / samples as f64;
            let v = apply_binary_step(&cur, d, eps);
            steps.push(PathStep {
                t: (idx as f64 + s as f64 / samples as f64) / total,
                op: StepOp::ReverseStep {
                    j: if d.up { 0 } else { 1 },
                    l: d.l,
                    up: d.up,
                    eps,
                },
                experiment: binary_from_vector(&v)?,
            });
        }
        cur = apply_binary_step(&cur, d, d.eps);
    }
    Ok(Path {
        kind: PathKind::BinaryLehmann,
        source: f.clone(),
        target: g.clone(),
        steps,
    })
}

// ---------------------------------------------------------------------------
// General Blackwell path.
// ---------------------------------------------------------------------------

/// Mixture path for a general Blackwell dominance `f >= g`: embed both in
/// the joint signal space and traverse `[(1 - t) f, t g]`; the endpoints are
/// connected to `f` and `g` by zero-column markers.
pub fn general_blackwell_path(
    f: &Experiment,
    g: &Experiment,
    tol: &Tol,
    samples: usize,
) -> Result<Path> {
    let check = blackwell_geq(f, g, tol)?;
    if !check.feasible {
        return Err(Error::Degenerate(format!(
            "general Blackwell path needs f >= g; residual {}",
            check.residual
        )));
    }
    let n = f.states();
    let joint = |t: f64| -> Result<Experiment> {
        let rows = (0..n)
            .map(|i| {
                let mut row: Vec<f64> =
                    f.rows()[i].iter().map(|&v| (1.0 - t) * v).collect();
                row.extend(g.rows()[i].iter().map(|&v| t * v));
                row
            })
            .collect();
        Experiment::new(rows)
    };
    let mut steps = vec![PathStep {
        t: 0.0,
        op: StepOp::Start,
        experiment: f.clone(),
    }];
    steps.push(PathStep {
        t: 0.0,
        op: StepOp::SplitMarker {
            detail: "embed in joint signal space".into(),
        },
        experiment: joint(0.0)?,
    });
    for s in 1..=samples {
        let t = s as f64 / samples as f64;
        steps.push(PathStep {
            t,
            op: StepOp::Mix {
                segment: "joint mixture".into(),
            },
            experiment: joint(t)?,
        });
    }
    steps.push(PathStep {
        t: 1.0,
        op: StepOp::MergeMarker {
            detail: "drop zero columns".into(),
        },
        experiment: g.clone(),
    });
    Ok(Path {
        kind: PathKind::GeneralBlackwell,
        source: f.clone(),
        target: g.clone(),
        steps,
    })
}

// ---------------------------------------------------------------------------
// Lehmann chord removal (PP-plot rotation).
// ---------------------------------------------------------------------------

/// Relative span grid for one chord removal: cumulative coordinates of the
/// state pair `(i, i+1)` measured from cumulative point `j`.
struct SpanGrid {
    /// Relative cumulative mass in state `i` (length `K + 1`, starts at 0).
    xs: Vec<f64>,
    /// Relative cumulative mass in state `i + 1`.
    ys: Vec<f64>,
}

impl SpanGrid {
    fn slope_to(&self, p: usize) -> f64 {
        ratio(self.ys[p], self.xs[p])
    }
}

/// Removes the region of the `(i, i+1)` PP plot between the curve and the
/// chord joining cumulative points `j` and `k` (`k > j + 1`), by a
/// continuous sweep of rotations around point `j`. Returns the final
/// experiment together with the sampled path.
///
/// The sweep generalizes the pairwise rotation: at slope `lam`, every
/// interior cumulative point `p` of the span that has been reached
/// (`slope_to(p) <= lam`) splits into a horizontal mover at `x = y_p / lam`
/// and a vertical mover at `y = lam * x_p`, all lying on the rotating line;
/// the experiment at slope `lam` reassembles columns by slicing the span's
/// state-`<= i` mass and state-`> i` mass at these cut points. Activation
/// events (a new point reached) and collision events (movers crossing)
/// change the cut pattern; between events the motion is smooth. Every
/// emitted experiment keeps all other PP plots unchanged and stays MLRP.
pub fn lehmann_removal(
    f: &Experiment,
    i: usize,
    j: usize,
    k: usize,
    tol: &Tol,
    samples: usize,
) -> Result<(Experiment, Path)> {
    if i + 1 >= f.states() {
        return Err(Error::Index(format!("state pair ({i}, {})", i + 1)));
    }
    if k > f.signals() || j + 1 >= k {
        return Err(Error::Index(format!(
            "chord needs cumulative indices j + 1 < k <= m, got j = {j}, k = {k}"
        )));
    }
    f.check_mlrp(tol)?;

    // Pre-pass: drop all-zero span columns (cumulative duplicates).
    let mut work = f.clone();
    let mut k = k;
    let mut pre_steps: Vec<PathStep> = Vec::new();
    loop {
        let zero_col = (j..k.min(work.signals()))
            .find(|&c| work.column(c).iter().all(|&v| v == 0.0));
        match zero_col {
            Some(c) if work.signals() > 2 => {
                let rows = work
                    .rows()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(cc, _)| cc != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                work = Experiment::new(rows)?;
                k -= 1;
                pre_steps.push(PathStep {
                    t: 0.0,
                    op: StepOp::MergeMarker {
                        detail: format!("drop zero column {c}"),
                    },
                    experiment: work.clone(),
                });
            }
            _ => break,
        }
    }
    if j + 1 >= k {
        // The span collapsed to a single column: nothing to remove.
        let mut steps = vec![PathStep {
            t: 0.0,
            op: StepOp::Start,
            experiment: f.clone(),
        }];
        steps.extend(pre_steps);
        let last = steps.last().unwrap().experiment.clone();
        return Ok((
            last.clone(),
            Path {
                kind: PathKind::LehmannRemoval,
                source: f.clone(),
                target: last,
                steps,
            },
        ));
    }

    let grid = span_grid(&work, i, j, k)?;
    let kk = k - j;
    // Span columns with no mass in either state of the pair cannot be
    // scheduled unambiguously.
    for p in 1..=kk {
        if grid.xs[p] - grid.xs[p - 1] <= 0.0 && grid.ys[p] - grid.ys[p - 1] <= 0.0 {
            return Err(Error::Degenerate(format!(
                "span column {} has zero mass in states {i} and {}",
                j + p - 1,
                i + 1
            )));
        }
    }
    let lam_start = grid.slope_to(1);
    let lam_end = grid.slope_to(kk);
    if !lam_end.is_finite() {
        return Err(Error::Degenerate(
            "chord with infinite slope (span has no mass in the lower state)".into(),
        ));
    }
    if lam_end <= lam_start + 1e-15 {
        // Chord already on the curve.
        let mut steps = vec![PathStep {
            t: 0.0,
            op: StepOp::Start,
            experiment: f.clone(),
        }];
        steps.extend(pre_steps);
        return Ok((
            work.clone(),
            Path {
                kind: PathKind::LehmannRemoval,
                source: f.clone(),
                target: work,
                steps,
            },
        ));
    }

    // Event slopes: activations and mover collisions inside the sweep.
    let mut events: Vec<f64> = Vec::new();
    for p in 1..kk {
        let s = grid.slope_to(p);
        if s.is_finite() && s > lam_start && s < lam_end {
            events.push(s);
        }
    }
    for p in 1..kk {
        for q in (p + 1)..kk {
            if grid.xs[p] > 0.0 {
                let s = grid.ys[q] / grid.xs[p];
                if s > lam_start && s < lam_end && s >= grid.slope_to(q) {
                    events.push(s);
                }
            }
        }
    }
    events.push(lam_end);
    events.sort_by(|a, b| a.partial_cmp(b).unwrap());
    events.dedup_by(|a, b| (*a - *b).abs() < 1e-14);

    let mut steps = vec![PathStep {
        t: 0.0,
        op: StepOp::Start,
        experiment: f.clone(),
    }];
    steps.extend(pre_steps);
    let mut lam_prev = lam_start;
    let span_total = lam_end - lam_start;
    for &lam_next in &events {
        for s in 1..=samples {
            let lam = lam_prev + (lam_next - lam_prev) * s as f64 / samples as f64;
            let e = schedule(&work, i, j, k, &grid, lam)?;
            steps.push(PathStep {
                t: (lam - lam_start) / span_total,
                op: StepOp::Mix {
                    segment: format!("rotate chord to slope {lam:.12}"),
                },
                experiment: e,
            });
        }
        lam_prev = lam_next;
    }
    let result = steps.last().unwrap().experiment.clone();

    // Postconditions: MLRP throughout and all other PP plots untouched.
    result.check_mlrp(tol)?;
    for i2 in 0..f.states() - 1 {
        if i2 == i {
            continue;
        }
        let before = pp_curve(&work, i2)?;
        let after = pp_curve(&result, i2)?;
        if !(before.lies_below(&after, tol.ord) && after.lies_below(&before, tol.ord)) {
            return Err(Error::IllConditioned(format!(
                "removal perturbed the PP plot of state pair ({i2}, {})",
                i2 + 1
            )));
        }
    }

    Ok((
        result.clone(),
        Path {
            kind: PathKind::LehmannRemoval,
            source: f.clone(),
            target: result,
            steps,
        },
    ))
}

fn span_grid(f: &Experiment, i: usize, j: usize, k: usize) -> Result<SpanGrid> {
    let cum = f.cumulative();
    let xs = (j..=k).map(|p| cum[i][p] - cum[i][j]).collect();
    let ys = (j..=k).map(|p| cum[i + 1][p] - cum[i + 1][j]).collect();
    Ok(SpanGrid { xs, ys })
}

/// The rotated experiment at slope `lam` (see [`lehmann_removal`]).
fn schedule(
    f: &Experiment,
    i: usize,
    j: usize,
    k: usize,
    grid: &SpanGrid,
    lam: f64,
) -> Result<Experiment> {
    let kk = k - j;
    let n = f.states();
    // Active interior points.
    let mut active = 0usize;
    for p in 1..kk {
        if grid.slope_to(p) <= lam * (1.0 + 1e-14) + 1e-300 {
            active = p;
        } else {
            break;
        }
    }
    // On-line cut points (relative coordinates), sorted by x then y.
    let mut cuts: Vec<(f64, f64)> = Vec::new();
    for p in 1..=active {
        cuts.push((grid.ys[p] / lam, grid.ys[p])); // horizontal mover
        cuts.push((grid.xs[p], lam * grid.xs[p])); // vertical mover
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);
    // Off-line fixed points beyond the active prefix.
    let mut points: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    points.extend(cuts);
    for p in active + 1..=kk {
        points.push((grid.xs[p], grid.ys[p]));
    }

    // Slice the span's lower-state and upper-state mass at the cut points.
    let span_cols: Vec<Vec<f64>> = (j..k).map(|c| f.column(c)).collect();
    let mut new_cols: Vec<Vec<f64>> = Vec::with_capacity(points.len() - 1);
    for w in points.windows(2) {
        let (ux, uy) = w[0];
        let (vx, vy) = w[1];
        let mut col = vec![0.0; n];
        if vx - ux > 0.0 {
            let p = locate(&grid.xs, ux, vx)?;
            let width = grid.xs[p] - grid.xs[p - 1];
            let coef = if width > 0.0 { (vx - ux) / width } else { 0.0 };
            for (row, c) in col.iter_mut().enumerate().take(i + 1) {
                *c += coef * span_cols[p - 1][row];
            }
        }
        if vy - uy > 0.0 {
            let q = locate(&grid.ys, uy, vy)?;
            let width = grid.ys[q] - grid.ys[q - 1];
            let coef = if width > 0.0 { (vy - uy) / width } else { 0.0 };
            for (row, c) in col.iter_mut().enumerate().skip(i + 1) {
                *c += coef * span_cols[q - 1][row];
            }
        }
        new_cols.push(col);
    }

    // Assemble: untouched prefix, rebuilt span, untouched suffix.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (irow, r) in f.rows().iter().enumerate() {
        let mut row: Vec<f64> = r[..j].to_vec();
        for col in &new_cols {
            row.push(col[irow]);
        }
        row.extend_from_slice(&r[k..]);
        rows.push(row);
    }
    Experiment::new(rows)
}

/// Index `p` with `grid[p-1] <= u <= v <= grid[p]` (within slack), found by
/// the interval midpoint.
fn locate(gridline: &[f64], u: f64, v: f64) -> Result<usize> {
    let mid = 0.5 * (u + v);
    for p in 1..gridline.len() {
        if mid <= gridline[p] + 1e-12 && mid >= gridline[p - 1] - 1e-12 && gridline[p] > gridline[p - 1] {
            return Ok(p);
        }
    }
    Err(Error::IllConditioned(format!(
        "cut slice [{u}, {v}] not inside a single span column"
    )))
}

// ---------------------------------------------------------------------------
// Full Lehmann path.
// ---------------------------------------------------------------------------

/// Builds the full Lehmann path from `f` down to `g` (both MLRP, equal state
/// counts, `f >= g`).
///
/// For each adjacent state pair, the target's PP-curve segments are
/// processed in order: each segment is extended until it meets the current
/// curve, the meeting point is realized as a cumulative point by a signal
/// split, and the area between the curves is removed by a chord rotation.
/// Proportional columns are re-merged between stages to keep the signal
/// count bounded. The terminal experiment equals the target up to
/// split/merge markers (canonical forms match entrywise).
///
/// Targets with a zero likelihood inside a state of some pair (vertical or
/// initial-degenerate PP segments) are rejected as degenerate.
pub fn lehmann_path(f: &Experiment, g: &Experiment, tol: &Tol, samples: usize) -> Result<Path> {
    if !lehmann_geq_mlrp(f, g, tol)? {
        return Err(Error::Degenerate("Lehmann path needs f >= g".into()));
    }
    let cap = removal_cap(f);
    let mut removals = 0usize;
    let mut cur = f.clone();
    let mut steps = vec![PathStep {
        t: 0.0,
        op: StepOp::Start,
        experiment: f.clone(),
    }];
    let n = f.states();
    let gcum = g.cumulative();

    for i in 0..n - 1 {
        // Target curve vertices for this pair, deduplicated.
        let mut targets: Vec<(f64, f64)> = (0..=g.signals())
            .map(|s| (gcum[i][s], gcum[i + 1][s]))
            .collect();
        targets.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);

        for w in 0..targets.len() - 1 {
            let p0 = targets[w];
            let p1 = targets[w + 1];
            let dx = p1.0 - p0.0;
            let dy = p1.1 - p0.1;
            if dx <= 1e-14 {
                return Err(Error::Degenerate(format!(
                    "target has a vertical PP segment at state pair ({i}, {}); zero \
                     likelihood inside the span is not supported",
                    i + 1
                )));
            }
            // Index of p0 on the current curve (realized inductively).
            let j0 = find_cum_index(&cur, i, p0, tol)?;
            // Walk forward to the first current-curve point on/above the ray.
            let ccum = cur.cumulative();
            let cross = |s: usize| -> f64 {
                dx * (ccum[i + 1][s] - p0.1) - dy * (ccum[i][s] - p0.0)
            };
            let mut c = j0 + 1;
            while c <= cur.signals() && cross(c) < -1e-13 {
                c += 1;
            }
            if c > cur.signals() {
                return Err(Error::IllConditioned(
                    "extended target segment never met the current curve".into(),
                ));
            }
            // Intersection parameter on segment (c-1, c).
            let num = -cross(c - 1);
            let den = cross(c) - cross(c - 1);
            let theta = if den.abs() > 1e-15 { (num / den).clamp(0.0, 1.0) } else { 1.0 };
            let mut k_idx = c;
            if c > j0 + 1 {
                if theta > 1e-12 && theta < 1.0 - 1e-12 {
                    cur = cur.split_signal(c - 1, theta)?;
                    k_idx = c; // the split point is cumulative index c
                    steps.push(PathStep {
                        t: 0.0,
                        op: StepOp::SplitMarker {
                            detail: format!("split signal {} at {theta:.12}", c - 1),
                        },
                        experiment: cur.clone(),
                    });
                } else if theta <= 1e-12 {
                    k_idx = c - 1;
                }
                if k_idx > j0 + 1 {
                    removals += 1;
                    if removals > cap {
                        return Err(Error::IterationCap(format!(
                            "more than {cap} chord removals"
                        )));
                    }
                    let (next, sub) = lehmann_removal(&cur, i, j0, k_idx, tol, samples)?;
                    // Skip the sub-path's Start step (same experiment).
                    steps.extend(sub.steps.into_iter().skip(1));
                    cur = next;
                }
            }
            // Realize p1 as a cumulative point of the current curve.
            realize_point(&mut cur, &mut steps, i, p1, tol)?;
        }
        // Keep the signal count bounded between stages.
        let canon = cur.canonicalize(1e-12);
        if canon.signals() < cur.signals() {
            cur = canon;
            steps.push(PathStep {
                t: 0.0,
                op: StepOp::MergeMarker {
                    detail: "merge proportional columns".into(),
                },
                experiment: cur.clone(),
            });
        }
    }

    // Endpoint fidelity: canonical forms must match entrywise.
    let cf = cur.canonicalize(1e-12);
    let cg = g.canonicalize(1e-12);
    let diff = cf.max_abs_diff(&cg);
    match diff {
        Some(d) if d <= 1e-9 => {}
        _ => {
            return Err(Error::IllConditioned(format!(
                "terminal experiment does not match the target up to markers (diff {diff:?})"
            )))
        }
    }
    if cf != cur {
        steps.push(PathStep {
            t: 1.0,
            op: StepOp::MergeMarker {
                detail: "final merge to canonical form".into(),
            },
            experiment: cf,
        });
    }
    let total = steps.len();
    for (idx, s) in steps.iter_mut().enumerate() {
        s.t = idx as f64 / (total - 1).max(1) as f64;
    }
    Ok(Path {
        kind: PathKind::LehmannFull,
        source: f.clone(),
        target: g.clone(),
        steps,
    })
}

/// Finds the cumulative index of a point known to be a vertex of the
/// current curve.
fn find_cum_index(cur: &Experiment, i: usize, p: (f64, f64), _tol: &Tol) -> Result<usize> {
    let cum = cur.cumulative();
    for s in 0..=cur.signals() {
        if (cum[i][s] - p.0).abs() < 1e-9 && (cum[i + 1][s] - p.1).abs() < 1e-9 {
            return Ok(s);
        }
    }
    Err(Error::IllConditioned(format!(
        "point ({}, {}) is not a cumulative point of the current curve",
        p.0, p.1
    )))
}

/// Splits the current experiment so that `p` (known to lie on the curve)
/// becomes a cumulative point.
fn realize_point(
    cur: &mut Experiment,
    steps: &mut Vec<PathStep>,
    i: usize,
    p: (f64, f64),
    _tol: &Tol,
) -> Result<()> {
    let cum = cur.cumulative();
    for s in 0..=cur.signals() {
        if (cum[i][s] - p.0).abs() < 1e-11 && (cum[i + 1][s] - p.1).abs() < 1e-11 {
            return Ok(()); // already a vertex
        }
    }
    for s in 1..=cur.signals() {
        let x0 = cum[i][s - 1];
        let x1 = cum[i][s];
        if p.0 >= x0 - 1e-12 && p.0 <= x1 + 1e-12 && x1 > x0 {
            let theta = ((p.0 - x0) / (x1 - x0)).clamp(0.0, 1.0);
            // Confirm p lies on this segment in the other coordinate too.
            let y = cum[i + 1][s - 1] + theta * (cum[i + 1][s] - cum[i + 1][s - 1]);
            if (y - p.1).abs() > 1e-9 {
                continue;
            }
            if theta <= 1e-12 || theta >= 1.0 - 1e-12 {
                return Ok(());
            }
            *cur = cur.split_signal(s - 1, theta)?;
            steps.push(PathStep {
                t: 0.0,
                op: StepOp::SplitMarker {
                    detail: format!("split signal {} at {theta:.12}", s - 1),
                },
                experiment: cur.clone(),
            });
            return Ok(());
        }
    }
    Err(Error::IllConditioned(format!(
        "point ({}, {}) does not lie on the current curve",
        p.0, p.1
    )))
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

/// Replays a path: validity of every step, the order relation between
/// consecutive steps (per the path kind), endpoint fidelity, and, for every
/// provided cost, weak monotonicity along the path with exact invariance at
/// markers.
pub fn verify_path(path: &Path, costs: &[crate::cost::Cost], tol: &Tol) -> PathReport {
    let mut problems: Vec<String> = Vec::new();
    if path.steps.is_empty() {
        return PathReport {
            ok: false,
            steps: 0,
            problems: vec!["path has no steps".into()],
        };
    }
    if path.steps[0]
        .experiment
        .max_abs_diff(&path.source)
        .map_or(true, |d| d > 1e-9)
    {
        problems.push("first step differs from the source".into());
    }
    let last = &path.steps.last().unwrap().experiment;
    let (cl, ct) = (last.canonicalize(1e-12), path.target.canonicalize(1e-12));
    if cl.max_abs_diff(&ct).map_or(true, |d| d > 1e-9) {
        problems.push("terminal step does not match the target up to markers".into());
    }

    for (idx, w) in path.steps.windows(2).enumerate() {
        let (a, b) = (&w[0].experiment, &w[1].experiment);
        let ord_ok = match path.kind {
            PathKind::BinaryBlackwell => blackwell_geq_binary(a, b, tol).map(|c| c.feasible),
            PathKind::GeneralBlackwell => blackwell_geq(a, b, tol).map(|c| c.feasible),
            PathKind::BinaryLehmann => lehmann_geq_binary(a, b, tol),
            PathKind::LehmannRemoval | PathKind::LehmannFull => lehmann_geq_mlrp(a, b, tol),
        };
        match ord_ok {
            Ok(true) => {}
            Ok(false) => problems.push(format!("step {} -> {}: order violated", idx, idx + 1)),
            Err(e) => problems.push(format!("step {} -> {}: {e}", idx, idx + 1)),
        }
        for cost in costs {
            let (ca, cb) = match (cost.eval(a), cost.eval(b)) {
                (Ok(ca), Ok(cb)) => (ca, cb),
                _ => continue, // cost not applicable to this shape
            };
            let slack = tol.eq_scaled(if ca.is_finite() { ca } else { 0.0 });
            if w[1].op.is_marker() {
                let gap = if ca.is_infinite() && cb.is_infinite() && ca == cb {
                    0.0
                } else {
                    (ca - cb).abs()
                };
                if gap > slack {
                    problems.push(format!(
                        "step {} -> {}: marker changed cost {} by {gap}",
                        idx,
                        idx + 1,
                        cost.name()
                    ));
                }
            } else if cb > ca + slack {
                problems.push(format!(
                    "step {} -> {}: cost {} increased by {}",
                    idx,
                    idx + 1,
                    cost.name(),
                    cb - ca
                ));
            }
        }
    }
    PathReport {
        ok: problems.is_empty(),
        steps: path.steps.len(),
        problems,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{Cost, Prior, Psi};
    use crate::sampling::{random_binary_mlrp, rng_from_seed};

    fn tol() -> Tol {
        Tol::default()
    }

    #[test]
    fn binary_blackwell_path_verifies() {
        let f = binary_from_vector(&[0.1, 0.8]).unwrap();
        // g strictly inside the parallelogram hull of f.
        let g = binary_from_vector(&[0.3, 0.6]).unwrap();
        assert!(blackwell_geq_binary(&f, &g, &tol()).unwrap().feasible);
        let p = binary_blackwell_path(&f, &g, &tol(), 8).unwrap();
        let report = verify_path(&p, &[], &tol());
        assert!(report.ok, "{:?}", report.problems);
        let last = &p.steps.last().unwrap().experiment;
        assert!(last.max_abs_diff(&g).unwrap() < 1e-9);
    }

    #[test]
    fn binary_blackwell_path_label_swapped_branch() {
        let f = binary_from_vector(&[0.1, 0.8]).unwrap();
        // Target with swapped labels: a < b in the hull coordinates.
        let g = binary_from_vector(&[0.6, 0.3]).unwrap();
        assert!(blackwell_geq_binary(&f, &g, &tol()).unwrap().feasible);
        let p = binary_blackwell_path(&f, &g, &tol(), 8).unwrap();
        let report = verify_path(&p, &[], &tol());
        assert!(report.ok, "{:?}", report.problems);
        let last = &p.steps.last().unwrap().experiment;
        assert!(last.max_abs_diff(&g).unwrap() < 1e-9);
    }

    #[test]
    fn binary_lehmann_decomposition_hits_target() {
        let tol = tol();
        let mut rng = rng_from_seed(5);
        for _ in 0..40 {
            let f = random_binary_mlrp(&mut rng, 4);
            // Build a dominated g by two admissible reverse steps.
            let d1 = f
                .make_direction(crate::experiment::DirectionKind::ReverseUp { j: 0, l: 1 })
                .unwrap();
            let mid = f.step(&d1, 0.7 * d1.max_step).unwrap();
            let d2 = mid
                .make_direction(crate::experiment::DirectionKind::ReverseDown { j: 1, l: 3 })
                .unwrap();
            let g = mid.step(&d2, 0.5 * d2.max_step).unwrap();
            assert!(lehmann_geq_binary(&f, &g, &tol).unwrap());
            let p = binary_lehmann_path(&f, &g, &tol, 4).unwrap();
            let last = &p.steps.last().unwrap().experiment;
            assert!(
                last.max_abs_diff(&g).unwrap() < 1e-9,
                "decomposition endpoint off by {:?}",
                last.max_abs_diff(&g)
            );
            let report = verify_path(&p, &[], &tol);
            assert!(report.ok, "{:?}", report.problems);
        }
    }

    #[test]
    fn general_blackwell_path_verifies_with_costs() {
        let tol = tol();
        let f = Experiment::new(vec![
            vec![0.7, 0.2, 0.1],
            vec![0.2, 0.3, 0.5],
        ])
        .unwrap();
        let m = crate::experiment::StochasticMatrix::new(vec![
            vec![0.8, 0.2],
            vec![0.3, 0.7],
            vec![0.1, 0.9],
        ])
        .unwrap();
        let g = f.garble(&m).unwrap();
        let p = general_blackwell_path(&f, &g, &tol, 8).unwrap();
        let costs = vec![Cost::entropy(Prior::uniform(2))];
        let report = verify_path(&p, &costs, &tol);
        assert!(report.ok, "{:?}", report.problems);
    }

    #[test]
    fn chord_removal_three_columns() {
        // A 2-state MLRP experiment; remove the dip below the chord (0, 3).
        let tol = tol();
        let f = Experiment::new(vec![
            vec![0.5, 0.3, 0.2],
            vec![0.1, 0.3, 0.6],
        ])
        .unwrap();
        let (res, path) = lehmann_removal(&f, 0, 0, 3, &tol, 8).unwrap();
        // The resulting pair-0 curve is the diagonal chord: the experiment
        // is uninformative about the pair... here n = 2 so the chord is the
        // full diagonal from (0,0) to (1,1).
        let c = pp_curve(&res, 0).unwrap();
        for &(x, y) in &c.points {
            assert!((y - x).abs() < 1e-10, "point ({x}, {y}) off the chord");
        }
        let report = verify_path(&path, &[], &tol);
        assert!(report.ok, "{:?}", report.problems);
    }

    #[test]
    fn chord_removal_partial_span() {
        let tol = tol();
        let f = Experiment::new(vec![
            vec![0.4, 0.3, 0.2, 0.1],
            vec![0.05, 0.15, 0.3, 0.5],
        ])
        .unwrap();
        assert!(f.is_mlrp(&tol));
        let (res, path) = lehmann_removal(&f, 0, 1, 3, &tol, 8).unwrap();
        let report = verify_path(&path, &[], &tol);
        assert!(report.ok, "{:?}", report.problems);
        // Cumulative endpoints of the span are preserved.
        let (cb, ca) = (f.cumulative(), res.cumulative());
        for i in 0..2 {
            assert!((cb[i][1] - ca[i][1]).abs() < 1e-12);
            assert!((cb[i][3] - ca[i][3 + res.signals() - f.signals()]).abs() < 1e-12);
        }
    }

    #[test]
    fn full_lehmann_path_small() {
        let tol = tol();
        let f = Experiment::new(vec![
            vec![0.6, 0.3, 0.1],
            vec![0.2, 0.3, 0.5],
            vec![0.1, 0.2, 0.7],
        ])
        .unwrap();
        // Dominated target via two reverse replacements.
        let d1 = f
            .make_direction(crate::experiment::DirectionKind::ReverseUp { j: 0, l: 1 })
            .unwrap();
        let mid = f.step(&d1, 0.6 * d1.max_step).unwrap();
        let d2 = mid
            .make_direction(crate::experiment::DirectionKind::ReverseDown { j: 2, l: 2 })
            .unwrap();
        let g = mid.step(&d2, 0.5 * d2.max_step).unwrap();
        assert!(lehmann_geq_mlrp(&f, &g, &tol).unwrap());
        let p = lehmann_path(&f, &g, &tol, 6).unwrap();
        let costs = vec![
            Cost::entropy(Prior::uniform(3)),
            Cost::LikelihoodSeparable {
                psi: Psi::PNorm {
                    p: 2.0,
                    weights: vec![1.0, 1.0, 1.0],
                },
            },
        ];
        let report = verify_path(&p, &costs, &tol);
        assert!(report.ok, "{:?}", report.problems);
    }
}
