//! Informativeness order checks.
//!
//! Blackwell dominance `f >= g` holds when some row-stochastic kernel `M`
//! satisfies `f M = g`; existence is decided by a phase-1 simplex on the
//! equality system. Binary-signal experiments admit a two-parameter
//! closed-form check. The Lehmann order on MLRP experiments is decided by
//! containment of percentile-percentile (PP) curves per adjacent state
//! pair, with an independent quantile-transform oracle for cross-checking.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::experiment::{Experiment, StochasticMatrix};
use crate::simplex::phase1;
use crate::tol::Tol;
use crate::Result;

/// Outcome of a two-sided order comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `f` is weakly more informative than `g` (and not conversely).
    Geq,
    /// `g` is weakly more informative than `f` (and not conversely).
    Leq,
    /// Each dominates the other.
    Equivalent,
    /// Neither dominates the other.
    Incomparable,
}

/// Result of a one-sided garbling feasibility check (`f >= g`?).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GarbleCheck {
    /// Whether a garbling kernel was found within tolerance.
    pub feasible: bool,
    /// Residual in the gray zone `(lp, 100 * lp]`: neither cleanly feasible
    /// nor cleanly infeasible.
    pub ill_conditioned: bool,
    /// Max-abs residual of `f M = g` (and kernel row sums) at the candidate.
    pub residual: f64,
    /// The kernel, when feasible.
    pub witness: Option<StochasticMatrix>,
}

/// A two-sided comparison with per-direction details.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Comparison {
    pub relation: Relation,
    pub ill_conditioned: bool,
    pub forward: GarbleCheck,
    pub backward: GarbleCheck,
}

/// Ratio with the boundary conventions used throughout: `x / 0 = +inf` for
/// `x > 0`, and `0 / 0 = 1`.
pub fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

// ---------------------------------------------------------------------------
// Blackwell order, general case (phase-1 simplex).
// ---------------------------------------------------------------------------

/// Decides whether `f` Blackwell-dominates `g` by solving the garbling
/// feasibility LP. Both experiments must share the state count.
pub fn blackwell_geq(f: &Experiment, g: &Experiment, tol: &Tol) -> Result<GarbleCheck> {
    if f.states() != g.states() {
        return Err(Error::StateMismatch(f.states(), g.states()));
    }
    let n = f.states();
    let m = f.signals();
    let mp = g.signals();
    let nvars = m * mp;
    let ncons = n * mp + m;
    let mut a = vec![0.0f64; ncons * nvars];
    let mut b = vec![0.0f64; ncons];
    // sum_j f[i][j] * M[j][k] = g[i][k]
    let mut r = 0;
    for i in 0..n {
        for k in 0..mp {
            for j in 0..m {
                a[r * nvars + j * mp + k] = f.get(i, j);
            }
            b[r] = g.get(i, k);
            r += 1;
        }
    }
    // sum_k M[j][k] = 1
    for j in 0..m {
        for k in 0..mp {
            a[r * nvars + j * mp + k] = 1.0;
        }
        b[r] = 1.0;
        r += 1;
    }
    let sol = phase1(&a, &b, ncons, nvars);

    // Honest residual at the candidate point.
    let mut residual: f64 = 0.0;
    for r in 0..ncons {
        let mut lhs = 0.0;
        for c in 0..nvars {
            let coef = a[r * nvars + c];
            if coef != 0.0 {
                lhs += coef * sol.x[c];
            }
        }
        residual = residual.max((lhs - b[r]).abs());
    }

    let feasible = residual <= tol.lp;
    let ill_conditioned = !feasible && residual <= tol.lp_gray_zone();
    let witness = if feasible {
        let entries = (0..m)
            .map(|j| (0..mp).map(|k| sol.x[j * mp + k]).collect())
            .collect();
        Some(StochasticMatrix::with_tol(
            entries,
            &Tol {
                row: tol.lp_gray_zone(),
                ..*tol
            },
        )?)
    } else {
        None
    };
    Ok(GarbleCheck {
        feasible,
        ill_conditioned,
        residual,
        witness,
    })
}

/// Two-sided Blackwell comparison.
pub fn compare_blackwell(f: &Experiment, g: &Experiment, tol: &Tol) -> Result<Comparison> {
    let forward = blackwell_geq(f, g, tol)?;
    let backward = blackwell_geq(g, f, tol)?;
    let relation = match (forward.feasible, backward.feasible) {
        (true, true) => Relation::Equivalent,
        (true, false) => Relation::Geq,
        (false, true) => Relation::Leq,
        (false, false) => Relation::Incomparable,
    };
    let ill_conditioned = forward.ill_conditioned || backward.ill_conditioned;
    Ok(Comparison {
        relation,
        ill_conditioned,
        forward,
        backward,
    })
}

// ---------------------------------------------------------------------------
// Binary-signal experiments.
// ---------------------------------------------------------------------------

/// Extracts the high-signal probability vector of a binary experiment.
pub fn binary_vector(f: &Experiment) -> Result<Vec<f64>> {
    if f.signals() != 2 {
        return Err(Error::NotBinary(f.signals()));
    }
    Ok(f.column(1))
}

/// Builds a binary experiment from its high-signal probability vector.
pub fn binary_from_vector(v: &[f64]) -> Result<Experiment> {
    Experiment::new(v.iter().map(|&p| vec![1.0 - p, p]).collect())
}

/// The `(alpha, beta)` informativeness coordinates of a two-state binary
/// experiment: `alpha = f_2 / f_1`, `beta = (1 - f_1) / (1 - f_2)`, with the
/// crate's ratio conventions. `f >= g` (Blackwell) iff both coordinates of
/// `f` weakly dominate those of `g`.
pub fn binary_alpha_beta(f: &Experiment) -> Result<(f64, f64)> {
    let v = binary_vector(f)?;
    if v.len() != 2 {
        return Err(Error::Shape(format!(
            "alpha-beta coordinates need 2 states, got {}",
            v.len()
        )));
    }
    Ok((ratio(v[1], v[0]), ratio(1.0 - v[0], 1.0 - v[1])))
}

/// Result of the binary garbling least-squares check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BinaryGarbleCheck {
    pub feasible: bool,
    pub ill_conditioned: bool,
    /// Max-abs residual of `g = a f + b (1 - f)` at the best `(a, b)`.
    pub residual: f64,
    /// Best mixing coefficients in `[0, 1]^2`.
    pub a: f64,
    pub b: f64,
}

/// Decides binary Blackwell dominance `f >= g` for n-state binary
/// experiments: `g` must lie in the parallelogram hull
/// `{a f + b (1 - f)}` with `a, b` in `[0, 1]`. The best coefficients are
/// found by box-constrained least squares on the two unknowns.
pub fn blackwell_geq_binary(f: &Experiment, g: &Experiment, tol: &Tol) -> Result<BinaryGarbleCheck> {
    if f.states() != g.states() {
        return Err(Error::StateMismatch(f.states(), g.states()));
    }
    let fv = binary_vector(f)?;
    let gv = binary_vector(g)?;
    let n = fv.len();

    // Normal-equation data for columns u = f and w = 1 - f.
    let (mut uu, mut uw, mut ww, mut ug, mut wg) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let u = fv[i];
        let w = 1.0 - fv[i];
        uu += u * u;
        uw += u * w;
        ww += w * w;
        ug += u * gv[i];
        wg += w * gv[i];
    }
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    // Unconstrained stationary point (if the Gram matrix is invertible).
    let det = uu * ww - uw * uw;
    if det.abs() > 1e-14 {
        let a = (ug * ww - wg * uw) / det;
        let b = (wg * uu - ug * uw) / det;
        candidates.push((clamp(a), clamp(b)));
    }
    // Edge minimizers: fix one coordinate at a bound, solve for the other.
    for &a in &[0.0, 1.0] {
        if ww > 1e-14 {
            candidates.push((a, clamp((wg - a * uw) / ww)));
        }
        candidates.push((a, 0.0));
        candidates.push((a, 1.0));
    }
    for &b in &[0.0, 1.0] {
        if uu > 1e-14 {
            candidates.push((clamp((ug - b * uw) / uu), b));
        }
    }
    let sq_resid = |a: f64, b: f64| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            let e = a * fv[i] + b * (1.0 - fv[i]) - gv[i];
            s += e * e;
        }
        s
    };
    let (mut best_a, mut best_b, mut best) = (0.0, 0.0, f64::INFINITY);
    for &(a, b) in &candidates {
        let s = sq_resid(a, b);
        if s < best {
            best = s;
            best_a = a;
            best_b = b;
        }
    }
    let mut residual: f64 = 0.0;
    for i in 0..n {
        residual = residual.max((best_a * fv[i] + best_b * (1.0 - fv[i]) - gv[i]).abs());
    }
    let feasible = residual <= tol.lp;
    let ill_conditioned = !feasible && residual <= tol.lp_gray_zone();
    Ok(BinaryGarbleCheck {
        feasible,
        ill_conditioned,
        residual,
        a: best_a,
        b: best_b,
    })
}

/// Lehmann dominance for binary MLRP experiments: `g_i / f_i` nonincreasing
/// and `(1 - g_i) / (1 - f_i)` nondecreasing in the state, checked in
/// cross-multiplied form. Errors if either experiment fails MLRP.
pub fn lehmann_geq_binary(f: &Experiment, g: &Experiment, tol: &Tol) -> Result<bool> {
    if f.states() != g.states() {
        return Err(Error::StateMismatch(f.states(), g.states()));
    }
    f.check_mlrp(tol)?;
    g.check_mlrp(tol)?;
    let fv = binary_vector(f)?;
    let gv = binary_vector(g)?;
    for i in 0..fv.len() - 1 {
        // g_i / f_i >= g_{i+1} / f_{i+1}
        if gv[i] * fv[i + 1] < gv[i + 1] * fv[i] - tol.ord {
            return Ok(false);
        }
        // (1 - g_{i+1}) / (1 - f_{i+1}) >= (1 - g_i) / (1 - f_i)
        if (1.0 - gv[i + 1]) * (1.0 - fv[i]) < (1.0 - gv[i]) * (1.0 - fv[i + 1]) - tol.ord {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// PP curves and the Lehmann order for MLRP experiments.
// ---------------------------------------------------------------------------

/// Percentile-percentile curve of an experiment for the adjacent state pair
/// `(i, i + 1)`: the polyline through the cumulative points
/// `(F^j_i, F^j_{i+1})` for `j = 0..=m`. Under MLRP the curve is convex, and
/// Lehmann dominance is containment of the regions above these curves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PPCurve {
    /// Lower state of the pair.
    pub state: usize,
    /// Vertices, from `(0, 0)` to `(1, 1)`, nondecreasing in both coords.
    pub points: Vec<(f64, f64)>,
}

/// Builds the PP curve of `f` for the state pair `(i, i + 1)`.
pub fn pp_curve(f: &Experiment, i: usize) -> Result<PPCurve> {
    if i + 1 >= f.states() {
        return Err(Error::Index(format!(
            "state pair ({i}, {}) out of range for n = {}",
            i + 1,
            f.states()
        )));
    }
    let cum = f.cumulative();
    let points = (0..=f.signals())
        .map(|j| (cum[i][j], cum[i + 1][j]))
        .collect();
    Ok(PPCurve { state: i, points })
}

impl PPCurve {
    /// Lower envelope: vertices with strictly increasing x, keeping the
    /// smallest y at each repeated x (vertical runs collapse to their base).
    fn envelope(&self) -> Vec<(f64, f64)> {
        let mut env: Vec<(f64, f64)> = Vec::with_capacity(self.points.len());
        for &(x, y) in &self.points {
            match env.last() {
                Some(&(lx, _)) if x <= lx => {
                    // repeated x: the earlier (smaller) y is the envelope
                }
                _ => env.push((x, y)),
            }
        }
        env
    }

    /// Value of the lower envelope at `x` (clamped to `[0, 1]`).
    pub fn eval(&self, x: f64) -> f64 {
        let env = self.envelope();
        let x = x.clamp(0.0, 1.0);
        if x <= env[0].0 {
            return env[0].1;
        }
        for w in env.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if x <= x1 {
                if x1 - x0 <= 0.0 {
                    return y0.min(y1);
                }
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        env.last().unwrap().1
    }

    /// Convexity of the vertex sequence (holds for MLRP experiments).
    pub fn is_convex(&self, tol: f64) -> bool {
        for w in self.points.windows(3) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let (x2, y2) = w[2];
            // cross product of consecutive segment vectors must be >= 0
            if (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1) < -tol {
                return false;
            }
        }
        true
    }

    /// Whether the region above `self` contains the region above `other`,
    /// i.e. `self` lies weakly below `other`. Exact for convex polylines:
    /// every vertex of `other` must lie weakly above `self`'s envelope.
    pub fn lies_below(&self, other: &PPCurve, tol: f64) -> bool {
        other
            .points
            .iter()
            .all(|&(x, y)| y >= self.eval(x) - tol)
    }

    /// First vertex of `other` strictly below `self`'s envelope, if any,
    /// with the gap size.
    pub fn first_violation(&self, other: &PPCurve, tol: f64) -> Option<((f64, f64), f64)> {
        for &(x, y) in &other.points {
            let e = self.eval(x);
            if y < e - tol {
                return Some(((x, y), e - y));
            }
        }
        None
    }
}

/// Detail of a failed Lehmann containment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LehmannRefutation {
    /// Adjacent state pair whose containment fails.
    pub state: usize,
    /// Vertex of the dominated-candidate curve that pokes below.
    pub vertex: (f64, f64),
    /// How far below the dominant curve it lies.
    pub gap: f64,
}

/// Decides Lehmann dominance `f >= g` for MLRP experiments with equal state
/// counts (signal counts may differ): for every adjacent state pair, the
/// region above `f`'s PP curve must contain the region above `g`'s.
pub fn lehmann_geq_mlrp(f: &Experiment, g: &Experiment, tol: &Tol) -> Result<bool> {
    Ok(lehmann_refute_mlrp(f, g, tol)?.is_none())
}

/// As [`lehmann_geq_mlrp`], returning the first refutation when dominance
/// fails.
pub fn lehmann_refute_mlrp(
    f: &Experiment,
    g: &Experiment,
    tol: &Tol,
) -> Result<Option<LehmannRefutation>> {
    if f.states() != g.states() {
        return Err(Error::StateMismatch(f.states(), g.states()));
    }
    f.check_mlrp(tol)?;
    g.check_mlrp(tol)?;
    for i in 0..f.states().saturating_sub(1) {
        let cf = pp_curve(f, i)?;
        let cg = pp_curve(g, i)?;
        if let Some((vertex, gap)) = cf.first_violation(&cg, tol.ord) {
            return Ok(Some(LehmannRefutation {
                state: i,
                vertex,
                gap,
            }));
        }
    }
    Ok(None)
}

/// Two-sided Lehmann comparison for MLRP experiments.
pub fn compare_lehmann(f: &Experiment, g: &Experiment, tol: &Tol) -> Result<Comparison> {
    let fwd = lehmann_geq_mlrp(f, g, tol)?;
    let bwd = lehmann_geq_mlrp(g, f, tol)?;
    let relation = match (fwd, bwd) {
        (true, true) => Relation::Equivalent,
        (true, false) => Relation::Geq,
        (false, true) => Relation::Leq,
        (false, false) => Relation::Incomparable,
    };
    let check = |ok: bool| GarbleCheck {
        feasible: ok,
        ill_conditioned: false,
        residual: 0.0,
        witness: None,
    };
    Ok(Comparison {
        relation,
        ill_conditioned: false,
        forward: check(fwd),
        backward: check(bwd),
    })
}

// ---------------------------------------------------------------------------
// Quantile-transform oracle for the Lehmann order.
// ---------------------------------------------------------------------------

/// Default number of uniform grid points used by the quantile oracle, on top
/// of all composition breakpoints.
pub const ORACLE_GRID: usize = 10_000;

/// Independent oracle for Lehmann dominance of MLRP experiments.
///
/// Each experiment is embedded as a piecewise-linear CDF on `[0, m]`
/// (`F(x | state i) = F^j_i + (x - j) f^{j+1}_i` on `[j, j+1]`), and `f >= g`
/// iff the quantile transform `x(y, i) = F^{-1}(G(y | i) | i)` is
/// nondecreasing in the state `i` for every `y`. The transform is piecewise
/// linear in `y`, so checking at all breakpoints (plus a uniform grid) is
/// exact up to tolerance.
pub fn lehmann_oracle_quantile(
    f: &Experiment,
    g: &Experiment,
    tol: &Tol,
    grid: usize,
) -> Result<bool> {
    if f.states() != g.states() {
        return Err(Error::StateMismatch(f.states(), g.states()));
    }
    f.check_mlrp(tol)?;
    g.check_mlrp(tol)?;
    let n = f.states();
    let fcum = f.cumulative();
    let gcum = g.cumulative();
    let mp = g.signals();

    // Breakpoints: signal boundaries of g, plus for every state the y at
    // which G crosses an F breakpoint value (kinks of the composition).
    let mut ys: Vec<f64> = Vec::new();
    for j in 0..=mp {
        ys.push(j as f64);
    }
    for i in 0..n {
        for j in 0..=f.signals() {
            ys.push(pl_quantile(&gcum[i], g.rows()[i].as_slice(), fcum[i][j]));
        }
    }
    for k in 1..grid {
        ys.push(mp as f64 * k as f64 / grid as f64);
    }
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    for &y in &ys {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..n {
            let p = pl_cdf(&gcum[i], g.rows()[i].as_slice(), y);
            let x = pl_quantile(&fcum[i], f.rows()[i].as_slice(), p);
            if x < prev - tol.ord {
                return Ok(false);
            }
            prev = x;
        }
    }
    Ok(true)
}

/// Piecewise-linear CDF value at `x` in `[0, m]`.
fn pl_cdf(cum: &[f64], row: &[f64], x: f64) -> f64 {
    let m = row.len();
    let x = x.clamp(0.0, m as f64);
    let j = (x.floor() as usize).min(m - 1);
    cum[j] + (x - j as f64) * row[j]
}

/// Generalized inverse `inf { x : F(x) >= p }` of the piecewise-linear CDF.
fn pl_quantile(cum: &[f64], row: &[f64], p: f64) -> f64 {
    let m = row.len();
    if p <= 0.0 {
        return 0.0;
    }
    let p = p.min(cum[m]);
    for j in 0..m {
        if cum[j + 1] >= p {
            if row[j] > 0.0 {
                return j as f64 + (p - cum[j]) / row[j];
            }
            return j as f64;
        }
    }
    m as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(rows: &[&[f64]]) -> Experiment {
        Experiment::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn garbling_recovered_by_lp() {
        let tol = Tol::default();
        let f = exp(&[&[0.7, 0.2, 0.1], &[0.1, 0.3, 0.6]]);
        let m = StochasticMatrix::new(vec![
            vec![0.9, 0.1],
            vec![0.5, 0.5],
            vec![0.2, 0.8],
        ])
        .unwrap();
        let g = f.garble(&m).unwrap();
        let check = blackwell_geq(&f, &g, &tol).unwrap();
        assert!(check.feasible, "residual = {}", check.residual);
        // The recovered kernel reproduces g.
        let w = check.witness.unwrap();
        let g2 = f.garble(&w).unwrap();
        assert!(g2.max_abs_diff(&g).unwrap() <= 10.0 * tol.lp);
        // And the reverse comparison fails for a strict garbling.
        let back = blackwell_geq(&g, &f, &tol).unwrap();
        assert!(!back.feasible);
    }

    #[test]
    fn binary_alpha_beta_criterion() {
        let tol = Tol::default();
        let f = binary_from_vector(&[0.2, 0.8]).unwrap();
        let g = binary_from_vector(&[0.35, 0.65]).unwrap();
        let (af, bf) = binary_alpha_beta(&f).unwrap();
        let (ag, bg) = binary_alpha_beta(&g).unwrap();
        assert!(af >= ag && bf >= bg);
        assert!(blackwell_geq_binary(&f, &g, &tol).unwrap().feasible);
        assert!(!blackwell_geq_binary(&g, &f, &tol).unwrap().feasible);
    }

    #[test]
    fn ratio_conventions() {
        assert_eq!(ratio(0.3, 0.0), f64::INFINITY);
        assert_eq!(ratio(0.0, 0.0), 1.0);
        assert_eq!(ratio(1.0, 2.0), 0.5);
    }

    #[test]
    fn fully_informative_dominates_everything_binary() {
        let tol = Tol::default();
        let top = binary_from_vector(&[0.0, 1.0]).unwrap();
        let g = binary_from_vector(&[0.3, 0.6]).unwrap();
        assert!(blackwell_geq_binary(&top, &g, &tol).unwrap().feasible);
        assert!(lehmann_geq_binary(&top, &g, &tol).unwrap());
    }

    #[test]
    fn lehmann_without_blackwell_three_states() {
        // A reverse signal replacement truncated at an interior state keeps
        // Lehmann dominance but breaks exact parallelogram membership.
        let tol = Tol::default();
        let fv = [0.1, 0.5, 0.9];
        let f = binary_from_vector(&fv).unwrap();
        let eps = 0.1;
        let gv = [
            fv[0] + eps * (1.0 - fv[0]),
            fv[1] + eps * (1.0 - fv[1]),
            fv[2],
        ];
        let g = binary_from_vector(&gv).unwrap();
        assert!(lehmann_geq_binary(&f, &g, &tol).unwrap());
        assert!(lehmann_geq_mlrp(&f, &g, &tol).unwrap());
        assert!(!blackwell_geq_binary(&f, &g, &tol).unwrap().feasible);
        assert!(!blackwell_geq(&f, &g, &tol).unwrap().feasible);
    }

    #[test]
    fn pp_containment_matches_binary_rule() {
        let tol = Tol::default();
        let f = binary_from_vector(&[0.1, 0.4, 0.8]).unwrap();
        let g = binary_from_vector(&[0.2, 0.45, 0.75]).unwrap();
        assert_eq!(
            lehmann_geq_binary(&f, &g, &tol).unwrap(),
            lehmann_geq_mlrp(&f, &g, &tol).unwrap()
        );
        assert_eq!(
            lehmann_geq_binary(&g, &f, &tol).unwrap(),
            lehmann_geq_mlrp(&g, &f, &tol).unwrap()
        );
    }

    #[test]
    fn quantile_oracle_agrees_on_garbled_pair() {
        let tol = Tol::default();
        let f = exp(&[&[0.6, 0.3, 0.1], &[0.2, 0.3, 0.5], &[0.05, 0.2, 0.75]]);
        assert!(f.is_mlrp(&tol));
        // A reverse-up step produces a Lehmann-dominated experiment.
        let dir = f
            .make_direction(crate::experiment::DirectionKind::ReverseUp { j: 0, l: 1 })
            .unwrap();
        let g = f.step(&dir, 0.5 * dir.max_step).unwrap();
        assert!(g.is_mlrp(&tol));
        assert!(lehmann_geq_mlrp(&f, &g, &tol).unwrap());
        assert!(lehmann_oracle_quantile(&f, &g, &tol, 1000).unwrap());
        assert_eq!(
            lehmann_geq_mlrp(&g, &f, &tol).unwrap(),
            lehmann_oracle_quantile(&g, &f, &tol, 1000).unwrap()
        );
    }
}
