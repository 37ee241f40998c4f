use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::tol::{Tol, ACTIVATION_MARGIN, MAX_SIDE};
use crate::Result;

/// A finite statistical experiment: an `n x m` row-stochastic matrix.
///
/// Row `i` is the signal distribution in state `i`. Rows must sum to 1
/// within `Tol::row` and entries must be nonnegative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    states: usize,
    signals: usize,
    rows: Vec<Vec<f64>>,
}

/// A row-stochastic garbling kernel: entry `(j, k)` is the probability of
/// reporting signal `k` when the inner experiment produced signal `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StochasticMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<f64>>,
}

/// The kind of an elementary direction of movement in experiment space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DirectionKind {
    /// Move all of signal `from`'s mass toward signal `to` in every state.
    SignalReplacement { from: usize, to: usize },
    /// Move mass from signal `j` to signal `j + 1` in states `0..=l`.
    ReverseUp { j: usize, l: usize },
    /// Move mass from signal `j` to signal `j - 1` in states `l..`.
    ReverseDown { j: usize, l: usize },
    /// A nonnegative combination of elementary directions.
    Mixture,
}

/// A direction of movement at a specific experiment, together with the
/// largest step that keeps the required structure intact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Direction {
    pub kind: DirectionKind,
    /// `n x m` increment matrix; every row sums to zero.
    pub delta: Vec<Vec<f64>>,
    /// Largest admissible step size `eps` such that `f + eps * delta` stays
    /// valid (and MLRP, for reverse replacements).
    pub max_step: f64,
}

impl Experiment {
    /// Validates and constructs an experiment from raw rows.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tol(rows, &Tol::default())
    }

    /// Validates against explicit tolerances.
    pub fn with_tol(rows: Vec<Vec<f64>>, tol: &Tol) -> Result<Self> {
        let states = rows.len();
        if states == 0 {
            return Err(Error::Shape("experiment has no states".into()));
        }
        let signals = rows[0].len();
        if signals < 2 {
            return Err(Error::Shape(format!(
                "experiment needs at least 2 signals, got {signals}"
            )));
        }
        if states > MAX_SIDE || signals > MAX_SIDE {
            return Err(Error::SizeLimit { states, signals });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != signals {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {signals}",
                    row.len()
                )));
            }
            let mut sum = 0.0;
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Shape(format!("non-finite entry at ({i}, {j})")));
                }
                if v < -tol.row {
                    return Err(Error::NegativeEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                sum += v;
            }
            if (sum - 1.0).abs() > tol.row {
                return Err(Error::RowSum {
                    row: i,
                    sum,
                    tol: tol.row,
                });
            }
        }
        // Clamp the slack permitted above so downstream arithmetic sees
        // exactly nonnegative entries.
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.max(0.0)).collect())
            .collect();
        Ok(Experiment {
            states,
            signals,
            rows,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn signals(&self) -> usize {
        self.signals
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, state: usize, signal: usize) -> f64 {
        self.rows[state][signal]
    }

    /// Column `j` as a vector over states (the "likelihood" of signal `j`).
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Largest absolute entrywise difference to another experiment of the
    /// same shape.
    pub fn max_abs_diff(&self, other: &Experiment) -> Option<f64> {
        if self.states != other.states || self.signals != other.signals {
            return None;
        }
        let mut d: f64 = 0.0;
        for i in 0..self.states {
            for j in 0..self.signals {
                d = d.max((self.rows[i][j] - other.rows[i][j]).abs());
            }
        }
        Some(d)
    }

    /// Applies a garbling kernel on the right: the result reports, in each
    /// state, the distribution of the garbled signal.
    pub fn garble(&self, m: &StochasticMatrix) -> Result<Experiment> {
        if m.rows != self.signals {
            return Err(Error::Shape(format!(
                "garbling kernel has {} rows, experiment has {} signals",
                m.rows, self.signals
            )));
        }
        let mut out = vec![vec![0.0; m.cols]; self.states];
        for i in 0..self.states {
            for j in 0..self.signals {
                let fij = self.rows[i][j];
                if fij == 0.0 {
                    continue;
                }
                for k in 0..m.cols {
                    out[i][k] += fij * m.entries[j][k];
                }
            }
        }
        Experiment::new(out)
    }

    /// Relabels signals: output column `k` is input column `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Experiment> {
        if perm.len() != self.signals {
            return Err(Error::Shape(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.signals
            )));
        }
        let mut seen = vec![false; self.signals];
        for &p in perm {
            if p >= self.signals || seen[p] {
                return Err(Error::Shape("not a permutation".into()));
            }
            seen[p] = true;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| perm.iter().map(|&p| r[p]).collect())
            .collect();
        Experiment::new(rows)
    }

    /// Splits signal `j` into two adjacent signals carrying fractions
    /// `lambda` and `1 - lambda` of its likelihood in every state.
    pub fn split_signal(&self, j: usize, lambda: f64) -> Result<Experiment> {
        if j >= self.signals {
            return Err(Error::Index(format!("signal {j} out of range")));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Shape(format!("split fraction {lambda} not in [0, 1]")));
        }
        let mut rows = Vec::with_capacity(self.states);
        for r in &self.rows {
            let mut row = Vec::with_capacity(self.signals + 1);
            row.extend_from_slice(&r[..j]);
            row.push(lambda * r[j]);
            row.push((1.0 - lambda) * r[j]);
            row.extend_from_slice(&r[j + 1..]);
            rows.push(row);
        }
        Experiment::new(rows)
    }

    /// Merges signal `k` into signal `j`, removing column `k`.
    pub fn merge_signals(&self, j: usize, k: usize) -> Result<Experiment> {
        if j >= self.signals || k >= self.signals || j == k {
            return Err(Error::Index(format!(
                "cannot merge signal {k} into signal {j} with {} signals",
                self.signals
            )));
        }
        if self.signals == 2 {
            return Err(Error::Shape(
                "merging would leave fewer than 2 signals".into(),
            ));
        }
        let mut rows = Vec::with_capacity(self.states);
        for r in &self.rows {
            let mut row: Vec<f64> = Vec::with_capacity(self.signals - 1);
            for (c, &v) in r.iter().enumerate() {
                if c == k {
                    continue;
                }
                if c == j {
                    row.push(v + r[k]);
                } else {
                    row.push(v);
                }
            }
            rows.push(row);
        }
        Experiment::new(rows)
    }

    /// Checks the monotone likelihood ratio property: every 2x2 minor taken
    /// from rows `i < i'` and columns `j < j'` must be nonnegative within
    /// `tol.mlrp`. All pairs are checked (adjacent minors alone do not imply
    /// the property when exact zeros are present).
    pub fn check_mlrp(&self, tol: &Tol) -> std::result::Result<(), Error> {
        for i in 0..self.states {
            for i2 in (i + 1)..self.states {
                for j in 0..self.signals {
                    for j2 in (j + 1)..self.signals {
                        let minor = self.rows[i][j] * self.rows[i2][j2]
                            - self.rows[i2][j] * self.rows[i][j2];
                        if minor < -tol.mlrp {
                            return Err(Error::NotMlrp {
                                i,
                                i2,
                                j,
                                j2,
                                minor,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Convenience boolean wrapper around [`check_mlrp`](Self::check_mlrp).
    pub fn is_mlrp(&self, tol: &Tol) -> bool {
        self.check_mlrp(tol).is_ok()
    }

    /// Builds an elementary direction at this experiment, together with its
    /// maximal admissible step.
    ///
    /// For reverse replacements the activation condition (strict positivity
    /// of the pivotal 2x2 determinant, with the boundary conventions
    /// `f^j_{n} = 0`, `f^{j+1}_{n} = 1` above the last state and
    /// `f^{j-1}_{-1} = 1`, `f^j_{-1} = 0` below the first) must hold with
    /// margin `ACTIVATION_MARGIN`, and the maximal step is the one driving
    /// that determinant to zero.
    pub fn make_direction(&self, kind: DirectionKind) -> Result<Direction> {
        let n = self.states;
        let m = self.signals;
        let mut delta = vec![vec![0.0; m]; n];
        match kind {
            DirectionKind::SignalReplacement { from, to } => {
                if from >= m || to >= m || from == to {
                    return Err(Error::Index(format!(
                        "signal replacement {from} -> {to} out of range for m = {m}"
                    )));
                }
                for i in 0..n {
                    delta[i][from] = -self.rows[i][from];
                    delta[i][to] += self.rows[i][from];
                }
                Ok(Direction {
                    kind,
                    delta,
                    max_step: 1.0,
                })
            }
            DirectionKind::ReverseUp { j, l } => {
                if j + 1 >= m {
                    return Err(Error::Index(format!("reverse-up at signal {j} needs signal {}", j + 1)));
                }
                if l >= n {
                    return Err(Error::Index(format!("state {l} out of range")));
                }
                // Boundary conventions for the row below the matrix.
                let (fj_next, fj1_next) = if l + 1 < n {
                    (self.rows[l + 1][j], self.rows[l + 1][j + 1])
                } else {
                    (0.0, 1.0)
                };
                let det = self.rows[l][j] * fj1_next - self.rows[l][j + 1] * fj_next;
                if det <= ACTIVATION_MARGIN {
                    return Err(Error::ActivationFailed {
                        kind: "reverse_up".into(),
                        j,
                        l,
                        margin: det,
                    });
                }
                for (i, row) in delta.iter_mut().enumerate().take(l + 1) {
                    row[j] = -self.rows[i][j];
                    row[j + 1] += self.rows[i][j];
                }
                let max_step = det / (self.rows[l][j] * (fj1_next + fj_next));
                Ok(Direction {
                    kind,
                    delta,
                    max_step,
                })
            }
            DirectionKind::ReverseDown { j, l } => {
                if j == 0 || j >= m {
                    return Err(Error::Index(format!("reverse-down at signal {j} needs signal {}", j.wrapping_sub(1))));
                }
                if l >= n {
                    return Err(Error::Index(format!("state {l} out of range")));
                }
                // Boundary conventions for the row above the matrix.
                let (fjm1_prev, fj_prev) = if l > 0 {
                    (self.rows[l - 1][j - 1], self.rows[l - 1][j])
                } else {
                    (1.0, 0.0)
                };
                let det = fjm1_prev * self.rows[l][j] - self.rows[l][j - 1] * fj_prev;
                if det <= ACTIVATION_MARGIN {
                    return Err(Error::ActivationFailed {
                        kind: "reverse_down".into(),
                        j,
                        l,
                        margin: det,
                    });
                }
                for (i, row) in delta.iter_mut().enumerate().skip(l) {
                    row[j] = -self.rows[i][j];
                    row[j - 1] += self.rows[i][j];
                }
                let max_step = det / (self.rows[l][j] * (fjm1_prev + fj_prev));
                Ok(Direction {
                    kind,
                    delta,
                    max_step,
                })
            }
            DirectionKind::Mixture => Err(Error::Shape(
                "mixture directions are built from elementary ones, not requested directly".into(),
            )),
        }
    }

    /// Moves a step `eps` along a direction. The caller is responsible for
    /// `eps <= dir.max_step`; validity is re-checked on construction.
    pub fn step(&self, dir: &Direction, eps: f64) -> Result<Experiment> {
        if dir.delta.len() != self.states || dir.delta[0].len() != self.signals {
            return Err(Error::Shape("direction shape mismatch".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&dir.delta)
            .map(|(r, d)| r.iter().zip(d).map(|(&v, &dv)| v + eps * dv).collect())
            .collect();
        Experiment::new(rows)
    }

    /// Cumulative signal distribution per state: entry `(i, j)` is
    /// `sum_{s <= j} f^s_i`, for `j` in `0..=m` (entry 0 is 0, entry m is 1).
    pub fn cumulative(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut acc = 0.0;
                let mut out = Vec::with_capacity(r.len() + 1);
                out.push(0.0);
                for &v in r {
                    acc += v;
                    out.push(acc.min(1.0));
                }
                *out.last_mut().unwrap() = 1.0;
                out
            })
            .collect()
    }

    /// Drops all-zero signal columns and merges adjacent proportional
    /// columns (the coarsest experiment reachable from this one by inverse
    /// splits). Signal order is preserved. Returns `self` unchanged if it is
    /// already canonical.
    pub fn canonicalize(&self, tol: f64) -> Experiment {
        let n = self.states;
        let mut cols: Vec<Vec<f64>> = (0..self.signals).map(|j| self.column(j)).collect();
        // Drop zero columns (but keep at least two).
        cols.retain(|c| c.iter().any(|&v| v > tol));
        // Merge adjacent proportional columns.
        let mut merged: Vec<Vec<f64>> = Vec::new();
        for c in cols {
            if let Some(last) = merged.last_mut() {
                if proportional(last, &c, tol) {
                    for (a, b) in last.iter_mut().zip(&c) {
                        *a += b;
                    }
                    continue;
                }
            }
            merged.push(c);
        }
        while merged.len() < 2 {
            merged.push(vec![0.0; n]);
        }
        let rows = (0..n)
            .map(|i| merged.iter().map(|c| c[i]).collect())
            .collect();
        Experiment::new(rows).expect("canonical form of a valid experiment is valid")
    }
}

/// Whether two nonnegative vectors are proportional within `tol`
/// (cross-product test; the zero vector is proportional to anything).
fn proportional(a: &[f64], b: &[f64], tol: f64) -> bool {
    for i in 0..a.len() {
        for k in (i + 1)..a.len() {
            if (a[i] * b[k] - a[k] * b[i]).abs() > tol {
                return false;
            }
        }
    }
    true
}

impl StochasticMatrix {
    /// Validates and constructs a row-stochastic kernel.
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tol(entries, &Tol::default())
    }

    pub fn with_tol(entries: Vec<Vec<f64>>, tol: &Tol) -> Result<Self> {
        let rows = entries.len();
        if rows == 0 {
            return Err(Error::Shape("kernel has no rows".into()));
        }
        let cols = entries[0].len();
        if cols == 0 {
            return Err(Error::Shape("kernel has no columns".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("kernel row {i} has ragged length")));
            }
            let mut sum = 0.0;
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < -tol.row {
                    return Err(Error::NegativeEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                sum += v;
            }
            if (sum - 1.0).abs() > tol.row {
                return Err(Error::RowSum {
                    row: i,
                    sum,
                    tol: tol.row,
                });
            }
        }
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.max(0.0)).collect())
            .collect();
        Ok(StochasticMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[j][k]
    }

    /// The identity kernel.
    pub fn identity(size: usize) -> Self {
        let entries = (0..size)
            .map(|j| (0..size).map(|k| if j == k { 1.0 } else { 0.0 }).collect())
            .collect();
        StochasticMatrix {
            rows: size,
            cols: size,
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(rows: &[&[f64]]) -> Experiment {
        Experiment::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(Experiment::new(vec![vec![0.5, 0.4]]).is_err());
        assert!(Experiment::new(vec![vec![0.5, 0.5], vec![1.2, -0.2]]).is_err());
        assert!(Experiment::new(vec![vec![1.0]]).is_err());
    }

    #[test]
    fn garble_identity_is_noop() {
        let f = exp(&[&[0.7, 0.3], &[0.2, 0.8]]);
        let id = StochasticMatrix::identity(2);
        assert_eq!(f.garble(&id).unwrap(), f);
    }

    #[test]
    fn split_then_merge_roundtrips() {
        let f = exp(&[&[0.7, 0.3], &[0.2, 0.8]]);
        let s = f.split_signal(1, 0.25).unwrap();
        assert_eq!(s.signals(), 3);
        let back = s.merge_signals(1, 2).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-15);
    }

    #[test]
    fn mlrp_binary_is_sortedness() {
        let tol = Tol::default();
        assert!(exp(&[&[0.9, 0.1], &[0.5, 0.5], &[0.2, 0.8]]).is_mlrp(&tol));
        assert!(!exp(&[&[0.5, 0.5], &[0.9, 0.1]]).is_mlrp(&tol));
    }

    #[test]
    fn mlrp_needs_all_pairs_with_zeros() {
        // Adjacent-column minors are all fine, the (0, 2) column pair fails.
        let tol = Tol::default();
        let f = exp(&[&[0.0, 0.5, 0.5], &[0.5, 0.0, 0.5], &[0.25, 0.25, 0.5]]);
        assert!(!f.is_mlrp(&tol));
    }

    #[test]
    fn reverse_up_max_step_kills_determinant() {
        let f = exp(&[&[0.6, 0.3, 0.1], &[0.2, 0.3, 0.5], &[0.1, 0.2, 0.7]]);
        let tol = Tol::default();
        assert!(f.is_mlrp(&tol));
        let dir = f.make_direction(DirectionKind::ReverseUp { j: 0, l: 0 }).unwrap();
        let g = f.step(&dir, dir.max_step).unwrap();
        let det = g.get(0, 0) * g.get(1, 1) - g.get(0, 1) * g.get(1, 0);
        assert!(det.abs() < crate::tol::DET_VANISH, "det = {det}");
        assert!(g.is_mlrp(&tol));
    }

    #[test]
    fn reverse_down_max_step_kills_determinant() {
        let f = exp(&[&[0.6, 0.3, 0.1], &[0.2, 0.3, 0.5], &[0.1, 0.2, 0.7]]);
        let tol = Tol::default();
        let dir = f
            .make_direction(DirectionKind::ReverseDown { j: 2, l: 2 })
            .unwrap();
        let g = f.step(&dir, dir.max_step).unwrap();
        let det = g.get(1, 1) * g.get(2, 2) - g.get(1, 2) * g.get(2, 1);
        assert!(det.abs() < crate::tol::DET_VANISH, "det = {det}");
        assert!(g.is_mlrp(&tol));
    }

    #[test]
    fn reverse_up_at_last_state_allows_full_transfer() {
        // With the boundary conventions, l = n - 1 gives max_step = 1.
        let f = exp(&[&[0.6, 0.4], &[0.2, 0.8]]);
        let dir = f.make_direction(DirectionKind::ReverseUp { j: 0, l: 1 }).unwrap();
        assert!((dir.max_step - 1.0).abs() < 1e-15);
    }

    #[test]
    fn activation_failure_detected() {
        // Columns 0 and 1 proportional in states 0 and 1: determinant zero.
        let f = exp(&[&[0.4, 0.4, 0.2], &[0.3, 0.3, 0.4], &[0.1, 0.1, 0.8]]);
        let err = f.make_direction(DirectionKind::ReverseUp { j: 0, l: 0 });
        assert!(matches!(err, Err(Error::ActivationFailed { .. })));
    }

    #[test]
    fn canonicalize_merges_proportional_columns() {
        let f = exp(&[&[0.2, 0.2, 0.6], &[0.1, 0.1, 0.8]]);
        let c = f.canonicalize(1e-12);
        assert_eq!(c.signals(), 2);
        assert!((c.get(0, 0) - 0.4).abs() < 1e-15);
    }
}
