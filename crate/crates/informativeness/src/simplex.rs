//! Dense phase-1 simplex for equality-constrained feasibility problems.
//!
//! Solves: does there exist `x >= 0` with `A x = b`? One artificial variable
//! is added per constraint and their sum is minimized with Bland's rule
//! (lowest-index entering variable, lowest-index tie break on the leaving
//! variable), which guarantees termination. Redundant constraints are
//! tolerated: their artificials simply stay basic at level zero.

/// Result of a phase-1 feasibility solve.
#[derive(Debug, Clone)]
pub struct Phase1 {
    /// Candidate solution for the original variables.
    pub x: Vec<f64>,
    /// Optimal phase-1 objective (sum of artificial variables).
    pub objective: f64,
    /// Number of simplex pivots performed.
    pub pivots: usize,
}

/// Pivot threshold: reduced costs and pivot elements smaller than this in
/// magnitude are treated as zero.
pub const PIVOT_TOL: f64 = 1e-9;

/// Runs phase-1 on `A x = b`, `x >= 0`, where `a` is row-major with
/// `ncons` rows and `nvars` columns.
pub fn phase1(a: &[f64], b: &[f64], ncons: usize, nvars: usize) -> Phase1 {
    assert_eq!(a.len(), ncons * nvars);
    assert_eq!(b.len(), ncons);

    let width = nvars + ncons + 1; // original vars, artificials, rhs
    let mut t = vec![0.0f64; ncons * width];
    for r in 0..ncons {
        let sign = if b[r] < 0.0 { -1.0 } else { 1.0 };
        for c in 0..nvars {
            t[r * width + c] = sign * a[r * nvars + c];
        }
        t[r * width + nvars + r] = 1.0;
        t[r * width + nvars + ncons] = sign * b[r];
    }
    let mut basis: Vec<usize> = (nvars..nvars + ncons).collect();

    // Objective row for min sum of artificials, expressed in terms of the
    // nonbasic variables: z_c - c_c = sum over rows of the column.
    let mut obj = vec![0.0f64; width];
    for r in 0..ncons {
        for c in 0..width {
            obj[c] += t[r * width + c];
        }
    }
    for c in nvars..nvars + ncons {
        obj[c] = 0.0; // artificials are basic with zero reduced cost
    }

    let mut pivots = 0usize;
    loop {
        // Bland: entering = lowest-index column with positive reduced cost
        // (we maximize the negated objective, i.e. reduce artificial mass).
        let mut enter = None;
        for (c, &oc) in obj.iter().enumerate().take(nvars + ncons) {
            if oc > PIVOT_TOL && !basis.contains(&c) {
                enter = Some(c);
                break;
            }
        }
        let Some(enter) = enter else { break };

        // Ratio test with Bland's tie break on the basis index.
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..ncons {
            let coef = t[r * width + enter];
            if coef > PIVOT_TOL {
                let ratio = t[r * width + nvars + ncons] / coef;
                match leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - PIVOT_TOL
                            || (ratio < lratio + PIVOT_TOL && basis[r] < basis[lr])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((lr, _)) = leave else {
            // Unbounded in phase-1 cannot happen (objective bounded below by
            // zero); treat as a stall and stop.
            break;
        };

        // Pivot.
        let piv = t[lr * width + enter];
        for c in 0..width {
            t[lr * width + c] /= piv;
        }
        for r in 0..ncons {
            if r != lr {
                let factor = t[r * width + enter];
                if factor != 0.0 {
                    for c in 0..width {
                        t[r * width + c] -= factor * t[lr * width + c];
                    }
                }
            }
        }
        let factor = obj[enter];
        if factor != 0.0 {
            for c in 0..width {
                obj[c] -= factor * t[lr * width + c];
            }
        }
        basis[lr] = enter;
        pivots += 1;
    }

    let mut x = vec![0.0f64; nvars];
    let mut objective = 0.0;
    for r in 0..ncons {
        let v = t[r * width + nvars + ncons];
        if basis[r] < nvars {
            x[basis[r]] = v.max(0.0);
        } else {
            objective += v.max(0.0);
        }
    }
    Phase1 {
        x,
        objective,
        pivots,
    }
}
