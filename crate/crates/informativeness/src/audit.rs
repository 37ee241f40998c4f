//! Monotonicity audits for information-cost functions.
//!
//! A cost is Blackwell monotone iff it is invariant to signal permutations
//! and splits and weakly decreasing in every signal replacement direction;
//! it is Lehmann monotone (on MLRP experiments) iff it is split invariant
//! and weakly decreasing in every active reverse signal replacement. The
//! audits sample seeded experiments, test these first-order conditions plus
//! direct garbling comparisons, and report either consistency or explicit
//! counterexamples.

use serde::{Deserialize, Serialize};

use crate::cost::Cost;
use crate::experiment::{Direction, DirectionKind, Experiment};
use crate::sampling::{
    random_experiment, random_garbling, random_mlrp, random_permutation, rng_from_seed, Rand,
};
use crate::tol::Tol;
use crate::Result;

/// A directional-derivative estimate with an error bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GradientEstimate {
    /// Estimated inner product of the cost gradient with the direction.
    pub value: f64,
    /// Error bound: zero-ish for analytic gradients, a Richardson residual
    /// plus floating-point noise for finite differences.
    pub error: f64,
    /// Whether an analytic gradient was used.
    pub analytic: bool,
}

/// Estimates the one-sided directional derivative of `cost` at `f` along
/// `dir`. Uses the analytic gradient when available, otherwise one-sided
/// finite differences with Richardson extrapolation (one-sided because the
/// admissible step range is `[0, max_step]`).
pub fn directional_derivative(
    cost: &Cost,
    f: &Experiment,
    dir: &Direction,
    tol: &Tol,
) -> Result<GradientEstimate> {
    if let Some(g) = cost.gradient(f)? {
        let mut value = 0.0;
        for i in 0..f.states() {
            for j in 0..f.signals() {
                let dv = dir.delta[i][j];
                if dv != 0.0 {
                    value += g[i][j] * dv;
                }
            }
        }
        return Ok(GradientEstimate {
            value,
            error: tol.eq * (1.0 + value.abs()),
            analytic: true,
        });
    }
    let c0 = cost.eval(f)?;
    if !c0.is_finite() {
        return Ok(GradientEstimate {
            value: f64::NAN,
            error: f64::INFINITY,
            analytic: false,
        });
    }
    let h0 = 1e-4 * dir.max_step.min(1.0);
    let mut est = [0.0f64; 3];
    for (k, e) in est.iter_mut().enumerate() {
        let h = h0 / 2f64.powi(k as i32);
        let c = cost.eval(&f.step(dir, h)?)?;
        if !c.is_finite() {
            return Ok(GradientEstimate {
                value: f64::NAN,
                error: f64::INFINITY,
                analytic: false,
            });
        }
        *e = (c - c0) / h;
    }
    // Richardson: one-sided differences have error a*h + O(h^2).
    let r1 = 2.0 * est[1] - est[0];
    let r2 = 2.0 * est[2] - est[1];
    let noise = 1e-13 * (1.0 + c0.abs()) / (h0 / 4.0);
    Ok(GradientEstimate {
        value: r2,
        error: (r2 - r1).abs() + noise,
        analytic: false,
    })
}

/// A recorded failure of one audit check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    /// Which check failed (e.g. `signal_replacement`, `split_invariance`).
    pub check: String,
    /// Offending amount (derivative value, cost gap, ...).
    pub value: f64,
    /// Threshold the value had to stay below.
    pub threshold: f64,
    /// Human-readable location of the failure.
    pub detail: String,
    /// The experiment at which the check failed.
    pub experiment: Experiment,
}

/// First-order check: every signal replacement direction must weakly
/// decrease the cost.
pub fn check_signal_replacement(
    cost: &Cost,
    f: &Experiment,
    tol: &Tol,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for from in 0..f.signals() {
        for to in 0..f.signals() {
            if from == to {
                continue;
            }
            let dir = f.make_direction(DirectionKind::SignalReplacement { from, to })?;
            let est = directional_derivative(cost, f, &dir, tol)?;
            if est.error.is_finite() {
                let threshold = tol.audit + est.error;
                if est.value > threshold {
                    out.push(Violation {
                        check: "signal_replacement".into(),
                        value: est.value,
                        threshold,
                        detail: format!("replacement {from} -> {to}"),
                        experiment: f.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// First-order check: every *active* reverse signal replacement (both
/// orientations, all truncation states) must weakly decrease the cost.
pub fn check_reverse_signal_replacement(
    cost: &Cost,
    f: &Experiment,
    tol: &Tol,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    let mut dirs: Vec<Direction> = Vec::new();
    for j in 0..f.signals().saturating_sub(1) {
        for l in 0..f.states() {
            if let Ok(d) = f.make_direction(DirectionKind::ReverseUp { j, l }) {
                dirs.push(d);
            }
        }
    }
    for j in 1..f.signals() {
        for l in 0..f.states() {
            if let Ok(d) = f.make_direction(DirectionKind::ReverseDown { j, l }) {
                dirs.push(d);
            }
        }
    }
    for dir in dirs {
        let est = directional_derivative(cost, f, &dir, tol)?;
        if est.error.is_finite() {
            let threshold = tol.audit + est.error;
            if est.value > threshold {
                out.push(Violation {
                    check: "reverse_signal_replacement".into(),
                    value: est.value,
                    threshold,
                    detail: format!("{:?}", dir.kind),
                    experiment: f.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Invariance of the cost under signal relabeling.
pub fn check_permutation_invariance(
    cost: &Cost,
    f: &Experiment,
    rng: &mut Rand,
    trials: usize,
    tol: &Tol,
) -> Result<Vec<Violation>> {
    let c0 = cost.eval(f)?;
    let mut out = Vec::new();
    for _ in 0..trials {
        let perm = random_permutation(rng, f.signals());
        let c1 = cost.eval(&f.permute(&perm)?)?;
        let gap = cost_gap(c0, c1);
        let threshold = tol.eq_scaled(if c0.is_finite() { c0 } else { 0.0 });
        if gap > threshold {
            out.push(Violation {
                check: "permutation_invariance".into(),
                value: gap,
                threshold,
                detail: format!("permutation {perm:?}"),
                experiment: f.clone(),
            });
        }
    }
    Ok(out)
}

/// Invariance of the cost under signal splits.
pub fn check_split_invariance(
    cost: &Cost,
    f: &Experiment,
    rng: &mut Rand,
    trials: usize,
    tol: &Tol,
) -> Result<Vec<Violation>> {
    use rand::Rng;
    let c0 = cost.eval(f)?;
    let mut out = Vec::new();
    for _ in 0..trials {
        let j = rng.gen_range(0..f.signals());
        let lambda: f64 = rng.gen();
        let split = f.split_signal(j, lambda)?;
        if cost.check_shape(&split).is_err() {
            continue; // family is tied to a fixed signal count
        }
        let c1 = cost.eval(&split)?;
        let gap = cost_gap(c0, c1);
        let threshold = tol.eq_scaled(if c0.is_finite() { c0 } else { 0.0 });
        if gap > threshold {
            out.push(Violation {
                check: "split_invariance".into(),
                value: gap,
                threshold,
                detail: format!("split signal {j} at {lambda:.6}"),
                experiment: f.clone(),
            });
        }
    }
    Ok(out)
}

/// Gap between two extended-real cost values (`inf` matches `inf`).
fn cost_gap(a: f64, b: f64) -> f64 {
    if a.is_infinite() && b.is_infinite() && a == b {
        0.0
    } else if a.is_finite() && b.is_finite() {
        (a - b).abs()
    } else {
        f64::INFINITY
    }
}

/// Quasiconvexity spot check on explicit pairs:
/// `C(t f + (1-t) g) <= max(C(f), C(g))` for every `t` in `lambdas`.
pub fn check_quasiconvexity(
    cost: &Cost,
    pairs: &[(Experiment, Experiment)],
    lambdas: &[f64],
    tol: &Tol,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (f, g) in pairs {
        let cf = cost.eval(f)?;
        let cg = cost.eval(g)?;
        let cap = cf.max(cg);
        for &t in lambdas {
            let mix = mix_experiments(f, g, t)?;
            let cm = cost.eval(&mix)?;
            let threshold = tol.eq_scaled(if cap.is_finite() { cap } else { 0.0 });
            if cm > cap + threshold {
                out.push(Violation {
                    check: "quasiconvexity".into(),
                    value: cm - cap,
                    threshold,
                    detail: format!("t = {t}, C(mix) = {cm}, max endpoints = {cap}"),
                    experiment: mix,
                });
            }
        }
    }
    Ok(out)
}

/// Quasiconvexity restricted to garblings of one experiment:
/// `C(f (t M1 + (1-t) M2)) <= max(C(f M1), C(f M2))`.
pub fn check_garbling_quasiconvexity(
    cost: &Cost,
    f: &Experiment,
    rng: &mut Rand,
    trials: usize,
    lambdas: &[f64],
    tol: &Tol,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for _ in 0..trials {
        let m1 = random_garbling(rng, f.signals(), f.signals());
        let m2 = random_garbling(rng, f.signals(), f.signals());
        let g1 = f.garble(&m1)?;
        let g2 = f.garble(&m2)?;
        let mut vs = check_quasiconvexity(cost, &[(g1, g2)], lambdas, tol)?;
        for v in &mut vs {
            v.check = "garbling_quasiconvexity".into();
        }
        out.append(&mut vs);
    }
    Ok(out)
}

/// Convex combination of two experiments of the same shape.
pub fn mix_experiments(f: &Experiment, g: &Experiment, t: f64) -> Result<Experiment> {
    if f.states() != g.states() || f.signals() != g.signals() {
        return Err(crate::error::Error::Shape(
            "cannot mix experiments of different shapes".into(),
        ));
    }
    let rows = f
        .rows()
        .iter()
        .zip(g.rows())
        .map(|(rf, rg)| {
            rf.iter()
                .zip(rg)
                .map(|(&a, &b)| t * a + (1.0 - t) * b)
                .collect()
        })
        .collect();
    Experiment::new(rows)
}

/// Configuration of a sampled audit run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditConfig {
    pub seed: u64,
    /// Number of sampled experiments.
    pub budget: usize,
    pub states: usize,
    pub signals: usize,
    pub tol: Tol,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            seed: 0,
            budget: 100,
            states: 3,
            signals: 3,
            tol: Tol::default(),
        }
    }
}

/// Verdict wording is fixed: an audit can only ever certify consistency
/// with monotonicity, never monotonicity itself.
pub const VERDICT_CONSISTENT: &str = "consistent-with-monotone";
pub const VERDICT_COUNTEREXAMPLE: &str = "counterexample-found";

/// Outcome of a full audit run. Deterministic given the config.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub cost: String,
    pub order: String,
    pub seed: u64,
    pub budget: usize,
    /// Total number of individual checks evaluated.
    pub checks: usize,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
    pub verdict: String,
}

impl AuditReport {
    fn finish(mut self) -> AuditReport {
        self.verdict = if self.violations.is_empty() {
            VERDICT_CONSISTENT.into()
        } else {
            VERDICT_COUNTEREXAMPLE.into()
        };
        self
    }
}

/// Audits a cost for consistency with Blackwell monotonicity: signal
/// replacement derivatives, permutation and split invariance, and direct
/// garbling comparisons, on seeded interior experiments.
pub fn audit_blackwell(cost: &Cost, cfg: &AuditConfig) -> Result<AuditReport> {
    let mut rng = rng_from_seed(cfg.seed);
    let tol = &cfg.tol;
    let mut report = AuditReport {
        cost: cost.name(),
        order: "blackwell".into(),
        seed: cfg.seed,
        budget: cfg.budget,
        checks: 0,
        violations: Vec::new(),
        warnings: Vec::new(),
        verdict: String::new(),
    };
    for _ in 0..cfg.budget {
        let f = random_experiment(&mut rng, cfg.states, cfg.signals);
        // A shape mismatch would silently skip every check: refuse instead.
        cost.check_shape(&f)?;
        report.checks += cfg.signals * (cfg.signals - 1);
        report
            .violations
            .extend(check_signal_replacement(cost, &f, tol)?);
        report.checks += 2;
        report
            .violations
            .extend(check_permutation_invariance(cost, &f, &mut rng, 2, tol)?);
        report.checks += 2;
        report
            .violations
            .extend(check_split_invariance(cost, &f, &mut rng, 2, tol)?);
        // Direct garbling comparison: C(f) >= C(f M).
        let m = random_garbling(&mut rng, cfg.signals, cfg.signals);
        let g = f.garble(&m)?;
        report.checks += 1;
        let (cf, cg) = (cost.eval(&f)?, cost.eval(&g)?);
        let threshold = tol.eq_scaled(if cf.is_finite() { cf } else { 0.0 });
        if finite_lt(cf, cg - threshold) {
            report.violations.push(Violation {
                check: "garbling_comparison".into(),
                value: cg - cf,
                threshold,
                detail: "C(f) < C(f M) for a sampled kernel M".into(),
                experiment: f.clone(),
            });
        }
    }
    Ok(report.finish())
}

/// Audits a cost for consistency with Lehmann monotonicity: reverse signal
/// replacement derivatives and split invariance on seeded MLRP experiments,
/// plus direct comparisons along sampled reverse-replacement steps.
pub fn audit_lehmann(cost: &Cost, cfg: &AuditConfig) -> Result<AuditReport> {
    use rand::Rng;
    let mut rng = rng_from_seed(cfg.seed);
    let tol = &cfg.tol;
    let mut report = AuditReport {
        cost: cost.name(),
        order: "lehmann".into(),
        seed: cfg.seed,
        budget: cfg.budget,
        checks: 0,
        violations: Vec::new(),
        warnings: Vec::new(),
        verdict: String::new(),
    };
    for _ in 0..cfg.budget {
        let f = random_mlrp(&mut rng, cfg.states, cfg.signals, tol)?;
        // A shape mismatch would silently skip every check: refuse instead.
        cost.check_shape(&f)?;
        report.checks += 2 * cfg.signals * cfg.states;
        report
            .violations
            .extend(check_reverse_signal_replacement(cost, &f, tol)?);
        report.checks += 2;
        report
            .violations
            .extend(check_split_invariance(cost, &f, &mut rng, 2, tol)?);
        // Direct comparison along a sampled admissible reverse step.
        for j in 0..cfg.signals - 1 {
            for l in 0..cfg.states {
                if let Ok(dir) = f.make_direction(DirectionKind::ReverseUp { j, l }) {
                    let eps = rng.gen::<f64>() * dir.max_step;
                    let g = f.step(&dir, eps)?;
                    report.checks += 1;
                    let (cf, cg) = (cost.eval(&f)?, cost.eval(&g)?);
                    let threshold = tol.eq_scaled(if cf.is_finite() { cf } else { 0.0 });
                    if finite_lt(cf, cg - threshold) {
                        report.violations.push(Violation {
                            check: "reverse_step_comparison".into(),
                            value: cg - cf,
                            threshold,
                            detail: format!("reverse-up j = {j}, l = {l}, eps = {eps:.6}"),
                            experiment: f.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(report.finish())
}

/// `a < b` treating infinities as comparable (`inf < inf` is false).
fn finite_lt(a: f64, b: f64) -> bool {
    if a.is_infinite() && b.is_infinite() {
        false
    } else {
        a < b
    }
}

/// Marginal-rate-of-informativeness-transformation check for two-state
/// binary experiments: at an interior `f = (f1, f2)`, monotonicity requires
///
/// `f2/f1 >= -(dC/df1)/(dC/df2) >= (1-f2)/(1-f1)`,
///
/// which is tested in the equivalent cone form
/// `<grad C, (1-f)> <= 0` and `<grad C, -f> <= 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MritCheck {
    /// Upper bound `f2 / f1` on the rate.
    pub upper: f64,
    /// Lower bound `(1 - f2) / (1 - f1)` on the rate.
    pub lower: f64,
    /// The rate `-(dC/df1)/(dC/df2)` itself (NaN when `dC/df2 = 0`).
    pub rate: f64,
    /// Cone margins (must be <= threshold): toward full pooling at the high
    /// signal, and toward full pooling at the low signal.
    pub margin_up: f64,
    pub margin_down: f64,
    pub ok: bool,
}

/// Runs the MRIT sandwich check at a single two-state binary experiment.
pub fn binary_mrit_check(cost: &Cost, f: &Experiment, tol: &Tol) -> Result<MritCheck> {
    if f.states() != 2 || f.signals() != 2 {
        return Err(crate::error::Error::Shape(
            "MRIT check needs a 2-state binary experiment".into(),
        ));
    }
    let (f1, f2) = (f.get(0, 1), f.get(1, 1));
    // Directions in the high-signal coordinates: toward (1,1) and toward (0,0).
    let dir_up = Direction {
        kind: DirectionKind::Mixture,
        delta: vec![vec![-(1.0 - f1), 1.0 - f1], vec![-(1.0 - f2), 1.0 - f2]],
        max_step: 1.0,
    };
    let dir_down = Direction {
        kind: DirectionKind::Mixture,
        delta: vec![vec![f1, -f1], vec![f2, -f2]],
        max_step: 1.0,
    };
    let up = directional_derivative(cost, f, &dir_up, tol)?;
    let down = directional_derivative(cost, f, &dir_down, tol)?;
    let rate = match cost.gradient(f)? {
        Some(g) => {
            let (d1, d2) = (g[0][1] - g[0][0], g[1][1] - g[1][0]);
            if d2.abs() > 0.0 {
                -d1 / d2
            } else {
                f64::NAN
            }
        }
        None => f64::NAN,
    };
    let ok = up.value <= tol.audit + up.error && down.value <= tol.audit + down.error;
    Ok(MritCheck {
        upper: crate::order::ratio(f2, f1),
        lower: crate::order::ratio(1.0 - f2, 1.0 - f1),
        rate,
        margin_up: up.value,
        margin_down: down.value,
        ok,
    })
}
