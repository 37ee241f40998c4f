//! Command-line interface: validation, order comparison, cost audits, path
//! construction/verification, and a registry of reproducible named checks.
//!
//! Exit codes: 0 = ok / comparable / consistent; 1 = incomparable or invalid
//! input; 2 = counterexample or violation found; 3 = numerically
//! ill-conditioned (gray-zone) result.

use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use informativeness::audit::{
    audit_blackwell, audit_lehmann, binary_mrit_check, check_quasiconvexity,
    directional_derivative, AuditConfig, AuditReport, VERDICT_CONSISTENT,
};
use informativeness::cost::{BinaryFamily, Cost, Prior, Psi};
use informativeness::experiment::DirectionKind;
use informativeness::io;
use informativeness::order::{
    binary_from_vector, blackwell_geq, compare_blackwell, compare_lehmann, Relation,
};
use informativeness::path::{
    binary_blackwell_path, binary_lehmann_path, general_blackwell_path, lehmann_path,
    verify_path, DEFAULT_SAMPLES,
};
use informativeness::sampling::{random_experiment, rng_from_seed};
use informativeness::{Experiment, Tol};

const EXIT_OK: i32 = 0;
const EXIT_INCOMPARABLE: i32 = 1;
const EXIT_VIOLATION: i32 = 2;
const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser)]
#[command(name = "informativeness", version, about = "Informativeness orders and cost audits for finite experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    tols: TolArgs,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TolArgs {
    /// Row-sum validation tolerance.
    #[arg(long, global = true)]
    tol_row: Option<f64>,
    /// Garbling-LP residual tolerance.
    #[arg(long, global = true)]
    tol_lp: Option<f64>,
    /// Order-comparison (PP curve / ratio) tolerance.
    #[arg(long, global = true)]
    tol_ord: Option<f64>,
    /// MLRP minor tolerance.
    #[arg(long, global = true)]
    tol_mlrp: Option<f64>,
    /// Audit slack added to gradient error estimates.
    #[arg(long, global = true)]
    tol_audit: Option<f64>,
    /// Relative cost-equality tolerance.
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
}

impl TolArgs {
    fn build(&self) -> Tol {
        let mut t = Tol::default();
        if let Some(v) = self.tol_row {
            t.row = v;
        }
        if let Some(v) = self.tol_lp {
            t.lp = v;
        }
        if let Some(v) = self.tol_ord {
            t.ord = v;
        }
        if let Some(v) = self.tol_mlrp {
            t.mlrp = v;
        }
        if let Some(v) = self.tol_audit {
            t.audit = v;
        }
        if let Some(v) = self.tol_eq {
            t.eq = v;
        }
        t
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Blackwell,
    Lehmann,
    Binary,
}

#[derive(Clone, Copy, ValueEnum)]
enum AuditOrder {
    Blackwell,
    Lehmann,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathKindArg {
    BinaryBlackwell,
    BinaryLehmann,
    GeneralBlackwell,
    Lehmann,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an experiment file (row-stochasticity, shape limits).
    Validate {
        file: PathBuf,
        /// Also require the MLRP.
        #[arg(long)]
        mlrp: bool,
    },
    /// Check the MLRP and report the first violating minor.
    MlrpCheck { file: PathBuf },
    /// Compare two experiments in an informativeness order.
    Compare {
        /// File with the candidate dominant experiment.
        f: PathBuf,
        /// File with the candidate dominated experiment.
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::Blackwell)]
        order: OrderArg,
    },
    /// Audit a cost specification for monotonicity (randomized, seeded).
    Audit {
        /// Cost specification JSON file.
        #[arg(long)]
        cost: PathBuf,
        #[arg(long, value_enum, default_value_t = AuditOrder::Both)]
        order: AuditOrder,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled experiments.
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long, default_value_t = 3)]
        signals: usize,
        /// Worker pool size (accepted for interface stability; audits run
        /// sequentially so results are deterministic for a given seed).
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Build or verify path certificates.
    Path {
        #[command(subcommand)]
        cmd: PathCmd,
    },
    /// Run a named reproducible check from the registry.
    Reproduce {
        /// One of: prop_d1, example_d1, example_e1, example_e2,
        /// mlrp_nonconvex, prop42i_counterexample, bregman_violation,
        /// entropy_lehmann, pnorm_lehmann.
        case: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample budget for the randomized cases.
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum PathCmd {
    /// Construct a path from f down to g and self-verify it.
    Build {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_enum)]
        kind: PathKindArg,
        /// Sampled points per continuous segment.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Output file for the path certificate (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay and verify a stored path certificate.
    Verify {
        file: PathBuf,
        /// Cost specification files checked for monotonicity along the path.
        #[arg(long = "cost")]
        costs: Vec<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let tol = cli.tols.build();
    let code = match run(cli.cmd, &tol, cli.format) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INCOMPARABLE
        }
    };
    exit(code);
}

fn run(cmd: Cmd, tol: &Tol, format: Format) -> informativeness::Result<i32> {
    match cmd {
        Cmd::Validate { file, mlrp } => {
            let e = io::read_experiment(&file, tol)?;
            let mlrp_ok = e.is_mlrp(tol);
            if mlrp && !mlrp_ok {
                e.check_mlrp(tol)?;
            }
            emit(
                format,
                json!({"valid": true, "states": e.states(), "signals": e.signals(),
                       "mlrp": mlrp_ok}),
                vec![format!(
                    "valid experiment: {} states, {} signals, mlrp: {}",
                    e.states(),
                    e.signals(),
                    mlrp_ok
                )],
            );
            Ok(EXIT_OK)
        }
        Cmd::MlrpCheck { file } => {
            let e = io::read_experiment(&file, tol)?;
            match e.check_mlrp(tol) {
                Ok(()) => {
                    emit(format, json!({"mlrp": true}), vec!["mlrp: true".into()]);
                    Ok(EXIT_OK)
                }
                Err(err) => {
                    emit(
                        format,
                        json!({"mlrp": false, "violation": err.to_string()}),
                        vec![format!("mlrp: false ({err})")],
                    );
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Cmd::Compare { f, g, order } => {
            let ef = io::read_experiment(&f, tol)?;
            let eg = io::read_experiment(&g, tol)?;
            let cmp = match order {
                OrderArg::Blackwell | OrderArg::Binary => compare_blackwell(&ef, &eg, tol)?,
                OrderArg::Lehmann => compare_lehmann(&ef, &eg, tol)?,
            };
            let mut lines = vec![format!("relation: {}", relation_name(cmp.relation))];
            if cmp.ill_conditioned {
                lines.push("warning: residual in the ill-conditioned gray zone".into());
            }
            if let Some(w) = &cmp.forward.witness {
                lines.push("witness kernel (f -> g), row-major:".into());
                lines.extend(io::witness_lines(w));
            }
            emit(format, serde_json::to_value(&cmp).unwrap(), lines);
            Ok(if cmp.ill_conditioned {
                EXIT_NUMERICAL
            } else if cmp.relation == Relation::Incomparable {
                EXIT_INCOMPARABLE
            } else {
                EXIT_OK
            })
        }
        Cmd::Audit {
            cost,
            order,
            seed,
            budget,
            states,
            signals,
            workers,
        } => {
            if workers > 1 {
                eprintln!("note: --workers {workers} accepted; audits run sequentially for deterministic output");
            }
            let cost = io::read_cost(&cost)?;
            let cfg = AuditConfig {
                seed,
                budget,
                states,
                signals,
                tol: tol.clone(),
            };
            let mut reports: Vec<AuditReport> = Vec::new();
            if matches!(order, AuditOrder::Blackwell | AuditOrder::Both) {
                reports.push(audit_blackwell(&cost, &cfg)?);
            }
            if matches!(order, AuditOrder::Lehmann | AuditOrder::Both) {
                reports.push(audit_lehmann(&cost, &cfg)?);
            }
            let mut lines = Vec::new();
            let mut bad = false;
            for r in &reports {
                bad |= r.verdict != VERDICT_CONSISTENT;
                lines.push(format!(
                    "{} order: {} ({} checks, {} violations, seed {})",
                    r.order,
                    r.verdict,
                    r.checks,
                    r.violations.len(),
                    r.seed
                ));
                for v in r.violations.iter().take(3) {
                    lines.push(format!("  {}: {} (threshold {:.6e})", v.check, v.detail, v.threshold));
                }
            }
            emit(format, serde_json::to_value(&reports).unwrap(), lines);
            Ok(if bad { EXIT_VIOLATION } else { EXIT_OK })
        }
        Cmd::Path { cmd } => run_path(cmd, tol, format),
        Cmd::Reproduce { case, seed, budget } => {
            let (lines, pass) = reproduce(&case, seed, budget, tol)?;
            emit(
                format,
                json!({"case": case, "pass": pass, "lines": lines}),
                lines.clone(),
            );
            Ok(if pass { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn run_path(cmd: PathCmd, tol: &Tol, format: Format) -> informativeness::Result<i32> {
    match cmd {
        PathCmd::Build {
            f,
            g,
            kind,
            samples,
            out,
        } => {
            let ef = io::read_experiment(&f, tol)?;
            let eg = io::read_experiment(&g, tol)?;
            let path = match kind {
                PathKindArg::BinaryBlackwell => binary_blackwell_path(&ef, &eg, tol, samples)?,
                PathKindArg::BinaryLehmann => binary_lehmann_path(&ef, &eg, tol, samples)?,
                PathKindArg::GeneralBlackwell => general_blackwell_path(&ef, &eg, tol, samples)?,
                PathKindArg::Lehmann => lehmann_path(&ef, &eg, tol, samples)?,
            };
            let report = verify_path(&path, &[], tol);
            let text = io::path_to_json(&path);
            match &out {
                Some(p) => std::fs::write(p, &text)?,
                None => {
                    if format == Format::Json {
                        say(&text);
                    }
                }
            }
            let mut lines = vec![format!(
                "built {:?} path with {} steps; verification: {}",
                path.kind,
                report.steps,
                if report.ok { "ok" } else { "FAILED" }
            )];
            lines.extend(report.problems.iter().cloned());
            if format == Format::Text {
                for l in &lines {
                    say(l);
                }
            }
            Ok(if report.ok { EXIT_OK } else { EXIT_VIOLATION })
        }
        PathCmd::Verify { file, costs } => {
            let path = io::read_path(&file, tol)?;
            let costs = costs
                .iter()
                .map(|p| io::read_cost(p))
                .collect::<informativeness::Result<Vec<_>>>()?;
            let report = verify_path(&path, &costs, tol);
            let mut lines = vec![format!(
                "{} steps; verification: {}",
                report.steps,
                if report.ok { "ok" } else { "FAILED" }
            )];
            lines.extend(report.problems.iter().cloned());
            emit(format, serde_json::to_value(&report).unwrap(), lines);
            Ok(if report.ok { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Geq => "geq",
        Relation::Leq => "leq",
        Relation::Equivalent => "equivalent",
        Relation::Incomparable => "incomparable",
    }
}

/// Prints a line, ignoring broken-pipe errors (e.g. output piped to `head`).
fn say(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn emit(format: Format, value: serde_json::Value, lines: Vec<String>) {
    match format {
        Format::Json => say(&serde_json::to_string_pretty(&value).unwrap()),
        Format::Text => {
            for l in lines {
                say(&l);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Reproducible named checks.
// ---------------------------------------------------------------------------

type CheckLines = (Vec<String>, bool);

const REPRODUCE_CASES: [&str; 9] = [
    "prop_d1",
    "example_d1",
    "example_e1",
    "example_e2",
    "mlrp_nonconvex",
    "prop42i_counterexample",
    "bregman_violation",
    "entropy_lehmann",
    "pnorm_lehmann",
];

fn reproduce(case: &str, seed: u64, budget: usize, tol: &Tol) -> informativeness::Result<CheckLines> {
    match case {
        "list" => Ok((
            REPRODUCE_CASES.iter().map(|s| s.to_string()).collect(),
            true,
        )),
        "prop_d1" => prop_d1(seed, budget, tol),
        "example_d1" => example_d1(tol),
        "example_e1" => binary_grid_case(BinaryFamily::C1, BinaryFamily::C2, "C1", "C2", tol),
        "example_e2" => example_e2(tol),
        "mlrp_nonconvex" => mlrp_nonconvex(tol),
        "prop42i_counterexample" => prop42i(tol),
        "bregman_violation" => bregman_violation(tol),
        "entropy_lehmann" => {
            let cost = Cost::entropy(Prior::uniform(3));
            lehmann_consistency(&cost, seed, budget, tol)
        }
        "pnorm_lehmann" => {
            let mut lines = Vec::new();
            let mut pass = true;
            for p in [1.5, 2.0, 3.0] {
                let cost = Cost::LikelihoodSeparable {
                    psi: Psi::PNorm {
                        p,
                        weights: vec![1.0, 1.0, 1.0],
                    },
                };
                let (mut l, ok) = lehmann_consistency(&cost, seed, budget, tol)?;
                lines.append(&mut l);
                pass &= ok;
            }
            Ok((lines, pass))
        }
        other => Err(informativeness::Error::UnknownCase(other.to_string())),
    }
}

fn pass_line(lines: &mut Vec<String>, what: &str, ok: bool) -> bool {
    lines.push(format!("{}: {what}", if ok { "PASS" } else { "FAIL" }));
    ok
}

/// The 3-state experiment whose only dominators (besides relabelings) are
/// the fully informative experiment and itself.
fn prop_d1_g() -> Experiment {
    Experiment::new(vec![
        vec![0.8, 0.2, 0.0],
        vec![0.0, 0.8, 0.2],
        vec![0.2, 0.0, 0.8],
    ])
    .unwrap()
}

fn identity3() -> Experiment {
    Experiment::new(vec![
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ])
    .unwrap()
}

fn permutations3() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ]
}

fn near_permutation_of(f: &Experiment, base: &Experiment) -> bool {
    permutations3().iter().any(|p| {
        base.permute(p)
            .ok()
            .and_then(|b| f.max_abs_diff(&b))
            .map_or(false, |d| d <= 1e-6)
    })
}

fn prop_d1(seed: u64, budget: usize, tol: &Tol) -> informativeness::Result<CheckLines> {
    let g = prop_d1_g();
    let i3 = identity3();
    let mut lines = Vec::new();
    let mut pass = true;

    let chk = blackwell_geq(&i3, &g, tol)?;
    pass &= pass_line(
        &mut lines,
        &format!(
            "fully informative experiment dominates g (residual {:.3e} <= 1e-7)",
            chk.residual
        ),
        chk.feasible && chk.residual <= 1e-7,
    );

    // Strict mixtures of the two dominators must not dominate g.
    for lam in [0.25, 0.5, 0.75] {
        let mix = informativeness::audit::mix_experiments(&i3, &g, 1.0 - lam)?;
        let c = blackwell_geq(&mix, &g, tol)?;
        pass &= pass_line(
            &mut lines,
            &format!("strict mixture (lambda = {lam}) does not dominate g"),
            !c.feasible,
        );
    }

    // Random experiments that happen to dominate g must be relabelings of
    // the two known dominators.
    let mut rng = rng_from_seed(seed);
    let mut dominators = 0usize;
    let mut strangers = 0usize;
    for _ in 0..budget {
        let f = random_experiment(&mut rng, 3, 3);
        let c = blackwell_geq(&f, &g, tol)?;
        if c.feasible {
            dominators += 1;
            if !near_permutation_of(&f, &i3) && !near_permutation_of(&f, &g) {
                strangers += 1;
            }
        }
    }
    pass &= pass_line(
        &mut lines,
        &format!(
            "{budget} sampled experiments: {dominators} dominate g, all within 1e-6 of a \
             relabeling of the two known dominators ({strangers} exceptions)"
        ),
        strangers == 0,
    );
    Ok((lines, pass))
}

fn example_d1(tol: &Tol) -> informativeness::Result<CheckLines> {
    let cost = Cost::BinaryExample {
        which: BinaryFamily::MinRatio,
    };
    let f = binary_from_vector(&[0.0, 0.5])?;
    let g = binary_from_vector(&[0.5, 1.0])?;
    let h = binary_from_vector(&[0.25, 0.75])?;
    let (cf, cg, ch) = (cost.eval(&f)?, cost.eval(&g)?, cost.eval(&h)?);
    let mut lines = Vec::new();
    let mut pass = true;
    pass &= pass_line(
        &mut lines,
        &format!("C(f) = {cf}, C(g) = {cg} (expected 2, 2)"),
        (cf - 2.0).abs() < 1e-12 && (cg - 2.0).abs() < 1e-12,
    );
    pass &= pass_line(
        &mut lines,
        &format!("C(h) = {ch} at the midpoint (expected 3)"),
        (ch - 3.0).abs() < 1e-12,
    );
    let violations = check_quasiconvexity(&cost, &[(f, g)], &[0.5], tol)?;
    pass &= pass_line(
        &mut lines,
        "quasiconvexity checker flags the triple",
        !violations.is_empty(),
    );
    Ok((lines, pass))
}

/// Grid scan over the normalized binary square: `good` must pass the MRIT
/// sandwich everywhere, `bad` must fail somewhere.
fn binary_grid_case(
    good: BinaryFamily,
    bad: BinaryFamily,
    good_name: &str,
    bad_name: &str,
    tol: &Tol,
) -> informativeness::Result<CheckLines> {
    let side = 60usize;
    let mut lines = Vec::new();
    let mut pass = true;
    for (family, name, expect_ok) in [(good, good_name, true), (bad, bad_name, false)] {
        let cost = Cost::BinaryExample { which: family };
        let mut first_bad = None;
        for a in 1..side {
            for b in a..side {
                let (f1, f2) = (a as f64 / side as f64, b as f64 / side as f64);
                let f = binary_from_vector(&[f1, f2])?;
                let chk = binary_mrit_check(&cost, &f, tol)?;
                if !chk.ok && first_bad.is_none() {
                    first_bad = Some((f1, f2));
                }
            }
        }
        let ok = expect_ok == first_bad.is_none();
        pass &= pass_line(
            &mut lines,
            &match first_bad {
                None => format!("{name}: no violation on the {side}x{side} grid"),
                Some((a, b)) => format!("{name}: violation at ({a:.4}, {b:.4})"),
            },
            ok,
        );
    }
    Ok((lines, pass))
}

fn example_e2(tol: &Tol) -> informativeness::Result<CheckLines> {
    let (mut lines, mut pass) =
        binary_grid_case(BinaryFamily::C3, BinaryFamily::C4, "C3", "C4", tol)?;
    let cost = Cost::BinaryExample {
        which: BinaryFamily::C4,
    };
    let f = binary_from_vector(&[0.5, 0.6])?;
    let chk = binary_mrit_check(&cost, &f, tol)?;
    pass &= pass_line(
        &mut lines,
        &format!(
            "C4 fails the MRIT sandwich at (0.5, 0.6) with rate {:.3}",
            chk.rate
        ),
        !chk.ok && (chk.rate - 2.0).abs() < 1e-9,
    );
    Ok((lines, pass))
}

fn mlrp_nonconvex(tol: &Tol) -> informativeness::Result<CheckLines> {
    let f = Experiment::new(vec![
        vec![0.04, 0.36, 0.60],
        vec![0.02, 0.18, 0.80],
        vec![0.02, 0.18, 0.80],
    ])?;
    let g = Experiment::new(vec![
        vec![0.60, 0.04, 0.36],
        vec![0.40, 0.06, 0.54],
        vec![0.40, 0.06, 0.54],
    ])?;
    let h = informativeness::audit::mix_experiments(&f, &g, 0.5)?;
    let mut lines = Vec::new();
    let mut pass = true;
    pass &= pass_line(&mut lines, "both endpoints satisfy the MLRP", f.is_mlrp(tol) && g.is_mlrp(tol));
    let err = h.check_mlrp(tol).err();
    pass &= pass_line(
        &mut lines,
        &format!(
            "their average fails: {:.2}/{:.2} > {:.2}/{:.2} < {:.2}/{:.2} ({})",
            h.get(1, 0),
            h.get(0, 0),
            h.get(1, 1),
            h.get(0, 1),
            h.get(1, 2),
            h.get(0, 2),
            err.as_ref().map_or("?".into(), |e| e.to_string())
        ),
        err.is_some()
            && (h.get(1, 0) / h.get(0, 0) > h.get(1, 1) / h.get(0, 1))
            && (h.get(1, 1) / h.get(0, 1) < h.get(1, 2) / h.get(0, 2)),
    );
    Ok((lines, pass))
}

fn prop42i(tol: &Tol) -> informativeness::Result<CheckLines> {
    let cost = Cost::LikelihoodSeparable {
        psi: Psi::QuadraticForm {
            matrix: vec![
                vec![10.0, 10.0, 10.0],
                vec![10.0, 20.0, 10.0],
                vec![10.0, 10.0, 20.0],
            ],
        },
    };
    let f = Experiment::new(vec![
        vec![0.78, 0.10, 0.10, 0.02],
        vec![0.20, 0.30, 0.40, 0.10],
        vec![0.05, 0.10, 0.30, 0.55],
    ])?;
    let dir = f.make_direction(DirectionKind::ReverseUp { j: 1, l: 0 })?;
    let d = directional_derivative(&cost, &f, &dir, tol)?;
    // Independent central-difference estimate.
    let h = 1e-6;
    let eval_at = |s: f64| -> informativeness::Result<f64> {
        let rows = f
            .rows()
            .iter()
            .zip(&dir.delta)
            .map(|(r, d)| r.iter().zip(d).map(|(&v, &dd)| v + s * dd).collect())
            .collect();
        cost.eval(&Experiment::new(rows)?)
    };
    let fd = (eval_at(h)? - eval_at(-h)?) / (2.0 * h);
    let mut lines = Vec::new();
    let mut pass = true;
    pass &= pass_line(
        &mut lines,
        &format!(
            "reverse replacement raises the quadratic-form cost: derivative {:.6e} > 0.0008",
            d.value
        ),
        d.value > 0.0008,
    );
    pass &= pass_line(
        &mut lines,
        &format!("analytic vs central finite difference: |{:.6e} - {fd:.6e}| <= 1e-5", d.value),
        (d.value - fd).abs() <= 1e-5,
    );
    Ok((lines, pass))
}

fn bregman_violation(tol: &Tol) -> informativeness::Result<CheckLines> {
    let cost = Cost::BregmanNestedLogit {
        prior: Prior::uniform(2),
        xi: 0.5,
        nests: vec![0, 0, 1, 1],
    };
    // Signals 0, 2, 3 induce the same posterior, but signal 0's nest
    // aggregate differs from signal 2's: replacing 0 by 2 raises the cost.
    let f = Experiment::new(vec![
        vec![0.20, 0.50, 0.20, 0.10],
        vec![0.30, 0.25, 0.30, 0.15],
    ])?;
    let dir = f.make_direction(DirectionKind::SignalReplacement { from: 0, to: 2 })?;
    let d = directional_derivative(&cost, &f, &dir, tol)?;
    let mut lines = Vec::new();
    let mut pass = true;
    pass &= pass_line(
        &mut lines,
        &format!(
            "signal replacement 0 -> 2 strictly raises the nested-logit Bregman cost: {:.6e} > 0",
            d.value
        ),
        d.value > d.error + tol.audit,
    );
    Ok((lines, pass))
}

fn lehmann_consistency(
    cost: &Cost,
    seed: u64,
    budget: usize,
    tol: &Tol,
) -> informativeness::Result<CheckLines> {
    let cfg = AuditConfig {
        seed,
        budget,
        states: 3,
        signals: 3,
        tol: tol.clone(),
    };
    let report = audit_lehmann(cost, &cfg)?;
    let ok = report.verdict == VERDICT_CONSISTENT;
    let mut lines = Vec::new();
    let mut pass = true;
    pass &= pass_line(
        &mut lines,
        &format!(
            "{}: {} over {} checks (seed {seed}, budget {budget})",
            report.cost, report.verdict, report.checks
        ),
        ok,
    );
    Ok((lines, pass))
}
