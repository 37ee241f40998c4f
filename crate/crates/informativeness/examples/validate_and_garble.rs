//! Basics: building experiments, garbling, permutation, split/merge, and
//! the MLRP check.

use informativeness::experiment::StochasticMatrix;
use informativeness::{Experiment, Tol};

fn main() -> informativeness::Result<()> {
    let tol = Tol::default();

    // A 3-state, 4-signal experiment (rows are signal distributions).
    let f = Experiment::new(vec![
        vec![0.78, 0.10, 0.10, 0.02],
        vec![0.20, 0.30, 0.40, 0.10],
        vec![0.05, 0.10, 0.30, 0.55],
    ])?;
    println!("f: {} states, {} signals, MLRP: {}", f.states(), f.signals(), f.is_mlrp(&tol));

    // Garbling: post-process the signal through a stochastic kernel.
    let m = StochasticMatrix::new(vec![
        vec![1.0, 0.0],
        vec![1.0, 0.0],
        vec![0.3, 0.7],
        vec![0.0, 1.0],
    ])?;
    let g = f.garble(&m)?;
    println!("garbled to {} signals: {:?}", g.signals(), g.rows());

    // Permutation never changes information content.
    let p = f.permute(&[3, 2, 1, 0])?;
    println!("permuted columns, MLRP after reversal: {}", p.is_mlrp(&tol));

    // Split a signal in two proportionally, then undo it.
    let split = f.split_signal(1, 0.25)?;
    println!("split signal 1 -> {} signals", split.signals());
    let merged = split.canonicalize(1e-12);
    println!(
        "canonicalize merges it back: {} signals, max diff {:?}",
        merged.signals(),
        merged.max_abs_diff(&f)
    );

    // The MLRP check reports the first violating 2x2 minor.
    let bad = Experiment::new(vec![
        vec![0.32, 0.20, 0.48],
        vec![0.21, 0.12, 0.67],
        vec![0.21, 0.12, 0.67],
    ])?;
    match bad.check_mlrp(&tol) {
        Ok(()) => println!("unexpectedly MLRP"),
        Err(e) => println!("MLRP violation: {e}"),
    }
    Ok(())
}
