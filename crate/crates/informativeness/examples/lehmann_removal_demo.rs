//! The PP-plot rotation: removing the area between a convex curve and one
//! of its chords while staying MLRP throughout, and the full Lehmann path
//! built from such removals.

use informativeness::experiment::DirectionKind;
use informativeness::cost::{Cost, Prior, Psi};
use informativeness::order::{lehmann_geq_mlrp, pp_curve};
use informativeness::path::{lehmann_path, lehmann_removal, verify_path};
use informativeness::{Experiment, Tol};

fn main() -> informativeness::Result<()> {
    let tol = Tol::default();

    // One removal: flatten the dip of the pair-(0,1) curve below the chord
    // joining cumulative points 1 and 4.
    let f = Experiment::new(vec![
        vec![0.40, 0.30, 0.20, 0.10],
        vec![0.05, 0.15, 0.30, 0.50],
    ])?;
    println!("before: {:?}", pp_curve(&f, 0)?.points);
    let (after, path) = lehmann_removal(&f, 0, 1, 4, &tol, 8)?;
    println!("after:  {:?}", pp_curve(&after, 0)?.points);
    println!(
        "removal path: {} steps, every step MLRP and order-nonincreasing: {}",
        path.steps.len(),
        verify_path(&path, &[], &tol).ok
    );

    // Full path: iterate segment extension, splitting, and removal for each
    // adjacent state pair until the target's curves are reproduced.
    let f = Experiment::new(vec![
        vec![0.6, 0.3, 0.1],
        vec![0.2, 0.3, 0.5],
        vec![0.1, 0.2, 0.7],
    ])?;
    let d1 = f.make_direction(DirectionKind::ReverseUp { j: 0, l: 1 })?;
    let mid = f.step(&d1, 0.6 * d1.max_step)?;
    let d2 = mid.make_direction(DirectionKind::ReverseDown { j: 2, l: 2 })?;
    let g = mid.step(&d2, 0.5 * d2.max_step)?;
    assert!(lehmann_geq_mlrp(&f, &g, &tol)?);

    let p = lehmann_path(&f, &g, &tol, 8)?;
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
    println!(
        "full Lehmann path: {} steps, verified with entropy and 2-norm costs: {}",
        report.steps, report.ok
    );
    Ok(())
}
