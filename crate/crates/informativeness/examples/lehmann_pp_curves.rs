//! Lehmann comparisons for MLRP experiments: PP curves, the containment
//! test, the independent quantile oracle, and a pair that is
//! Lehmann-ordered but not Blackwell-ordered.

use informativeness::experiment::DirectionKind;
use informativeness::order::{
    blackwell_geq, lehmann_geq_mlrp, lehmann_oracle_quantile, lehmann_refute_mlrp, pp_curve,
    ORACLE_GRID,
};
use informativeness::{Experiment, Tol};

fn main() -> informativeness::Result<()> {
    let tol = Tol::default();

    let f = Experiment::new(vec![
        vec![0.6, 0.3, 0.1],
        vec![0.2, 0.3, 0.5],
        vec![0.1, 0.2, 0.7],
    ])?;

    // The PP curve of adjacent states (i, i+1): cumulative likelihood of
    // state i on the x-axis against state i+1 on the y-axis. MLRP makes it
    // convex.
    for i in 0..f.states() - 1 {
        let c = pp_curve(&f, i)?;
        println!("pair ({i}, {}): vertices {:?}", i + 1, c.points);
    }

    // A dominated experiment built by an admissible reverse replacement.
    let dir = f.make_direction(DirectionKind::ReverseUp { j: 0, l: 1 })?;
    let g = f.step(&dir, 0.8 * dir.max_step)?;
    println!("f >= g (Lehmann): {}", lehmann_geq_mlrp(&f, &g, &tol)?);
    println!("g >= f (Lehmann): {}", lehmann_geq_mlrp(&g, &f, &tol)?);
    if let Some(r) = lehmann_refute_mlrp(&g, &f, &tol)? {
        println!(
            "refutation: pair ({}, {}), vertex ({:.4}, {:.4}) lies {:.2e} below",
            r.state,
            r.state + 1,
            r.vertex.0,
            r.vertex.1,
            r.gap
        );
    }

    // The quantile-function oracle decides the same relation independently.
    let oracle = lehmann_oracle_quantile(&f, &g, &tol, ORACLE_GRID)?;
    println!("quantile oracle agrees: {oracle}");

    // Lehmann dominance does not imply Blackwell dominance: a truncated
    // reverse replacement loses Lehmann information but is not a garbling.
    let fb = Experiment::new(vec![
        vec![0.9, 0.1],
        vec![0.5, 0.5],
        vec![0.1, 0.9],
    ])?;
    let d = fb.make_direction(DirectionKind::ReverseUp { j: 0, l: 0 })?;
    let gb = fb.step(&d, 0.5 * d.max_step)?;
    println!(
        "truncated reverse step: Lehmann {} but Blackwell {}",
        lehmann_geq_mlrp(&fb, &gb, &tol)?,
        blackwell_geq(&fb, &gb, &tol)?.feasible
    );
    Ok(())
}
