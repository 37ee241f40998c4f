//! Blackwell comparisons: the garbling feasibility program, recovered
//! witnesses, and the closed-form binary fast path.

use informativeness::order::{
    binary_alpha_beta, binary_from_vector, blackwell_geq_binary, compare_blackwell, Relation,
};
use informativeness::{Experiment, Tol};

fn main() -> informativeness::Result<()> {
    let tol = Tol::default();

    // General case: the comparison solves a feasibility program for a
    // garbling kernel M with f M = g.
    let f = Experiment::new(vec![
        vec![0.7, 0.2, 0.1],
        vec![0.2, 0.3, 0.5],
    ])?;
    let m = informativeness::experiment::StochasticMatrix::new(vec![
        vec![0.8, 0.2],
        vec![0.3, 0.7],
        vec![0.1, 0.9],
    ])?;
    let g = f.garble(&m)?;
    let cmp = compare_blackwell(&f, &g, &tol)?;
    println!("relation: {:?} (residual {:.3e})", cmp.relation, cmp.forward.residual);
    if let Some(w) = &cmp.forward.witness {
        println!("recovered kernel: {:?}", w.entries());
    }

    // Incomparable pair: each refuses to garble into the other.
    let h = Experiment::new(vec![
        vec![0.5, 0.4, 0.1],
        vec![0.5, 0.1, 0.4],
    ])?;
    let cmp2 = compare_blackwell(&f, &h, &tol)?;
    assert_eq!(cmp2.relation, Relation::Incomparable);
    println!("f vs h: {:?}", cmp2.relation);

    // Binary experiments: dominance is a two-coefficient hull membership,
    // no linear program needed.
    let fb = binary_from_vector(&[0.1, 0.8])?;
    let gb = binary_from_vector(&[0.3, 0.6])?;
    let chk = blackwell_geq_binary(&fb, &gb, &tol)?;
    println!(
        "binary hull: feasible = {}, (a, b) = ({:.4}, {:.4}), residual {:.2e}",
        chk.feasible, chk.a, chk.b, chk.residual
    );

    // Equivalent slope coordinates: f >= g iff alpha and beta both weakly
    // larger.
    let (af, bf) = binary_alpha_beta(&fb)?;
    let (ag, bg) = binary_alpha_beta(&gb)?;
    println!("(alpha, beta): f = ({af:.4}, {bf:.4}), g = ({ag:.4}, {bg:.4})");
    assert!(af >= ag && bf >= bg);
    Ok(())
}
