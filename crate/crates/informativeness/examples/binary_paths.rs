//! Constructive binary paths: the two-segment Blackwell path and the exact
//! reverse-replacement decomposition for the Lehmann order.

use informativeness::cost::{Cost, Prior};
use informativeness::order::binary_from_vector;
use informativeness::path::{
    binary_blackwell_path, binary_lehmann_decomposition, binary_lehmann_path, verify_path,
};
use informativeness::Tol;

fn main() -> informativeness::Result<()> {
    let tol = Tol::default();

    // Blackwell: g inside the hull of f; the path scales toward one pooled
    // corner, then mixes toward the other.
    let f = binary_from_vector(&[0.05, 0.85])?;
    let g = binary_from_vector(&[0.30, 0.65])?;
    let p = binary_blackwell_path(&f, &g, &tol, 8)?;
    println!("Blackwell path: {} steps", p.steps.len());
    let entropy = Cost::entropy(Prior::uniform(2));
    let report = verify_path(&p, &[entropy.clone()], &tol);
    println!("verified (entropy nonincreasing): {}", report.ok);

    // Lehmann: dominance decomposes into finitely many truncated reverse
    // signal replacements whose composition is exact.
    let f = binary_from_vector(&[0.10, 0.40, 0.70, 0.95])?;
    let g = binary_from_vector(&[0.20, 0.45, 0.70, 0.90])?;
    for step in binary_lehmann_decomposition(&f, &g, &tol)? {
        println!(
            "  move {} in states {} with eps = {:.6}",
            if step.up { "low -> high" } else { "high -> low" },
            if step.up {
                format!("0..={}", step.l)
            } else {
                format!("{}..", step.l)
            },
            step.eps
        );
    }
    let p = binary_lehmann_path(&f, &g, &tol, 8)?;
    let report = verify_path(&p, &[entropy], &tol);
    println!(
        "Lehmann path: {} steps, verified: {}, endpoint error {:?}",
        p.steps.len(),
        report.ok,
        p.steps.last().unwrap().experiment.max_abs_diff(&g)
    );
    Ok(())
}
