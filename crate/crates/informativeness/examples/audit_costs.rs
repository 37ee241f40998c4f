//! Monotonicity audits: seeded randomized consistency checks for a cost,
//! a genuine counterexample, and the pointwise MRIT sandwich for binary
//! costs.

use informativeness::audit::{audit_blackwell, audit_lehmann, binary_mrit_check, AuditConfig};
use informativeness::cost::{BinaryFamily, Cost, Prior};
use informativeness::order::binary_from_vector;
use informativeness::Tol;

fn main() -> informativeness::Result<()> {
    let tol = Tol::default();
    let cfg = AuditConfig {
        seed: 42,
        budget: 50,
        states: 3,
        signals: 3,
        tol: tol.clone(),
    };

    // Shannon mutual information is monotone in both orders: the audit can
    // only ever report consistency, never a proof.
    let entropy = Cost::entropy(Prior::new(vec![0.2, 0.5, 0.3])?);
    let rb = audit_blackwell(&entropy, &cfg)?;
    let rl = audit_lehmann(&entropy, &cfg)?;
    println!("entropy, Blackwell: {} ({} checks)", rb.verdict, rb.checks);
    println!("entropy, Lehmann:   {} ({} checks)", rl.verdict, rl.checks);

    // A non-monotone binary cost: the audit finds a concrete witness.
    let c4 = Cost::BinaryExample {
        which: BinaryFamily::C4,
    };
    let cfg2 = AuditConfig {
        states: 2,
        signals: 2,
        ..cfg
    };
    let r = audit_blackwell(&c4, &cfg2)?;
    println!("C4, Blackwell: {} ({} violations)", r.verdict, r.violations.len());
    if let Some(v) = r.violations.first() {
        println!("  first witness: {} ({})", v.check, v.detail);
    }

    // MRIT sandwich at a point: the implied marginal rate of
    // informativeness transformation must lie between the two likelihood
    // ratio bounds.
    let f = binary_from_vector(&[0.5, 0.6])?;
    for which in [BinaryFamily::C3, BinaryFamily::C4] {
        let cost = Cost::BinaryExample { which };
        let chk = binary_mrit_check(&cost, &f, &tol)?;
        println!(
            "{which:?} at (0.5, 0.6): rate {:.3}, bounds [{:.3}, {:.3}], ok = {}",
            chk.rate, chk.lower, chk.upper, chk.ok
        );
    }
    Ok(())
}
