//! Exact identities over Q(i): lemma on alternated wedges, presentations of
//! r_m, the Koszul identity, the Leray decomposition and the constants d_n.

use grasslog::exactcheck::{
    dn_closed_form, verify_dn_constant, verify_koszul_lemma, verify_lemma_xj, verify_lemma_yj, verify_leray_decomposition,
    verify_prop_rn_presentations,
};

fn main() -> grasslog::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let mut checks = vec![];
    for n in [2, 3] {
        checks.push(verify_lemma_xj(n, seed)?);
        checks.push(verify_lemma_yj(n, seed)?);
    }
    for m in [3, 4, 5] {
        checks.push(verify_prop_rn_presentations(m)?);
    }
    checks.push(verify_koszul_lemma()?);
    for n in [2, 3] {
        checks.push(verify_leray_decomposition(n, seed)?);
    }
    checks.push(verify_dn_constant(6)?);
    for c in &checks {
        println!(
            "{:<26} {:>5} cases  {}",
            c.name,
            c.cases,
            if c.passed { "ok" } else { "FAILED" }
        );
    }
    println!(
        "d_n for n = 1..6: {:?}",
        (1..=6).map(|n| dn_closed_form(n).to_string()).collect::<Vec<_>>()
    );
    Ok(())
}
