//! The closed-form families of (2,1,2) complete MDP codes over F13 and F16,
//! checked member by member and as whole sets against the exhaustive search.
//!
//!     cargo run --example verify_families

use convmdp::minors::is_complete_j_mdp;
use convmdp::search::{family_f13, family_f16, verify_family};
use convmdp::Field;
use std::sync::Arc;

fn main() {
    let f13: Arc<Field> = Arc::new("13".parse().unwrap());
    let one = f13.one();
    println!("sample family members over F13 (β = γ = 1):");
    for (i1, jj) in [(0, 0), (0, 1), (5, 0)] {
        let code = family_f13(&f13, one, one, i1, jj).unwrap();
        let display: Vec<Vec<u16>> = code.coeffs_high_first().iter().map(|m| m.values()).collect();
        let holds = is_complete_j_mdp(&code, 4).unwrap().holds;
        println!("  i1={i1} jj={jj}: {display:?} complete MDP = {holds}");
    }

    let f16: Arc<Field> = Arc::new("2^4".parse().unwrap());
    let one16 = f16.one();
    println!("\nsample family members over F16 (β = γ = 1):");
    for (i1, kk, jj) in [(0, 1, 0), (2, 8, 1)] {
        let code = family_f16(&f16, one16, one16, i1, kk, jj).unwrap();
        let display: Vec<String> = code
            .coeffs_high_first()
            .iter()
            .flat_map(|m| m.values())
            .map(|v| f16.alpha_notation(f16.element(v as u64).unwrap()))
            .collect();
        let holds = is_complete_j_mdp(&code, 4).unwrap().holds;
        println!("  i1={i1} k={kk} jj={jj}: [{}] complete MDP = {holds}", display.join(", "));
    }

    println!("\nfull verification against the exhaustive search:");
    for f in [&f13, &f16] {
        let report = verify_family(f, 4).unwrap();
        println!(
            "  GF({}): sets equal = {}, normalized members = {}, distinct full values = {} (expected {})",
            f.q(),
            report.sets_equal,
            report.normalized_family_size,
            report.full_value_count,
            report.expected_full_count
        );
        assert!(report.ok);
    }
}
