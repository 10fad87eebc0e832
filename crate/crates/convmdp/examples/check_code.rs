//! Structural property checks on known small-field codes: complete j-MDP
//! levels, MDP/reverse MDP, resultants and left-primeness.
//!
//!     cargo run --example check_code

use convmdp::minors::{detect_complete_level, is_complete_j_mdp, is_mdp, is_reverse_mdp};
use convmdp::{ConvCode, Field};
use std::sync::Arc;

fn main() {
    let codes = [
        ("F5  [1 1 | 1 2 | 3 3]", "5", vec![vec![1, 1], vec![1, 2], vec![3, 3]]),
        ("F7  [1 1 | 1 2 | 5 5]", "7", vec![vec![1, 1], vec![1, 2], vec![5, 5]]),
        ("F8  [1 1 | 1 α | α+1 α+1]", "2^3", vec![vec![1, 1], vec![1, 2], vec![3, 3]]),
        ("F13 [1 1 | 1 12 | 2 2]", "13", vec![vec![1, 1], vec![1, 12], vec![2, 2]]),
        ("F16 [1 1 | 1 α³ | α² α²]", "2^4", vec![vec![1, 1], vec![1, 8], vec![4, 4]]),
    ];
    for (label, field, coeffs) in codes {
        let f: Arc<Field> = Arc::new(field.parse().unwrap());
        let code = ConvCode::from_values(f, 2, 1, 2, &coeffs).unwrap();
        let level = detect_complete_level(&code);
        let mdp = is_mdp(&code).holds;
        let reverse = is_reverse_mdp(&code).holds;
        let left_prime = code.is_left_prime();
        println!("{label}");
        println!(
            "  complete level {:?}, MDP {mdp}, reverse MDP {reverse}, left prime {left_prime}, resultant {}",
            level,
            code.resultant().unwrap().value()
        );
        for j in 0..=code.params().l() {
            let report = is_complete_j_mdp(&code, j).unwrap();
            println!(
                "  complete {j}-MDP: {:<5} ({} minors checked{})",
                report.holds,
                report.minors_checked,
                report
                    .counterexample_columns
                    .map(|c| format!(", first zero minor at columns {c:?}"))
                    .unwrap_or_default()
            );
        }
        println!();
    }
}
