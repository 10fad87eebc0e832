//! Column distance profiles computed by exhaustive enumeration of the
//! truncated-codeword space, against the bound d_j <= (n-k)(j+1)+1.
//!
//!     cargo run --example column_distances

use convmdp::minors::{column_distance_oracle, is_jth_distance_maximal};
use convmdp::{ConvCode, Field};
use std::sync::Arc;

fn main() {
    let cases = [
        ("F13 complete MDP", "13", vec![vec![1, 1], vec![1, 12], vec![2, 2]]),
        ("F7 complete 2-MDP", "7", vec![vec![1, 1], vec![1, 2], vec![5, 5]]),
        ("F5 complete 0-MDP only", "5", vec![vec![1, 1], vec![1, 2], vec![1, 1]]),
    ];
    for (label, field, coeffs) in cases {
        let f: Arc<Field> = Arc::new(field.parse().unwrap());
        let code = ConvCode::from_values(f, 2, 1, 2, &coeffs).unwrap();
        println!("{label}:");
        for j in 0..=code.params().l() {
            let d = column_distance_oracle(&code, j).unwrap();
            let bound = j + 2;
            let maximal = is_jth_distance_maximal(&code, j).holds;
            println!(
                "  d_{j} = {d} (bound {bound}){}",
                if maximal { "  <- maximal" } else { "" }
            );
            assert_eq!(maximal, d == bound);
        }
        println!();
    }
}
