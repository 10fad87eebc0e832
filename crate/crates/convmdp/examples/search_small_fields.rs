//! Exhaustive searches over the small fields where (2,1,2) complete j-MDP
//! codes first appear, normalized to H_2 = [1 1]. Prints the solution count
//! and percentage per field and window index, plus the first few solutions.
//!
//!     cargo run --example search_small_fields

use convmdp::search::{exhaustive_search, SearchSpec};
use convmdp::Field;
use std::sync::Arc;

fn main() {
    println!("{:<6} {:>2} {:>10} {:>9} {:>9}  first solutions (a,b,c,d)", "field", "j", "candidates", "count", "percent");
    let cases = [
        ("2", 1), ("3", 1), ("2^2", 1), ("5", 1), ("2^3", 1),
        ("5", 2), ("7", 2), ("2^3", 2),
        ("2^3", 3), ("11", 3), ("13", 3), ("2^4", 3),
        ("13", 4), ("2^4", 4),
    ];
    for (field, j) in cases {
        let f: Arc<Field> = Arc::new(field.parse().unwrap());
        let spec = SearchSpec::exhaustive(f, 2, 1, 2, j);
        let report = exhaustive_search(&spec, 4).unwrap();
        let preview: Vec<String> = report.solutions.iter().take(3).map(|s| format!("{s:?}")).collect();
        println!(
            "{:<6} {:>2} {:>10} {:>9} {:>8.3}%  {}",
            field,
            j,
            report.candidates,
            report.count,
            report.percentage,
            preview.join(" ")
        );
    }
    println!("\nzero rows are genuine non-existence results for those fields");
}
