//! Delay-bounded sequential decoding: the same pattern under increasing
//! delay budgets T, with a complete MDP code (optimal at every T) and a
//! complete 2-MDP code (optimal only up to T = 2).
//!
//!     cargo run --example low_delay_decoding

use convmdp::decoder::{decode_low_delay, encode_stream, ReceivedStream};
use convmdp::pattern::parse_pattern;
use convmdp::{ConvCode, Element, Field};
use std::sync::Arc;

fn main() {
    let pattern = parse_pattern("xx|x.|xx|..|..").unwrap();
    println!("pattern {}\n", pattern.render_grouped(2));

    let cases = [
        ("F13 complete MDP  [1 1 | 1 12 | 2 2]", "13", vec![vec![1, 1], vec![1, 12], vec![2, 2]]),
        ("F7 complete 2-MDP [1 1 | 1 2 | 5 5]", "7", vec![vec![1, 1], vec![1, 2], vec![5, 5]]),
    ];
    for (label, field, coeffs) in cases {
        let f: Arc<Field> = Arc::new(field.parse().unwrap());
        let code = ConvCode::from_values(f.clone(), 2, 1, 2, &coeffs).unwrap();
        let message: Vec<Vec<Element>> =
            (0..3).map(|v| vec![f.element(v + 1).unwrap()]).collect();
        let steps = encode_stream(&code, &message).unwrap();
        let stream = ReceivedStream::from_codeword(code, &steps, &pattern, true).unwrap();

        println!("{label}");
        for t in 0..=4 {
            let report = decode_low_delay(&stream, t, false).unwrap();
            println!(
                "  T = {t}: recovered {}, lost {:?}, max delay {:?}",
                report.recovered.len(),
                report.lost,
                report.max_delay()
            );
        }
        println!();
    }
    println!("the five erasures need delay 4; only the complete MDP code gets there");
}
