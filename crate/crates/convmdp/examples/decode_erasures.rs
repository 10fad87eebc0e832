//! Sliding-window decoding of two instructive erasure patterns.
//!
//! The first pattern hits a (2,1,2) code that can only handle one erasure
//! per length-2 window: the isolated erasures come back, a length-2 burst is
//! lost, and decoding restarts cleanly afterwards. The second pattern has
//! six erasures in its first ten symbols, too many for any forward-only
//! (2,1,2) decoder, yet a complete 1-MDP code corrects all of it by mixing
//! forward, backward and restart windows.
//!
//!     cargo run --example decode_erasures

use convmdp::decoder::{decode_oracle, decode_windowed, encode_stream, ReceivedStream};
use convmdp::pattern::parse_pattern;
use convmdp::{ConvCode, Element, Field};
use std::sync::Arc;

fn show(stream: &ReceivedStream, report: &convmdp::decoder::DecodeReport) {
    println!("  erased symbols:    {:?}", stream.erased_indices());
    println!(
        "  recovered (delay): {:?}",
        report.recovered.iter().map(|r| (r.index, r.delay)).collect::<Vec<_>>()
    );
    println!("  lost:              {:?}", report.lost);
}

fn main() {
    let f5: Arc<Field> = Arc::new("5".parse().unwrap());

    // one erasure per window is fine, the burst at step 3 is not
    let code = ConvCode::from_values(f5.clone(), 2, 1, 2, &[vec![1, 1], vec![1, 2], vec![1, 1]]).unwrap();
    let pattern = parse_pattern("x.|.x|x.|xx|x.|..|..|x.|.x").unwrap();
    let message: Vec<Vec<Element>> = (0..7).map(|v| vec![f5.element(v % 5).unwrap()]).collect();
    let steps = encode_stream(&code, &message).unwrap();
    let stream = ReceivedStream::from_codeword(code, &steps, &pattern, true).unwrap();
    println!("complete 0-MDP code, pattern {}", pattern.render_grouped(2));
    let report = decode_windowed(&stream, None).unwrap();
    show(&stream, &report);
    let oracle = decode_oracle(&stream).unwrap();
    println!("  (the unlimited-delay oracle recovers {} of 8)\n", oracle.recovered.len());

    // the complete 1-MDP code corrects a pattern that defeats forward-only
    // decoding in both directions
    let code = ConvCode::from_values(f5.clone(), 2, 1, 2, &[vec![1, 1], vec![1, 2], vec![1, 2]]).unwrap();
    let pattern = parse_pattern("xx|x.|.x|x.|x.|x.|..|..|x.|.x|x.|x.|xx").unwrap();
    let message: Vec<Vec<Element>> = (0..11).map(|v| vec![f5.element((2 * v + 1) % 5).unwrap()]).collect();
    let steps = encode_stream(&code, &message).unwrap();
    let stream = ReceivedStream::from_codeword(code, &steps, &pattern, true).unwrap();
    println!("window-level-1 decoding, pattern {}", pattern.render_grouped(2));
    let report = decode_windowed(&stream, Some(1)).unwrap();
    show(&stream, &report);
    assert!(report.is_fully_recovered());
    println!("  all {} erasures recovered", report.recovered.len());
}
