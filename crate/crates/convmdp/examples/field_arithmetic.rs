//! Tour of the finite-field layer: construction, defaults, table-backed
//! arithmetic and the canonical integer encoding.
//!
//!     cargo run --example field_arithmetic

use convmdp::Field;

fn main() {
    // prime field: elements are residues, the primitive element is found
    // automatically (2 generates F13*)
    let f13 = Field::new(13, 1, None).unwrap();
    println!("GF(13): primitive element {}", f13.primitive().value());
    let two = f13.element(2).unwrap();
    let seven = f13.element(7).unwrap();
    println!("  2 * 7 = {}", f13.mul(two, seven).value());
    println!("  2^-1  = {}", f13.inv(two).unwrap().value());

    // extension field: default modulus is the lexicographically smallest
    // irreducible polynomial (x^4 + x + 1 for GF(16))
    let f16 = Field::new(2, 4, None).unwrap();
    println!("\nGF(16) as {}", f16);
    let alpha = f16.alpha();
    for e in 0..=15 {
        let v = f16.pow(alpha, e).unwrap();
        println!("  α^{e:<2} = {:<10} (value {})", f16.alpha_notation(v), v.value());
    }

    // fields parse from the same text form they display
    let f128: Field = "2^7/131".parse().unwrap();
    println!("\nparsed {} with q = {}", f128, f128.q());
    let a = f128.element(72).unwrap(); // α^6 + α^3
    let b = f128.element(19).unwrap(); // α^4 + α + 1
    println!(
        "  ({}) * ({}) = {}",
        f128.alpha_notation(a),
        f128.alpha_notation(b),
        f128.alpha_notation(f128.mul(a, b))
    );
}
