//! Runs the pseudo-involution axiom suite on every shipped ring instance
//! and shows the bar map and distinguished unit of each.
//!
//!     cargo run --example ring_axioms

use ou_kit::ring::{check_involution_axioms, Ring};

fn main() {
    for ring in Ring::shipped() {
        let lambda = ring.lambda();
        println!("ring `{ring}`: lambda = bar(1) = {lambda}");

        let one = ring.one();
        let sample = match ring.descriptor() {
            ou_kit::ring::RingDescriptor::Quadratic { .. }
            | ou_kit::ring::RingDescriptor::Twisted => ring.parse("2+3w").unwrap(),
            _ => ring.from_i64(7),
        };
        println!("  bar({sample}) = {}", ring.conj(&sample));
        println!("  bar(1) = {}, bar(lambda) = {}", ring.conj(&one), ring.conj(&lambda));

        let report = check_involution_axioms(&ring, 1000, 42);
        print!("{report}");
        assert!(report.all_passed());
        println!();
    }
    println!("all shipped instances satisfy the pseudo-involution axioms");
}
