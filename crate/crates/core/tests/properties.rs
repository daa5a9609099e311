mod suite;

use suite::{ideal_calculus, regular_primes};

#[test]
fn ideal_calculus_suite() {
    ideal_calculus(500).unwrap();
}

#[test]
fn regular_primes_suite() {
    regular_primes(100).unwrap();
}
