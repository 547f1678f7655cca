//! Detectors and search checked against brute force.

mod common;

#[test]
fn rainbow_detector_matches_triple_loop() {
    common::check_rainbow(500, 11).unwrap();
}

#[test]
fn mono_detector_matches_brute_force() {
    common::check_mono(500, 12).unwrap();
}

#[test]
fn search_agrees_with_full_enumeration() {
    common::check_search_enumeration().unwrap();
}
