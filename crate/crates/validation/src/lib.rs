//! Holds the `acceptance` test target, which checks `chiralwalk-core`
//! against published reference values and prints one PASS/FAIL line per
//! check. Run it with `cargo test --release -p chiralwalk-validation`.
