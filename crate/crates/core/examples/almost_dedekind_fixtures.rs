// Almost Dedekind domains built from monomial families: sums of divisorial
// ideals that are not divisorial, ideals without a factorization, and a
// divisorial ideal that is not locally divisorial.

use prufer::almost_dedekind::{run_fixture, FIXTURES};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in FIXTURES {
        let report = run_fixture(name, 8, 1)?;
        println!("{name} (K = {}):", report.truncation);
        for (check, ok) in &report.checks {
            println!("  {} {check}", if *ok { "ok  " } else { "FAIL" });
        }
        assert!(report.passed());
        assert_eq!(report.verdicts(), run_fixture(name, 10, 1)?.verdicts());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
