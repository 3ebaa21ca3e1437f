// Running the seeded property suites from code.

use prufer::suite::{run_suite, Suite, SuiteConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let config = SuiteConfig { seed: 7, cases: 50, ..SuiteConfig::default() };
    let report = run_suite(Suite::All, &config);
    print!("{}", report.to_table());
    assert!(report.passed);
    assert_eq!(report.to_json(), run_suite(Suite::All, &config).to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
