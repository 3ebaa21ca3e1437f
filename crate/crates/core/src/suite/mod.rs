//! Property suites over seeded random cases, with shrinking and reports.

mod examples;
mod hlocal;
mod local;
mod semistar;
mod shrink;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::almost_dedekind::FixtureReport;
use crate::error::Result;

pub use hlocal::find_local_nondivisorial_witness;
pub use shrink::shrink_case;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Local,
    Hlocal,
    Semistar,
    Examples,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["local", "hlocal", "semistar", "examples", "all"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "local" => Ok(Suite::Local),
            "hlocal" => Ok(Suite::Hlocal),
            "semistar" => Ok(Suite::Semistar),
            "examples" => Ok(Suite::Examples),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}`, expected one of {}", Suite::NAMES.join(", "))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Local, Suite::Hlocal, Suite::Semistar, Suite::Examples, Suite::All]
            .iter()
            .position(|s| s == self)
            .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub truncation: u32,
    pub bound: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, cases: 100, truncation: 8, bound: crate::oracle::DEFAULT_BOUND }
    }
}

impl SuiteConfig {
    /// Seed of one case, so that a failing case can be replayed alone.
    pub fn case_seed(&self, salt: u64, case: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(salt.wrapping_mul(0xBF58_476D_1CE4_E5B9))
            .wrapping_add(case as u64)
    }
}

/// A failing case, minimized when the suite knows how.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub case_seed: u64,
    pub presentation: String,
    pub ideals: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub suite: Suite,
    pub config: SuiteConfig,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub fixtures: Vec<FixtureReport>,
}

impl RunReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!(
                "{:<9} {:<width$}  {:>6} cases  {}\n",
                c.suite.to_string(),
                c.name,
                c.cases,
                if c.passed { "ok".to_string() } else { format!("FAILED ({})", c.failures) },
            ));
            if let Some(cx) = &c.counterexample {
                out.push_str(&format!("    case {} (seed {}): {}\n", cx.case, cx.case_seed, cx.detail));
                for line in cx.presentation.lines() {
                    out.push_str(&format!("    | {line}\n"));
                }
                for i in &cx.ideals {
                    out.push_str(&format!("    ideal {i}\n"));
                }
            }
        }
        for f in &self.fixtures {
            out.push_str(&format!(
                "fixture   {} at K={}: {}\n",
                f.name,
                f.truncation,
                if f.passed() { "ok" } else { "FAILED" }
            ));
            for (name, ok) in &f.checks {
                out.push_str(&format!("    {} {name}\n", if *ok { "ok  " } else { "FAIL" }));
            }
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

/// Accumulates verdicts per named check, keeping the first counterexample.
pub(crate) struct Tally {
    suite: Suite,
    checks: Vec<CheckResult>,
}

impl Tally {
    pub(crate) fn new(suite: Suite) -> Self {
        Tally { suite, checks: Vec::new() }
    }

    fn entry(&mut self, name: &str) -> &mut CheckResult {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.checks.push(CheckResult {
                    suite: self.suite,
                    name: name.to_string(),
                    cases: 0,
                    failures: 0,
                    passed: true,
                    counterexample: None,
                });
                self.checks.len() - 1
            }
        };
        &mut self.checks[pos]
    }

    /// Records one verdict; `witness` runs only for the first failure.
    pub(crate) fn record(&mut self, name: &str, outcome: Result<bool>, witness: impl FnOnce(String) -> Counterexample) {
        let e = self.entry(name);
        e.cases += 1;
        let detail = match outcome {
            Ok(true) => return,
            Ok(false) => "property violated".to_string(),
            Err(err) => format!("error: {err}"),
        };
        e.failures += 1;
        e.passed = false;
        if e.counterexample.is_none() {
            e.counterexample = Some(witness(detail));
        }
    }

    pub(crate) fn finish(self) -> Vec<CheckResult> {
        self.checks
    }
}

/// Runs a suite. Failures are verdicts in the report, never errors.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> RunReport {
    let mut checks = Vec::new();
    let mut fixtures = Vec::new();
    let parts: &[Suite] = match suite {
        Suite::All => &[Suite::Local, Suite::Hlocal, Suite::Semistar, Suite::Examples],
        _ => std::slice::from_ref(&suite),
    };
    for part in parts {
        match part {
            Suite::Local => checks.extend(local::run(config)),
            Suite::Hlocal => checks.extend(hlocal::run(config)),
            Suite::Semistar => checks.extend(semistar::run(config)),
            Suite::Examples => {
                let (c, f) = examples::run(config);
                checks.extend(c);
                fixtures.extend(f);
            }
            Suite::All => unreachable!(),
        }
    }
    let passed = checks.iter().all(|c| c.passed) && fixtures.iter().all(FixtureReport::passed);
    RunReport { suite, config: *config, passed, checks, fixtures }
}
