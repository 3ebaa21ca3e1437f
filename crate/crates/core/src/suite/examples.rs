//! Named counterexample fixtures and almost Dedekind laws.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::almost_dedekind::{
    construct_arbitrary, is_sharp, run_fixture, weak_factorize, ADIdeal, ADMax, FamilyPresentation, FixtureReport,
    Monomial, RewriteOrder, StepKind, Symbol, FIXTURES,
};
use crate::error::Result;

use super::{CheckResult, Counterexample, Suite, SuiteConfig, Tally};

/// Every `(r, s)` with `0 ≤ s ≤ r ≤ max` on each of `families` unit
/// families; weak factorization must return `t = r - s`.
pub fn weak_factorization_grid(families: u32, max: u32, truncation: u32) -> Result<(usize, Vec<String>)> {
    let p = FamilyPresentation::uniform(StepKind::Unit, families, truncation);
    let pairs: Vec<(u32, u32)> = (0..=max).flat_map(|r| (0..=r).map(move |s| (r, s))).collect();
    let mut failures = Vec::new();
    let mut count = 0;
    let mut index = vec![0usize; families as usize];
    loop {
        let targets: BTreeMap<u32, (u32, u32)> =
            index.iter().enumerate().map(|(n, &k)| (n as u32 + 1, pairs[k])).collect();
        let i = construct_arbitrary(&p, &targets)?;
        let w = weak_factorize(&p, &i)?;
        let expected: BTreeMap<u32, i128> =
            targets.iter().filter(|(_, (r, s))| r > s).map(|(n, (r, s))| (*n, (*r - *s) as i128)).collect();
        if w.exponents != expected || !w.certified || !w.principal_values_agree {
            failures.push(format!("{targets:?}"));
        }
        count += 1;
        let mut pos = 0;
        loop {
            if pos == index.len() {
                return Ok((count, failures));
            }
            index[pos] += 1;
            if index[pos] < pairs.len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, p: &FamilyPresentation, k: u32) -> Monomial {
    let mut m = Monomial::one();
    for _ in 0..rng.gen_range(1..=4) {
        let f = p.families()[rng.gen_range(0..p.families().len())];
        let first = f.kind.first_index();
        let s = if rng.gen_bool(0.5) {
            Symbol::X { family: f.id, index: rng.gen_range(first..k) }
        } else {
            Symbol::T { family: f.id, level: rng.gen_range(0..=k) }
        };
        m = m.times(s, rng.gen_range(-2..=3));
    }
    m
}

fn rewriting_confluent(p: &FamilyPresentation, m: &Monomial, k: u32) -> Result<bool> {
    let a = m.rewrite_to_level(p, k, RewriteOrder::LowestFirst)?;
    let b = m.rewrite_to_level(p, k, RewriteOrder::HighestFirst)?;
    if a != b {
        return Ok(false);
    }
    for max in p.maxima(k) {
        if m.valuation_at(p, max, k)? != m.valuation_at(p, max, k + 2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn run(config: &SuiteConfig) -> (Vec<CheckResult>, Vec<FixtureReport>) {
    let mut tally = Tally::new(Suite::Examples);
    let k = config.truncation;
    let mut reports = Vec::new();
    let note = |case: usize, presentation: String, detail: String| Counterexample {
        case,
        case_seed: config.seed,
        presentation,
        ideals: Vec::new(),
        detail,
    };
    for (n, name) in FIXTURES.iter().enumerate() {
        let here = run_fixture(name, k, config.seed);
        let there = run_fixture(name, k + 2, config.seed);
        let stable = match (&here, &there) {
            (Ok(a), Ok(b)) => Ok(a.verdicts() == b.verdicts()),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        tally.record("fixture verdicts stable under truncation", stable, |d| note(n, name.to_string(), d));
        match here {
            Ok(r) => reports.push(r),
            Err(e) => tally.record("fixture runs", Err(e), |d| note(n, name.to_string(), d)),
        }
    }
    let grid = weak_factorization_grid(3, 4, k).map(|(_, f)| f.is_empty());
    tally.record("weak factorization exponents", grid, |d| note(0, "3 unit families".into(), d));
    for kind in [StepKind::Unit, StepKind::Dyadic] {
        let p = FamilyPresentation::uniform(kind, 2, k);
        let limit_never_divisorial_nor_sharp = (|| -> Result<bool> {
            for f in p.families() {
                let m = ADIdeal::limit_maximal(f.id).profile(&p)?;
                if m.is_divisorial()? || is_sharp(&p, ADMax::Limit { family: f.id }, k)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        tally.record("limit maxima neither divisorial nor sharp", limit_never_divisorial_nor_sharp, |d| {
            note(0, format!("2 {kind} families"), d)
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.case_seed(5, 0));
    let p = FamilyPresentation::new(
        vec![
            crate::almost_dedekind::Family { id: 1, kind: StepKind::Unit },
            crate::almost_dedekind::Family { id: 2, kind: StepKind::Dyadic },
        ],
        k,
    )
    .expect("valid families");
    for case in 0..config.cases {
        let m = random_monomial(&mut rng, &p, k);
        tally.record("rewriting confluent and truncation independent", rewriting_confluent(&p, &m, k), |d| {
            Counterexample {
                case,
                case_seed: config.case_seed(5, 0),
                presentation: "family 1 unit\nfamily 2 dyadic".into(),
                ideals: vec![m.to_string()],
                detail: d,
            }
        });
    }
    (tally.finish(), reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let (count, failures) = weak_factorization_grid(2, 2, 6).unwrap();
        assert_eq!(count, 36);
        assert!(failures.is_empty(), "{failures:?}");
    }
}
