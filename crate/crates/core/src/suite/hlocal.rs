//! Global laws on random h-local presentations, and oracle cross-checks.

use std::collections::BTreeSet;

use rand::RngCore;

use crate::error::Result;
use crate::format::FiniteFile;
use crate::gen::CaseGen;
use crate::hlocal::{DomainPresentation, GlobalIdeal, MaxClass, MaxId, PropKind};
use crate::oracle::{oracle_dual, v_closure_oracle};
use crate::semistar::local_catalog;
use crate::valuation::{Coord, Cut, Level, ValueGroup};

use super::shrink::shrink_case;
use super::{CheckResult, Counterexample, Suite, SuiteConfig, Tally};

pub(crate) const IDEALS_PER_CASE: usize = 5;

type Check = fn(&DomainPresentation, &[GlobalIdeal]) -> Result<bool>;

fn sorted(mut v: Vec<MaxId>) -> Vec<MaxId> {
    v.sort();
    v
}

/// The integral ideals of a case; the last entry is fractional.
fn integral(ideals: &[GlobalIdeal]) -> &[GlobalIdeal] {
    &ideals[..ideals.len() - 1]
}

fn pairs(ideals: &[GlobalIdeal]) -> impl Iterator<Item = (&GlobalIdeal, &GlobalIdeal)> {
    let is = integral(ideals);
    is.iter().zip(is.iter().cycle().skip(1))
}

fn factorization_certified(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for i in ideals {
        if !d.strong_factorize(i)?.certificate.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn factors_are_classified(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for i in integral(ideals) {
        let f = d.strong_factorize(i)?;
        let mut expected = Vec::new();
        for m in d.slots().keys() {
            if d.classify_max(i, m)? == MaxClass::InM {
                expected.push(m.clone());
            }
        }
        if sorted(f.factors) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prediction_matches(kind: PropKind, d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for (i, j) in pairs(ideals) {
        if kind == PropKind::Radical && i.is_unit() {
            continue;
        }
        let j = kind.is_binary().then_some(j);
        let predicted = d.predict_factorization(kind, i, j)?;
        let direct = d.strong_factorize(&d.direct(kind, i, j)?)?;
        if !predicted.certificate.holds() || !predicted.same_as(&direct) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn product_prediction(d: &DomainPresentation, is: &[GlobalIdeal]) -> Result<bool> {
    prediction_matches(PropKind::Product, d, is)
}

fn intersection_prediction(d: &DomainPresentation, is: &[GlobalIdeal]) -> Result<bool> {
    prediction_matches(PropKind::Intersection, d, is)
}

fn sum_prediction(d: &DomainPresentation, is: &[GlobalIdeal]) -> Result<bool> {
    prediction_matches(PropKind::Sum, d, is)
}

fn radical_prediction(d: &DomainPresentation, is: &[GlobalIdeal]) -> Result<bool> {
    prediction_matches(PropKind::Radical, d, is)
}

fn trace_prediction(d: &DomainPresentation, is: &[GlobalIdeal]) -> Result<bool> {
    prediction_matches(PropKind::Trace, d, is)
}

fn closure_product_prediction(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for (i, j) in pairs(ideals) {
        if !d.predict_closure_product(i, j)?.certificate.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sum_closure(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for (i, j) in pairs(ideals) {
        let lhs = d.v_closure(&d.sum(i, j)?)?;
        let rhs = d.sum(&d.v_closure(i)?, &d.v_closure(j)?)?;
        if lhs != rhs || !d.is_divisorial(&rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn radical_closure(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for i in integral(ideals) {
        if i.is_unit() {
            continue;
        }
        let iv = d.v_closure(i)?;
        if iv.is_unit() {
            continue;
        }
        let lhs = d.v_closure(&d.radical(i)?)?;
        let rhs = d.v_closure(&d.radical(&iv)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn trace_identity(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for i in integral(ideals) {
        let inv = d.vdual(i)?;
        let trace = d.product(i, &inv)?;
        let factors = d.frak_m(i);
        let rhs = d.times_maxima(&d.product(&d.v_closure(i)?, &inv)?, &factors)?;
        if trace != rhs {
            return Ok(false);
        }
        for m in &factors {
            let c = d.local(&trace, m)?;
            if !c.is_proper() {
                return Ok(false);
            }
            if c.group().rank() == 2 && c.is_subideal_of(&Cut::height_one_prime(c.group())?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn complementary(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for i in integral(ideals) {
        let iv = d.v_closure(i)?;
        let j = d.complementary_generators(i)?;
        let locally_principal = d.slots().keys().all(|m| d.local(&j, m).map(|c| c.is_principal()).unwrap_or(false));
        let inside = d.intersect(&j, &iv)? == j;
        if !locally_principal || !inside || d.sum(i, &j)? != iv || d.v_closure(&d.intersect(i, &j)?)? != j {
            return Ok(false);
        }
    }
    Ok(true)
}

fn stable_closure(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for (i, j) in pairs(ideals) {
        let lhs = d.v_closure(&d.intersect(i, j)?)?;
        let rhs = d.intersect(&d.v_closure(i)?, &d.v_closure(j)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn local_iff_global(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for i in ideals {
        if d.is_divisorial(i)? != d.is_locally_divisorial(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn closure_laws(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for (i, j) in pairs(ideals) {
        let iv = d.v_closure(i)?;
        let extensive = d.intersect(i, &iv)? == *i;
        let idempotent = d.v_closure(&iv)? == iv;
        let meet = d.v_closure(&d.intersect(i, j)?)?;
        let monotone = d.intersect(&meet, &iv)? == meet;
        if !(extensive && idempotent && monotone) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn decomposition(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> Result<bool> {
    for i in integral(ideals) {
        let dec = d.decompose_divisorial(i)?;
        let rebuilt = d.product(&d.product(&dec.l, &dec.i_prime)?, &dec.j)?;
        if rebuilt != d.v_closure(i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) const CHECKS: [(&str, Check); 15] = [
    ("strong factorization certified", factorization_certified),
    ("factors equal the nondivisorial classification", factors_are_classified),
    ("product prediction", product_prediction),
    ("intersection prediction", intersection_prediction),
    ("sum prediction", sum_prediction),
    ("radical prediction", radical_prediction),
    ("trace prediction", trace_prediction),
    ("closure of product prediction", closure_product_prediction),
    ("closure of sum is sum of closures", sum_closure),
    ("closure of radical", radical_closure),
    ("trace identity and minimal factors", trace_identity),
    ("complementary generators", complementary),
    ("closure stable under intersection", stable_closure),
    ("locally divisorial iff divisorial", local_iff_global),
    ("closure laws", closure_laws),
];

const EXTRA_CHECKS: [(&str, Check); 1] = [("divisorial decomposition", decomposition)];

pub(crate) fn case(config: &SuiteConfig, case: usize) -> (u64, DomainPresentation, Vec<GlobalIdeal>) {
    let seed = config.case_seed(2, case);
    let mut gen = CaseGen::new(seed);
    let d = gen.hlocal_presentation(8);
    let mut ideals: Vec<GlobalIdeal> = (0..IDEALS_PER_CASE).map(|_| gen.ideal(&d, true, 0.6)).collect();
    ideals.push(gen.ideal(&d, false, 0.6));
    (seed, d, ideals)
}

fn dump(d: &DomainPresentation, ideals: &[GlobalIdeal]) -> (String, Vec<String>) {
    let file = FiniteFile {
        domain: d.clone(),
        ideals: ideals.iter().enumerate().map(|(k, i)| (format!("I{k}"), i.clone())).collect(),
    };
    let text = file.to_string();
    let (head, body): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| !l.starts_with("ideal "));
    (head.join("\n"), body.iter().map(|l| l.trim_start_matches("ideal ").to_string()).collect())
}

fn shrunk_witness(
    check: Check,
    case: usize,
    seed: u64,
    d: &DomainPresentation,
    ideals: &[GlobalIdeal],
    detail: String,
) -> Counterexample {
    let fails = |d: &DomainPresentation, is: &[GlobalIdeal]| !matches!(check(d, is), Ok(true));
    let (d2, is2) = shrink_case(d, ideals, fails);
    let (presentation, ideals) = dump(&d2, &is2);
    Counterexample { case, case_seed: seed, presentation, ideals, detail }
}

/// A discrete presentation with at most three oracle variables.
fn oracle_case(gen: &mut CaseGen) -> DomainPresentation {
    let n = (gen.rng().next_u32() % 3 + 1) as usize;
    let mut slots = Vec::new();
    let mut dims = 0;
    for k in 0..n {
        let two = dims + 2 <= 3 && gen.rng().next_u32().is_multiple_of(2);
        let g = if two { ValueGroup::lex(Level::Z, Level::Z) } else { ValueGroup::z() };
        dims += g.rank();
        if dims > 3 {
            break;
        }
        slots.push((format!("M{}", k + 1), g));
    }
    DomainPresentation::hlocal(crate::gen::RADICAND, slots).unwrap()
}

/// An ideal with every boundary coordinate in `[-inner, inner]`.
fn oracle_ideal(gen: &mut CaseGen, d: &DomainPresentation, inner: i128, integral: bool) -> GlobalIdeal {
    let mut locals = Vec::new();
    for (m, g) in d.slots() {
        if gen.rng().next_u32().is_multiple_of(5) {
            continue;
        }
        let lo = if integral { 0 } else { -inner };
        let draw = |gen: &mut CaseGen| lo + (gen.rng().next_u32() % (inner - lo + 1) as u32) as i128;
        let mut boundary = vec![Coord::from(draw(gen))];
        if g.rank() == 2 {
            boundary.push(if gen.rng().next_u32().is_multiple_of(4) {
                Coord::MinusInf
            } else {
                Coord::from(draw(gen))
            });
        }
        let c = Cut::attained(g, boundary).expect("discrete boundary");
        if !integral || c.is_integral() {
            locals.push((m.clone(), c));
        }
    }
    d.ideal(locals).expect("h-local ideal")
}

fn oracle_agrees(d: &DomainPresentation, i: &GlobalIdeal, bound: i64) -> Result<bool> {
    Ok(oracle_dual(d, i, bound)?.ideal == d.vdual(i)? && v_closure_oracle(d, i, bound)? == d.v_closure(i)?)
}

/// Searches the catalogs of the shared slots for an ideal that is
/// divisorial at every slot but whose oracle closure is strictly larger.
pub fn find_local_nondivisorial_witness(d: &DomainPresentation, bound: i64) -> Result<Option<GlobalIdeal>> {
    let mut seen = BTreeSet::new();
    for p in d.shared_primes() {
        for m in &p.members {
            for c in local_catalog(d.group(m)?, d.radicand()) {
                if !c.is_proper() {
                    continue;
                }
                let j = d.contract_cut(m, &c)?;
                if !seen.insert(j.clone()) || !d.is_locally_divisorial(&j) {
                    continue;
                }
                match v_closure_oracle(d, &j, bound) {
                    Ok(jv) if jv != j => return Ok(Some(j)),
                    Ok(_) | Err(crate::AlgebraError::BoundExceeded(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(None)
}

/// Discrete non-h-local presentations used for the oracle witness search.
pub(crate) fn shared_fixtures() -> Vec<DomainPresentation> {
    let zz = ValueGroup::lex(Level::Z, Level::Z);
    let shared = |members: &[&str]| crate::hlocal::SharedPrime {
        id: "P".into(),
        members: members.iter().map(|s| s.to_string()).collect(),
    };
    vec![
        DomainPresentation::new(
            2,
            [("M".to_string(), zz.clone()), ("N".to_string(), zz.clone())].into_iter().collect(),
            vec![shared(&["M", "N"])],
        )
        .unwrap(),
        DomainPresentation::new(
            2,
            [("M".to_string(), zz.clone()), ("N".to_string(), zz.clone()), ("A".to_string(), ValueGroup::z())]
                .into_iter()
                .collect(),
            vec![shared(&["M", "N"])],
        )
        .unwrap(),
    ]
}

pub(crate) fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut tally = Tally::new(Suite::Hlocal);
    for k in 0..config.cases {
        let (seed, d, ideals) = case(config, k);
        for (name, check) in CHECKS.iter().chain(EXTRA_CHECKS.iter()) {
            let outcome = check(&d, &ideals);
            tally.record(name, outcome, |detail| shrunk_witness(*check, k, seed, &d, &ideals, detail));
        }
        let oseed = config.case_seed(3, k);
        let mut gen = CaseGen::new(oseed);
        let od = oracle_case(&mut gen);
        let integral = gen.rng().next_u32().is_multiple_of(2);
        let oi = oracle_ideal(&mut gen, &od, (config.bound / 3 - 1).max(0) as i128, integral);
        tally.record("closed forms agree with the oracle", oracle_agrees(&od, &oi, config.bound), |detail| {
            let (presentation, ideals) = dump(&od, std::slice::from_ref(&oi));
            Counterexample { case: k, case_seed: oseed, presentation, ideals, detail }
        });
    }
    for (k, d) in shared_fixtures().iter().enumerate() {
        let found = find_local_nondivisorial_witness(d, config.bound).map(|w| w.is_some());
        tally.record("shared prime breaks local-global divisoriality", found, |detail| {
            let (presentation, ideals) = dump(d, &[]);
            Counterexample { case: k, case_seed: 0, presentation, ideals, detail }
        });
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_fixtures_have_witnesses() {
        for d in shared_fixtures() {
            let w = find_local_nondivisorial_witness(&d, 6).unwrap().expect("witness");
            assert!(d.is_locally_divisorial(&w));
            assert!(!d.is_hlocal());
        }
    }
}
