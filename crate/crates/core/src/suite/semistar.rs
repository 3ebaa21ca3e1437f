//! Laws of the stable closure and the five equivalent conditions.

use rand::RngCore;

use crate::error::Result;
use crate::gen::CaseGen;
use crate::hlocal::{DomainPresentation, GlobalIdeal};
use crate::semistar::{check_pr2, vbar_closure, LocalizingSystemView};
use crate::valuation::{Level, ValueGroup};

use super::{CheckResult, Counterexample, Suite, SuiteConfig, Tally};

fn contained(d: &DomainPresentation, a: &GlobalIdeal, b: &GlobalIdeal) -> Result<bool> {
    Ok(d.intersect(a, b)? == *a)
}

fn pair_laws(
    d: &DomainPresentation,
    pr2: &Result<bool>,
    e: &GlobalIdeal,
    f: &GlobalIdeal,
) -> Vec<(&'static str, Result<bool>)> {
    let view = LocalizingSystemView::new(d);
    let in_fv = |i: &GlobalIdeal| -> Result<bool> { Ok(d.v_closure(i)?.is_unit()) };
    let e_int = d.intersect(e, &d.unit());
    vec![
        ("vbar equals v on h-local presentations", (|| Ok(vbar_closure(d, e)? == d.v_closure(e)?))()),
        (
            "vbar stable under intersection",
            (|| {
                let lhs = vbar_closure(d, &d.intersect(e, f)?)?;
                Ok(lhs == d.intersect(&vbar_closure(d, e)?, &vbar_closure(d, f)?)?)
            })(),
        ),
        ("vbar below v", (|| contained(d, &vbar_closure(d, e)?, &d.v_closure(e)?))()),
        (
            "F^v upward closed and multiplicative",
            (|| {
                let e = e_int.clone()?;
                let ef = d.product(&e, f)?;
                let sum = d.sum(&e, f)?;
                let upward = !in_fv(&e)? || in_fv(&sum)?;
                let mult = !(in_fv(&e)? && in_fv(f)?) || in_fv(&ef)?;
                Ok(upward && mult)
            })(),
        ),
        (
            "F^v spectral whenever the pr2 conditions hold",
            (|| {
                let v = view?;
                let e = e_int.clone()?;
                let agree = v.contains(&e)? == v.spectral_contains(&e)? && v.spectral_contains(f)? == in_fv(f)?;
                Ok(agree || !pr2.clone()?)
            })(),
        ),
    ]
}

fn small_presentation(gen: &mut CaseGen) -> DomainPresentation {
    gen.hlocal_presentation(3)
}

/// Fixed presentations with known verdicts.
pub(crate) fn pr2_fixtures() -> Vec<(&'static str, DomainPresentation, bool)> {
    use Level::{Q, Z};
    let d = |slots: Vec<(&str, ValueGroup)>| DomainPresentation::hlocal(2, slots).unwrap();
    vec![
        ("all Z", d(vec![("A", ValueGroup::z()), ("B", ValueGroup::z())]), true),
        ("Z and QxZ", d(vec![("A", ValueGroup::z()), ("B", ValueGroup::lex(Q, Z))]), true),
        ("single Q", d(vec![("A", ValueGroup::q())]), false),
        ("single ZxQ", d(vec![("A", ValueGroup::lex(Z, Q))]), false),
    ]
}

pub(crate) fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut tally = Tally::new(Suite::Semistar);
    let witness = |k: usize, seed: u64, d: &DomainPresentation, ideals: Vec<String>, detail: String| Counterexample {
        case: k,
        case_seed: seed,
        presentation: d.slots().iter().map(|(m, g)| format!("slot {m} {g}")).collect::<Vec<_>>().join("\n"),
        ideals,
        detail,
    };
    for (name, d, expected) in pr2_fixtures() {
        let outcome = check_pr2(&d).map(|r| r.mutually_equal() && r.values()[0] == expected);
        tally.record("pr2 fixture verdicts", outcome, |detail| {
            witness(0, 0, &d, Vec::new(), format!("{name}: {detail}"))
        });
    }
    for k in 0..config.cases {
        let seed = config.case_seed(4, k);
        let mut gen = CaseGen::new(seed);
        let d = small_presentation(&mut gen);
        let integral = !gen.rng().next_u32().is_multiple_of(3);
        let e = gen.ideal(&d, integral, 0.7);
        let f = gen.ideal(&d, true, 0.7);
        let report = check_pr2(&d);
        let pr2 = report.clone().map(|r| r.values()[0]);
        for (name, outcome) in pair_laws(&d, &pr2, &e, &f) {
            tally.record(name, outcome, |detail| witness(k, seed, &d, vec![e.to_string(), f.to_string()], detail));
        }
        tally.record("pr2 conditions mutually equal", report.map(|r| r.mutually_equal()), |detail| {
            witness(k, seed, &d, Vec::new(), detail)
        });
    }
    tally.finish()
}
