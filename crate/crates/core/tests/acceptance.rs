//! Acceptance criteria, one verdict line each.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use prufer::almost_dedekind::{
    construct_arbitrary, run_fixture, weak_factorize, FamilyPresentation, StepKind, FIXTURES,
};
use prufer::format::PresentationFile;
use prufer::gen::CaseGen;
use prufer::oracle::v_closure_oracle;
use prufer::semistar::{check_pr2, vbar_closure};
use prufer::suite::find_local_nondivisorial_witness;
use prufer::{Coord, Cut, DomainPresentation, GlobalIdeal, MaxId, PropKind, QuadExt, Rational, ValueGroup};

const PRESENTATIONS: usize = 1000;
const IDEALS: usize = 5;
const BOUND: i64 = 6;

type Failures = Vec<String>;

struct Case {
    seed: u64,
    d: DomainPresentation,
    integral: Vec<GlobalIdeal>,
    fractional: GlobalIdeal,
}

fn corpus() -> Vec<Case> {
    (0..PRESENTATIONS as u64)
        .map(|k| {
            let seed = 0xACCE_0000 + k;
            let mut gen = CaseGen::new(seed);
            let d = gen.hlocal_presentation(8);
            let integral = (0..IDEALS).map(|_| gen.ideal(&d, true, 0.6)).collect();
            let fractional = gen.ideal(&d, false, 0.6);
            Case { seed, d, integral, fractional }
        })
        .collect()
}

fn times_maxima(d: &DomainPresentation, i: &GlobalIdeal, ms: &[&MaxId]) -> GlobalIdeal {
    ms.iter().fold(i.clone(), |acc, m| d.product(&acc, &d.maximal(m).unwrap()).unwrap())
}

/// Slots where the ideal is not locally divisorial.
fn nondivisorial_slots(d: &DomainPresentation, i: &GlobalIdeal) -> Vec<MaxId> {
    d.slots().keys().filter(|m| !d.local(i, m).unwrap().is_divisorial()).cloned().collect()
}

fn criterion_1(cases: &[Case]) -> Failures {
    let mut bad = Vec::new();
    for c in cases {
        let d = &c.d;
        for i in c.integral.iter().chain([&c.fractional]) {
            let f = match d.strong_factorize(i) {
                Ok(f) => f,
                Err(e) => {
                    bad.push(format!("seed {}: {i}: {e}", c.seed));
                    continue;
                }
            };
            let mut factors: Vec<&MaxId> = f.factors.iter().collect();
            factors.sort();
            let expected = nondivisorial_slots(d, i);
            let rebuilt = times_maxima(d, &f.divisorial_part, &factors);
            let irredundant = (0..factors.len()).all(|k| {
                let mut fewer = factors.clone();
                fewer.remove(k);
                times_maxima(d, &f.divisorial_part, &fewer) != *i
            });
            let ok = f.certificate.holds()
                && factors.iter().map(|m| (*m).clone()).collect::<Vec<_>>() == expected
                && rebuilt == *i
                && f.divisorial_part == d.v_closure(i).unwrap()
                && irredundant;
            if !ok {
                bad.push(format!("seed {}: {i}", c.seed));
            }
        }
    }
    bad
}

fn criterion_2(cases: &[Case]) -> Failures {
    let mut bad = Vec::new();
    for c in cases {
        let d = &c.d;
        let is = &c.integral;
        for (k, i) in is.iter().enumerate() {
            let j = &is[(k + 1) % is.len()];
            for kind in [PropKind::Product, PropKind::Intersection, PropKind::Sum, PropKind::Radical, PropKind::Trace] {
                if kind == PropKind::Radical && i.is_unit() {
                    continue;
                }
                let other = kind.is_binary().then_some(j);
                let predicted = d.predict_factorization(kind, i, other).unwrap();
                let direct = d.strong_factorize(&d.direct(kind, i, other).unwrap()).unwrap();
                if !predicted.same_as(&direct) {
                    bad.push(format!("seed {}: {} of {i} and {j}", c.seed, kind.name()));
                }
            }
            let v = |x: &GlobalIdeal| d.v_closure(x).unwrap();
            if v(&d.sum(i, j).unwrap()) != d.sum(&v(i), &v(j)).unwrap() {
                bad.push(format!("seed {}: (I+J)^v for {i} and {j}", c.seed));
            }
            if !v(i).is_unit() && v(&d.radical(i).unwrap()) != v(&d.radical(&v(i)).unwrap()) {
                bad.push(format!("seed {}: (rad I)^v for {i}", c.seed));
            }
            let inv = d.vdual(i).unwrap();
            let mut ms = nondivisorial_slots(d, i);
            ms.sort();
            let refs: Vec<&MaxId> = ms.iter().collect();
            let rhs = times_maxima(d, &d.product(&v(i), &inv).unwrap(), &refs);
            if d.product(i, &inv).unwrap() != rhs {
                bad.push(format!("seed {}: I I^-1 for {i}", c.seed));
            }
        }
    }
    bad
}

fn criterion_3() -> Failures {
    let g = ValueGroup::q();
    let root2 = QuadExt::surd(Rational::from_integer(1), 2);
    let i = Cut::open(&g, vec![Coord::Finite(root2.clone())]).unwrap();
    let inv = i.inverse();
    let trace = i.product(&inv).unwrap();
    let mut bad = Vec::new();
    if !i.is_divisorial() {
        bad.push("open(sqrt2) not divisorial".into());
    }
    if inv != Cut::open(&g, vec![Coord::Finite(-root2)]).unwrap() {
        bad.push(format!("inverse is {inv}"));
    }
    if trace != Cut::open(&g, vec![Coord::from(0)]).unwrap() || trace != Cut::maximal(&g) || trace.is_divisorial() {
        bad.push(format!("trace is {trace}"));
    }
    bad
}

fn shared_fixtures() -> Vec<DomainPresentation> {
    let three = "kind finite\nslot M ZxZ\nslot N ZxZ\nslot A Z\nshared P M N\n";
    [include_str!("../data/shared.pres"), three]
        .iter()
        .map(|t| PresentationFile::parse(t).unwrap().finite().unwrap().domain.clone())
        .collect()
}

fn criterion_4(cases: &[Case]) -> Failures {
    let mut bad = Vec::new();
    for c in cases {
        for i in c.integral.iter().chain([&c.fractional]) {
            if c.d.is_locally_divisorial(i) && !c.d.is_divisorial(i).unwrap() {
                bad.push(format!("seed {}: {i}", c.seed));
            }
        }
    }
    for d in shared_fixtures() {
        match find_local_nondivisorial_witness(&d, BOUND) {
            Ok(Some(w)) => {
                let wv = v_closure_oracle(&d, &w, BOUND).unwrap();
                if !d.is_locally_divisorial(&w) || wv == w {
                    bad.push(format!("bogus witness {w}"));
                }
            }
            Ok(None) => bad.push(format!("no witness on {:?}", d.slots().keys().collect::<Vec<_>>())),
            Err(e) => bad.push(e.to_string()),
        }
    }
    bad
}

fn criterion_5() -> Failures {
    let p = FamilyPresentation::uniform(StepKind::Unit, 3, 8);
    let pairs: Vec<(u32, u32)> = (0..=4).flat_map(|r| (0..=r).map(move |s| (r, s))).collect();
    let mut bad = Vec::new();
    for families in 1..=3u32 {
        let mut index = vec![0usize; families as usize];
        'grid: loop {
            let targets: BTreeMap<u32, (u32, u32)> =
                index.iter().enumerate().map(|(n, &k)| (n as u32 + 1, pairs[k])).collect();
            let w = weak_factorize(&p, &construct_arbitrary(&p, &targets).unwrap()).unwrap();
            let exact = targets.iter().all(|(n, (r, s))| w.exponents.get(n).copied().unwrap_or(0) == i128::from(r - s));
            if !exact || !w.certified {
                bad.push(format!("{targets:?} gave {:?}", w.exponents));
            }
            for slot in index.iter_mut() {
                *slot += 1;
                if *slot < pairs.len() {
                    continue 'grid;
                }
                *slot = 0;
            }
            break;
        }
    }
    bad
}

fn criterion_6() -> Failures {
    let mut bad = Vec::new();
    for name in FIXTURES {
        let a = run_fixture(name, 8, 1).unwrap();
        let b = run_fixture(name, 10, 1).unwrap();
        if !a.passed() {
            bad.push(format!("{name} at K=8: {:?}", a.checks));
        }
        if a.verdicts() != b.verdicts() {
            bad.push(format!("{name}: verdicts differ between K=8 and K=10"));
        }
    }
    bad
}

fn criterion_7(cases: &[Case]) -> (Failures, usize) {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for c in cases {
        let d = &c.d;
        let e = &c.fractional;
        for f in &c.integral {
            let vbar = |x: &GlobalIdeal| vbar_closure(d, x).unwrap();
            if vbar(f) != d.v_closure(f).unwrap() {
                bad.push(format!("seed {}: vbar differs from v on {f}", c.seed));
            }
            let lhs = vbar(&d.intersect(e, f).unwrap());
            if lhs != d.intersect(&vbar(e), &vbar(f)).unwrap() {
                bad.push(format!("seed {}: stability fails for {e} and {f}", c.seed));
            }
            pairs += 1;
        }
        if d.slots().len() <= 3 && !check_pr2(d).unwrap().mutually_equal() {
            bad.push(format!("seed {}: pr2 conditions disagree", c.seed));
        }
    }
    let known = [
        (vec![("A", ValueGroup::z())], true),
        (vec![("A", ValueGroup::z()), ("B", ValueGroup::z()), ("C", ValueGroup::z())], true),
        (vec![("A", ValueGroup::q())], false),
    ];
    for (slots, expected) in known {
        let d = DomainPresentation::hlocal(2, slots).unwrap();
        let r = check_pr2(&d).unwrap();
        if r.values() != [expected; 5] {
            bad.push(format!("{:?}: {:?}", d.slots().keys().collect::<Vec<_>>(), r.values()));
        }
    }
    (bad, pairs)
}

fn report(n: usize, what: &str, bad: &Failures, elapsed: Duration, limit: Option<Duration>) -> bool {
    let in_time = limit.is_none_or(|l| elapsed < l);
    let ok = bad.is_empty() && in_time;
    let limit = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
    println!(
        "criterion {n}: {} {what}: {} failures, {:.2}s{limit}",
        if ok { "PASS" } else { "FAIL" },
        bad.len(),
        elapsed.as_secs_f64()
    );
    for b in bad.iter().take(3) {
        println!("    {b}");
    }
    ok
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let cases = corpus();
    let built = start.elapsed();
    let mut all = true;

    let t = Instant::now();
    let bad = criterion_1(&cases);
    let ideals = cases.len() * (IDEALS + 1);
    all &= report(
        1,
        &format!("strong factorization over {} presentations, {ideals} ideals", cases.len()),
        &bad,
        t.elapsed() + built,
        Some(Duration::from_secs(60)),
    );

    let t = Instant::now();
    all &= report(2, "predicted factorizations and closure identities", &criterion_2(&cases), t.elapsed(), None);

    let t = Instant::now();
    all &= report(3, "sqrt2 cut, its inverse and trace", &criterion_3(), t.elapsed(), None);

    let t = Instant::now();
    all &= report(4, "local-global divisoriality and shared-prime witnesses", &criterion_4(&cases), t.elapsed(), None);

    let t = Instant::now();
    all &= report(5, "weak factorization exponents on the (r, s) grid", &criterion_5(), t.elapsed(), None);

    let t = Instant::now();
    all &= report(6, "fixtures at K=8 and K=10", &criterion_6(), t.elapsed(), Some(Duration::from_secs(120)));

    let t = Instant::now();
    let (bad, pairs) = criterion_7(&cases);
    all &= report(7, &format!("semistar battery over {pairs} ideal pairs"), &bad, t.elapsed(), None);
    assert!(pairs >= 500);

    assert!(all, "some acceptance criteria failed");
}
