//! Laws of single valuation-domain cuts.

use crate::error::Result;
use crate::gen::{CaseGen, RADICAND};
use crate::quad::{rat, QuadExt};
use crate::valuation::{Coord, Cut, Level, ValueGroup};

use super::{CheckResult, Counterexample, Suite, SuiteConfig, Tally};

/// Group values on a grid: integers in `[-r, r]` at Z levels, and
/// `p/den + (q/sden)·√2` within `[-r, r]` at Q levels.
fn grid(level: Level, r: i128, den: i128, sden: i128) -> Vec<QuadExt> {
    match level {
        Level::Z => (-r..=r).map(QuadExt::integer).collect(),
        Level::Q => {
            let mut out = Vec::new();
            for p in -r * den..=r * den {
                for q in -2 * sden..=2 * sden {
                    out.push(QuadExt::new(rat(p, den), rat(q, sden), RADICAND));
                }
            }
            out
        }
    }
}

/// Membership of a point of the divisible hull, realizable or not.
fn contains(c: &Cut, point: &[QuadExt]) -> bool {
    for (x, b) in point.iter().zip(c.boundary()) {
        match b {
            Coord::MinusInf => return c.is_attained(),
            Coord::Finite(y) => match x.cmp(y) {
                std::cmp::Ordering::Greater => return true,
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Equal => {}
            },
        }
    }
    c.is_attained()
}

fn lex_le(a: &[QuadExt], b: &[QuadExt]) -> bool {
    a <= b
}

/// Lexicographic minimum of the cut over the sample grid.
fn sample_min(c: &Cut, xs: &[QuadExt], ys: &[QuadExt]) -> Option<Vec<QuadExt>> {
    if c.group().rank() == 1 {
        return xs.iter().find(|x| contains(c, &[(*x).clone()])).map(|x| vec![x.clone()]);
    }
    let top = ys.last().unwrap();
    let x = xs.iter().find(|x| contains(c, &[(*x).clone(), top.clone()]))?;
    let y = ys.iter().find(|y| contains(c, &[x.clone(), (*y).clone()]))?;
    Some(vec![x.clone(), y.clone()])
}

/// Compares the closed-form inverse with the dual computed from sampled
/// points of the cut. Test points are realizable, coarser and narrower than
/// the sample grid, so the midpoint between any test point's negative and
/// the boundary is always sampled.
pub(crate) fn inverse_matches_samples(c: &Cut) -> bool {
    let g = c.group();
    let fine = |l: Level| {
        let mut v = grid(l, 12, 12, 4);
        v.sort();
        v
    };
    let coarse = |l: Level| grid(l, 4, 6, 2).into_iter().filter(|x| l.realizes(x)).collect::<Vec<_>>();
    let xs = fine(g.level(0));
    let ys = if g.rank() == 2 { fine(g.level(1)) } else { Vec::new() };
    let Some(min) = sample_min(c, &xs, &ys) else {
        return false;
    };
    let inv = c.inverse();
    let tests: Vec<Vec<QuadExt>> = if g.rank() == 1 {
        coarse(g.level(0)).into_iter().map(|x| vec![x]).collect()
    } else {
        let a = coarse(g.level(0));
        let b = coarse(g.level(1));
        a.iter().flat_map(|x| b.iter().step_by(3).map(move |y| vec![x.clone(), y.clone()])).collect()
    };
    tests.iter().all(|u| {
        let sum: Vec<QuadExt> = u.iter().zip(&min).map(|(a, b)| a.clone() + b.clone()).collect();
        let zero = vec![QuadExt::zero(); sum.len()];
        lex_le(&zero, &sum) == contains(&inv, u)
    })
}

fn principal(gen: &mut CaseGen, g: &ValueGroup) -> Cut {
    let point: Vec<QuadExt> = g
        .levels()
        .iter()
        .map(|l| match l {
            Level::Z => gen.value(Level::Z),
            Level::Q => QuadExt::rational(*gen.value(Level::Q).rational_part()),
        })
        .collect();
    Cut::principal(g, &point).unwrap()
}

fn laws(a: &Cut, b: &Cut, c: &Cut, x: &Cut) -> Vec<(&'static str, Result<bool>)> {
    let g = a.group();
    let unit = Cut::unit(g);
    let r = |f: &dyn Fn() -> Result<bool>| f();
    vec![
        ("normalization idempotent", Ok(Cut::new(g.clone(), a.boundary().to_vec(), a.is_attained()).as_ref() == Ok(a))),
        ("order reverses inclusion", r(&|| Ok((a <= b) == (a.sum(b)? == *a)))),
        ("product commutative", r(&|| Ok(a.product(b)? == b.product(a)?))),
        ("product associative", r(&|| Ok(a.product(b)?.product(c)? == a.product(&b.product(c)?)?))),
        ("product identity", r(&|| Ok(a.product(&unit)? == *a))),
        (
            "sum and intersection form a lattice",
            r(&|| {
                Ok(a.sum(b)? == b.sum(a)?
                    && a.intersect(b)? == b.intersect(a)?
                    && a.intersect(&a.sum(b)?)? == *a
                    && a.sum(&a.intersect(b)?)? == *a)
            }),
        ),
        (
            "closure extensive and idempotent",
            Ok(a.is_subideal_of(&a.v_closure()) && a.v_closure().v_closure() == a.v_closure()),
        ),
        (
            "closure monotone",
            r(&|| {
                let m = a.intersect(b)?;
                Ok(m.v_closure().is_subideal_of(&a.v_closure()))
            }),
        ),
        (
            "closure commutes with principal translation",
            r(&|| Ok(x.product(a)?.v_closure() == x.product(&a.v_closure())?)),
        ),
        ("divisorial iff closed", Ok(a.is_divisorial() == (a.v_closure() == *a))),
        (
            "nondivisorial iff x times maximal",
            r(&|| {
                if g.rank() != 1 {
                    return Ok(true);
                }
                let gamma = a.lead().clone();
                let xm = if g.level(0).realizes(&gamma) {
                    Some(Cut::principal(g, &[gamma])?.product(&Cut::maximal(g))?)
                } else {
                    None
                };
                Ok(!a.is_divisorial() == (xm.as_ref() == Some(a)))
            }),
        ),
        ("inverse times ideal is integral", r(&|| Ok(a.product(&a.inverse())?.is_integral()))),
        ("inverse matches sampled dual", Ok(inverse_matches_samples(a))),
    ]
}

/// The √2 cut of a rank-one `Q`-valued domain.
pub(crate) fn sqrt2_example() -> Result<Vec<(&'static str, bool)>> {
    let g = ValueGroup::q();
    let s = QuadExt::surd(rat(1, 1), RADICAND);
    let i = Cut::new(g.clone(), vec![Coord::Finite(s.clone())], false)?;
    let inv = i.inverse();
    let expected_inv = Cut::new(g.clone(), vec![Coord::Finite(-s)], false)?;
    let trace = i.product(&inv)?;
    Ok(vec![
        ("sqrt2 cut divisorial", i.is_divisorial()),
        ("sqrt2 inverse is open(-sqrt2)", inv == expected_inv),
        ("sqrt2 trace is the maximal ideal", trace == Cut::maximal(&g)),
        ("maximal ideal nondivisorial", !trace.is_divisorial()),
    ])
}

pub(crate) fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut tally = Tally::new(Suite::Local);
    match sqrt2_example() {
        Ok(checks) => {
            for (name, ok) in checks {
                tally.record(name, Ok(ok), |detail| Counterexample {
                    case: 0,
                    case_seed: 0,
                    presentation: "slot M Q".into(),
                    ideals: vec!["M=open(1*sqrt2)".into()],
                    detail,
                });
            }
        }
        Err(e) => tally.record("sqrt2 example", Err(e), |detail| Counterexample {
            case: 0,
            case_seed: 0,
            presentation: "slot M Q".into(),
            ideals: Vec::new(),
            detail,
        }),
    }
    for case in 0..config.cases {
        let seed = config.case_seed(1, case);
        let mut gen = CaseGen::new(seed);
        let g = gen.group();
        let (a, b, c) = (gen.cut(&g), gen.cut(&g), gen.cut(&g));
        let x = principal(&mut gen, &g);
        for (name, outcome) in laws(&a, &b, &c, &x) {
            tally.record(name, outcome, |detail| Counterexample {
                case,
                case_seed: seed,
                presentation: format!("slot M {g}"),
                ideals: [&a, &b, &c, &x].iter().map(|k| format!("M={k}")).collect(),
                detail,
            });
        }
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_dual_agrees_with_inverse() {
        let g = ValueGroup::q();
        let c = Cut::parse(&g, "open(1/2)").unwrap();
        assert!(inverse_matches_samples(&c));
        let zq = ValueGroup::lex(Level::Z, Level::Q);
        let qq = ValueGroup::lex(Level::Q, Level::Q);
        assert!(inverse_matches_samples(&Cut::parse(&qq, "attained(5/2,-inf)").unwrap()));
        for s in ["attained(1,-inf)", "open(0,1*sqrt2)", "attained(-1,1/3)"] {
            assert!(inverse_matches_samples(&Cut::parse(&zq, s).unwrap()), "{s}");
        }
    }

    #[test]
    fn sqrt2() {
        assert!(sqrt2_example().unwrap().iter().all(|(_, ok)| *ok));
    }
}
