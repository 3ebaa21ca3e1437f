//! Closed-form duals and closures against the exhaustive oracle.

use prufer::format::PresentationFile;
use prufer::oracle::{oracle_dual, v_closure_oracle};
use prufer::{Coord, Cut, DomainPresentation, GlobalIdeal, Level, ValueGroup};

const BOUND: i64 = 6;
const INNER: i128 = BOUND as i128 / 3 - 1;

/// Every attained cut with coordinates in `[-INNER, INNER]`, plus the unit.
fn box_cuts(g: &ValueGroup) -> Vec<Cut> {
    let range: Vec<i128> = (-INNER..=INNER).collect();
    let mut out = vec![Cut::unit(g)];
    for &a in &range {
        if g.rank() == 1 {
            out.push(Cut::attained(g, vec![Coord::from(a)]).unwrap());
            continue;
        }
        out.push(Cut::attained(g, vec![Coord::from(a), Coord::MinusInf]).unwrap());
        for &b in &range {
            out.push(Cut::attained(g, vec![Coord::from(a), Coord::from(b)]).unwrap());
        }
    }
    out
}

fn all_ideals(d: &DomainPresentation) -> Vec<GlobalIdeal> {
    let mut ideals: Vec<Vec<(String, Cut)>> = vec![Vec::new()];
    for (m, g) in d.slots() {
        ideals = ideals
            .into_iter()
            .flat_map(|prefix| {
                box_cuts(g).into_iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push((m.clone(), c));
                    next
                })
            })
            .collect();
    }
    ideals.into_iter().map(|locals| d.ideal(locals).unwrap()).collect()
}

#[test]
fn duals_and_closures_agree_on_every_small_ideal() {
    let zz = ValueGroup::lex(Level::Z, Level::Z);
    let presentations = [
        vec![("A", ValueGroup::z())],
        vec![("A", zz.clone())],
        vec![("A", ValueGroup::z()), ("B", ValueGroup::z())],
        vec![("A", ValueGroup::z()), ("B", zz)],
    ];
    let mut checked = 0;
    for slots in presentations {
        let d = DomainPresentation::hlocal(2, slots).unwrap();
        for i in all_ideals(&d) {
            let dual = oracle_dual(&d, &i, BOUND).unwrap();
            assert_eq!(dual.ideal, d.vdual(&i).unwrap(), "dual of {i}");
            assert_eq!(v_closure_oracle(&d, &i, BOUND).unwrap(), d.v_closure(&i).unwrap(), "closure of {i}");
            checked += 1;
        }
    }
    assert_eq!(checked, 4 + 13 + 16 + 52);
}

#[test]
fn shared_prime_dual_is_p_times_inverse() {
    let file = PresentationFile::parse(include_str!("../data/shared.pres")).unwrap();
    let f = file.finite().unwrap();
    let d = &f.domain;
    let i = d.ideal_from_strs(&[("M", "attained(1,0)"), ("N", "attained(1,0)")]).unwrap();
    let j = d.contract_localization(&i, "M").unwrap();
    assert_eq!(&j, f.ideal("J").unwrap());
    let p = d.ideal_from_strs(&[("M", "attained(1,-inf)"), ("N", "attained(1,-inf)")]).unwrap();
    let i_inv = oracle_dual(d, &i, BOUND).unwrap().ideal;
    let expected = d.product(&p, &i_inv).unwrap();
    assert_eq!(oracle_dual(d, &j, BOUND).unwrap().ideal, expected);
    assert_eq!(expected.to_string(), "M=attained(0,-inf) N=attained(0,-inf)");
    assert_eq!(v_closure_oracle(d, &j, BOUND).unwrap(), p);
    assert!(d.is_locally_divisorial(&j));
}

#[test]
fn principal_ideal_inverse_is_exact() {
    let d = DomainPresentation::hlocal(2, [("A", ValueGroup::z()), ("B", ValueGroup::z())]).unwrap();
    let i = d.ideal_from_strs(&[("A", "attained(1)"), ("B", "attained(-1)")]).unwrap();
    let expected = d.ideal_from_strs(&[("A", "attained(-1)"), ("B", "attained(1)")]).unwrap();
    assert_eq!(oracle_dual(&d, &i, BOUND).unwrap().ideal, expected);
}
