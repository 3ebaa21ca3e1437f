//! Minimizing failing h-local cases: drop slots, pull coordinates toward
//! zero, then prefer attained cuts.

use std::collections::BTreeMap;

use crate::hlocal::{DomainPresentation, GlobalIdeal};
use crate::quad::QuadExt;
use crate::valuation::{Coord, Cut};

type Case = (DomainPresentation, Vec<GlobalIdeal>);

fn coord_size(c: &Coord) -> u64 {
    match c {
        Coord::MinusInf => 0,
        Coord::Finite(x) => {
            let r = x.rational_part();
            let s = x.surd_part();
            (r.numer().unsigned_abs() + r.denom().unsigned_abs() + s.numer().unsigned_abs() * 4) as u64
        }
    }
}

fn size(case: &Case) -> u64 {
    let (d, ideals) = case;
    let mut total = 1000 * d.slots().len() as u64;
    for i in ideals {
        for (_, c) in i.support() {
            total += 100 + c.boundary().iter().map(coord_size).sum::<u64>() + u64::from(!c.is_attained());
        }
    }
    total
}

fn without_slot(d: &DomainPresentation, m: &str) -> Option<DomainPresentation> {
    let mut slots = d.slots().clone();
    slots.remove(m);
    let shared = d
        .shared_primes()
        .iter()
        .cloned()
        .map(|mut p| {
            p.members.remove(m);
            p
        })
        .filter(|p| p.members.len() >= 2)
        .collect();
    DomainPresentation::new(d.radicand(), slots, shared).ok()
}

fn smaller_coords(x: &QuadExt) -> Vec<QuadExt> {
    let mut out = vec![QuadExt::zero()];
    if !x.is_rational() {
        out.push(QuadExt::rational(*x.rational_part()));
    }
    let t = x.rational_part().trunc();
    out.push(QuadExt::rational(t));
    let one = crate::Rational::from_integer(1);
    let toward = if t > crate::Rational::from_integer(0) { t - one } else { t + one };
    out.push(QuadExt::rational(toward));
    out
}

fn cut_variants(c: &Cut) -> Vec<Cut> {
    let mut out = Vec::new();
    for k in 0..c.boundary().len() {
        if let Coord::Finite(x) = &c.boundary()[k] {
            for y in smaller_coords(x) {
                let mut b = c.boundary().to_vec();
                b[k] = Coord::Finite(y);
                out.extend(Cut::new(c.group().clone(), b, c.is_attained()));
            }
        }
    }
    if !c.is_attained() {
        out.extend(Cut::new(c.group().clone(), c.boundary().to_vec(), true));
    }
    out
}

fn neighbours(case: &Case) -> Vec<Case> {
    let (d, ideals) = case;
    let mut out = Vec::new();
    for m in d.slots().keys() {
        if d.slots().len() == 1 {
            break;
        }
        if let Some(d2) = without_slot(d, m) {
            out.push((d2, ideals.iter().map(|i| i.without(m)).collect()));
        }
    }
    for (k, i) in ideals.iter().enumerate() {
        for (m, c) in i.support() {
            let mut variants = cut_variants(c);
            variants.push(Cut::unit(c.group()));
            for v in variants {
                let mut locals: BTreeMap<String, Cut> = i.support().map(|(a, b)| (a.clone(), b.clone())).collect();
                locals.insert(m.clone(), v);
                if let Ok(j) = d.ideal(locals) {
                    let mut next = ideals.clone();
                    next[k] = j;
                    out.push((d.clone(), next));
                }
            }
        }
    }
    out
}

/// Greedy descent: accept any neighbour that still fails and is smaller.
pub fn shrink_case(
    d: &DomainPresentation,
    ideals: &[GlobalIdeal],
    fails: impl Fn(&DomainPresentation, &[GlobalIdeal]) -> bool,
) -> (DomainPresentation, Vec<GlobalIdeal>) {
    let mut best: Case = (d.clone(), ideals.to_vec());
    for _ in 0..500 {
        let current = size(&best);
        let next = neighbours(&best).into_iter().find(|c| size(c) < current && fails(&c.0, &c.1));
        match next {
            Some(c) => best = c,
            None => break,
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::ValueGroup;

    #[test]
    fn shrinks_to_the_essential_slot() {
        let d = DomainPresentation::hlocal(
            2,
            [("A", ValueGroup::q()), ("B", ValueGroup::z()), ("C", ValueGroup::lex(crate::Level::Z, crate::Level::Q))],
        )
        .unwrap();
        let i = d.ideal_from_strs(&[("A", "open(3/2+1*sqrt2)"), ("B", "attained(3)"), ("C", "open(2,1/2)")]).unwrap();
        // "Fails" whenever some slot is nondivisorial.
        let fails = |d: &DomainPresentation, is: &[GlobalIdeal]| !d.is_locally_divisorial(&is[0]);
        assert!(fails(&d, std::slice::from_ref(&i)));
        let (d2, is) = shrink_case(&d, &[i], fails);
        assert_eq!(d2.slots().len(), 1);
        assert_eq!(is[0].to_string(), "C=open(0,0)");
    }
}
