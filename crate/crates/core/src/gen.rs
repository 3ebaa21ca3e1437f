//! Seeded random presentations, cuts and ideals.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hlocal::{DomainPresentation, GlobalIdeal, MaxId, SharedPrime};
use crate::quad::{rat, QuadExt};
use crate::valuation::{Coord, Cut, Level, ValueGroup};

pub const RADICAND: u32 = 2;

/// Deterministic source of test cases.
pub struct CaseGen {
    rng: ChaCha8Rng,
    /// Largest absolute value of a generated coordinate.
    pub span: i128,
}

impl CaseGen {
    pub fn new(seed: u64) -> Self {
        CaseGen { rng: ChaCha8Rng::seed_from_u64(seed), span: 3 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn group(&mut self) -> ValueGroup {
        use Level::{Q, Z};
        let all = [
            ValueGroup::z(),
            ValueGroup::q(),
            ValueGroup::lex(Z, Z),
            ValueGroup::lex(Z, Q),
            ValueGroup::lex(Q, Z),
            ValueGroup::lex(Q, Q),
        ];
        all.choose(&mut self.rng).unwrap().clone()
    }

    /// A value at one level: integers, halves, thirds or `a ± b·√2`.
    pub fn value(&mut self, level: Level) -> QuadExt {
        let n = self.rng.gen_range(-self.span..=self.span);
        match level {
            Level::Z => QuadExt::integer(n),
            Level::Q => match self.rng.gen_range(0..4) {
                0 => QuadExt::integer(n),
                1 => QuadExt::rational(rat(2 * n + 1, 2)),
                2 => QuadExt::rational(rat(n, 3)),
                _ => {
                    let b = *[rat(1, 1), rat(-1, 1), rat(1, 2), rat(-1, 2)].choose(&mut self.rng).unwrap();
                    QuadExt::new(rat(n.clamp(-2, 2), 1), b, RADICAND)
                }
            },
        }
    }

    pub fn cut(&mut self, g: &ValueGroup) -> Cut {
        let mut boundary = vec![Coord::Finite(self.value(g.level(0)))];
        if g.rank() == 2 {
            boundary.push(if self.rng.gen_bool(0.25) {
                Coord::MinusInf
            } else {
                Coord::Finite(self.value(g.level(1)))
            });
        }
        Cut::new(g.clone(), boundary, self.rng.gen_bool(0.5)).expect("valid boundary")
    }

    pub fn integral_cut(&mut self, g: &ValueGroup) -> Cut {
        for _ in 0..32 {
            let c = self.cut(g);
            if c.is_integral() {
                return c;
            }
        }
        Cut::maximal(g)
    }

    /// An h-local presentation with `1..=max_slots` slots `M1, M2, …`.
    pub fn hlocal_presentation(&mut self, max_slots: usize) -> DomainPresentation {
        let n = self.rng.gen_range(1..=max_slots);
        let slots: Vec<(String, ValueGroup)> = (1..=n).map(|k| (format!("M{k}"), self.group())).collect();
        DomainPresentation::hlocal(RADICAND, slots).expect("valid presentation")
    }

    /// A presentation with one or two shared primes among rank-2 slots;
    /// `discrete` restricts every group to `Z×Z`.
    pub fn shared_presentation(&mut self, discrete: bool) -> DomainPresentation {
        use Level::{Q, Z};
        let mut slots = BTreeMap::new();
        let mut shared = Vec::new();
        let primes = if discrete { 1 } else { self.rng.gen_range(1..=2) };
        let mut next = 1;
        for p in 0..primes {
            let first = if discrete || self.rng.gen_bool(0.5) { Z } else { Q };
            let size = if discrete { 2 } else { self.rng.gen_range(2..=3) };
            let mut members = std::collections::BTreeSet::new();
            for _ in 0..size {
                let second = if discrete || self.rng.gen_bool(0.5) { Z } else { Q };
                let m = format!("M{next}");
                next += 1;
                slots.insert(m.clone(), ValueGroup::lex(first, second));
                members.insert(m);
            }
            shared.push(SharedPrime { id: format!("P{}", p + 1), members });
        }
        let extra = if discrete { self.rng.gen_range(0..=1) } else { self.rng.gen_range(0..=2) };
        for _ in 0..extra {
            let g = if discrete { ValueGroup::z() } else { self.group() };
            slots.insert(format!("M{next}"), g);
            next += 1;
        }
        DomainPresentation::new(RADICAND, slots, shared).expect("valid presentation")
    }

    /// A cut whose first-level trace is `reference`.
    fn cut_over(&mut self, g: &ValueGroup, reference: &Cut, integral: bool) -> Cut {
        let lead = Coord::Finite(reference.lead().clone());
        if !reference.is_attained() {
            return Cut::new(g.clone(), vec![lead, Coord::MinusInf], false).unwrap();
        }
        for _ in 0..32 {
            let c = self.cut_over_once(g, lead.clone());
            if !integral || c.is_integral() {
                return c;
            }
        }
        Cut::attained(g, vec![lead, Coord::from(0)]).unwrap()
    }

    fn cut_over_once(&mut self, g: &ValueGroup, lead: Coord) -> Cut {
        let second = if self.rng.gen_bool(0.3) { Coord::MinusInf } else { Coord::Finite(self.value(g.level(1))) };
        let attained = matches!(second, Coord::MinusInf) || self.rng.gen_bool(0.5);
        Cut::new(g.clone(), vec![lead, second], attained).unwrap()
    }

    /// A random ideal; each slot is nonunit with probability `density`.
    pub fn ideal(&mut self, d: &DomainPresentation, integral: bool, density: f64) -> GlobalIdeal {
        let mut locals: BTreeMap<MaxId, Cut> = BTreeMap::new();
        let draw = |gen: &mut CaseGen, g: &ValueGroup| if integral { gen.integral_cut(g) } else { gen.cut(g) };
        for p in d.shared_primes() {
            let mut reference = None;
            for m in &p.members {
                let g = d.group(m).unwrap().clone();
                let c = match &reference {
                    None => {
                        let c = if self.rng.gen_bool(density) { draw(self, &g) } else { Cut::unit(&g) };
                        reference = Some(c.project_level_one());
                        c
                    }
                    Some(r) => {
                        let c = draw(self, &g);
                        if c.project_level_one() == *r {
                            c
                        } else {
                            let r = r.clone();
                            self.cut_over(&g, &r, integral)
                        }
                    }
                };
                locals.insert(m.clone(), c);
            }
        }
        for (m, g) in d.slots() {
            if locals.contains_key(m) {
                continue;
            }
            let c = if self.rng.gen_bool(density) { draw(self, g) } else { Cut::unit(g) };
            locals.insert(m.clone(), c);
        }
        d.ideal(locals).expect("consistent ideal")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_consistent() {
        let mut a = CaseGen::new(5);
        let mut b = CaseGen::new(5);
        for _ in 0..50 {
            let d = a.shared_presentation(false);
            assert_eq!(d, b.shared_presentation(false));
            let i = a.ideal(&d, true, 0.7);
            assert_eq!(i, b.ideal(&d, true, 0.7));
            assert!(i.is_integral());
        }
    }
}
