//! Brute-force duals over discrete presentations.
//!
//! Elements are modeled by their integer value vectors: one first-level
//! coordinate per slot (a single shared coordinate for slots sharing a prime)
//! and one second-level coordinate per rank-2 slot. Duals are computed by
//! exhaustive search in nested boxes: generators in `[-B, B]`, dual elements
//! in `[-B/2, B/2]`, double-dual elements in `[-B/3, B/3]`. Input cuts must
//! have coordinates in `[-(B/3 - 1), B/3 - 1]`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{AlgebraError, Result};
use crate::hlocal::{DomainPresentation, GlobalIdeal, MaxId};
use crate::quad::QuadExt;
use crate::valuation::{Coord, Cut, Level};

pub const DEFAULT_BOUND: i64 = 6;

/// Value of an element at one slot; `b` is absent for rank-1 slots.
type SlotValue = (i64, Option<i64>);

/// A discrete cut: `(g1, Some(g2))` for `{v ≥ (g1, g2)}`, `(g1, None)` for
/// `{v₁ ≥ g1}`.
type IntCut = (i64, Option<i64>);

struct Layout {
    /// Per slot: first-level variable and optional second-level variable.
    vars: BTreeMap<MaxId, (usize, Option<usize>)>,
    dim: usize,
}

impl Layout {
    fn new(d: &DomainPresentation) -> Result<Self> {
        let mut vars = BTreeMap::new();
        let mut shared_var: BTreeMap<String, usize> = BTreeMap::new();
        let mut dim = 0;
        for (m, g) in d.slots() {
            if g.levels().contains(&Level::Q) {
                return Err(AlgebraError::NotDiscrete(m.clone()));
            }
            let prime = d.shared_primes().iter().find(|p| p.members.contains(m));
            let first = match prime {
                Some(p) => *shared_var.entry(p.id.clone()).or_insert_with(|| {
                    dim += 1;
                    dim - 1
                }),
                None => {
                    dim += 1;
                    dim - 1
                }
            };
            let second = (g.rank() == 2).then(|| {
                dim += 1;
                dim - 1
            });
            vars.insert(m.clone(), (first, second));
        }
        Ok(Layout { vars, dim })
    }

    fn value(&self, m: &str, x: &[i64]) -> SlotValue {
        let (a, b) = self.vars[m];
        (x[a], b.map(|i| x[i]))
    }
}

fn as_int(x: &QuadExt) -> i64 {
    x.as_rational().map(|r| *r.numer() as i64).expect("integer coordinate")
}

fn int_cut(c: &Cut) -> IntCut {
    let a = as_int(c.lead());
    match c.boundary().get(1) {
        None => (a, None),
        Some(Coord::MinusInf) => (a, None),
        Some(Coord::Finite(b)) => (a, Some(as_int(b))),
    }
}

fn member(v: SlotValue, c: IntCut) -> bool {
    match (c, v.1) {
        ((g1, None), _) => v.0 >= g1,
        ((g1, Some(g2)), Some(b)) => v.0 > g1 || (v.0 == g1 && b >= g2),
        ((g1, Some(_)), None) => v.0 >= g1,
    }
}

/// `u + g ≥ 0` in the lexicographic order.
fn nonneg_sum(u: SlotValue, g: SlotValue) -> bool {
    let a = u.0 + g.0;
    match (u.1, g.1) {
        (Some(x), Some(y)) => a > 0 || (a == 0 && x + y >= 0),
        _ => a >= 0,
    }
}

fn boxed(dim: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * r + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total).map(move |mut k| {
        let mut x = vec![0; dim];
        for c in x.iter_mut() {
            *c = (k % side) as i64 - r;
            k /= side;
        }
        x
    })
}

/// Per-slot projections of a vector set.
fn projections(layout: &Layout, set: &[Vec<i64>]) -> BTreeMap<MaxId, BTreeSet<SlotValue>> {
    layout.vars.keys().map(|m| (m.clone(), set.iter().map(|x| layout.value(m, x)).collect())).collect()
}

/// Every `u` in the box of radius `r` with `u + g ≥ 0` at every slot for
/// every `g` in `set`.
fn dual_of(layout: &Layout, set: &[Vec<i64>], r: i64) -> Vec<Vec<i64>> {
    let proj = projections(layout, set);
    boxed(layout.dim, r)
        .filter(|u| {
            proj.iter().all(|(m, vals)| {
                let us = layout.value(m, u);
                vals.iter().all(|g| nonneg_sum(us, *g))
            })
        })
        .collect()
}

/// Reads the local cuts of a vector set by lexicographic minima.
fn read_back(d: &DomainPresentation, layout: &Layout, set: &[Vec<i64>], r: i64) -> Result<GlobalIdeal> {
    let mut locals = Vec::new();
    for (m, vals) in projections(layout, set) {
        let g = d.group(&m)?;
        let Some(&(a, _)) = vals.iter().next() else {
            return Err(AlgebraError::BoundExceeded(format!("empty set at `{m}`")));
        };
        if a == -r {
            return Err(AlgebraError::BoundExceeded(format!("first-level minimum at the box edge at `{m}`")));
        }
        let boundary = match g.rank() {
            1 => vec![Coord::from(a as i128)],
            _ => {
                let b = vals.iter().filter(|v| v.0 == a).filter_map(|v| v.1).min().unwrap();
                let second = if b == -r { Coord::MinusInf } else { Coord::from(b as i128) };
                vec![Coord::from(a as i128), second]
            }
        };
        locals.push((m, Cut::attained(g, boundary)?));
    }
    d.ideal(locals)
}

/// Exhaustive dual of an ideal over a discrete presentation.
#[derive(Clone, Debug)]
pub struct OracleDual {
    /// Dual elements found in the search box.
    pub vectors: Vec<Vec<i64>>,
    /// The dual read back as local cuts.
    pub ideal: GlobalIdeal,
}

struct Search {
    layout: Layout,
    generators: Vec<Vec<i64>>,
    bound: i64,
}

impl Search {
    fn new(d: &DomainPresentation, i: &GlobalIdeal, bound: i64) -> Result<Self> {
        let layout = Layout::new(d)?;
        let inner = bound / 3 - 1;
        let mut cuts = BTreeMap::new();
        for m in d.slots().keys() {
            let c = d.local(i, m)?;
            for x in c.boundary().iter().filter_map(Coord::finite) {
                if as_int(x).abs() > inner {
                    return Err(AlgebraError::BoundExceeded(format!("`{m}={c}` exceeds {inner} for bound {bound}")));
                }
            }
            cuts.insert(m.clone(), int_cut(&c));
        }
        let generators =
            boxed(layout.dim, bound).filter(|x| cuts.iter().all(|(m, c)| member(layout.value(m, x), *c))).collect();
        Ok(Search { layout, generators, bound })
    }
}

/// `(R : I)` by exhaustive search.
pub fn oracle_dual(d: &DomainPresentation, i: &GlobalIdeal, bound: i64) -> Result<OracleDual> {
    let s = Search::new(d, i, bound)?;
    let r = s.bound / 2;
    let vectors = dual_of(&s.layout, &s.generators, r);
    let ideal = read_back(d, &s.layout, &vectors, r)?;
    Ok(OracleDual { vectors, ideal })
}

/// `I^v` by two exhaustive dualizations.
pub fn v_closure_oracle(d: &DomainPresentation, i: &GlobalIdeal, bound: i64) -> Result<GlobalIdeal> {
    let s = Search::new(d, i, bound)?;
    let dual = dual_of(&s.layout, &s.generators, s.bound / 2);
    let r = s.bound / 3;
    let double = dual_of(&s.layout, &dual, r);
    read_back(d, &s.layout, &double, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlocal::SharedPrime;
    use crate::valuation::ValueGroup;

    fn shared_fixture() -> DomainPresentation {
        let zz = ValueGroup::lex(Level::Z, Level::Z);
        let slots = [("M".to_string(), zz.clone()), ("N".to_string(), zz)].into_iter().collect();
        let p = SharedPrime { id: "P".into(), members: ["M".to_string(), "N".to_string()].into_iter().collect() };
        DomainPresentation::new(2, slots, vec![p]).unwrap()
    }

    #[test]
    fn principal_is_closed() {
        let d = DomainPresentation::hlocal(2, [("A", ValueGroup::z()), ("B", ValueGroup::z())]).unwrap();
        let i = d.ideal_from_strs(&[("A", "attained(1)")]).unwrap();
        assert_eq!(v_closure_oracle(&d, &i, 6).unwrap(), i);
        let inv = oracle_dual(&d, &i, 6).unwrap().ideal;
        assert_eq!(inv, d.ideal_from_strs(&[("A", "attained(-1)")]).unwrap());
    }

    #[test]
    fn shared_prime_closure_grows() {
        let d = shared_fixture();
        let j = d.ideal_from_strs(&[("M", "attained(1,0)"), ("N", "attained(1,-inf)")]).unwrap();
        let jv = v_closure_oracle(&d, &j, 6).unwrap();
        assert_eq!(jv, d.height_one_prime("M").unwrap());
        assert_ne!(jv, j);
        let inv = oracle_dual(&d, &j, 6).unwrap().ideal;
        assert_eq!(inv, d.ideal_from_strs(&[("M", "attained(0,-inf)"), ("N", "attained(0,-inf)")]).unwrap());
    }

    #[test]
    fn rejects_dense_levels_and_large_cuts() {
        let d = DomainPresentation::hlocal(2, [("A", ValueGroup::q())]).unwrap();
        assert!(matches!(v_closure_oracle(&d, &GlobalIdeal::unit(), 6), Err(AlgebraError::NotDiscrete(_))));
        let d = DomainPresentation::hlocal(2, [("A", ValueGroup::z())]).unwrap();
        let i = d.ideal_from_strs(&[("A", "attained(3)")]).unwrap();
        assert!(matches!(v_closure_oracle(&d, &i, 6), Err(AlgebraError::BoundExceeded(_))));
    }
}
