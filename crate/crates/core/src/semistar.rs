//! The localizing system of `v`, the stable closure `v̄` and the spectral
//! closure `v_sp`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::hlocal::{DomainPresentation, GlobalIdeal, MaxId};
use crate::quad::{rat, QuadExt};
use crate::valuation::{Coord, Cut, Level, ValueGroup};

/// Which prime of a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeKind {
    Maximal,
    HeightOne,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PrimeRef {
    pub slot: MaxId,
    pub kind: PrimeKind,
}

/// Localization of a submodule of the quotient field at one maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalModule {
    Whole,
    Cut(Cut),
}

/// A submodule of the quotient field, possibly not a fractional ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Submodule {
    pub locals: BTreeMap<MaxId, LocalModule>,
}

impl Submodule {
    /// The whole quotient field.
    pub fn is_field(&self) -> bool {
        self.locals.values().all(|l| *l == LocalModule::Whole)
    }

    /// The fractional ideal this module is, if it is one.
    pub fn as_ideal(&self, d: &DomainPresentation) -> Option<GlobalIdeal> {
        let mut cuts = Vec::new();
        for (m, l) in &self.locals {
            match l {
                LocalModule::Whole => return None,
                LocalModule::Cut(c) => cuts.push((m.clone(), c.clone())),
            }
        }
        d.ideal(cuts).ok()
    }
}

/// `ℱ^v` and the set `Π^v` of primes with `Q^v ≠ R`.
#[derive(Clone, Debug)]
pub struct LocalizingSystemView<'a> {
    d: &'a DomainPresentation,
    spectrum: Vec<PrimeRef>,
}

impl<'a> LocalizingSystemView<'a> {
    pub fn new(d: &'a DomainPresentation) -> Result<Self> {
        let mut spectrum = Vec::new();
        for (m, g) in d.slots() {
            let mut candidates = vec![PrimeKind::Maximal];
            if g.rank() == 2 {
                candidates.push(PrimeKind::HeightOne);
            }
            for kind in candidates {
                let q = prime_ideal(d, m, kind)?;
                if !d.v_closure(&q)?.is_unit() {
                    spectrum.push(PrimeRef { slot: m.clone(), kind });
                }
            }
        }
        Ok(LocalizingSystemView { d, spectrum })
    }

    pub fn spectrum(&self) -> &[PrimeRef] {
        &self.spectrum
    }

    /// `I ∈ ℱ^v`, i.e. `I^v = R`.
    pub fn contains(&self, i: &GlobalIdeal) -> Result<bool> {
        Ok(self.d.v_closure(i)?.is_unit())
    }

    /// `I ∈ ℱ(Π^v)`: `I` lies in no prime of `Π^v`.
    pub fn spectral_contains(&self, i: &GlobalIdeal) -> Result<bool> {
        for q in &self.spectrum {
            let p = prime_ideal(self.d, &q.slot, q.kind)?;
            if self.d.intersect(i, &p)? == *i {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The global prime named by `kind` at slot `m`.
pub fn prime_ideal(d: &DomainPresentation, m: &str, kind: PrimeKind) -> Result<GlobalIdeal> {
    match kind {
        PrimeKind::Maximal => d.maximal(m),
        PrimeKind::HeightOne => d.height_one_prime(m),
    }
}

fn principal_at(g: &ValueGroup, point: Vec<QuadExt>) -> Result<Cut> {
    Cut::principal(g, &point)
}

/// A group element strictly outside `c`, just below its boundary.
fn point_below(c: &Cut) -> Vec<QuadExt> {
    let g = c.group();
    let below = |level: Level, x: &QuadExt| match level {
        Level::Z => x.clone() - QuadExt::integer(1),
        Level::Q if x.is_rational() => x.clone() - QuadExt::rational(rat(1, 2)),
        Level::Q => QuadExt::integer(x.floor()),
    };
    if c.is_level_one() {
        return vec![below(g.level(0), c.lead()), QuadExt::zero()];
    }
    let mut pts: Vec<QuadExt> = c.boundary().iter().map(|b| b.finite().unwrap().clone()).collect();
    let last = pts.pop().unwrap();
    pts.push(below(g.last(), &last));
    pts
}

/// The boundary point of an open cut, when it is a group element.
fn boundary_point(c: &Cut) -> Option<Vec<QuadExt>> {
    if c.is_attained() {
        return None;
    }
    let g = c.group();
    if c.is_level_one() {
        let x = c.lead().clone();
        return g.level(0).realizes(&x).then(|| vec![x, QuadExt::zero()]);
    }
    let pts: Vec<QuadExt> = c.boundary().iter().map(|b| b.finite().unwrap().clone()).collect();
    g.levels().iter().zip(&pts).all(|(l, x)| l.realizes(x)).then_some(pts)
}

/// `E^v̄ = {x : (E :_R x) ∈ ℱ^v}`, evaluated at the candidate points where
/// the cuts of `E` could grow.
pub fn vbar_closure(d: &DomainPresentation, e: &GlobalIdeal) -> Result<GlobalIdeal> {
    if !d.is_hlocal() {
        return Err(AlgebraError::NotHLocal(
            d.shared_primes().iter().map(|p| p.id.clone()).collect::<Vec<_>>().join(","),
        ));
    }
    let view = LocalizingSystemView::new(d)?;
    // Colon ideal (E :_R x) where x has `point` at `m` and lies deep in E elsewhere.
    let colon_in_fv = |m: &str, point: &[QuadExt]| -> Result<bool> {
        let g = d.group(m)?;
        let c = d.local(e, m)?;
        let x = principal_at(g, point.to_vec())?;
        let colon = c.product(&x.inverse())?.intersect(&Cut::unit(g))?;
        view.contains(&d.ideal([(m.to_string(), colon)])?)
    };
    let mut out = Vec::new();
    for m in d.slots().keys() {
        let c = d.local(e, m)?;
        let g = d.group(m)?;
        let mut grown = c.clone();
        let mut probes = Vec::new();
        if let Some(p) = boundary_point(&c) {
            probes.push(p);
        }
        probes.push(point_below(&c));
        for p in probes {
            if colon_in_fv(m, &p)? {
                grown = grown.sum(&principal_at(g, p)?)?;
            }
        }
        out.push((m.clone(), grown));
    }
    d.ideal(out)
}

/// `E^{v_sp} = ⋂ E·R_Q` over `Q ∈ Π^v`.
pub fn vsp_closure(d: &DomainPresentation, e: &GlobalIdeal) -> Result<Submodule> {
    let view = LocalizingSystemView::new(d)?;
    let mut locals: BTreeMap<MaxId, LocalModule> = d.slots().keys().map(|m| (m.clone(), LocalModule::Whole)).collect();
    for q in view.spectrum() {
        let c = d.local(e, &q.slot)?;
        // E·R_Q, seen at every slot whose ring sits below R_Q.
        let mut seen: Vec<(MaxId, Cut)> = vec![match q.kind {
            PrimeKind::Maximal => (q.slot.clone(), c.clone()),
            PrimeKind::HeightOne => (q.slot.clone(), c.relax_to_level_one()?),
        }];
        if q.kind == PrimeKind::HeightOne {
            for n in d.sharers(&q.slot) {
                let g = d.group(&n)?;
                let r = c.relax_to_level_one()?;
                seen.push((n, Cut::new(g.clone(), r.boundary().to_vec(), r.is_attained())?));
            }
        }
        for (m, cut) in seen {
            let slot = locals.get_mut(&m).expect("slot");
            *slot = match slot {
                LocalModule::Whole => LocalModule::Cut(cut),
                LocalModule::Cut(old) => LocalModule::Cut(old.intersect(&cut)?),
            };
        }
    }
    Ok(Submodule { locals })
}

/// Local cuts used to build the finite test grid of a slot.
pub fn local_catalog(g: &ValueGroup, radicand: u32) -> Vec<Cut> {
    let surd = QuadExt::surd(rat(1, 1), radicand);
    let mut firsts = vec![QuadExt::zero(), QuadExt::integer(1)];
    if g.level(0) == Level::Q {
        firsts.push(QuadExt::rational(rat(1, 2)));
        firsts.push(surd.clone());
    }
    let mut out = Vec::new();
    if g.rank() == 1 {
        for a in &firsts {
            for att in [true, false] {
                out.push(Cut::new(g.clone(), vec![Coord::Finite(a.clone())], att).unwrap());
            }
        }
    } else {
        let mut seconds = vec![QuadExt::integer(-1), QuadExt::zero(), QuadExt::integer(1)];
        if g.level(1) == Level::Q {
            seconds.push(QuadExt::rational(rat(1, 2)));
            seconds.push(surd.clone());
        }
        for a in &firsts {
            for att in [true, false] {
                out.push(Cut::new(g.clone(), vec![Coord::Finite(a.clone()), Coord::MinusInf], att).unwrap());
                for b in &seconds {
                    out.push(
                        Cut::new(g.clone(), vec![Coord::Finite(a.clone()), Coord::Finite(b.clone())], att).unwrap(),
                    );
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|c| c.is_integral() && seen.insert(c.clone()));
    out
}

/// A bounded family of integral ideals: every catalog cut at one slot, and
/// catalog cuts spread across all slots.
pub fn ideal_grid(d: &DomainPresentation) -> Vec<GlobalIdeal> {
    let catalogs: Vec<(MaxId, Vec<Cut>)> =
        d.slots().iter().map(|(m, g)| (m.clone(), local_catalog(g, d.radicand()))).collect();
    let mut out = BTreeSet::new();
    out.insert(GlobalIdeal::unit());
    for (m, cat) in &catalogs {
        for c in cat {
            if let Ok(i) = d.ideal([(m.clone(), c.clone())]) {
                out.insert(i);
            }
        }
    }
    let longest = catalogs.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    for shift in 0..longest {
        for stride in 1..4 {
            let cuts = catalogs
                .iter()
                .enumerate()
                .map(|(k, (m, cat))| (m.clone(), cat[(shift + stride * k) % cat.len()].clone()));
            if let Ok(i) = d.ideal(cuts) {
                out.insert(i);
            }
        }
    }
    out.into_iter().collect()
}

/// The five equivalent conditions, each evaluated over the ideal grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pr2Report {
    /// Every `I` with `I^v ≠ R` lies in a divisorial prime.
    pub quasi_spectral: bool,
    /// `E^{v_sp} ⊆ E^v`.
    pub vsp_below_v: bool,
    /// `R = ⋂ R_Q` over divisorial primes.
    pub intersection_identity: bool,
    /// `v̄ = v_sp = v`.
    pub closures_agree: bool,
    /// `ℱ^v = ℱ(Π^v)`.
    pub localizing_systems_agree: bool,
    pub grid_size: usize,
}

impl Pr2Report {
    pub fn values(&self) -> [bool; 5] {
        [
            self.quasi_spectral,
            self.vsp_below_v,
            self.intersection_identity,
            self.closures_agree,
            self.localizing_systems_agree,
        ]
    }

    pub fn mutually_equal(&self) -> bool {
        let v = self.values();
        v.iter().all(|b| *b == v[0])
    }
}

fn contained_in_module(d: &DomainPresentation, sub: &Submodule, i: &GlobalIdeal) -> Result<bool> {
    for (m, l) in &sub.locals {
        match l {
            LocalModule::Whole => return Ok(false),
            LocalModule::Cut(c) => {
                if !c.is_subideal_of(&d.local(i, m)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn check_pr2(d: &DomainPresentation) -> Result<Pr2Report> {
    let view = LocalizingSystemView::new(d)?;
    let grid = ideal_grid(d);
    let mut divisorial_primes = Vec::new();
    for (m, g) in d.slots() {
        let mut kinds = vec![PrimeKind::Maximal];
        if g.rank() == 2 {
            kinds.push(PrimeKind::HeightOne);
        }
        for k in kinds {
            let q = prime_ideal(d, m, k)?;
            if d.is_divisorial(&q)? {
                divisorial_primes.push(q);
            }
        }
    }
    let mut report = Pr2Report {
        quasi_spectral: true,
        vsp_below_v: true,
        intersection_identity: vsp_closure(d, &GlobalIdeal::unit())?.as_ideal(d) == Some(GlobalIdeal::unit()),
        closures_agree: true,
        localizing_systems_agree: true,
        grid_size: grid.len(),
    };
    for i in &grid {
        let iv = d.v_closure(i)?;
        if !iv.is_unit() {
            let mut covered = false;
            for q in &divisorial_primes {
                if d.intersect(i, q)? == *i {
                    covered = true;
                    break;
                }
            }
            report.quasi_spectral &= covered;
        }
        let sp = vsp_closure(d, i)?;
        report.vsp_below_v &= contained_in_module(d, &sp, &iv)?;
        report.closures_agree &= vbar_closure(d, i)? == iv && sp.as_ideal(d) == Some(iv.clone());
        report.localizing_systems_agree &= view.contains(i)? == view.spectral_contains(i)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(g: ValueGroup) -> DomainPresentation {
        DomainPresentation::hlocal(2, [("M", g)]).unwrap()
    }

    #[test]
    fn vbar_examples() {
        let d = single(ValueGroup::q());
        let xm = d.ideal_from_strs(&[("M", "open(2)")]).unwrap();
        assert_eq!(vbar_closure(&d, &xm).unwrap(), d.ideal_from_strs(&[("M", "attained(2)")]).unwrap());
        let m = d.maximal("M").unwrap();
        assert!(vbar_closure(&d, &m).unwrap().is_unit());
        let root = d.ideal_from_strs(&[("M", "open(1*sqrt2)")]).unwrap();
        assert_eq!(vbar_closure(&d, &root).unwrap(), root);
    }

    #[test]
    fn vsp_examples() {
        let d = single(ValueGroup::z());
        let i = d.ideal_from_strs(&[("M", "attained(3)")]).unwrap();
        assert_eq!(vsp_closure(&d, &i).unwrap().as_ideal(&d), Some(i));
        let d = single(ValueGroup::q());
        let i = d.ideal_from_strs(&[("M", "open(3)")]).unwrap();
        assert!(vsp_closure(&d, &i).unwrap().is_field());
    }

    #[test]
    fn pr2_verdicts() {
        let all_z = DomainPresentation::hlocal(2, [("A", ValueGroup::z()), ("B", ValueGroup::lex(Level::Z, Level::Z))])
            .unwrap();
        let r = check_pr2(&all_z).unwrap();
        assert!(r.mutually_equal() && r.quasi_spectral, "{r:?}");
        let r = check_pr2(&single(ValueGroup::q())).unwrap();
        assert!(r.mutually_equal() && !r.quasi_spectral, "{r:?}");
        let mixed = DomainPresentation::hlocal(2, [("A", ValueGroup::z()), ("B", ValueGroup::lex(Level::Q, Level::Z))])
            .unwrap();
        let r = check_pr2(&mixed).unwrap();
        assert!(r.mutually_equal() && r.quasi_spectral, "{r:?}");
        let branched = single(ValueGroup::lex(Level::Z, Level::Q));
        let r = check_pr2(&branched).unwrap();
        assert!(r.mutually_equal() && !r.quasi_spectral, "{r:?}");
    }
}
