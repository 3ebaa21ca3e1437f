//! Finite Prüfer presentations and their global ideal arithmetic.
//!
//! A presentation lists the maximal ideals of a Prüfer domain together with
//! the value group of each localization. Ideals are stored as one cut per
//! maximal ideal. Two rank-2 slots may share their height-one prime; then the
//! domain is not h-local and the first-level data of any ideal must agree
//! across the sharing slots.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::quad::QuadExt;
use crate::valuation::{Coord, Cut, Level, LocalClass, LocalOp, ValueGroup};

pub type MaxId = String;

/// A nonmaximal prime lying under several maximal ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedPrime {
    pub id: String,
    pub members: BTreeSet<MaxId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainPresentation {
    radicand: u32,
    slots: BTreeMap<MaxId, ValueGroup>,
    shared: Vec<SharedPrime>,
}

/// Where a maximal ideal sits relative to an ideal `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxClass {
    /// Nondivisorial maximal ideal at which `I` is locally nondivisorial.
    InM,
    /// Nondivisorial maximal ideal at which `I` is locally divisorial.
    InMPrime,
    /// Divisorial maximal ideal containing `I`.
    InN,
    NotContaining,
}

/// The binary and unary constructions whose factorizations can be predicted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropKind {
    Product,
    Intersection,
    Sum,
    Radical,
    Trace,
}

impl PropKind {
    pub const ALL: [PropKind; 5] =
        [PropKind::Product, PropKind::Intersection, PropKind::Sum, PropKind::Radical, PropKind::Trace];

    pub fn is_binary(self) -> bool {
        matches!(self, PropKind::Product | PropKind::Intersection | PropKind::Sum)
    }

    pub fn name(self) -> &'static str {
        match self {
            PropKind::Product => "product",
            PropKind::Intersection => "intersect",
            PropKind::Sum => "sum",
            PropKind::Radical => "radical",
            PropKind::Trace => "trace",
        }
    }
}

/// A nonzero fractional ideal: one cut per maximal ideal, unit where absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobalIdeal {
    locals: BTreeMap<MaxId, Cut>,
}

impl GlobalIdeal {
    pub fn unit() -> Self {
        GlobalIdeal::default()
    }

    /// Slots where the ideal differs from the unit ideal.
    pub fn support(&self) -> impl Iterator<Item = (&MaxId, &Cut)> {
        self.locals.iter()
    }

    pub fn is_unit(&self) -> bool {
        self.locals.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.locals.values().all(Cut::is_integral)
    }

    fn insert(&mut self, m: &str, c: Cut) {
        if c.is_unit() {
            self.locals.remove(m);
        } else {
            self.locals.insert(m.to_string(), c);
        }
    }

    /// Removes a slot, leaving the unit ideal there.
    pub fn without(&self, m: &str) -> GlobalIdeal {
        let mut out = self.clone();
        out.locals.remove(m);
        out
    }
}

impl Serialize for GlobalIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.locals.serialize(s)
    }
}

impl std::fmt::Display for GlobalIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.locals.is_empty() {
            return write!(f, "unit");
        }
        let parts: Vec<String> = self.locals.iter().map(|(m, c)| format!("{m}={c}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `divisorial_part · ∏ factors` equals the input at every slot.
    pub product_matches: bool,
    /// Dropping any single factor breaks the equality.
    pub irredundant: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.product_matches && self.irredundant
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub divisorial_part: GlobalIdeal,
    pub factors: Vec<MaxId>,
    pub certificate: Certificate,
}

impl Factorization {
    /// Same divisorial part and same factor multiset.
    pub fn same_as(&self, other: &Factorization) -> bool {
        let mut a = self.factors.clone();
        let mut b = other.factors.clone();
        a.sort();
        b.sort();
        self.divisorial_part == other.divisorial_part && a == b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub trace: GlobalIdeal,
    pub invertible: bool,
    pub iv_invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorialDecomposition {
    /// Invertible part coming from the nondivisorial local factors.
    pub l: GlobalIdeal,
    /// Contribution of nondivisorial maxima where the ideal is locally divisorial.
    pub i_prime: GlobalIdeal,
    /// Contribution of divisorial maxima.
    pub j: GlobalIdeal,
}

impl DomainPresentation {
    pub fn new(radicand: u32, slots: BTreeMap<MaxId, ValueGroup>, shared: Vec<SharedPrime>) -> Result<Self> {
        if slots.is_empty() {
            return Err(AlgebraError::InvalidPresentation("no maximal ideals".into()));
        }
        let mut seen = BTreeSet::new();
        for p in &shared {
            if p.members.len() < 2 {
                return Err(AlgebraError::InvalidPresentation(format!(
                    "shared prime `{}` needs at least two members",
                    p.id
                )));
            }
            let mut first_level = None;
            for m in &p.members {
                let g = slots.get(m).ok_or_else(|| AlgebraError::UnknownSlot(m.clone()))?;
                if g.rank() != 2 {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "`{m}` shares prime `{}` but has rank {}",
                        p.id,
                        g.rank()
                    )));
                }
                if *first_level.get_or_insert(g.level(0)) != g.level(0) {
                    return Err(AlgebraError::InvalidPresentation(format!(
                        "members of `{}` disagree on the first-level group",
                        p.id
                    )));
                }
                if !seen.insert(m.clone()) {
                    return Err(AlgebraError::InvalidPresentation(format!("`{m}` belongs to two shared primes")));
                }
            }
        }
        Ok(DomainPresentation { radicand, slots, shared })
    }

    /// Presentation without shared primes.
    pub fn hlocal<I, S>(radicand: u32, slots: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, ValueGroup)>,
        S: Into<MaxId>,
    {
        let slots = slots.into_iter().map(|(m, g)| (m.into(), g)).collect();
        DomainPresentation::new(radicand, slots, Vec::new())
    }

    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    pub fn slots(&self) -> &BTreeMap<MaxId, ValueGroup> {
        &self.slots
    }

    pub fn shared_primes(&self) -> &[SharedPrime] {
        &self.shared
    }

    pub fn is_hlocal(&self) -> bool {
        self.shared.is_empty()
    }

    pub fn group(&self, m: &str) -> Result<&ValueGroup> {
        self.slots.get(m).ok_or_else(|| AlgebraError::UnknownSlot(m.to_string()))
    }

    /// Other maximal ideals sharing a height-one prime with `m`.
    pub fn sharers(&self, m: &str) -> Vec<MaxId> {
        self.shared
            .iter()
            .filter(|p| p.members.contains(m))
            .flat_map(|p| p.members.iter().filter(|n| n.as_str() != m).cloned())
            .collect()
    }

    /// Builds an ideal from slot cuts, checking groups, radicands and
    /// agreement along shared primes.
    pub fn ideal<I, S>(&self, locals: I) -> Result<GlobalIdeal>
    where
        I: IntoIterator<Item = (S, Cut)>,
        S: Into<MaxId>,
    {
        let mut out = GlobalIdeal::unit();
        for (m, c) in locals {
            let m = m.into();
            let g = self.group(&m)?;
            if c.group() != g {
                return Err(AlgebraError::GroupMismatch(g.to_string(), c.group().to_string()));
            }
            for x in c.boundary().iter().filter_map(Coord::finite) {
                if !x.is_rational() && x.radicand() != self.radicand {
                    return Err(AlgebraError::RadicandMismatch(self.radicand, x.radicand()));
                }
            }
            out.insert(&m, c);
        }
        self.check_consistency(&out)?;
        Ok(out)
    }

    /// Parses `slot=cut` pairs; a convenience for tests and examples.
    pub fn ideal_from_strs(&self, pairs: &[(&str, &str)]) -> Result<GlobalIdeal> {
        let mut cuts = Vec::new();
        for (m, s) in pairs {
            let g = self.group(m)?;
            let c = Cut::parse(g, s).map_err(|e| AlgebraError::InvalidArgument(e.to_string()))?;
            cuts.push((m.to_string(), c));
        }
        self.ideal(cuts)
    }

    pub fn local(&self, i: &GlobalIdeal, m: &str) -> Result<Cut> {
        let g = self.group(m)?;
        Ok(i.locals.get(m).cloned().unwrap_or_else(|| Cut::unit(g)))
    }

    fn local_unchecked(&self, i: &GlobalIdeal, m: &str) -> Cut {
        self.local(i, m).expect("slot of this presentation")
    }

    pub fn check_consistency(&self, i: &GlobalIdeal) -> Result<()> {
        for p in &self.shared {
            let mut reference: Option<Cut> = None;
            for m in &p.members {
                let proj = self.local_unchecked(i, m).project_level_one();
                match &reference {
                    None => reference = Some(proj),
                    Some(r) if *r != proj => return Err(AlgebraError::Inconsistent(m.clone())),
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    fn require_hlocal(&self) -> Result<()> {
        if self.is_hlocal() {
            return Ok(());
        }
        let ids: Vec<&str> = self.shared.iter().map(|p| p.id.as_str()).collect();
        Err(AlgebraError::NotHLocal(ids.join(",")))
    }

    fn slotwise(&self, i: &GlobalIdeal, f: impl Fn(&Cut) -> Result<Cut>) -> Result<GlobalIdeal> {
        let mut out = GlobalIdeal::unit();
        for m in self.slots.keys() {
            out.insert(m, f(&self.local_unchecked(i, m))?);
        }
        Ok(out)
    }

    pub fn unit(&self) -> GlobalIdeal {
        GlobalIdeal::unit()
    }

    /// The maximal ideal `m` as a global ideal.
    pub fn maximal(&self, m: &str) -> Result<GlobalIdeal> {
        let g = self.group(m)?;
        let mut out = GlobalIdeal::unit();
        out.insert(m, Cut::maximal(g));
        Ok(out)
    }

    /// The height-one prime under `m`, present at every slot sharing it.
    pub fn height_one_prime(&self, m: &str) -> Result<GlobalIdeal> {
        let g = self.group(m)?;
        let mut out = GlobalIdeal::unit();
        out.insert(m, Cut::height_one_prime(g)?);
        for n in self.sharers(m) {
            out.insert(&n, Cut::height_one_prime(self.group(&n)?)?);
        }
        Ok(out)
    }

    /// Maximal ideals `M` with `M^v = R`.
    pub fn nondivisorial_maxima(&self) -> Vec<MaxId> {
        self.slots.iter().filter(|(_, g)| !g.maximal_is_divisorial()).map(|(m, _)| m.clone()).collect()
    }

    pub fn classify_max(&self, i: &GlobalIdeal, m: &str) -> Result<MaxClass> {
        let g = self.group(m)?;
        let c = self.local(i, m)?;
        if !c.is_integral() {
            return Err(AlgebraError::NotIntegral(format!("{m}={c}")));
        }
        if c.is_unit() {
            return Ok(MaxClass::NotContaining);
        }
        Ok(if g.maximal_is_divisorial() {
            MaxClass::InN
        } else if c.classify() == LocalClass::Nondivisorial {
            MaxClass::InM
        } else {
            MaxClass::InMPrime
        })
    }

    /// Nondivisorial maxima at which `I` is locally nondivisorial. Works for
    /// fractional ideals too.
    pub fn frak_m(&self, i: &GlobalIdeal) -> Vec<MaxId> {
        self.slots
            .iter()
            .filter(|(m, g)| {
                !g.maximal_is_divisorial() && self.local_unchecked(i, m).classify() == LocalClass::Nondivisorial
            })
            .map(|(m, _)| m.clone())
            .collect()
    }

    pub fn combine(&self, op: LocalOp, i: &GlobalIdeal, j: &GlobalIdeal) -> Result<GlobalIdeal> {
        for m in i.locals.keys().chain(j.locals.keys()) {
            self.group(m)?;
        }
        let mut out = GlobalIdeal::unit();
        for m in self.slots.keys() {
            let c = Cut::combine(op, &self.local_unchecked(i, m), &self.local_unchecked(j, m))?;
            out.insert(m, c);
        }
        self.check_consistency(&out)?;
        Ok(out)
    }

    pub fn product(&self, i: &GlobalIdeal, j: &GlobalIdeal) -> Result<GlobalIdeal> {
        self.combine(LocalOp::Product, i, j)
    }

    pub fn sum(&self, i: &GlobalIdeal, j: &GlobalIdeal) -> Result<GlobalIdeal> {
        self.combine(LocalOp::Sum, i, j)
    }

    pub fn intersect(&self, i: &GlobalIdeal, j: &GlobalIdeal) -> Result<GlobalIdeal> {
        self.combine(LocalOp::Intersect, i, j)
    }

    /// `rad I` for an integral proper ideal.
    pub fn radical(&self, i: &GlobalIdeal) -> Result<GlobalIdeal> {
        if !i.is_integral() {
            return Err(AlgebraError::NotIntegral(i.to_string()));
        }
        if i.is_unit() {
            return Err(AlgebraError::UnitRadical);
        }
        self.radical_or_unit(i)
    }

    fn radical_or_unit(&self, i: &GlobalIdeal) -> Result<GlobalIdeal> {
        self.slotwise(i, |c| if c.is_unit() { Ok(c.clone()) } else { c.radical() })
    }

    /// `(R : I)`.
    pub fn vdual(&self, i: &GlobalIdeal) -> Result<GlobalIdeal> {
        self.require_hlocal()?;
        self.slotwise(i, |c| Ok(c.inverse()))
    }

    /// `I^v`, computed slot by slot.
    pub fn v_closure(&self, i: &GlobalIdeal) -> Result<GlobalIdeal> {
        self.require_hlocal()?;
        self.slotwise(i, |c| Ok(c.v_closure()))
    }

    pub fn is_divisorial(&self, i: &GlobalIdeal) -> Result<bool> {
        Ok(self.v_closure(i)? == *i)
    }

    pub fn is_locally_divisorial(&self, i: &GlobalIdeal) -> bool {
        i.locals.values().all(Cut::is_divisorial)
    }

    /// `I · I⁻¹`.
    pub fn trace(&self, i: &GlobalIdeal) -> Result<GlobalIdeal> {
        self.product(i, &self.vdual(i)?)
    }

    pub fn trace_and_invertibility(&self, i: &GlobalIdeal) -> Result<TraceReport> {
        let inv = self.vdual(i)?;
        let trace = self.product(i, &inv)?;
        let iv_trace = self.product(&self.v_closure(i)?, &inv)?;
        Ok(TraceReport { invertible: trace.is_unit(), iv_invertible: iv_trace.is_unit(), trace })
    }

    /// Multiplies `i` by the product of the maximal ideals in `factors`.
    pub fn times_maxima(&self, i: &GlobalIdeal, factors: &[MaxId]) -> Result<GlobalIdeal> {
        let mut acc = i.clone();
        for m in factors {
            acc = self.product(&acc, &self.maximal(m)?)?;
        }
        Ok(acc)
    }

    /// Checks `part · ∏ factors = input` and irredundancy by deletion.
    pub fn certify(&self, input: &GlobalIdeal, part: &GlobalIdeal, factors: &[MaxId]) -> Result<Certificate> {
        let product_matches = self.times_maxima(part, factors)? == *input;
        let mut irredundant = true;
        for k in 0..factors.len() {
            let mut fewer = factors.to_vec();
            fewer.remove(k);
            if self.times_maxima(part, &fewer)? == *input {
                irredundant = false;
                break;
            }
        }
        Ok(Certificate { product_matches, irredundant })
    }

    fn factorization(&self, input: &GlobalIdeal, part: GlobalIdeal, factors: Vec<MaxId>) -> Result<Factorization> {
        let certificate = self.certify(input, &part, &factors)?;
        Ok(Factorization { divisorial_part: part, factors, certificate })
    }

    /// `I = I^v · M₁ ⋯ Mₙ` with the `Mᵢ` exactly the nondivisorial maxima at
    /// which `I` is locally nondivisorial.
    pub fn strong_factorize(&self, i: &GlobalIdeal) -> Result<Factorization> {
        self.require_hlocal()?;
        if !i.is_integral() {
            return self.factorize_fractional(i);
        }
        let part = self.v_closure(i)?;
        self.factorization(i, part, self.frak_m(i))
    }

    /// Least `n ≥ 0` such that an element of value `n` at every first level
    /// clears the denominators of `i`.
    pub fn denominator(&self, i: &GlobalIdeal) -> i128 {
        i.locals.values().filter(|c| !c.is_integral()).map(|c| (-c.lead().clone()).floor() + 1).max().unwrap_or(0)
    }

    /// Multiplies by an element of value `n` at every first level.
    pub fn shift(&self, i: &GlobalIdeal, n: i128) -> Result<GlobalIdeal> {
        self.slotwise(i, |c| {
            let mut point = vec![QuadExt::integer(n)];
            if c.group().rank() == 2 {
                point.push(QuadExt::zero());
            }
            c.product(&Cut::principal(c.group(), &point)?)
        })
    }

    fn factorize_fractional(&self, f: &GlobalIdeal) -> Result<Factorization> {
        let n = self.denominator(f);
        let integral = self.shift(f, n)?;
        let inner = self.strong_factorize(&integral)?;
        let part = self.shift(&inner.divisorial_part, -n)?;
        self.factorization(f, part, inner.factors)
    }

    /// The ideal obtained by applying `kind`.
    pub fn direct(&self, kind: PropKind, i: &GlobalIdeal, j: Option<&GlobalIdeal>) -> Result<GlobalIdeal> {
        let other = || j.ok_or_else(|| AlgebraError::MissingOperand(kind.name().into()));
        match kind {
            PropKind::Product => self.product(i, other()?),
            PropKind::Intersection => self.intersect(i, other()?),
            PropKind::Sum => self.sum(i, other()?),
            PropKind::Radical => self.radical(i),
            PropKind::Trace => self.trace(i),
        }
    }

    /// Nondivisorial maxima where `a` and `b` are locally divisorial but
    /// `combined` is not.
    fn p_set(&self, a: &GlobalIdeal, b: &GlobalIdeal, combined: &GlobalIdeal) -> Vec<MaxId> {
        let fm = self.frak_m(combined);
        fm.into_iter()
            .filter(|m| self.local_unchecked(a, m).is_divisorial() && self.local_unchecked(b, m).is_divisorial())
            .collect()
    }

    /// The factorization of `kind(i, j)` read off from the factorizations of
    /// `i` and `j`, with the divisorial part computed from `i^v` and `j^v`.
    pub fn predict_factorization(
        &self,
        kind: PropKind,
        i: &GlobalIdeal,
        j: Option<&GlobalIdeal>,
    ) -> Result<Factorization> {
        self.require_hlocal()?;
        if kind.is_binary() && j.is_none() {
            return Err(AlgebraError::MissingOperand(kind.name().into()));
        }
        let fi: BTreeSet<MaxId> = self.strong_factorize(i)?.factors.into_iter().collect();
        let iv = self.v_closure(i)?;
        let (part, factors) = match kind {
            PropKind::Product | PropKind::Intersection | PropKind::Sum => {
                let j = j.unwrap();
                let fj: BTreeSet<MaxId> = self.strong_factorize(j)?.factors.into_iter().collect();
                let jv = self.v_closure(j)?;
                let h: BTreeSet<MaxId> = fi.intersection(&fj).cloned().collect();
                let only_i: Vec<&MaxId> = fi.difference(&h).collect();
                let only_j: Vec<&MaxId> = fj.difference(&h).collect();
                let loc = |x: &GlobalIdeal, m: &str| self.local_unchecked(x, m);
                let mut factors: Vec<MaxId> = h.iter().cloned().collect();
                match kind {
                    PropKind::Product => {
                        factors.extend(only_i.iter().filter(|m| loc(j, m).is_principal()).map(|m| (*m).clone()));
                        factors.extend(only_j.iter().filter(|m| loc(i, m).is_principal()).map(|m| (*m).clone()));
                        let ij = self.product(i, j)?;
                        factors.extend(self.p_set(i, j, &ij));
                        (self.v_closure(&self.product(&iv, &jv)?)?, factors)
                    }
                    PropKind::Intersection => {
                        factors.extend(only_i.iter().filter(|m| loc(i, m) >= loc(j, m)).map(|m| (*m).clone()));
                        factors.extend(only_j.iter().filter(|m| loc(j, m) >= loc(i, m)).map(|m| (*m).clone()));
                        (self.intersect(&iv, &jv)?, factors)
                    }
                    _ => {
                        factors.extend(only_i.iter().filter(|m| loc(i, m) < loc(j, m)).map(|m| (*m).clone()));
                        factors.extend(only_j.iter().filter(|m| loc(j, m) < loc(i, m)).map(|m| (*m).clone()));
                        (self.sum(&iv, &jv)?, factors)
                    }
                }
            }
            PropKind::Radical => {
                if i.is_unit() {
                    return Err(AlgebraError::UnitRadical);
                }
                let minimal = |m: &str| -> bool {
                    let c = self.local_unchecked(i, m);
                    c.is_proper() && c.radical().map(|r| r == Cut::maximal(c.group())).unwrap_or(false)
                };
                let mut factors: Vec<MaxId> = fi.iter().filter(|m| minimal(m)).cloned().collect();
                for m in self.nondivisorial_maxima() {
                    if minimal(&m) && self.local_unchecked(i, &m).is_divisorial() {
                        factors.push(m);
                    }
                }
                (self.v_closure(&self.radical_or_unit(&iv)?)?, factors)
            }
            PropKind::Trace => {
                let inv = self.vdual(i)?;
                let trace = self.product(i, &inv)?;
                let mut factors: Vec<MaxId> = fi.iter().cloned().collect();
                for m in self.frak_m(&trace) {
                    if !fi.contains(&m) && self.local_unchecked(i, &m).is_divisorial() {
                        factors.push(m);
                    }
                }
                (self.v_closure(&self.product(&iv, &inv)?)?, factors)
            }
        };
        let mut factors = factors;
        factors.sort();
        factors.dedup();
        let input = self.direct(kind, i, j)?;
        self.factorization(&input, part, factors)
    }

    /// `I^v J^v = (IJ)^v · P₁ ⋯ P_u` where the `Pᵢ` are the nondivisorial
    /// maxima at which `I`, `J` are divisorial but `IJ` is not.
    pub fn predict_closure_product(&self, i: &GlobalIdeal, j: &GlobalIdeal) -> Result<Factorization> {
        self.require_hlocal()?;
        let ij = self.product(i, j)?;
        let input = self.product(&self.v_closure(i)?, &self.v_closure(j)?)?;
        let part = self.v_closure(&ij)?;
        self.factorization(&input, part, self.p_set(i, j, &ij))
    }

    /// `J = I·R_M ∩ R`.
    pub fn contract_localization(&self, i: &GlobalIdeal, m: &str) -> Result<GlobalIdeal> {
        self.contract_cut(m, &self.local(i, m)?)
    }

    /// `c ∩ R` for an integral cut `c` of the valuation domain at `m`.
    pub fn contract_cut(&self, m: &str, c: &Cut) -> Result<GlobalIdeal> {
        if c.group() != self.group(m)? {
            return Err(AlgebraError::GroupMismatch(c.group().to_string(), self.group(m)?.to_string()));
        }
        let c = c.clone();
        if !c.is_integral() {
            return Err(AlgebraError::NotIntegral(format!("{m}={c}")));
        }
        let mut out = GlobalIdeal::unit();
        out.insert(m, c.clone());
        for n in self.sharers(m) {
            let g = self.group(&n)?;
            let relaxed = c.relax_to_level_one()?;
            // Same first-level data, read in the other slot's group.
            let moved = Cut::new(g.clone(), relaxed.boundary().to_vec(), relaxed.is_attained())?;
            out.insert(&n, moved.intersect(&Cut::unit(g))?);
        }
        self.check_consistency(&out)?;
        Ok(out)
    }

    /// `I^v = L · I' · J` following the partition of the maximal ideals
    /// containing `I`.
    pub fn decompose_divisorial(&self, i: &GlobalIdeal) -> Result<DivisorialDecomposition> {
        self.require_hlocal()?;
        let mut out =
            DivisorialDecomposition { l: GlobalIdeal::unit(), i_prime: GlobalIdeal::unit(), j: GlobalIdeal::unit() };
        for (m, c) in &i.locals {
            match self.classify_max(i, m)? {
                MaxClass::InM => out.l.insert(m, c.v_closure()),
                MaxClass::InMPrime => out.i_prime.insert(m, c.clone()),
                MaxClass::InN => out.j.insert(m, c.clone()),
                MaxClass::NotContaining => {}
            }
        }
        Ok(out)
    }

    /// A finitely generated `J ⊆ I^v` with `I + J = I^v`.
    pub fn complementary_generators(&self, i: &GlobalIdeal) -> Result<GlobalIdeal> {
        let iv = self.v_closure(i)?;
        self.slotwise(&iv, |c| Ok(principal_inside(c)))
    }
}

/// A principal cut contained in `c`, equal to `c` when `c` is principal.
pub fn principal_inside(c: &Cut) -> Cut {
    if c.is_principal() {
        return c.clone();
    }
    let g = c.group();
    let step = |x: &QuadExt| QuadExt::integer(x.floor() + 1);
    let point = if c.is_level_one() {
        let x = c.lead();
        let lead = if c.is_attained() { x.clone() + QuadExt::integer(1) } else { step(x) };
        vec![lead, QuadExt::zero()]
    } else {
        let mut pts: Vec<QuadExt> = c.boundary().iter().map(|b| b.finite().unwrap().clone()).collect();
        let last = pts.pop().unwrap();
        let bumped = match g.last() {
            Level::Z => last + QuadExt::integer(1),
            Level::Q => step(&last),
        };
        pts.push(bumped);
        pts
    };
    Cut::principal(g, &point).expect("realizable point")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_slot() -> DomainPresentation {
        DomainPresentation::hlocal(2, [("M1", ValueGroup::q()), ("M2", ValueGroup::z())]).unwrap()
    }

    #[test]
    fn closure_of_two_slot_ideal() {
        let d = two_slot();
        let i = d.ideal_from_strs(&[("M1", "open(1)"), ("M2", "attained(2)")]).unwrap();
        let iv = d.v_closure(&i).unwrap();
        assert_eq!(iv, d.ideal_from_strs(&[("M1", "attained(1)"), ("M2", "attained(2)")]).unwrap());
        let f = d.strong_factorize(&i).unwrap();
        assert_eq!(f.factors, vec!["M1".to_string()]);
        assert!(f.certificate.holds());
    }

    #[test]
    fn radical_of_two_maxima() {
        let d = DomainPresentation::hlocal(2, [("M1", ValueGroup::q()), ("M2", ValueGroup::q())]).unwrap();
        let i = d.ideal_from_strs(&[("M1", "open(0)"), ("M2", "open(0)")]).unwrap();
        let f = d.strong_factorize(&i).unwrap();
        assert!(f.divisorial_part.is_unit());
        assert_eq!(f.factors, vec!["M1".to_string(), "M2".to_string()]);
        assert!(f.certificate.holds());
    }

    #[test]
    fn classify_examples() {
        let d = two_slot();
        let i = d.ideal_from_strs(&[("M1", "open(2)"), ("M2", "attained(1)")]).unwrap();
        assert_eq!(d.classify_max(&i, "M1").unwrap(), MaxClass::InM);
        assert_eq!(d.classify_max(&i, "M2").unwrap(), MaxClass::InN);
        let j = d.ideal_from_strs(&[("M1", "attained(1)")]).unwrap();
        assert_eq!(d.classify_max(&j, "M1").unwrap(), MaxClass::InMPrime);
        assert_eq!(d.classify_max(&j, "M2").unwrap(), MaxClass::NotContaining);
        assert!(matches!(d.classify_max(&j, "X"), Err(AlgebraError::UnknownSlot(_))));
    }

    #[test]
    fn sqrt_two_trace() {
        let d = DomainPresentation::hlocal(2, [("M", ValueGroup::q())]).unwrap();
        let i = d.ideal_from_strs(&[("M", "open(1*sqrt2)")]).unwrap();
        assert!(d.is_divisorial(&i).unwrap());
        let inv = d.vdual(&i).unwrap();
        assert_eq!(inv, d.ideal_from_strs(&[("M", "open(-1*sqrt2)")]).unwrap());
        let f = d.predict_factorization(PropKind::Product, &i, Some(&inv)).unwrap();
        assert!(f.divisorial_part.is_unit());
        assert_eq!(f.factors, vec!["M".to_string()]);
        assert!(f.certificate.holds());
    }

    #[test]
    fn trace_of_xm() {
        let d = DomainPresentation::hlocal(2, [("M", ValueGroup::q())]).unwrap();
        let i = d.ideal_from_strs(&[("M", "open(3)")]).unwrap();
        let t = d.trace_and_invertibility(&i).unwrap();
        assert_eq!(t.trace, d.maximal("M").unwrap());
        assert!(!t.invertible);
        assert!(t.iv_invertible);
    }

    #[test]
    fn decomposition_of_xm() {
        let d = DomainPresentation::hlocal(2, [("M", ValueGroup::q())]).unwrap();
        let i = d.ideal_from_strs(&[("M", "open(3)")]).unwrap();
        let dec = d.decompose_divisorial(&i).unwrap();
        assert_eq!(dec.l, d.ideal_from_strs(&[("M", "attained(3)")]).unwrap());
        assert!(dec.i_prime.is_unit() && dec.j.is_unit());
    }

    #[test]
    fn fractional_factorization() {
        let d = two_slot();
        let f = d.ideal_from_strs(&[("M1", "open(-5/2)"), ("M2", "attained(-1)")]).unwrap();
        let fac = d.strong_factorize(&f).unwrap();
        assert_eq!(fac.factors, vec!["M1".to_string()]);
        assert_eq!(fac.divisorial_part, d.v_closure(&f).unwrap());
        assert!(fac.certificate.holds());
    }

    #[test]
    fn shared_prime_consistency() {
        let zz = ValueGroup::lex(Level::Z, Level::Z);
        let slots = [("M".to_string(), zz.clone()), ("N".to_string(), zz)].into_iter().collect();
        let p = SharedPrime { id: "P".into(), members: ["M".to_string(), "N".to_string()].into_iter().collect() };
        let d = DomainPresentation::new(2, slots, vec![p]).unwrap();
        assert!(!d.is_hlocal());
        assert!(matches!(d.ideal_from_strs(&[("M", "attained(1,0)")]), Err(AlgebraError::Inconsistent(_))));
        let i = d.ideal_from_strs(&[("M", "attained(1,0)"), ("N", "attained(1,0)")]).unwrap();
        let j = d.contract_localization(&i, "M").unwrap();
        assert_eq!(j, d.ideal_from_strs(&[("M", "attained(1,0)"), ("N", "attained(1,-inf)")]).unwrap());
        assert!(d.is_locally_divisorial(&j));
        assert!(matches!(d.v_closure(&j), Err(AlgebraError::NotHLocal(_))));
    }

    #[test]
    fn principal_inside_is_inside() {
        let qq = ValueGroup::lex(Level::Q, Level::Q);
        for s in ["open(1*sqrt2,-inf)", "attained(1,-inf)", "open(0,1*sqrt2)", "open(1,2)"] {
            let c = Cut::parse(&qq, s).unwrap();
            let p = principal_inside(&c);
            assert!(p.is_principal() && p.is_subideal_of(&c), "{s} -> {p}");
        }
    }
}
