//! Ideals of a family presentation and their profiles.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::quad::{int, Rational};
use crate::valuation::Cut;

use super::monomial::{Monomial, Symbol};
use super::profile::{FamilyProfile, IdealProfile};
use super::{ADMax, FamilyPresentation, StepKind};

/// The indices `start, start + step, start + 2·step, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub start: u32,
    pub step: u32,
}

impl Progression {
    pub fn new(start: u32, step: u32) -> Result<Self> {
        if step == 0 {
            return Err(AlgebraError::InvalidArgument("progression step must be positive".into()));
        }
        Ok(Progression { start, step })
    }

    pub fn contains(&self, i: u32) -> bool {
        i >= self.start && (i - self.start).is_multiple_of(self.step)
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.step)
    }
}

/// The ideal generated by `base · ∏_{j ∈ ap, j ≤ k} X_j^e · T_{k+s}^f` for
/// all `k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub family: u32,
    pub ap: Progression,
    pub e: i64,
    pub f: i64,
    pub s: u32,
    pub base: Monomial,
}

impl Pattern {
    /// Generators `T_k` of the limit maximal ideal.
    pub fn limit_maximal(family: u32) -> Pattern {
        Pattern { family, ap: Progression { start: 1, step: 1 }, e: 0, f: 1, s: 0, base: Monomial::one() }
    }

    /// The `k`-th generator.
    pub fn instance(&self, k: u32) -> Monomial {
        let mut m = self.base.clone();
        let mut j = self.ap.start;
        while j <= k {
            m = m.times(Symbol::X { family: self.family, index: j }, self.e);
            j += self.ap.step;
        }
        m.times(Symbol::T { family: self.family, level: k + self.s }, self.f)
    }

    fn generator_value(&self, kind: StepKind, i: u32, k: u32) -> i128 {
        let x = if self.ap.contains(i) && i <= k { self.e as i128 } else { 0 };
        let level = k + self.s;
        let t = match kind {
            StepKind::Unit => i > level,
            StepKind::Dyadic => i >= level,
        };
        let t = if !t {
            0
        } else if kind == StepKind::Unit {
            self.f as i128
        } else {
            (self.f as i128) << (i - level)
        };
        x + t
    }

    fn own_profile(&self, kind: StepKind) -> FamilyProfile {
        let value = |i: u32| (0..=i + 1).map(|k| self.generator_value(kind, i, k)).min().unwrap();
        let g = kind.limit_group();
        let limit = match kind {
            StepKind::Unit => Cut::rank1(&g, self.f as i128, true),
            StepKind::Dyadic => Cut::rank1(&g, 0, self.f == 0),
        };
        let start = self.ap.start.max(1) + 1;
        periodic_profile(kind, start, self.ap.step, value, limit)
    }

    fn validate(&self, p: &FamilyPresentation) -> Result<()> {
        let kind = p.kind(self.family)?;
        if self.e < 0 || self.f < 0 {
            return Err(AlgebraError::InvalidArgument("pattern exponents must be nonnegative".into()));
        }
        if kind == StepKind::Unit && self.ap.start == 0 {
            return Err(AlgebraError::InvalidArgument("unit families have no index 0".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pattern family={} ap={} e={} f={} s={} base={}",
            self.family, self.ap, self.e, self.f, self.s, self.base
        )
    }
}

/// An ideal given by its local values on one family: `default` at every
/// principal index, `ap_value` on a progression, explicit overrides, and a
/// limit cut. The ideal is the set of elements meeting all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSpec {
    pub family: u32,
    pub limit: Cut,
    pub default: i128,
    pub ap: Option<(Progression, i128)>,
    pub at: BTreeMap<u32, i128>,
}

impl LocalSpec {
    fn own_profile(&self, kind: StepKind) -> Result<FamilyProfile> {
        if self.limit.group() != &kind.limit_group() {
            return Err(AlgebraError::GroupMismatch(self.limit.group().to_string(), kind.limit_group().to_string()));
        }
        let value = |i: u32| match (self.at.get(&i), &self.ap) {
            (Some(v), _) => *v,
            (None, Some((ap, v))) if ap.contains(i) => *v,
            _ => self.default,
        };
        let start = self.at.keys().next_back().map_or(0, |k| k + 1);
        let start = start.max(self.ap.map_or(0, |(ap, _)| ap.start)).max(kind.first_index());
        let period = self.ap.map_or(1, |(ap, _)| ap.step);
        periodic_profile(kind, start, period, value, self.limit.clone()).hull()
    }
}

impl fmt::Display for LocalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "local family={} default={} limit={}", self.family, self.default, self.limit)?;
        if let Some((ap, v)) = &self.ap {
            write!(f, " ap={ap}:{v}")?;
        }
        if !self.at.is_empty() {
            let at: Vec<String> = self.at.iter().map(|(i, v)| format!("{i}:{v}")).collect();
            write!(f, " at={}", at.join(";"))?;
        }
        Ok(())
    }
}

/// Builds a profile with integer tail `value(i)` for `i ≥ start`.
fn periodic_profile(kind: StepKind, start: u32, period: u32, value: impl Fn(u32) -> i128, limit: Cut) -> FamilyProfile {
    let start = start.max(kind.first_index());
    let prefix = (kind.first_index()..start).map(&value).collect();
    let mut tail = vec![(Rational::zero(), 0); period as usize];
    for i in start..start + period {
        tail[(i % period) as usize] = (Rational::zero(), value(i));
    }
    FamilyProfile::new(kind, prefix, tail, limit)
}

/// Profile of a monomial on one family.
pub fn monomial_profile(m: &Monomial, family: u32, kind: StepKind) -> FamilyProfile {
    let mut xs = BTreeMap::new();
    let mut ts = BTreeMap::new();
    for (s, e) in m.exponents() {
        match *s {
            Symbol::X { family: f, index } if f == family => {
                xs.insert(index, *e as i128);
            }
            Symbol::T { family: f, level } if f == family => {
                ts.insert(level, *e as i128);
            }
            _ => {}
        }
    }
    let first = kind.first_index();
    let start =
        xs.keys().next_back().map_or(first, |i| i + 1).max(ts.keys().next_back().map_or(first, |k| k + 1)).max(first);
    let value = |i: u32| -> i128 {
        let x = xs.get(&i).copied().unwrap_or(0);
        let t: i128 = ts
            .iter()
            .map(|(k, c)| match kind {
                StepKind::Unit if i > *k => *c,
                StepKind::Dyadic if i >= *k => c << (i - k),
                _ => 0,
            })
            .sum();
        x + t
    };
    let prefix = (first..start).map(value).collect();
    let g = kind.limit_group();
    match kind {
        StepKind::Unit => {
            let b: i128 = ts.values().sum();
            FamilyProfile::new(kind, prefix, vec![(Rational::zero(), b)], Cut::rank1(&g, b, true))
        }
        StepKind::Dyadic => {
            let a: Rational = ts.iter().map(|(k, c)| Rational::new(*c, 1i128 << k)).sum();
            FamilyProfile::new(kind, prefix, vec![(a, 0)], Cut::rank1(&g, a, true))
        }
    }
}

/// An ideal of a family presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ADIdeal {
    Gens(Vec<Monomial>),
    Pattern(Pattern),
    Local(LocalSpec),
    Sum(Vec<ADIdeal>),
    Product(Vec<ADIdeal>),
    Intersect(Vec<ADIdeal>),
}

impl ADIdeal {
    pub fn unit() -> ADIdeal {
        ADIdeal::Gens(vec![Monomial::one()])
    }

    pub fn principal(m: Monomial) -> ADIdeal {
        ADIdeal::Gens(vec![m])
    }

    /// The limit maximal ideal of a family.
    pub fn limit_maximal(family: u32) -> ADIdeal {
        ADIdeal::Pattern(Pattern::limit_maximal(family))
    }

    /// The principal maximal ideal `M{family}_{index}`, generated by its `X`.
    pub fn principal_maximal(family: u32, index: u32) -> ADIdeal {
        ADIdeal::principal(Monomial::x(family, index))
    }

    pub fn maximal(m: ADMax) -> ADIdeal {
        match m {
            ADMax::Principal { family, index } => ADIdeal::principal_maximal(family, index),
            ADMax::Limit { family } => ADIdeal::limit_maximal(family),
        }
    }

    pub fn profile(&self, p: &FamilyPresentation) -> Result<IdealProfile> {
        let unit =
            || IdealProfile { families: p.families().iter().map(|f| (f.id, FamilyProfile::unit(f.kind))).collect() };
        let fold = |parts: &[ADIdeal], f: fn(&IdealProfile, &IdealProfile) -> Result<IdealProfile>| {
            let mut it = parts.iter();
            let first =
                it.next().ok_or_else(|| AlgebraError::InvalidArgument("empty ideal expression".into()))?.profile(p)?;
            it.try_fold(first, |acc, x| f(&acc, &x.profile(p)?))
        };
        match self {
            ADIdeal::Gens(gens) => {
                let mut acc: Option<IdealProfile> = None;
                for m in gens {
                    m.min_level(p)?;
                    let prof = IdealProfile {
                        families: p.families().iter().map(|f| (f.id, monomial_profile(m, f.id, f.kind))).collect(),
                    };
                    acc = Some(match acc {
                        None => prof,
                        Some(a) => a.sum(&prof)?,
                    });
                }
                acc.ok_or_else(|| AlgebraError::InvalidArgument("no generators".into()))
            }
            ADIdeal::Pattern(pat) => {
                pat.validate(p)?;
                let kind = p.kind(pat.family)?;
                let mut prof = unit();
                prof.families.insert(pat.family, pat.own_profile(kind));
                prof.product(&ADIdeal::principal(pat.base.clone()).profile(p)?)
            }
            ADIdeal::Local(spec) => {
                let kind = p.kind(spec.family)?;
                let mut prof = unit();
                prof.families.insert(spec.family, spec.own_profile(kind)?);
                Ok(prof)
            }
            ADIdeal::Sum(parts) => fold(parts, IdealProfile::sum),
            ADIdeal::Product(parts) => fold(parts, IdealProfile::product),
            ADIdeal::Intersect(parts) => fold(parts, IdealProfile::intersect),
        }
    }
}

impl fmt::Display for ADIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nested = |f: &mut fmt::Formatter<'_>, head: &str, parts: &[ADIdeal]| {
            write!(f, "{head}")?;
            parts.iter().try_for_each(|x| write!(f, " [{x}]"))
        };
        match self {
            ADIdeal::Gens(g) => {
                let gens: Vec<String> = g.iter().map(|m| m.to_string()).collect();
                write!(f, "gens {}", gens.join(" "))
            }
            ADIdeal::Pattern(p) => write!(f, "{p}"),
            ADIdeal::Local(l) => write!(f, "{l}"),
            ADIdeal::Sum(parts) => nested(f, "sum", parts),
            ADIdeal::Product(parts) => nested(f, "product", parts),
            ADIdeal::Intersect(parts) => nested(f, "intersect", parts),
        }
    }
}

/// `I = I^v · ∏ M_n^{t_n}` over limit maximal ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakFactorization {
    pub divisorial_part: IdealProfile,
    /// Exponent of each limit maximal ideal; zero exponents are omitted.
    pub exponents: BTreeMap<u32, i128>,
    /// The product reproduces the ideal exactly.
    pub certified: bool,
    /// `I` and `I^v` agree at every principal maximal ideal.
    pub principal_values_agree: bool,
}

impl WeakFactorization {
    /// Maxima at which the ideal is not divisorial.
    pub fn nondivisorial_support(&self) -> Vec<ADMax> {
        self.exponents.keys().map(|f| ADMax::Limit { family: *f }).collect()
    }
}

fn limit_integer(c: &Cut) -> Result<i128> {
    let x = c.lead();
    if !c.is_attained() || !x.is_integer() {
        return Err(AlgebraError::InvalidArgument(format!("limit cut {c} is not discrete")));
    }
    Ok(x.floor())
}

/// Factors an integral ideal of a presentation with unit families only.
pub fn weak_factorize(p: &FamilyPresentation, i: &ADIdeal) -> Result<WeakFactorization> {
    if p.has_dyadic() {
        return Err(AlgebraError::InvalidArgument("weak factorization needs unit families only".into()));
    }
    let prof = i.profile(p)?;
    if !prof.is_integral() {
        return Err(AlgebraError::NotIntegral(i.to_string()));
    }
    let iv = prof.v_closure()?;
    let mut exponents = BTreeMap::new();
    let mut product = iv.clone();
    let mut agree = true;
    for f in p.families() {
        let r = limit_integer(prof.family(f.id).limit())?;
        let s = limit_integer(iv.family(f.id).limit())?;
        let t = r - s;
        if t < 0 {
            return Err(AlgebraError::InvalidArgument(format!("closure exceeds the ideal at M{}", f.id)));
        }
        if t > 0 {
            exponents.insert(f.id, t);
            let m = ADIdeal::limit_maximal(f.id).profile(p)?;
            for _ in 0..t {
                product = product.product(&m)?;
            }
        }
        let (a, b) = (prof.family(f.id), iv.family(f.id));
        let end = a.tail_start().max(b.tail_start()) + (a.period() * b.period()) as u32;
        agree &= a.values_until(end) == b.values_until(end);
    }
    Ok(WeakFactorization { certified: product == prof, divisorial_part: iv, exponents, principal_values_agree: agree })
}

/// An ideal with limit value `r_n` and closure limit value `s_n` on each
/// listed family: `∏ T_{n,0}^{s_n} · M_n^{r_n - s_n}`.
pub fn construct_arbitrary(p: &FamilyPresentation, targets: &BTreeMap<u32, (u32, u32)>) -> Result<ADIdeal> {
    let mut parts = Vec::new();
    for (&family, &(r, s)) in targets {
        if p.kind(family)? != StepKind::Unit {
            return Err(AlgebraError::InvalidArgument(format!("family {family} is not a unit family")));
        }
        if s > r {
            return Err(AlgebraError::InvalidArgument(format!(
                "closure value {s} exceeds ideal value {r} on family {family}"
            )));
        }
        parts.push(ADIdeal::principal(Monomial::t(family, 0).pow(s as i64)));
        parts.extend((s..r).map(|_| ADIdeal::limit_maximal(family)));
    }
    if parts.is_empty() {
        return Ok(ADIdeal::unit());
    }
    Ok(ADIdeal::Product(parts))
}

fn symbols(p: &FamilyPresentation, k: u32) -> Vec<Symbol> {
    let mut out = Vec::new();
    for f in p.families() {
        let top = match f.kind {
            StepKind::Unit => k + 1,
            StepKind::Dyadic => k,
        };
        for index in f.kind.first_index()..top {
            out.push(Symbol::X { family: f.id, index });
        }
        out.push(Symbol::T { family: f.id, level: k });
    }
    out
}

/// Monomials in the level-`k` generators with at most two symbols and
/// exponents in `exps`.
pub fn small_monomials(p: &FamilyPresentation, k: u32, exps: &[i64]) -> Vec<Monomial> {
    let syms = symbols(p, k);
    let mut out = vec![Monomial::one()];
    for (a, s) in syms.iter().enumerate() {
        for e in exps {
            let m = Monomial::symbol(*s).pow(*e);
            out.push(m.clone());
            for t in &syms[a + 1..] {
                for d in exps {
                    out.push(m.mul(&Monomial::symbol(*t).pow(*d)));
                }
            }
        }
    }
    out
}

/// Whether the maximal ideal is sharp, i.e. contains an element lying in no
/// other maximal ideal. Searches small monomials at level `k`; limit maximal
/// ideals are never sharp since every element there lies in infinitely many
/// principal maxima.
pub fn is_sharp(p: &FamilyPresentation, m: ADMax, k: u32) -> Result<bool> {
    p.kind(m.family())?;
    for u in small_monomials(p, k, &[1, 2]) {
        let prof = ADIdeal::principal(u).profile(p)?;
        if witnesses_only(&prof, m) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn witnesses_only(prof: &IdealProfile, m: ADMax) -> bool {
    prof.families.iter().all(|(f, fp)| {
        let support = fp.finite_support();
        match m {
            ADMax::Principal { family, index } if family == *f => {
                support.as_deref() == Some(&[index][..]) && fp.limit().is_unit()
            }
            ADMax::Limit { family } if family == *f => false,
            _ => support.as_deref() == Some(&[][..]) && fp.limit().is_unit(),
        }
    })
}

/// Searches small Laurent monomials `u` with `u·I ⊆ R` and returns those that
/// are not integral.
pub fn nonintegral_duals(p: &FamilyPresentation, i: &ADIdeal, k: u32) -> Result<(usize, Vec<Monomial>)> {
    let prof = i.profile(p)?;
    let candidates = small_monomials(p, k, &[-2, -1, 1, 2]);
    let mut bad = Vec::new();
    for u in &candidates {
        let up = ADIdeal::principal(u.clone()).profile(p)?;
        if up.product(&prof)?.is_integral() && !up.is_integral() {
            bad.push(u.clone());
        }
    }
    Ok((candidates.len(), bad))
}

/// Value of a monomial at a maximal ideal read off its profile.
pub fn profile_value(prof: &IdealProfile, m: ADMax) -> Rational {
    let fp = prof.family(m.family());
    match m {
        ADMax::Principal { index, .. } => int(fp.value(index)),
        ADMax::Limit { .. } => *fp.limit().lead().as_rational().expect("rational limit"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almost_dedekind::RewriteOrder;

    fn unit3() -> FamilyPresentation {
        FamilyPresentation::uniform(StepKind::Unit, 1, 8)
    }

    #[test]
    fn monomial_profile_matches_rewriting() {
        for kind in [StepKind::Unit, StepKind::Dyadic] {
            let p = FamilyPresentation::uniform(kind, 1, 8);
            let m: Monomial = "X1_2^2*T1_1*T1_3^-1".parse().unwrap();
            let m = if kind == StepKind::Dyadic { m.mul(&Monomial::x(1, 0)) } else { m };
            let prof = ADIdeal::principal(m.clone()).profile(&p).unwrap();
            for max in p.maxima(8) {
                assert_eq!(m.valuation_at(&p, max, 8).unwrap(), profile_value(&prof, max), "{kind} {max}");
            }
        }
    }

    #[test]
    fn rewrite_orders_agree() {
        let p = FamilyPresentation::uniform(StepKind::Dyadic, 2, 6);
        let m: Monomial = "X1_0*T1_1^3*T2_2*T1_4^-1".parse().unwrap();
        let a = m.rewrite_to_level(&p, 6, RewriteOrder::LowestFirst).unwrap();
        let b = m.rewrite_to_level(&p, 6, RewriteOrder::HighestFirst).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pattern_profile_matches_generators() {
        for kind in [StepKind::Unit, StepKind::Dyadic] {
            let p = FamilyPresentation::uniform(kind, 1, 10);
            for (start, step, e, f, s) in [(2, 2, 1, 1, 0), (1, 3, 2, 1, 1), (1, 1, 0, 1, 0), (3, 1, 1, 2, 2)] {
                let pat = Pattern { family: 1, ap: Progression { start, step }, e, f, s, base: Monomial::one() };
                let prof = ADIdeal::Pattern(pat.clone()).profile(&p).unwrap();
                assert_eq!(prof.v_closure().unwrap().v_closure().unwrap(), prof.v_closure().unwrap());
                for i in kind.first_index()..20 {
                    let brute = (0..40).map(|k| monomial_profile(&pat.instance(k), 1, kind).value(i)).min().unwrap();
                    assert_eq!(prof.family(1).value(i), brute, "{kind} {pat} at {i}");
                }
            }
        }
    }

    #[test]
    fn weak_factorization_of_constructed_ideal() {
        let p = FamilyPresentation::uniform(StepKind::Unit, 2, 8);
        let targets = [(1, (3, 1)), (2, (2, 2))].into_iter().collect();
        let i = construct_arbitrary(&p, &targets).unwrap();
        let w = weak_factorize(&p, &i).unwrap();
        assert!(w.certified && w.principal_values_agree);
        assert_eq!(w.exponents, [(1, 2)].into_iter().collect());
        assert!(construct_arbitrary(&p, &[(1, (1, 2))].into_iter().collect()).is_err());
    }

    #[test]
    fn sharpness() {
        let p = unit3();
        assert!(is_sharp(&p, ADMax::Principal { family: 1, index: 3 }, 6).unwrap());
        assert!(!is_sharp(&p, ADMax::Limit { family: 1 }, 6).unwrap());
    }
}
