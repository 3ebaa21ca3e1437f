//! Value profiles of ideals in one family: a value at every principal maximal
//! ideal, eventually periodic, plus a cut at the limit maximal ideal.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::quad::{int, Rational};
use crate::valuation::{Cut, LocalOp, ValueGroup};

use super::StepKind;

impl StepKind {
    /// Index of the first principal maximal ideal.
    pub fn first_index(self) -> u32 {
        match self {
            StepKind::Unit => 1,
            StepKind::Dyadic => 0,
        }
    }

    /// Value group at the limit maximal ideal.
    pub fn limit_group(self) -> ValueGroup {
        match self {
            StepKind::Unit => ValueGroup::z(),
            StepKind::Dyadic => ValueGroup::q(),
        }
    }
}

fn pow2(i: u32) -> Rational {
    assert!(i < 120, "index {i} too large");
    int(1i128 << i)
}

/// Profile of one family. Past the prefix, the value at index `i` is
/// `a·2^i + b` with `(a, b)` chosen by `i mod period`; `a = 0` for unit steps.
#[derive(Clone, Debug)]
pub struct FamilyProfile {
    kind: StepKind,
    prefix: Vec<i128>,
    tail: Vec<(Rational, i128)>,
    limit: Cut,
}

impl FamilyProfile {
    /// Builds a profile from explicit prefix values (starting at the first
    /// index) and a periodic tail.
    pub fn new(kind: StepKind, prefix: Vec<i128>, tail: Vec<(Rational, i128)>, limit: Cut) -> Self {
        assert!(!tail.is_empty());
        assert_eq!(limit.group(), &kind.limit_group());
        FamilyProfile { kind, prefix, tail, limit }
    }

    /// Value `v` at every principal ideal, `limit` at the limit ideal.
    pub fn constant(kind: StepKind, v: i128, limit: Cut) -> Self {
        FamilyProfile::new(kind, Vec::new(), vec![(Rational::zero(), v)], limit)
    }

    pub fn unit(kind: StepKind) -> Self {
        FamilyProfile::constant(kind, 0, Cut::unit(&kind.limit_group()))
    }

    pub fn kind(&self) -> StepKind {
        self.kind
    }

    pub fn limit(&self) -> &Cut {
        &self.limit
    }

    pub fn with_limit(&self, limit: Cut) -> Self {
        FamilyProfile { limit, ..self.clone() }
    }

    pub fn period(&self) -> usize {
        self.tail.len()
    }

    /// First index covered by the periodic tail.
    pub fn tail_start(&self) -> u32 {
        self.kind.first_index() + self.prefix.len() as u32
    }

    /// Tail coefficients used at index `i`.
    pub fn tail_at(&self, i: u32) -> (Rational, i128) {
        self.tail[i as usize % self.tail.len()]
    }

    pub fn tail_terms(&self) -> &[(Rational, i128)] {
        &self.tail
    }

    /// Value at the principal maximal ideal with index `i`.
    pub fn value(&self, i: u32) -> i128 {
        let first = self.kind.first_index();
        assert!(i >= first, "no principal ideal with index {i}");
        let k = (i - first) as usize;
        if k < self.prefix.len() {
            return self.prefix[k];
        }
        let (a, b) = self.tail_at(i);
        let v = a * pow2(i) + int(b);
        assert!(v.is_integer(), "non-integral tail value at {i}");
        v.to_integer()
    }

    fn apply(&self, op: LocalOp, other: &FamilyProfile) -> Result<FamilyProfile> {
        assert_eq!(self.kind, other.kind);
        let period = self.period().lcm(&other.period());
        let mut end = self.tail_start().max(other.tail_start());
        let mut tail = Vec::with_capacity(period);
        for r in 0..period as u32 {
            let (a1, b1) = self.tail_at(r);
            let (a2, b2) = other.tail_at(r);
            let term = match op {
                LocalOp::Product => (a1 + a2, b1 + b2),
                LocalOp::Sum | LocalOp::Intersect => {
                    let ord = if a1 != a2 {
                        // Past this index the 2^i term dominates.
                        let gap = (a1 - a2).abs();
                        let spread = int((b1 - b2).abs());
                        let mut i = end;
                        while gap * pow2(i) <= spread {
                            i += 1;
                        }
                        end = end.max(i);
                        a1.cmp(&a2)
                    } else {
                        b1.cmp(&b2)
                    };
                    let first_smaller = ord.is_le();
                    if (op == LocalOp::Sum) == first_smaller {
                        (a1, b1)
                    } else {
                        (a2, b2)
                    }
                }
            };
            tail.push(term);
        }
        let first = self.kind.first_index();
        let prefix = (first..end)
            .map(|i| {
                let (x, y) = (self.value(i), other.value(i));
                match op {
                    LocalOp::Product => x + y,
                    LocalOp::Sum => x.min(y),
                    LocalOp::Intersect => x.max(y),
                }
            })
            .collect();
        // Residues are taken modulo the new period, so rotate nothing: tail[r]
        // is indexed by i mod period directly.
        Ok(FamilyProfile { kind: self.kind, prefix, tail, limit: Cut::combine(op, &self.limit, &other.limit)? })
    }

    pub fn product(&self, other: &FamilyProfile) -> Result<FamilyProfile> {
        self.apply(LocalOp::Product, other)
    }

    pub fn sum(&self, other: &FamilyProfile) -> Result<FamilyProfile> {
        self.apply(LocalOp::Sum, other)
    }

    pub fn intersect(&self, other: &FamilyProfile) -> Result<FamilyProfile> {
        self.apply(LocalOp::Intersect, other)
    }

    /// Pointwise inverse, before taking realizability into account.
    pub fn negated(&self) -> FamilyProfile {
        FamilyProfile {
            kind: self.kind,
            prefix: self.prefix.iter().map(|v| -v).collect(),
            tail: self.tail.iter().map(|(a, b)| (-*a, -b)).collect(),
            limit: self.limit.inverse(),
        }
    }

    /// The limit values forced by the tail: an element whose principal values
    /// eventually dominate the tail has limit value in this cut.
    pub fn tail_ceiling(&self) -> Cut {
        let g = self.kind.limit_group();
        match self.kind {
            StepKind::Unit => {
                let b = self.tail.iter().map(|(_, b)| *b).max().unwrap();
                Cut::rank1(&g, b, true)
            }
            StepKind::Dyadic => {
                let a = self.tail.iter().map(|(a, _)| *a).max().unwrap();
                let strict = self.tail.iter().any(|(x, b)| *x == a && *b > 0);
                Cut::rank1(&g, a, !strict)
            }
        }
    }

    /// Profile of the ideal of all elements whose values dominate `self`.
    pub fn hull(&self) -> Result<FamilyProfile> {
        Ok(self.with_limit(self.limit.intersect(&self.tail_ceiling())?))
    }

    /// `(R : I)` restricted to this family.
    pub fn inverse(&self) -> Result<FamilyProfile> {
        self.negated().hull()
    }

    pub fn v_closure(&self) -> Result<FamilyProfile> {
        self.inverse()?.inverse()
    }

    pub fn is_integral(&self) -> bool {
        let end = self.tail_start() + self.period() as u32;
        (self.kind.first_index()..end).all(|i| self.value(i) >= 0)
            && self.tail.iter().all(|(a, b)| a.is_positive() || (a.is_zero() && *b >= 0))
            && self.limit.is_integral()
    }

    pub fn is_unit(&self) -> bool {
        *self == FamilyProfile::unit(self.kind)
    }

    /// Every principal value of `self` is at least that of `other` and the
    /// limit cut is contained in `other`'s.
    pub fn is_subideal_of(&self, other: &FamilyProfile) -> Result<bool> {
        Ok(self.intersect(other)? == *self)
    }

    /// Principal indices with nonzero value, if finitely many.
    pub fn finite_support(&self) -> Option<Vec<u32>> {
        if self.tail.iter().any(|(a, b)| !a.is_zero() || *b != 0) {
            return None;
        }
        Some((self.kind.first_index()..self.tail_start()).filter(|i| self.value(*i) != 0).collect())
    }

    /// Principal values on `[first, end)`.
    pub fn values_until(&self, end: u32) -> Vec<i128> {
        (self.kind.first_index()..end).map(|i| self.value(i)).collect()
    }
}

impl PartialEq for FamilyProfile {
    fn eq(&self, other: &Self) -> bool {
        if self.kind != other.kind || self.limit != other.limit {
            return false;
        }
        let end = self.tail_start().max(other.tail_start());
        let period = self.period().lcm(&other.period()) as u32;
        (self.kind.first_index()..end).all(|i| self.value(i) == other.value(i))
            && (end..end + period).all(|i| self.tail_at(i) == other.tail_at(i))
    }
}

impl Eq for FamilyProfile {}

impl fmt::Display for FamilyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix: Vec<String> = self.prefix.iter().map(|v| v.to_string()).collect();
        let tail: Vec<String> =
            self.tail.iter().map(|(a, b)| if a.is_zero() { b.to_string() } else { format!("{a}*2^i{b:+}") }).collect();
        write!(f, "[{}|({})*] limit={}", prefix.join(","), tail.join(","), self.limit)
    }
}

impl Serialize for FamilyProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Profiles of one ideal across all families of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealProfile {
    pub families: BTreeMap<u32, FamilyProfile>,
}

impl fmt::Display for IdealProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.families.iter().map(|(n, p)| format!("family {n} {p}")).collect();
        f.write_str(&parts.join("; "))
    }
}

impl IdealProfile {
    fn zip(
        &self,
        other: &IdealProfile,
        f: impl Fn(&FamilyProfile, &FamilyProfile) -> Result<FamilyProfile>,
    ) -> Result<IdealProfile> {
        let families = self.families.iter().map(|(n, x)| Ok((*n, f(x, &other.families[n])?))).collect::<Result<_>>()?;
        Ok(IdealProfile { families })
    }

    fn map(&self, f: impl Fn(&FamilyProfile) -> Result<FamilyProfile>) -> Result<IdealProfile> {
        let families = self.families.iter().map(|(n, x)| Ok((*n, f(x)?))).collect::<Result<_>>()?;
        Ok(IdealProfile { families })
    }

    pub fn product(&self, other: &IdealProfile) -> Result<IdealProfile> {
        self.zip(other, FamilyProfile::product)
    }

    pub fn sum(&self, other: &IdealProfile) -> Result<IdealProfile> {
        self.zip(other, FamilyProfile::sum)
    }

    pub fn intersect(&self, other: &IdealProfile) -> Result<IdealProfile> {
        self.zip(other, FamilyProfile::intersect)
    }

    pub fn inverse(&self) -> Result<IdealProfile> {
        self.map(FamilyProfile::inverse)
    }

    pub fn v_closure(&self) -> Result<IdealProfile> {
        self.map(FamilyProfile::v_closure)
    }

    pub fn is_divisorial(&self) -> Result<bool> {
        Ok(self.v_closure()? == *self)
    }

    pub fn is_unit(&self) -> bool {
        self.families.values().all(FamilyProfile::is_unit)
    }

    pub fn is_integral(&self) -> bool {
        self.families.values().all(FamilyProfile::is_integral)
    }

    pub fn is_subideal_of(&self, other: &IdealProfile) -> Result<bool> {
        Ok(self.intersect(other)? == *self)
    }

    pub fn family(&self, n: u32) -> &FamilyProfile {
        &self.families[&n]
    }

    /// Families whose limit ideal contains the ideal.
    pub fn limit_support(&self) -> Vec<u32> {
        self.families.iter().filter(|(_, p)| p.limit().is_proper()).map(|(n, _)| *n).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    fn z(v: i128) -> Cut {
        Cut::rank1(&ValueGroup::z(), v, true)
    }

    #[test]
    fn unit_tail_hull_raises_limit() {
        // Zero everywhere but a negative limit: no element realizes it.
        let p = FamilyProfile::constant(StepKind::Unit, 0, z(-1));
        assert_eq!(p.hull().unwrap(), FamilyProfile::unit(StepKind::Unit));
    }

    #[test]
    fn maximal_ideal_is_not_divisorial() {
        let m = FamilyProfile::constant(StepKind::Unit, 0, z(1));
        assert!(m.v_closure().unwrap().is_unit());
    }

    #[test]
    fn alternating_tail() {
        let even = FamilyProfile::new(StepKind::Unit, vec![], vec![(rat(0, 1), 1), (rat(0, 1), 0)], z(1));
        assert_eq!(even.value(4), 1);
        assert_eq!(even.value(5), 0);
        assert_eq!(even.v_closure().unwrap(), even);
        let odd = FamilyProfile::new(StepKind::Unit, vec![], vec![(rat(0, 1), 0), (rat(0, 1), 1)], z(1));
        let s = even.sum(&odd).unwrap();
        assert_eq!(s, FamilyProfile::constant(StepKind::Unit, 0, z(1)));
    }

    #[test]
    fn dyadic_min_needs_threshold() {
        let g = ValueGroup::q();
        let grow =
            FamilyProfile::new(StepKind::Dyadic, vec![0, 0], vec![(rat(1, 4), 0)], Cut::rank1(&g, rat(1, 4), true));
        let flat = FamilyProfile::constant(StepKind::Dyadic, 3, Cut::unit(&g));
        let s = grow.sum(&flat).unwrap();
        assert_eq!(s.values_until(7), vec![0, 0, 1, 2, 3, 3, 3]);
        assert_eq!(s.tail_at(20), (rat(0, 1), 3));
        assert_eq!(s.limit(), &Cut::unit(&g));
        let p = grow.intersect(&flat).unwrap();
        assert_eq!(p.values_until(7), vec![3, 3, 3, 3, 4, 8, 16]);
    }
}
