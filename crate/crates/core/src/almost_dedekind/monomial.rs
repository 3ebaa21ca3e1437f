//! Monomials in the family generators and their rewriting to a fixed level.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, ParseError, Result};
use crate::quad::{int, Rational};

use super::{ADMax, FamilyPresentation, StepKind};

/// `X{n}_{i}` is a principal generator, `T{n}_{k}` the tail product
/// starting after (unit steps) or at (dyadic steps) index `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    X { family: u32, index: u32 },
    T { family: u32, level: u32 },
}

impl Symbol {
    pub fn family(self) -> u32 {
        match self {
            Symbol::X { family, .. } | Symbol::T { family, .. } => family,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::X { family, index } => write!(f, "X{family}_{index}"),
            Symbol::T { family, level } => write!(f, "T{family}_{level}"),
        }
    }
}

impl FromStr for Symbol {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || ParseError::syntax(0, 0, format!("bad symbol `{s}`"));
        let (head, rest) = s.split_at(s.len().min(1));
        let (a, b) = rest.split_once('_').ok_or_else(bad)?;
        let family: u32 = a.parse().map_err(|_| bad())?;
        let k: u32 = b.parse().map_err(|_| bad())?;
        match head {
            "X" => Ok(Symbol::X { family, index: k }),
            "T" => Ok(Symbol::T { family, level: k }),
            _ => Err(bad()),
        }
    }
}

/// A Laurent monomial; units of the domain are not represented.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: BTreeMap<Symbol, i64>,
}

/// Order in which tail symbols are expanded during rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    LowestFirst,
    HighestFirst,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Monomial::one().times(s, 1)
    }

    pub fn x(family: u32, index: u32) -> Self {
        Monomial::symbol(Symbol::X { family, index })
    }

    pub fn t(family: u32, level: u32) -> Self {
        Monomial::symbol(Symbol::T { family, level })
    }

    pub fn exponents(&self) -> &BTreeMap<Symbol, i64> {
        &self.exps
    }

    pub fn exponent(&self, s: Symbol) -> i64 {
        self.exps.get(&s).copied().unwrap_or(0)
    }

    /// Multiplies by `s^e`.
    pub fn times(mut self, s: Symbol, e: i64) -> Self {
        let slot = self.exps.entry(s).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&s);
        }
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        other.exps.iter().fold(self.clone(), |acc, (s, e)| acc.times(*s, *e))
    }

    pub fn pow(&self, e: i64) -> Monomial {
        Monomial { exps: self.exps.iter().map(|(s, k)| (*s, k * e)).filter(|(_, k)| *k != 0).collect() }
    }

    pub fn families(&self) -> impl Iterator<Item = u32> + '_ {
        let mut fams: Vec<u32> = self.exps.keys().map(|s| s.family()).collect();
        fams.dedup();
        fams.into_iter()
    }

    /// Smallest truncation level whose ring contains every symbol.
    pub fn min_level(&self, p: &FamilyPresentation) -> Result<u32> {
        let mut need = 0;
        for s in self.exps.keys() {
            let kind = p.kind(s.family())?;
            need = need.max(match (*s, kind) {
                (Symbol::X { index, .. }, StepKind::Unit) => index,
                (Symbol::X { index, .. }, StepKind::Dyadic) => index + 1,
                (Symbol::T { level, .. }, _) => level,
            });
        }
        Ok(need)
    }

    /// Applies the tail rule once to `s`: `T_k = X_{k+1}·T_{k+1}` (unit
    /// steps) or `T_k = X_k·T_{k+1}²` (dyadic steps).
    fn expand(&self, s: Symbol, kind: StepKind) -> Monomial {
        let Symbol::T { family, level } = s else {
            return self.clone();
        };
        let e = self.exponent(s);
        let without = self.clone().times(s, -e);
        match kind {
            StepKind::Unit => without
                .times(Symbol::X { family, index: level + 1 }, e)
                .times(Symbol::T { family, level: level + 1 }, e),
            StepKind::Dyadic => without
                .times(Symbol::X { family, index: level }, e)
                .times(Symbol::T { family, level: level + 1 }, 2 * e),
        }
    }

    /// Rewrites every tail symbol to level `k`, so that the result only uses
    /// the generators of the level-`k` ring.
    pub fn rewrite_to_level(&self, p: &FamilyPresentation, k: u32, order: RewriteOrder) -> Result<Monomial> {
        let need = self.min_level(p)?;
        if need > k {
            return Err(AlgebraError::TruncationTooSmall { have: k, need });
        }
        let mut m = self.clone();
        loop {
            let pending: Vec<Symbol> =
                m.exps.keys().copied().filter(|s| matches!(s, Symbol::T { level, .. } if *level < k)).collect();
            let next = match order {
                RewriteOrder::LowestFirst => pending.first(),
                RewriteOrder::HighestFirst => pending.last(),
            };
            let Some(&s) = next else { return Ok(m) };
            m = m.expand(s, p.kind(s.family())?);
        }
    }

    /// Value at a maximal ideal, read off the level-`k` normal form.
    pub fn valuation_at(&self, p: &FamilyPresentation, max: ADMax, k: u32) -> Result<Rational> {
        let normal = self.rewrite_to_level(p, k, RewriteOrder::LowestFirst)?;
        let family = max.family();
        let kind = p.kind(family)?;
        let tail = normal.exponent(Symbol::T { family, level: k }) as i128;
        let x = |i: u32| normal.exponent(Symbol::X { family, index: i }) as i128;
        Ok(match (kind, max) {
            (StepKind::Unit, ADMax::Principal { index, .. }) => int(if index <= k { x(index) } else { tail }),
            (StepKind::Unit, ADMax::Limit { .. }) => int(tail),
            (StepKind::Dyadic, ADMax::Principal { index, .. }) => {
                int(if index < k { x(index) } else { tail << (index - k) })
            }
            (StepKind::Dyadic, ADMax::Limit { .. }) => Rational::new(tail, 1i128 << k),
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.exps.iter().map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Monomial {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut m = Monomial::one();
        for factor in s.split('*') {
            let (sym, e) = match factor.split_once('^') {
                Some((a, b)) => (
                    a,
                    b.parse::<i64>().map_err(|_| ParseError::syntax(0, 0, format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            m = m.times(sym.trim().parse()?, e);
        }
        Ok(m)
    }
}
