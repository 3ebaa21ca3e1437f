//! Almost Dedekind domains presented as unions of families of towers.
//!
//! Each family contributes principal maximal ideals `M{n}_{i}` and one limit
//! maximal ideal `M{n}`. A unit family has value group `Z` at its limit and
//! relation `T_k = X_{k+1}·T_{k+1}`; a dyadic family has value group `Q` at
//! its limit and relation `T_k = X_k·T_{k+1}²`.

mod fixtures;
mod ideal;
mod monomial;
mod profile;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, ParseError, Result};

pub use fixtures::{run_fixture, FixtureReport, FIXTURES, MIN_TRUNCATION};
pub use ideal::{
    construct_arbitrary, is_sharp, monomial_profile, nonintegral_duals, profile_value, small_monomials, weak_factorize,
    ADIdeal, LocalSpec, Pattern, Progression, WeakFactorization,
};
pub use monomial::{Monomial, RewriteOrder, Symbol};
pub use profile::{FamilyProfile, IdealProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Unit,
    Dyadic,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Unit => "unit",
            StepKind::Dyadic => "dyadic",
        })
    }
}

impl FromStr for StepKind {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "unit" => Ok(StepKind::Unit),
            "dyadic" => Ok(StepKind::Dyadic),
            _ => Err(ParseError::syntax(0, 0, format!("unknown family kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub id: u32,
    pub kind: StepKind,
}

/// A finite union of families, examined at truncation level `truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyPresentation {
    families: Vec<Family>,
    truncation: u32,
}

impl FamilyPresentation {
    pub fn new(families: Vec<Family>, truncation: u32) -> Result<Self> {
        let mut ids: Vec<u32> = families.iter().map(|f| f.id).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != families.len() {
            return Err(AlgebraError::InvalidPresentation("duplicate family id".into()));
        }
        if families.is_empty() {
            return Err(AlgebraError::InvalidPresentation("no families".into()));
        }
        Ok(FamilyPresentation { families, truncation })
    }

    /// Families `1..=n` of one kind.
    pub fn uniform(kind: StepKind, n: u32, truncation: u32) -> Self {
        let families = (1..=n).map(|id| Family { id, kind }).collect();
        FamilyPresentation::new(families, truncation).unwrap()
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: u32) -> Self {
        FamilyPresentation { families: self.families.clone(), truncation }
    }

    pub fn kind(&self, family: u32) -> Result<StepKind> {
        self.families
            .iter()
            .find(|f| f.id == family)
            .map(|f| f.kind)
            .ok_or_else(|| AlgebraError::UnknownSlot(format!("family {family}")))
    }

    pub fn has_dyadic(&self) -> bool {
        self.families.iter().any(|f| f.kind == StepKind::Dyadic)
    }

    /// Product of the first tail symbols, a nonunit lying in no limit ideal's
    /// complement: it sits in every maximal ideal of the Jacobson radical test.
    pub fn jacobson_witness(&self) -> Monomial {
        self.families.iter().fold(Monomial::one(), |m, f| m.mul(&Monomial::t(f.id, 0)))
    }

    /// Every maximal ideal seen at truncation `k`: principal indices below
    /// `k` and the limits.
    pub fn maxima(&self, k: u32) -> Vec<ADMax> {
        let mut out = Vec::new();
        for f in &self.families {
            for index in f.kind.first_index()..k {
                out.push(ADMax::Principal { family: f.id, index });
            }
            out.push(ADMax::Limit { family: f.id });
        }
        out
    }
}

/// A maximal ideal: `M{n}_{i}` principal, `M{n}` the limit of family `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ADMax {
    Principal { family: u32, index: u32 },
    Limit { family: u32 },
}

impl ADMax {
    pub fn family(self) -> u32 {
        match self {
            ADMax::Principal { family, .. } | ADMax::Limit { family } => family,
        }
    }
}

impl fmt::Display for ADMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ADMax::Principal { family, index } => write!(f, "M{family}_{index}"),
            ADMax::Limit { family } => write!(f, "M{family}"),
        }
    }
}

impl FromStr for ADMax {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || ParseError::syntax(0, 0, format!("bad maximal ideal `{s}`"));
        let rest = s.strip_prefix('M').ok_or_else(bad)?;
        match rest.split_once('_') {
            Some((a, b)) => {
                Ok(ADMax::Principal { family: a.parse().map_err(|_| bad())?, index: b.parse().map_err(|_| bad())? })
            }
            None => Ok(ADMax::Limit { family: rest.parse().map_err(|_| bad())? }),
        }
    }
}

impl Serialize for ADMax {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
