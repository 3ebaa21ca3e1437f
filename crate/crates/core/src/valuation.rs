//! Ideals of a single valuation domain, represented as cuts in its value group.
//!
//! A nonzero ideal `I` of a valuation domain `V` is determined by the set of
//! values `{v(x) : x ∈ I}`, an upward-closed subset of the value group. We
//! store that subset by its boundary point and whether the boundary is
//! attained. Rank-2 groups are lexicographic products; a trailing
//! [`Coord::MinusInf`] marks a cut determined entirely by its first
//! coordinate (primes and primary ideals of the height-one prime).
//!
//! Ordering convention: `a < b` as cuts means `a` is the *larger* ideal.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, ParseError, Result};
use crate::quad::QuadExt;

/// One rank-1 component of a value group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// Discrete: the integers.
    Z,
    /// Dense: the rationals (boundaries may be quadratic irrationals).
    Q,
}

impl Level {
    /// Whether `x` is the value of some element.
    pub fn realizes(self, x: &QuadExt) -> bool {
        match self {
            Level::Z => x.is_integer(),
            Level::Q => x.is_rational(),
        }
    }
}

/// A rank-1 group, or the lexicographic product of two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueGroup {
    levels: Vec<Level>,
}

impl ValueGroup {
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() || levels.len() > 2 {
            return Err(AlgebraError::UnsupportedRank(levels.len()));
        }
        Ok(ValueGroup { levels })
    }

    pub fn z() -> Self {
        ValueGroup { levels: vec![Level::Z] }
    }

    pub fn q() -> Self {
        ValueGroup { levels: vec![Level::Q] }
    }

    pub fn lex(first: Level, second: Level) -> Self {
        ValueGroup { levels: vec![first, second] }
    }

    pub fn rank(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> Level {
        self.levels[i]
    }

    pub fn last(&self) -> Level {
        *self.levels.last().expect("nonempty")
    }

    /// The maximal ideal is divisorial exactly when it is principal, i.e. when
    /// the bottom level is discrete.
    pub fn maximal_is_divisorial(&self) -> bool {
        self.last() == Level::Z
    }

    pub fn is_discrete(&self) -> bool {
        self.levels.iter().all(|l| *l == Level::Z)
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .levels
            .iter()
            .map(|l| match l {
                Level::Z => "Z",
                Level::Q => "Q",
            })
            .collect();
        write!(f, "{}", names.join("x"))
    }
}

impl FromStr for ValueGroup {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let levels = s
            .split(['x', ','])
            .map(|p| match p.trim() {
                "Z" => Ok(Level::Z),
                "Q" => Ok(Level::Q),
                other => Err(ParseError::syntax(0, 0, format!("unknown group `{other}`"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ValueGroup::new(levels).map_err(|e| ParseError::syntax(0, 0, e.to_string()))
    }
}

/// A boundary coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    Finite(QuadExt),
    MinusInf,
}

impl Coord {
    pub fn finite(&self) -> Option<&QuadExt> {
        match self {
            Coord::Finite(x) => Some(x),
            Coord::MinusInf => None,
        }
    }
}

impl From<QuadExt> for Coord {
    fn from(x: QuadExt) -> Self {
        Coord::Finite(x)
    }
}

impl From<i128> for Coord {
    fn from(n: i128) -> Self {
        Coord::Finite(QuadExt::integer(n))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Finite(x) => write!(f, "{x}"),
            Coord::MinusInf => write!(f, "-inf"),
        }
    }
}

/// Ordering key for a single coordinate. `PlusInf` only appears for the open
/// first-level cut `{v : v₁ > γ}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum KeyCoord {
    NegInf,
    Fin(QuadExt),
    PosInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalClass {
    DivisorialPrincipal,
    DivisorialNonprincipal,
    Nondivisorial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalOp {
    Product,
    Sum,
    Intersect,
}

/// A nonzero (fractional) ideal of a valuation domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    group: ValueGroup,
    boundary: Vec<Coord>,
    attained: bool,
}

impl Cut {
    /// Builds and normalizes a cut.
    pub fn new(group: ValueGroup, boundary: Vec<Coord>, attained: bool) -> Result<Self> {
        if boundary.len() != group.rank() {
            return Err(AlgebraError::InvalidArgument(format!(
                "boundary has {} coordinates but group {} has rank {}",
                boundary.len(),
                group,
                group.rank()
            )));
        }
        if matches!(boundary.first(), Some(Coord::MinusInf)) {
            return Err(AlgebraError::InvalidArgument("-inf is only allowed at the second level".into()));
        }
        Ok(Cut { group, boundary, attained }.normalized())
    }

    /// `{v ≥ γ}`.
    pub fn attained(group: &ValueGroup, boundary: Vec<Coord>) -> Result<Self> {
        Cut::new(group.clone(), boundary, true)
    }

    /// `{v > γ}`.
    pub fn open(group: &ValueGroup, boundary: Vec<Coord>) -> Result<Self> {
        Cut::new(group.clone(), boundary, false)
    }

    /// Rank-1 convenience constructor.
    pub fn rank1(group: &ValueGroup, x: impl Into<QuadExt>, attained: bool) -> Self {
        assert_eq!(group.rank(), 1);
        Cut::new(group.clone(), vec![Coord::Finite(x.into())], attained).expect("rank-1 cut")
    }

    /// The principal ideal generated by an element of value `point`.
    pub fn principal(group: &ValueGroup, point: &[QuadExt]) -> Result<Self> {
        for (level, x) in group.levels().iter().zip(point) {
            if !level.realizes(x) {
                return Err(AlgebraError::InvalidArgument(format!("{x} is not a value of {group}")));
            }
        }
        Cut::attained(group, point.iter().cloned().map(Coord::Finite).collect())
    }

    pub fn unit(group: &ValueGroup) -> Self {
        Cut { group: group.clone(), boundary: vec![Coord::Finite(QuadExt::zero()); group.rank()], attained: true }
    }

    /// The maximal ideal: `attained(1)`/`open(0)` at the bottom level.
    pub fn maximal(group: &ValueGroup) -> Self {
        let mut boundary = vec![Coord::Finite(QuadExt::zero()); group.rank()];
        match group.last() {
            Level::Z => {
                *boundary.last_mut().unwrap() = Coord::Finite(QuadExt::integer(1));
                Cut::new(group.clone(), boundary, true).unwrap()
            }
            Level::Q => Cut::new(group.clone(), boundary, false).unwrap(),
        }
    }

    /// The height-one prime of a rank-2 valuation domain, `{v : v₁ > 0}`.
    pub fn height_one_prime(group: &ValueGroup) -> Result<Self> {
        if group.rank() != 2 {
            return Err(AlgebraError::UnsupportedRank(group.rank()));
        }
        Cut::open(group, vec![Coord::from(0), Coord::MinusInf])
    }

    pub fn group(&self) -> &ValueGroup {
        &self.group
    }

    pub fn boundary(&self) -> &[Coord] {
        &self.boundary
    }

    pub fn is_attained(&self) -> bool {
        self.attained
    }

    /// First-level boundary (always finite).
    pub fn lead(&self) -> &QuadExt {
        self.boundary[0].finite().expect("first coordinate is finite")
    }

    /// Whether the cut is determined by its first coordinate alone.
    pub fn is_level_one(&self) -> bool {
        matches!(self.boundary.last(), Some(Coord::MinusInf))
    }

    fn normalized(mut self) -> Self {
        let levels = self.group.levels().to_vec();
        if levels.len() == 1 {
            let x = self.boundary[0].finite().unwrap().clone();
            let (x, att) = normalize_point(levels[0], x, self.attained);
            self.boundary[0] = Coord::Finite(x);
            self.attained = att;
            return self;
        }
        let g1 = self.lead().clone();
        if !levels[0].realizes(&g1) {
            // Only the first coordinate matters once it misses the group.
            return match levels[0] {
                Level::Z => Cut {
                    boundary: vec![Coord::Finite(QuadExt::integer(g1.ceil())), Coord::MinusInf],
                    attained: true,
                    ..self
                },
                Level::Q => Cut { boundary: vec![Coord::Finite(g1), Coord::MinusInf], attained: false, ..self },
            };
        }
        match self.boundary[1].clone() {
            Coord::MinusInf => {
                if !self.attained && levels[0] == Level::Z {
                    self.boundary[0] = Coord::Finite(g1 + QuadExt::integer(1));
                    self.attained = true;
                }
                self
            }
            Coord::Finite(g2) => {
                let (g2, att) = normalize_point(levels[1], g2, self.attained);
                self.boundary[1] = Coord::Finite(g2);
                self.attained = att;
                self
            }
        }
    }

    fn key(&self) -> (Vec<KeyCoord>, bool) {
        let mut coords: Vec<KeyCoord> = self
            .boundary
            .iter()
            .map(|c| match c {
                Coord::Finite(x) => KeyCoord::Fin(x.clone()),
                Coord::MinusInf => KeyCoord::NegInf,
            })
            .collect();
        let mut open = !self.attained;
        if self.is_level_one() && !self.attained {
            *coords.last_mut().unwrap() = KeyCoord::PosInf;
            open = false;
        }
        (coords, open)
    }

    fn same_group(&self, other: &Cut) -> Result<()> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch(self.group.to_string(), other.group.to_string()));
        }
        for (a, b) in self.boundary.iter().zip(&other.boundary) {
            if let (Coord::Finite(x), Coord::Finite(y)) = (a, b) {
                if !x.compatible(y) {
                    return Err(AlgebraError::RadicandMismatch(x.radicand(), y.radicand()));
                }
            }
        }
        Ok(())
    }

    /// Product, sum or intersection of two ideals of the same valuation domain.
    pub fn combine(op: LocalOp, i: &Cut, j: &Cut) -> Result<Cut> {
        i.same_group(j)?;
        Ok(match op {
            LocalOp::Product => {
                let boundary = i
                    .boundary
                    .iter()
                    .zip(&j.boundary)
                    .map(|(a, b)| match (a, b) {
                        (Coord::Finite(x), Coord::Finite(y)) => Coord::Finite(x.clone() + y.clone()),
                        _ => Coord::MinusInf,
                    })
                    .collect();
                // At level one only the first coordinate of each factor
                // matters, and a cut with a finite second coordinate reaches
                // its lead.
                let attained = if i.is_level_one() || j.is_level_one() {
                    let reaches = |c: &Cut| !c.is_level_one() || c.attained;
                    reaches(i) && reaches(j)
                } else {
                    i.attained && j.attained
                };
                Cut::new(i.group.clone(), boundary, attained)?
            }
            LocalOp::Sum => std::cmp::min(i, j).clone(),
            LocalOp::Intersect => std::cmp::max(i, j).clone(),
        })
    }

    pub fn product(&self, other: &Cut) -> Result<Cut> {
        Cut::combine(LocalOp::Product, self, other)
    }

    pub fn sum(&self, other: &Cut) -> Result<Cut> {
        Cut::combine(LocalOp::Sum, self, other)
    }

    pub fn intersect(&self, other: &Cut) -> Result<Cut> {
        Cut::combine(LocalOp::Intersect, self, other)
    }

    /// `(V : I)`.
    pub fn inverse(&self) -> Cut {
        let bottom = self.group.last();
        if self.is_level_one() {
            let g1 = -self.lead().clone();
            let attained = !self.attained && self.group.level(0).realizes(&g1);
            return Cut::new(self.group.clone(), vec![Coord::Finite(g1), Coord::MinusInf], attained).unwrap();
        }
        let negated: Vec<Coord> = self.boundary.iter().map(|c| Coord::Finite(-c.finite().unwrap().clone())).collect();
        let last = negated.last().unwrap().finite().unwrap();
        let attained = self.attained || bottom.realizes(last);
        Cut::new(self.group.clone(), negated, attained).unwrap()
    }

    /// `I^v = (I⁻¹)⁻¹`.
    pub fn v_closure(&self) -> Cut {
        self.inverse().inverse()
    }

    pub fn is_divisorial(&self) -> bool {
        self.v_closure() == *self
    }

    pub fn classify(&self) -> LocalClass {
        if !self.is_divisorial() {
            LocalClass::Nondivisorial
        } else if self.attained && !self.is_level_one() {
            LocalClass::DivisorialPrincipal
        } else {
            LocalClass::DivisorialNonprincipal
        }
    }

    pub fn is_principal(&self) -> bool {
        self.classify() == LocalClass::DivisorialPrincipal
    }

    pub fn is_unit(&self) -> bool {
        *self == Cut::unit(&self.group)
    }

    /// Contained in the valuation ring.
    pub fn is_integral(&self) -> bool {
        *self >= Cut::unit(&self.group)
    }

    pub fn is_proper(&self) -> bool {
        *self > Cut::unit(&self.group)
    }

    /// `I ⊆ J` as ideals.
    pub fn is_subideal_of(&self, other: &Cut) -> bool {
        self >= other
    }

    /// The smallest prime containing an integral proper ideal.
    pub fn radical(&self) -> Result<Cut> {
        if !self.is_integral() {
            return Err(AlgebraError::NotIntegral(self.to_string()));
        }
        if self.is_unit() {
            return Err(AlgebraError::UnitRadical);
        }
        if self.group.rank() == 2 {
            let p = Cut::height_one_prime(&self.group)?;
            if self.is_subideal_of(&p) {
                return Ok(p);
            }
        }
        Ok(Cut::maximal(&self.group))
    }

    pub fn is_idempotent(&self) -> bool {
        self.product(self).map(|p| p == *self).unwrap_or(false)
    }

    /// Extension to the localization at the height-one prime, read as a cut
    /// of the first-level group.
    pub fn project_level_one(&self) -> Cut {
        let g = ValueGroup { levels: vec![self.group.level(0)] };
        if self.group.rank() == 1 {
            return self.clone();
        }
        let attained = !self.is_level_one() || self.attained;
        Cut::new(g, vec![self.boundary[0].clone()], attained).unwrap()
    }

    /// The rank-2 cut with the same first-level trace: `I·V_P` viewed inside `V`.
    pub fn relax_to_level_one(&self) -> Result<Cut> {
        if self.group.rank() != 2 {
            return Err(AlgebraError::UnsupportedRank(self.group.rank()));
        }
        if self.is_level_one() {
            return Ok(self.clone());
        }
        Cut::attained(&self.group, vec![self.boundary[0].clone(), Coord::MinusInf])
    }

    /// Parses `attained(..)`, `open(..)` or `unit` over a known group.
    pub fn parse(group: &ValueGroup, s: &str) -> std::result::Result<Cut, ParseError> {
        let s = s.trim();
        if s == "unit" {
            return Ok(Cut::unit(group));
        }
        let bad = |m: &str| ParseError::syntax(0, 0, format!("`{s}`: {m}"));
        let (attained, rest) = if let Some(r) = s.strip_prefix("attained(") {
            (true, r)
        } else if let Some(r) = s.strip_prefix("open(") {
            (false, r)
        } else {
            return Err(bad("expected attained(..), open(..) or unit"));
        };
        let inner = rest.strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
        let boundary = inner
            .split(',')
            .map(|c| match c.trim() {
                "-inf" => Ok(Coord::MinusInf),
                x => x.parse::<QuadExt>().map(Coord::Finite).map_err(|e| bad(&e.to_string())),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Cut::new(group.clone(), boundary, attained).map_err(|e| bad(&e.to_string()))
    }
}

fn normalize_point(level: Level, x: QuadExt, attained: bool) -> (QuadExt, bool) {
    match level {
        Level::Z => {
            let n = if attained { x.ceil() } else { x.floor() + 1 };
            (QuadExt::integer(n), true)
        }
        Level::Q => {
            let att = attained && x.is_rational();
            (x, att)
        }
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.boundary.iter().map(|c| c.to_string()).collect();
        let kind = if self.attained { "attained" } else { "open" };
        write!(f, "{kind}({})", coords.join(","))
    }
}

impl Serialize for Cut {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    fn q1() -> ValueGroup {
        ValueGroup::q()
    }
    fn z1() -> ValueGroup {
        ValueGroup::z()
    }
    fn c(g: &ValueGroup, s: &str) -> Cut {
        Cut::parse(g, s).unwrap()
    }

    #[test]
    fn product_examples() {
        let q = q1();
        assert_eq!(c(&q, "attained(1)").product(&c(&q, "open(0)")).unwrap(), c(&q, "open(1)"));
        assert_eq!(c(&q, "open(0)").product(&c(&q, "open(0)")).unwrap(), c(&q, "open(0)"));
        let z = z1();
        assert_eq!(c(&z, "attained(3)").sum(&c(&z, "attained(2)")).unwrap(), c(&z, "attained(2)"));
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let err = c(&q1(), "open(0)").product(&c(&z1(), "attained(1)"));
        assert!(matches!(err, Err(AlgebraError::GroupMismatch(..))));
    }

    #[test]
    fn inverse_examples() {
        let q = q1();
        assert_eq!(c(&q, "attained(3/2)").inverse(), c(&q, "attained(-3/2)"));
        assert_eq!(c(&q, "open(1*sqrt2)").inverse(), c(&q, "open(-1*sqrt2)"));
        assert_eq!(c(&q, "open(5)").inverse(), c(&q, "attained(-5)"));
    }

    #[test]
    fn closure_and_classification() {
        let q = q1();
        let z = z1();
        assert_eq!(c(&q, "open(3/2)").v_closure(), c(&q, "attained(3/2)"));
        assert_eq!(c(&z, "attained(7)").v_closure(), c(&z, "attained(7)"));
        assert_eq!(c(&q, "open(1*sqrt2)").v_closure(), c(&q, "open(1*sqrt2)"));
        assert_eq!(c(&z, "attained(2)").classify(), LocalClass::DivisorialPrincipal);
        assert_eq!(c(&q, "open(0)").classify(), LocalClass::Nondivisorial);
        assert_eq!(c(&q, "open(1*sqrt2)").classify(), LocalClass::DivisorialNonprincipal);
    }

    #[test]
    fn radical_examples() {
        let z = z1();
        assert_eq!(c(&z, "attained(5)").radical().unwrap(), c(&z, "attained(1)"));
        let q = q1();
        assert_eq!(c(&q, "open(1*sqrt2)").radical().unwrap(), c(&q, "open(0)"));
        let zz = ValueGroup::lex(Level::Z, Level::Z);
        let p = c(&zz, "attained(1,-inf)");
        assert_eq!(p.radical().unwrap(), p);
        assert_eq!(c(&zz, "attained(0,3)").radical().unwrap(), c(&zz, "attained(0,1)"));
        assert_eq!(c(&zz, "attained(2,-5)").radical().unwrap(), p);
        assert_eq!(c(&z, "unit").radical(), Err(AlgebraError::UnitRadical));
        assert!(matches!(c(&z, "attained(-1)").radical(), Err(AlgebraError::NotIntegral(_))));
    }

    #[test]
    fn idempotence() {
        assert!(c(&q1(), "open(0)").is_idempotent());
        assert!(!c(&z1(), "attained(1)").is_idempotent());
        assert!(c(&z1(), "attained(0)").is_idempotent());
    }

    #[test]
    fn normalization_rules() {
        let z = z1();
        assert_eq!(c(&z, "open(3)"), c(&z, "attained(4)"));
        assert_eq!(c(&z, "attained(5/2)"), c(&z, "attained(3)"));
        let q = q1();
        assert!(!c(&q, "attained(1*sqrt2)").is_attained());
        let zq = ValueGroup::lex(Level::Z, Level::Q);
        assert_eq!(c(&zq, "open(1,-inf)"), c(&zq, "attained(2,-inf)"));
        assert_eq!(c(&zq, "attained(1/2,7)"), c(&zq, "attained(1,-inf)"));
        let qz = ValueGroup::lex(Level::Q, Level::Z);
        assert_eq!(c(&qz, "attained(1*sqrt2,3)"), c(&qz, "open(1*sqrt2,-inf)"));
        assert_eq!(c(&qz, "open(1/2,3)"), c(&qz, "attained(1/2,4)"));
    }

    #[test]
    fn rank_two_order_matches_inclusion() {
        let qq = ValueGroup::lex(Level::Q, Level::Q);
        let whole_level = c(&qq, "attained(1,-inf)");
        let mid = c(&qq, "attained(1,5)");
        let strict = c(&qq, "open(1,-inf)");
        assert!(whole_level < mid && mid < strict);
        assert!(strict < c(&qq, "attained(3/2,-inf)"));
    }

    #[test]
    fn rank_two_duals() {
        let zz = ValueGroup::lex(Level::Z, Level::Z);
        assert_eq!(c(&zz, "attained(1,-inf)").inverse(), c(&zz, "attained(0,-inf)"));
        assert_eq!(c(&zz, "attained(1,2)").inverse(), c(&zz, "attained(-1,-2)"));
        let qq = ValueGroup::lex(Level::Q, Level::Q);
        assert_eq!(c(&qq, "open(1,2)").v_closure(), c(&qq, "attained(1,2)"));
        assert_eq!(c(&qq, "open(1,-inf)").v_closure(), c(&qq, "open(1,-inf)"));
        assert_eq!(c(&qq, "open(0,1*sqrt2)").inverse(), c(&qq, "open(0,-1*sqrt2)"));
        let p = Cut::height_one_prime(&qq).unwrap();
        assert!(p.is_divisorial());
        assert!(!Cut::maximal(&qq).is_divisorial());
    }

    #[test]
    fn projection_to_first_level() {
        let zq = ValueGroup::lex(Level::Z, Level::Q);
        assert_eq!(c(&zq, "open(2,1/2)").project_level_one(), Cut::rank1(&z1(), 2, true));
        let qq = ValueGroup::lex(Level::Q, Level::Q);
        assert_eq!(c(&qq, "open(1/3,-inf)").project_level_one(), Cut::rank1(&q1(), rat(1, 3), false));
    }
}
