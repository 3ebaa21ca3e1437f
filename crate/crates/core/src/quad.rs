//! Exact elements of a real quadratic field `Q(√d)`.
//!
//! Cut boundaries need an exactly ordered field that contains the rationals
//! and at least one irrational point. Values are stored as `a + b·√d` with
//! rational `a`, `b` and a square-free radicand `d`; comparison reduces to
//! integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Exact rational numbers used throughout the crate.
pub type Rational = Ratio<i128>;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Shorthand for `num / den`.
pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// `a + b·√d`. When `b == 0` the radicand is canonically `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u32,
}

impl QuadExt {
    /// Builds `a + b·√d`.
    ///
    /// Panics if `d` is zero, not square-free, or a perfect square greater than one
    /// while `b` is nonzero.
    pub fn new(a: Rational, b: Rational, d: u32) -> Self {
        if b.is_zero() {
            return Self::rational(a);
        }
        assert!(is_square_free(d) && d > 1, "radicand {d} must be a square-free integer greater than 1");
        QuadExt { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: 1 }
    }

    pub fn integer(n: i128) -> Self {
        Self::rational(int(n))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    /// `b·√d`.
    pub fn surd(b: Rational, d: u32) -> Self {
        Self::new(Rational::zero(), b, d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// The radicand, `1` for rational values.
    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Whether two values can be combined without mixing radicands.
    pub fn compatible(&self, other: &Self) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn joint_radicand(&self, other: &Self) -> u32 {
        assert!(self.compatible(other), "mixed radicands {} and {}", self.d, other.d);
        if self.is_rational() {
            other.d
        } else {
            self.d
        }
    }

    /// Sign of the value as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // a and b·√d have opposite signs: compare a² with b²·d.
        let lhs = self.a * self.a;
        let rhs = self.b * self.b * int(self.d as i128);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> i128 {
        let approx = self.to_f64().floor() as i128;
        let mut n = approx;
        while QuadExt::integer(n) > *self {
            n -= 1;
        }
        while QuadExt::integer(n + 1) <= *self {
            n += 1;
        }
        n
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> i128 {
        -(-self.clone()).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadExt::new(self.a * k, self.b * k, self.d)
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn is_square_free(d: u32) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u32;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum().cmp(&0)
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: Self) -> Self {
        let d = self.joint_radicand(&rhs);
        QuadExt::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl From<i128> for QuadExt {
    fn from(n: i128) -> Self {
        QuadExt::integer(n)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `3/2`, `1*sqrt2`, `1-1/2*sqrt3`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return fmt_rational(&self.a, f);
        }
        if !self.a.is_zero() {
            fmt_rational(&self.a, f)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        fmt_rational(&self.b, f)?;
        write!(f, "*sqrt{}", self.d)
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.parse().map_err(|_| format!("bad numerator `{n}`"))?;
            let d: i128 = d.parse().map_err(|_| format!("bad denominator `{d}`"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<i128>().map(int).map_err(|_| format!("bad number `{s}`")),
    }
}

impl FromStr for QuadExt {
    type Err = ParseError;

    /// Accepts `r`, `b*sqrtD`, `r+b*sqrtD`, `r-b*sqrtD` and `sqrtD`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |m: String| ParseError::syntax(0, 0, format!("`{s}`: {m}"));
        let Some(pos) = s.find("sqrt") else {
            return parse_rational(s).map(QuadExt::rational).map_err(bad);
        };
        let d: u32 = s[pos + 4..].parse().map_err(|_| bad("bad radicand".into()))?;
        if d < 2 || !is_square_free(d) {
            return Err(bad(format!("radicand {d} is not square-free")));
        }
        let head = &s[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split the head into rational part and coefficient at the last sign
        // that is not the leading one.
        let split = head.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        let (a, coef) = match split {
            Some(i) => (parse_rational(&head[..i]).map_err(bad)?, &head[i..]),
            None => (Rational::zero(), head),
        };
        let b = match coef {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => parse_rational(c.strip_prefix('+').unwrap_or(c)).map_err(bad)?,
        };
        Ok(QuadExt::new(a, b, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn orders_surds_exactly() {
        assert!(q("1*sqrt2") > q("7/5"));
        assert!(q("1*sqrt2") < q("3/2"));
        assert!(q("-1*sqrt2") < q("-7/5"));
        assert!(q("3-2*sqrt2") > QuadExt::zero());
        assert!(q("1-1*sqrt2") < QuadExt::zero());
        assert_eq!(q("1*sqrt2") + q("-1*sqrt2"), QuadExt::zero());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(q("1*sqrt2").floor(), 1);
        assert_eq!(q("-1*sqrt2").floor(), -2);
        assert_eq!(q("-1*sqrt2").ceil(), -1);
        assert_eq!(q("5/2").ceil(), 3);
        assert_eq!(q("-3").floor(), -3);
    }

    #[test]
    fn display_round_trips() {
        for s in ["3/2", "-4", "1*sqrt2", "1/2-3*sqrt5", "-1*sqrt3"] {
            assert_eq!(q(s).to_string(), s);
            assert_eq!(q(&q(s).to_string()), q(s));
        }
        assert_eq!(q("sqrt2"), q("1*sqrt2"));
        assert_eq!(q("2+sqrt2"), q("2+1*sqrt2"));
    }

    #[test]
    fn rejects_bad_radicands() {
        assert!("1*sqrt4".parse::<QuadExt>().is_err());
        assert!("1*sqrt1".parse::<QuadExt>().is_err());
    }
}
