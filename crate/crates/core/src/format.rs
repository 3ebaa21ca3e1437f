//! Line-oriented presentation files.
//!
//! ```text
//! # finite presentations
//! kind finite
//! radicand 2
//! slot M Q
//! slot N ZxZ
//! slot N2 ZxZ
//! shared P N N2
//! ideal I M=open(1*sqrt2) N=attained(1,0) N2=attained(1,-inf)
//!
//! # family presentations
//! kind family
//! trunc 8
//! family 0 dyadic
//! ideal M pattern family=0 ap=0:1 e=0 f=1 s=0 base=1
//! ideal Q local family=0 default=0 limit=attained(1/4)
//! ideal G gens X0_1*T0_2 T0_3
//! ideal S sum M [gens T0_1]
//! ```
//!
//! Composite ideals (`sum`, `product`, `intersect`) take earlier names or
//! bracketed inline expressions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::almost_dedekind::{
    ADIdeal, Family, FamilyPresentation, LocalSpec, Monomial, Pattern, Progression, StepKind,
};
use crate::error::{AlgebraError, ParseError};
use crate::hlocal::{DomainPresentation, GlobalIdeal, SharedPrime};
use crate::valuation::{Cut, ValueGroup};

const DEFAULT_TRUNCATION: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFile {
    pub domain: DomainPresentation,
    pub ideals: Vec<(String, GlobalIdeal)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFile {
    pub presentation: FamilyPresentation,
    pub ideals: Vec<(String, ADIdeal)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationFile {
    Finite(FiniteFile),
    Family(FamilyFile),
}

impl FiniteFile {
    pub fn ideal(&self, name: &str) -> Result<&GlobalIdeal, AlgebraError> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("no ideal named `{name}`")))
    }
}

impl FamilyFile {
    pub fn ideal(&self, name: &str) -> Result<&ADIdeal, AlgebraError> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("no ideal named `{name}`")))
    }
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        let boundary = ch.is_whitespace() || ch == '[' || ch == ']';
        if boundary {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: s + 1 });
            }
            if ch == '[' || ch == ']' {
                out.push(Token { text: &line[i..i + 1], column: i + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: s + 1 });
    }
    out
}

/// Whitespace-separated tokens, keeping commas inside cuts.
fn tokenize_cuts(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: s + 1 });
    }
    out
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, column, message)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        let t =
            self.tokens.get(self.pos).copied().ok_or_else(|| self.err(self.end_column, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.pos).map(|t| t.text)
    }

    fn done(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(self.err(t.column, format!("unexpected `{}`", t.text))),
        }
    }

    fn parse<T: FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let t = self.next(what)?;
        t.text.parse().map_err(|_| self.err(t.column, format!("expected {what}, found `{}`", t.text)))
    }
}

fn semantic(line: usize, source: AlgebraError) -> ParseError {
    ParseError::Semantic { line, source }
}

/// Anchors an error raised by a nested parser at the token's position.
fn anchor(e: ParseError, line: usize, column: usize) -> ParseError {
    e.at_line(line, column)
}

#[derive(Default)]
struct FiniteBuilder {
    radicand: Option<u32>,
    slots: BTreeMap<String, ValueGroup>,
    shared: Vec<SharedPrime>,
    domain: Option<DomainPresentation>,
    ideals: Vec<(String, GlobalIdeal)>,
}

impl FiniteBuilder {
    fn domain(&mut self, line: usize) -> Result<&DomainPresentation, ParseError> {
        if self.domain.is_none() {
            let d = DomainPresentation::new(self.radicand.unwrap_or(2), self.slots.clone(), self.shared.clone())
                .map_err(|e| semantic(line, e))?;
            self.domain = Some(d);
        }
        Ok(self.domain.as_ref().unwrap())
    }

    fn directive(&mut self, head: &str, c: &mut Cursor<'_>) -> Result<(), ParseError> {
        let locked = |c: &Cursor<'_>| c.err(1, format!("`{head}` after the first ideal"));
        match head {
            "radicand" => {
                if self.domain.is_some() {
                    return Err(locked(c));
                }
                self.radicand = Some(c.parse("radicand")?);
            }
            "slot" => {
                if self.domain.is_some() {
                    return Err(locked(c));
                }
                let name = c.next("slot name")?;
                let g = c.next("value group")?;
                let group: ValueGroup = g.text.parse().map_err(|e: ParseError| anchor(e, c.line, g.column))?;
                if self.slots.insert(name.text.to_string(), group).is_some() {
                    return Err(c.err(name.column, format!("duplicate slot `{}`", name.text)));
                }
            }
            "shared" => {
                if self.domain.is_some() {
                    return Err(locked(c));
                }
                let id = c.next("prime name")?.text.to_string();
                let mut members = BTreeSet::new();
                while !c.done() {
                    members.insert(c.next("member")?.text.to_string());
                }
                self.shared.push(SharedPrime { id, members });
            }
            "ideal" => {
                let name = c.next("ideal name")?;
                if self.ideals.iter().any(|(n, _)| n == name.text) {
                    return Err(c.err(name.column, format!("duplicate ideal `{}`", name.text)));
                }
                let line = c.line;
                let d = self.domain(line)?.clone();
                let mut cuts = Vec::new();
                if c.peek() == Some("unit") {
                    c.next("unit")?;
                } else {
                    while !c.done() {
                        let t = c.next("slot=cut")?;
                        let (m, cut) = t
                            .text
                            .split_once('=')
                            .ok_or_else(|| c.err(t.column, format!("expected slot=cut, found `{}`", t.text)))?;
                        let g = d.group(m).map_err(|e| semantic(line, e))?;
                        let cut = Cut::parse(g, cut).map_err(|e| anchor(e, line, t.column + m.len() + 1))?;
                        cuts.push((m.to_string(), cut));
                    }
                }
                let ideal = d.ideal(cuts).map_err(|e| semantic(line, e))?;
                self.ideals.push((name.text.to_string(), ideal));
            }
            _ => return Err(c.err(1, format!("unknown directive `{head}`"))),
        }
        c.finish()
    }
}

#[derive(Default)]
struct FamilyBuilder {
    truncation: Option<u32>,
    families: Vec<Family>,
    presentation: Option<FamilyPresentation>,
    ideals: Vec<(String, ADIdeal)>,
}

fn key_values<'a>(c: &mut Cursor<'a>) -> Result<BTreeMap<&'a str, Token<'a>>, ParseError> {
    let mut out = BTreeMap::new();
    while let Some(text) = c.peek() {
        if text == "]" {
            break;
        }
        let t = c.next("key=value")?;
        let (k, v) =
            t.text.split_once('=').ok_or_else(|| c.err(t.column, format!("expected key=value, found `{}`", t.text)))?;
        let value = Token { text: v, column: t.column + k.len() + 1 };
        if out.insert(k, value).is_some() {
            return Err(c.err(t.column, format!("duplicate key `{k}`")));
        }
    }
    Ok(out)
}

fn take<'a, T: FromStr>(
    c: &Cursor<'_>,
    kv: &mut BTreeMap<&str, Token<'a>>,
    key: &str,
    default: Option<T>,
) -> Result<T, ParseError> {
    match kv.remove(key) {
        Some(t) => t.text.parse().map_err(|_| c.err(t.column, format!("bad value for `{key}`: `{}`", t.text))),
        None => default.ok_or_else(|| c.err(c.column(), format!("missing `{key}=`"))),
    }
}

fn progression(c: &Cursor<'_>, t: Token<'_>) -> Result<(Progression, Option<i128>), ParseError> {
    let parts: Vec<&str> = t.text.split(':').collect();
    let bad = || c.err(t.column, format!("bad progression `{}`", t.text));
    if parts.len() < 2 || parts.len() > 3 {
        return Err(bad());
    }
    let start = parts[0].parse().map_err(|_| bad())?;
    let step = parts[1].parse().map_err(|_| bad())?;
    let ap = Progression::new(start, step).map_err(|e| semantic(c.line, e))?;
    let value = parts.get(2).map(|v| v.parse().map_err(|_| bad())).transpose()?;
    Ok((ap, value))
}

fn no_leftovers(c: &Cursor<'_>, kv: &BTreeMap<&str, Token<'_>>) -> Result<(), ParseError> {
    match kv.iter().next() {
        None => Ok(()),
        Some((k, t)) => Err(c.err(t.column - k.len() - 1, format!("unknown key `{k}`"))),
    }
}

impl FamilyBuilder {
    fn presentation(&mut self, line: usize) -> Result<&FamilyPresentation, ParseError> {
        if self.presentation.is_none() {
            let p = FamilyPresentation::new(self.families.clone(), self.truncation.unwrap_or(DEFAULT_TRUNCATION))
                .map_err(|e| semantic(line, e))?;
            self.presentation = Some(p);
        }
        Ok(self.presentation.as_ref().unwrap())
    }

    fn expression(&self, p: &FamilyPresentation, c: &mut Cursor<'_>) -> Result<ADIdeal, ParseError> {
        let head = c.next("ideal expression")?;
        let line = c.line;
        let ideal = match head.text {
            "gens" => {
                let mut gens = Vec::new();
                while let Some(text) = c.peek() {
                    if text == "]" {
                        break;
                    }
                    let t = c.next("monomial")?;
                    let m: Monomial = t.text.trim_end_matches(',').parse().map_err(|e| anchor(e, line, t.column))?;
                    gens.push(m);
                }
                if gens.is_empty() {
                    return Err(c.err(c.column(), "expected at least one generator"));
                }
                ADIdeal::Gens(gens)
            }
            "pattern" => {
                let mut kv = key_values(c)?;
                let ap = match kv.remove("ap") {
                    Some(t) => match progression(c, t)? {
                        (ap, None) => ap,
                        (_, Some(_)) => return Err(c.err(t.column, "pattern progression takes start:step")),
                    },
                    None => Progression { start: 1, step: 1 },
                };
                let pat = Pattern {
                    family: take(c, &mut kv, "family", None)?,
                    ap,
                    e: take(c, &mut kv, "e", Some(0))?,
                    f: take(c, &mut kv, "f", Some(1))?,
                    s: take(c, &mut kv, "s", Some(0))?,
                    base: take(c, &mut kv, "base", Some(Monomial::one()))?,
                };
                no_leftovers(c, &kv)?;
                ADIdeal::Pattern(pat)
            }
            "local" => {
                let mut kv = key_values(c)?;
                let family: u32 = take(c, &mut kv, "family", None)?;
                let kind = p.kind(family).map_err(|e| semantic(line, e))?;
                let limit = match kv.remove("limit") {
                    Some(t) => Cut::parse(&kind.limit_group(), t.text).map_err(|e| anchor(e, line, t.column))?,
                    None => Cut::unit(&kind.limit_group()),
                };
                let ap = match kv.remove("ap") {
                    Some(t) => match progression(c, t)? {
                        (ap, Some(v)) => Some((ap, v)),
                        (_, None) => return Err(c.err(t.column, "local progression takes start:step:value")),
                    },
                    None => None,
                };
                let mut at = BTreeMap::new();
                if let Some(t) = kv.remove("at") {
                    for pair in t.text.split(';') {
                        let bad = || c.err(t.column, format!("bad override `{pair}`"));
                        let (i, v) = pair.split_once(':').ok_or_else(bad)?;
                        at.insert(i.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?);
                    }
                }
                let spec = LocalSpec { family, limit, default: take(c, &mut kv, "default", Some(0))?, ap, at };
                no_leftovers(c, &kv)?;
                ADIdeal::Local(spec)
            }
            "sum" | "product" | "intersect" => {
                let mut parts = Vec::new();
                while let Some(text) = c.peek() {
                    if text == "]" {
                        break;
                    }
                    let t = c.next("operand")?;
                    if t.text == "[" {
                        parts.push(self.expression(p, c)?);
                        let close = c.next("`]`")?;
                        if close.text != "]" {
                            return Err(c.err(close.column, "expected `]`"));
                        }
                    } else {
                        let known = self.ideals.iter().find(|(n, _)| n == t.text);
                        let (_, x) = known.ok_or_else(|| c.err(t.column, format!("unknown ideal `{}`", t.text)))?;
                        parts.push(x.clone());
                    }
                }
                if parts.is_empty() {
                    return Err(c.err(c.column(), "expected operands"));
                }
                match head.text {
                    "sum" => ADIdeal::Sum(parts),
                    "product" => ADIdeal::Product(parts),
                    _ => ADIdeal::Intersect(parts),
                }
            }
            other => return Err(c.err(head.column, format!("unknown ideal form `{other}`"))),
        };
        Ok(ideal)
    }

    fn directive(&mut self, head: &str, c: &mut Cursor<'_>) -> Result<(), ParseError> {
        let locked = |c: &Cursor<'_>| c.err(1, format!("`{head}` after the first ideal"));
        match head {
            "trunc" => {
                if self.presentation.is_some() {
                    return Err(locked(c));
                }
                self.truncation = Some(c.parse("truncation level")?);
            }
            "family" => {
                if self.presentation.is_some() {
                    return Err(locked(c));
                }
                let id = c.parse("family id")?;
                let k = c.next("family kind")?;
                let kind: StepKind = k.text.parse().map_err(|e| anchor(e, c.line, k.column))?;
                self.families.push(Family { id, kind });
            }
            "ideal" => {
                let name = c.next("ideal name")?;
                if self.ideals.iter().any(|(n, _)| n == name.text) {
                    return Err(c.err(name.column, format!("duplicate ideal `{}`", name.text)));
                }
                let line = c.line;
                let p = self.presentation(line)?.clone();
                let ideal = self.expression(&p, c)?;
                ideal.profile(&p).map_err(|e| semantic(line, e))?;
                self.ideals.push((name.text.to_string(), ideal));
            }
            _ => return Err(c.err(1, format!("unknown directive `{head}`"))),
        }
        c.finish()
    }
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<PresentationFile, ParseError> {
        enum Builder {
            Finite(FiniteBuilder),
            Family(FamilyBuilder),
        }
        let mut builder: Option<Builder> = None;
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let content = raw.split('#').next().unwrap_or("");
            let cut_line = content.trim_start().starts_with("ideal") && matches!(builder, Some(Builder::Finite(_)));
            let tokens = if cut_line { tokenize_cuts(content) } else { tokenize(content) };
            if tokens.is_empty() {
                continue;
            }
            let mut c = Cursor { line, tokens, pos: 1, end_column: content.trim_end().len() + 1 };
            let head = c.tokens[0];
            match (&mut builder, head.text) {
                (None, "kind") => {
                    let k = c.next("`finite` or `family`")?;
                    builder = Some(match k.text {
                        "finite" => Builder::Finite(FiniteBuilder::default()),
                        "family" => Builder::Family(FamilyBuilder::default()),
                        other => return Err(c.err(k.column, format!("unknown kind `{other}`"))),
                    });
                    c.finish()?;
                }
                (None, _) => return Err(c.err(head.column, "file must start with `kind finite` or `kind family`")),
                (Some(_), "kind") => return Err(c.err(head.column, "duplicate `kind`")),
                (Some(Builder::Finite(b)), h) => b.directive(h, &mut c)?,
                (Some(Builder::Family(b)), h) => b.directive(h, &mut c)?,
            }
        }
        match builder {
            None => Err(ParseError::syntax(last.max(1), 1, "empty presentation file")),
            Some(Builder::Finite(mut b)) => {
                let domain = b.domain(last)?.clone();
                Ok(PresentationFile::Finite(FiniteFile { domain, ideals: b.ideals }))
            }
            Some(Builder::Family(mut b)) => {
                let presentation = b.presentation(last)?.clone();
                Ok(PresentationFile::Family(FamilyFile { presentation, ideals: b.ideals }))
            }
        }
    }

    pub fn finite(&self) -> Option<&FiniteFile> {
        match self {
            PresentationFile::Finite(f) => Some(f),
            PresentationFile::Family(_) => None,
        }
    }

    pub fn family(&self) -> Option<&FamilyFile> {
        match self {
            PresentationFile::Family(f) => Some(f),
            PresentationFile::Finite(_) => None,
        }
    }
}

impl FromStr for PresentationFile {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PresentationFile::parse(s)
    }
}

impl fmt::Display for FiniteFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind finite")?;
        writeln!(f, "radicand {}", self.domain.radicand())?;
        for (m, g) in self.domain.slots() {
            writeln!(f, "slot {m} {g}")?;
        }
        for p in self.domain.shared_primes() {
            let members: Vec<&str> = p.members.iter().map(String::as_str).collect();
            writeln!(f, "shared {} {}", p.id, members.join(" "))?;
        }
        for (name, i) in &self.ideals {
            writeln!(f, "ideal {name} {i}")?;
        }
        Ok(())
    }
}

impl fmt::Display for FamilyFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind family")?;
        writeln!(f, "trunc {}", self.presentation.truncation())?;
        for fam in self.presentation.families() {
            writeln!(f, "family {} {}", fam.id, fam.kind)?;
        }
        for (name, i) in &self.ideals {
            writeln!(f, "ideal {name} {i}")?;
        }
        Ok(())
    }
}

impl fmt::Display for PresentationFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationFile::Finite(x) => write!(f, "{x}"),
            PresentationFile::Family(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHARED: &str =
        "kind finite\nslot M ZxZ\nslot N ZxZ\nshared P M N\nideal J M=attained(1,0) N=attained(1,-inf)\n";

    #[test]
    fn single_slot_is_a_dvr() {
        let f = PresentationFile::parse("kind finite\nslot M Z\n").unwrap();
        let d = &f.finite().unwrap().domain;
        assert_eq!(d.slots().len(), 1);
        assert!(d.is_hlocal());
    }

    #[test]
    fn shared_prime_is_not_hlocal() {
        let f = PresentationFile::parse(SHARED).unwrap();
        let file = f.finite().unwrap();
        assert!(!file.domain.is_hlocal());
        assert_eq!(file.ideal("J").unwrap().support().count(), 2);
    }

    #[test]
    fn round_trips() {
        let family = "kind family\ntrunc 8\nfamily 0 dyadic\n\
            ideal M pattern family=0 ap=0:1 e=0 f=1 s=0\n\
            ideal Q local family=0 default=0 limit=attained(1/4) ap=2:3:1 at=0:2;1:1\n\
            ideal S sum M [gens T0_1, X0_0*T0_2^2]\n";
        let sqrt =
            "kind finite\nradicand 2\nslot A Q\nslot B Z,Q\nideal I A=open(1*sqrt2) B=open(1,1/2)\nideal U unit\n";
        for text in [SHARED, family, sqrt] {
            let a = PresentationFile::parse(text).unwrap();
            let b = PresentationFile::parse(&a.to_string()).unwrap();
            assert_eq!(a, b, "{a}");
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = PresentationFile::parse("kind finite\nslot M Z\nideal I M=opn(1)\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 3, column: 11, .. }), "{e}");
        let e = PresentationFile::parse("kind finite\nslot M ZxZ\nslot N Z\nshared P M N\nideal I unit\n").unwrap_err();
        assert!(matches!(e, ParseError::Semantic { line: 5, .. }), "{e}");
        let e = PresentationFile::parse("slot M Z\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, column: 1, .. }));
        let e = PresentationFile::parse("kind family\nfamily 0 triadic\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 2, column: 10, .. }), "{e}");
    }
}
