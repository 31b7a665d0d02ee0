//! Terms of both notation systems, additive normal form, and the text grammar.
//!
//! A term is `0`, a collapse `t_i(x)` / `b_i(x)`, or a sum of at least two
//! collapses listed in weakly decreasing order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{OrdError, Result};
use crate::order::cmp_terms;

/// Largest decimal literal accepted by the parser.
pub const SUGAR_LIMIT: u64 = 1_000_000;

/// The notation system a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemTag {
    /// Stepwise collapsing functions, printed with prefix `t`.
    Stepwise,
    /// Simultaneously defined collapsing functions, printed with prefix `b`.
    Simultaneous,
}

impl SystemTag {
    pub fn prefix(self) -> char {
        match self {
            SystemTag::Stepwise => 't',
            SystemTag::Simultaneous => 'b',
        }
    }
}

impl fmt::Display for SystemTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemTag::Stepwise => f.write_str("stepwise"),
            SystemTag::Simultaneous => f.write_str("simultaneous"),
        }
    }
}

/// A collapse node `theta_level(arg)`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Theta {
    pub sys: SystemTag,
    pub level: u32,
    pub arg: OrdTerm,
    /// Deepest collapse level in this node, itself included.
    top: u32,
}

/// An immutable ordinal term.
#[derive(Clone)]
pub enum OrdTerm {
    Zero,
    /// At least two collapse nodes, weakly decreasing.
    Sum(Arc<[OrdTerm]>),
    Collapse(Arc<Theta>),
}

impl PartialEq for OrdTerm {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (OrdTerm::Zero, OrdTerm::Zero) => true,
            (OrdTerm::Sum(a), OrdTerm::Sum(b)) => Arc::ptr_eq(a, b) || a[..] == b[..],
            (OrdTerm::Collapse(a), OrdTerm::Collapse(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => false,
        }
    }
}

impl Eq for OrdTerm {}

impl Hash for OrdTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            OrdTerm::Zero => 0u8.hash(state),
            OrdTerm::Sum(parts) => {
                1u8.hash(state);
                parts[..].hash(state);
            }
            OrdTerm::Collapse(t) => {
                2u8.hash(state);
                t.hash(state);
            }
        }
    }
}

impl PartialOrd for OrdTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordinal order. Terms of different systems are never compared meaningfully;
/// such pairs are ordered by system tag so that sorting stays total.
impl Ord for OrdTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_terms(self, other)
    }
}

/// Zero, successor, or limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermClass {
    Zero,
    /// Carries the predecessor.
    Successor(OrdTerm),
    Limit,
}

/// An argument split by level relative to a collapse index `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitArg {
    /// Components of level at least `j + 2`.
    pub xi: OrdTerm,
    /// Components of level `j + 1`.
    pub delta: OrdTerm,
    /// Components of level at most `j`.
    pub eta: OrdTerm,
    pub level: u32,
}

impl OrdTerm {
    pub fn theta(sys: SystemTag, level: u32, arg: OrdTerm) -> OrdTerm {
        let top = arg.max_level().map_or(level, |l| l.max(level));
        OrdTerm::Collapse(Arc::new(Theta { sys, level, arg, top }))
    }

    /// `Omega_i`, the collapse of zero at level `i`.
    pub fn omega(sys: SystemTag, level: u32) -> OrdTerm {
        OrdTerm::theta(sys, level, OrdTerm::Zero)
    }

    pub fn one(sys: SystemTag) -> OrdTerm {
        OrdTerm::omega(sys, 0)
    }

    /// Builds a term from components already in weakly decreasing order.
    pub fn from_components(mut parts: Vec<OrdTerm>) -> OrdTerm {
        match parts.len() {
            0 => OrdTerm::Zero,
            1 => parts.pop().unwrap(),
            _ => OrdTerm::Sum(parts.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, OrdTerm::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, OrdTerm::Collapse(t) if t.level == 0 && t.arg.is_zero())
    }

    pub fn is_principal(&self) -> bool {
        matches!(self, OrdTerm::Collapse(_))
    }

    pub fn as_theta(&self) -> Option<&Theta> {
        match self {
            OrdTerm::Collapse(t) => Some(t),
            _ => None,
        }
    }

    /// Additive components; empty for zero.
    pub fn components(&self) -> &[OrdTerm] {
        match self {
            OrdTerm::Zero => &[],
            OrdTerm::Sum(parts) => parts,
            OrdTerm::Collapse(_) => std::slice::from_ref(self),
        }
    }

    /// The system of the outermost collapse, if any.
    pub fn system(&self) -> Option<SystemTag> {
        self.components().first().and_then(|c| c.as_theta()).map(|t| t.sys)
    }

    /// Last additive component.
    pub fn end(&self) -> OrdTerm {
        self.components().last().cloned().unwrap_or(OrdTerm::Zero)
    }

    /// Maximal additive component.
    pub fn mc(&self) -> OrdTerm {
        self.components().first().cloned().unwrap_or(OrdTerm::Zero)
    }

    /// Level of the outermost collapse of a principal term.
    pub fn level(&self) -> Option<u32> {
        self.as_theta().map(|t| t.level)
    }

    pub fn classify(&self) -> TermClass {
        let parts = self.components();
        match parts.last() {
            None => TermClass::Zero,
            Some(last) if last.is_one() => {
                TermClass::Successor(OrdTerm::from_components(parts[..parts.len() - 1].to_vec()))
            }
            Some(_) => TermClass::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.classify(), TermClass::Limit)
    }

    pub fn is_successor(&self) -> bool {
        self.components().last().is_some_and(|c| c.is_one())
    }

    /// Predecessor of a successor term.
    pub fn predecessor(&self) -> Option<OrdTerm> {
        match self.classify() {
            TermClass::Successor(p) => Some(p),
            _ => None,
        }
    }

    /// Ordinal sum `self + other`, absorbing smaller leading parts of `other`'s
    /// left neighbour. Both terms must belong to the same system.
    pub fn add(&self, other: &OrdTerm) -> OrdTerm {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let head = other.mc();
        let left = self.components();
        let keep = left.iter().take_while(|p| cmp_terms(p, &head) != Ordering::Less).count();
        if keep == 0 {
            return other.clone();
        }
        let mut parts = Vec::with_capacity(keep + other.components().len());
        parts.extend_from_slice(&left[..keep]);
        parts.extend_from_slice(other.components());
        OrdTerm::from_components(parts)
    }

    /// `self * n` for a natural `n`, as an explicit sum.
    pub fn times(&self, n: u64) -> OrdTerm {
        if self.is_principal() {
            return OrdTerm::from_components(vec![self.clone(); n as usize]);
        }
        let mut acc = OrdTerm::Zero;
        for _ in 0..n {
            acc = acc.add(self);
        }
        acc
    }

    /// Largest collapse level occurring anywhere in the term.
    pub fn max_level(&self) -> Option<u32> {
        self.components().iter().filter_map(|c| c.as_theta().map(|t| t.top)).max()
    }

    /// Number of nodes, counting each collapse and each zero once.
    pub fn size(&self) -> usize {
        match self {
            OrdTerm::Zero => 1,
            OrdTerm::Sum(parts) => parts.iter().map(|p| p.size()).sum(),
            OrdTerm::Collapse(t) => 1 + t.arg.size(),
        }
    }

    /// Canonical text with trailing finite parts written as decimals.
    pub fn pretty(&self) -> String {
        let parts = self.components();
        let ones = parts.iter().rev().take_while(|p| p.is_one()).count();
        let head = &parts[..parts.len() - ones];
        let mut out: Vec<String> = head.iter().map(|p| p.pretty_principal()).collect();
        if ones > 0 || out.is_empty() {
            out.push(ones.to_string());
        }
        out.join("+")
    }

    fn pretty_principal(&self) -> String {
        let t = self.as_theta().expect("principal");
        format!("{}{}({})", t.sys.prefix(), t.level, t.arg.pretty())
    }

    fn walk(&self, out: &mut String) {
        match self {
            OrdTerm::Zero => out.push('0'),
            OrdTerm::Sum(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        out.push('+');
                    }
                    p.walk(out);
                }
            }
            OrdTerm::Collapse(t) => {
                out.push(t.sys.prefix());
                out.push_str(&t.level.to_string());
                out.push('(');
                t.arg.walk(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for OrdTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.walk(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for OrdTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for OrdTerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_any(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for OrdTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Normalizing sum: flattens nested sums, drops zeros and applies ordinal
/// addition left to right.
pub fn make_sum<I>(parts: I) -> Result<OrdTerm>
where
    I: IntoIterator<Item = OrdTerm>,
{
    let mut sys: Option<SystemTag> = None;
    let mut stack: Vec<OrdTerm> = Vec::new();
    for part in parts {
        for c in part.components() {
            let tag = c.as_theta().expect("component").sys;
            if *sys.get_or_insert(tag) != tag {
                return Err(OrdError::MixedSystems);
            }
            while stack.last().is_some_and(|top| cmp_terms(top, c) == Ordering::Less) {
                stack.pop();
            }
            stack.push(c.clone());
        }
    }
    Ok(OrdTerm::from_components(stack))
}

/// `n` as a sum of `n` ones.
pub fn nat_to_term(n: u64, sys: SystemTag) -> OrdTerm {
    OrdTerm::from_components(vec![OrdTerm::one(sys); n as usize])
}

/// Inverse of [`nat_to_term`]; `None` for infinite terms.
pub fn term_to_nat(a: &OrdTerm) -> Option<u64> {
    let parts = a.components();
    parts.iter().all(|p| p.is_one()).then_some(parts.len() as u64)
}

/// Splits `xi` into components above, at, and below level `j + 1`.
pub fn split_arg(xi: &OrdTerm, j: u32) -> SplitArg {
    let parts = xi.components();
    let lvl = |p: &OrdTerm| p.level().expect("component");
    let a = parts.iter().take_while(|p| lvl(p) >= j + 2).count();
    let b = a + parts[a..].iter().take_while(|p| lvl(p) == j + 1).count();
    SplitArg {
        xi: OrdTerm::from_components(parts[..a].to_vec()),
        delta: OrdTerm::from_components(parts[a..b].to_vec()),
        eta: OrdTerm::from_components(parts[b..].to_vec()),
        level: j,
    }
}

/// Splits a collapse argument at level `j` into the part above `Omega_{j+1}`
/// (all components of level greater than `j`) and the rest.
pub fn split_high(arg: &OrdTerm, j: u32) -> (OrdTerm, OrdTerm) {
    let parts = arg.components();
    let k = parts.iter().take_while(|p| p.level().expect("component") > j).count();
    (
        OrdTerm::from_components(parts[..k].to_vec()),
        OrdTerm::from_components(parts[k..].to_vec()),
    )
}

/// Parses a term of the given system, normalizing sums.
pub fn parse(text: &str, sys: SystemTag) -> Result<OrdTerm> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, sys };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

/// Parses a term whose system is taken from its first collapse symbol.
/// Pure decimals default to the stepwise system.
pub fn parse_any(text: &str) -> Result<OrdTerm> {
    let sys = if text.contains('b') { SystemTag::Simultaneous } else { SystemTag::Stepwise };
    match parse(text, sys) {
        Err(OrdError::WrongSystem { .. }) => Err(OrdError::MixedSystems),
        other => other,
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sys: SystemTag,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> OrdError {
        OrdError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn decimal(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match digits.parse::<u64>() {
            Ok(n) => Ok(n),
            Err(_) => Err(OrdError::SugarOverflow(digits.to_string())),
        }
    }

    fn summand(&mut self) -> Result<OrdTerm> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.decimal()?;
                if n > SUGAR_LIMIT {
                    let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    return Err(OrdError::SugarOverflow(text.trim().to_string()));
                }
                Ok(nat_to_term(n, self.sys))
            }
            Some(c @ (b't' | b'b')) => {
                let tag = if c == b't' { SystemTag::Stepwise } else { SystemTag::Simultaneous };
                if tag != self.sys {
                    return Err(OrdError::WrongSystem { expected: self.sys });
                }
                self.pos += 1;
                let level = self.decimal()?;
                let level = u32::try_from(level).map_err(|_| self.err("index too large"))?;
                self.expect(b'(')?;
                let arg = self.term()?;
                self.expect(b')')?;
                Ok(OrdTerm::theta(tag, level, arg))
            }
            _ => Err(self.err("expected '0', a number, 't' or 'b'")),
        }
    }

    fn term(&mut self) -> Result<OrdTerm> {
        let mut parts = vec![self.summand()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            parts.push(self.summand()?);
        }
        make_sum(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: SystemTag = SystemTag::Stepwise;

    fn p(s: &str) -> OrdTerm {
        parse_any(s).unwrap()
    }

    #[test]
    fn make_sum_absorbs_smaller_prefix() {
        assert_eq!(make_sum([p("t0(0)"), p("t1(0)")]).unwrap(), p("t1(0)"));
        assert_eq!(make_sum([p("t0(0)")]).unwrap(), p("t0(0)"));
        let s = make_sum([p("t1(0)"), p("t0(0)"), p("t0(0)")]).unwrap();
        assert_eq!(s.to_string(), "t1(0)+t0(0)+t0(0)");
        assert_eq!(make_sum([OrdTerm::Zero, OrdTerm::Zero]).unwrap(), OrdTerm::Zero);
        assert_eq!(make_sum([p("t0(0)"), p("b0(0)")]), Err(OrdError::MixedSystems));
    }

    #[test]
    fn end_and_mc() {
        assert_eq!(OrdTerm::Zero.end(), OrdTerm::Zero);
        assert_eq!(p("t1(0)+t0(0)").end(), p("t0(0)"));
        assert_eq!(p("t1(0)+t0(0)+t0(0)").mc(), p("t1(0)"));
    }

    #[test]
    fn classification() {
        assert_eq!(OrdTerm::Zero.classify(), TermClass::Zero);
        assert_eq!(p("t1(0)+t0(0)").classify(), TermClass::Successor(p("t1(0)")));
        assert_eq!(p("t0(t0(0))").classify(), TermClass::Limit);
    }

    #[test]
    fn naturals() {
        assert_eq!(nat_to_term(0, T), OrdTerm::Zero);
        assert_eq!(nat_to_term(2, T).to_string(), "t0(0)+t0(0)");
        assert_eq!(term_to_nat(&p("t1(0)")), None);
        assert_eq!(term_to_nat(&p("3")), Some(3));
    }

    #[test]
    fn splitting() {
        let s = split_arg(&p("t1(0)+t0(0)"), 0);
        assert_eq!((s.xi, s.delta, s.eta), (OrdTerm::Zero, p("t1(0)"), p("t0(0)")));
        let s = split_arg(&p("t0(0)"), 0);
        assert_eq!((s.xi, s.delta, s.eta), (OrdTerm::Zero, OrdTerm::Zero, p("t0(0)")));
        let s = split_arg(&p("b2(0)+b1(0)"), 0);
        assert_eq!((s.xi, s.delta, s.eta), (p("b2(0)"), p("b1(0)"), OrdTerm::Zero));
    }

    #[test]
    fn parsing() {
        let t = p("t0(t1(0))");
        let inner = OrdTerm::theta(T, 1, OrdTerm::Zero);
        assert_eq!(t, OrdTerm::theta(T, 0, inner));
        assert_eq!(p("2"), p("t0(0)+t0(0)"));
        assert_eq!(p(" t0 ( 0 ) + t1(0) "), p("t1(0)"));
        assert!(matches!(parse("t0(0)+b0(0)", T), Err(OrdError::WrongSystem { .. })));
        assert_eq!(parse_any("t0(0)+b0(0)"), Err(OrdError::MixedSystems));
        assert!(matches!(parse("1000001", T), Err(OrdError::SugarOverflow(_))));
        assert!(matches!(parse("t0(", T), Err(OrdError::Syntax { .. })));
        assert!(matches!(parse("t0(0))", T), Err(OrdError::Syntax { .. })));
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(p("t1(0)+t0(0)+t0(0)").pretty(), "t1(0)+2");
        assert_eq!(OrdTerm::Zero.pretty(), "0");
        assert_eq!(p("t0(t0(0)+t0(0))").pretty(), "t0(2)");
        assert_eq!(p("t0(t0(0)+t0(0))").to_string(), "t0(t0(0)+t0(0))");
    }
}
