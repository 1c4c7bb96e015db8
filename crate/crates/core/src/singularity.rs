//! Singularity types, multi-point configurations, and the `2A3+A2+2A1`
//! text notation.
//!
//! A [`Configuration`] is always held in canonical order: parts sorted by
//! descending Milnor number, ties broken by descending type name. Two equal
//! multisets therefore format to the same string.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::graph::SimpleGraph;

/// Largest A/D index or T index accepted by the parser and constructors.
pub const MAX_INDEX: u32 = 4096;
/// Largest number of points a configuration may carry.
pub const MAX_PARTS: usize = 256;

/// One isolated singularity class.
///
/// The parabolic types are stored as `T` triples: `P8 = T(3,3,3)`,
/// `X9 = T(2,4,4)`, `J10 = T(2,3,6)`. Use the checked constructors (or
/// [`FromStr`]) to build values; they enforce the index bounds and keep `T`
/// indices sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityType {
    A(u32),
    D(u32),
    E(u32),
    T(u32, u32, u32),
    Q10,
    S11,
    U12,
    O16,
}

/// Tjurina numbers for U12 are not determined by the type alone; both values
/// occur. Informational only.
pub const U12_TJURINA_VALUES: [u64; 2] = [11, 12];

impl SingularityType {
    pub const P8: SingularityType = SingularityType::T(3, 3, 3);
    pub const X9: SingularityType = SingularityType::T(2, 4, 4);
    pub const J10: SingularityType = SingularityType::T(2, 3, 6);

    pub fn a(n: u32) -> Result<Self> {
        if !(1..=MAX_INDEX).contains(&n) {
            return Err(ParseError::semantic(format!("A{n}: index must be in 1..={MAX_INDEX}")).into());
        }
        Ok(SingularityType::A(n))
    }

    pub fn d(n: u32) -> Result<Self> {
        if !(4..=MAX_INDEX).contains(&n) {
            return Err(ParseError::semantic(format!("D{n}: index must be in 4..={MAX_INDEX}")).into());
        }
        Ok(SingularityType::D(n))
    }

    pub fn e(n: u32) -> Result<Self> {
        if !(6..=8).contains(&n) {
            return Err(ParseError::semantic(format!("E{n}: index must be 6, 7 or 8")).into());
        }
        Ok(SingularityType::E(n))
    }

    /// Builds `T(p,q,r)`, sorting the indices. Rejects `1/p+1/q+1/r > 1`.
    pub fn t(p: u32, q: u32, r: u32) -> Result<Self> {
        let mut idx = [p, q, r];
        idx.sort_unstable();
        let [p, q, r] = idx;
        if p < 2 || r > MAX_INDEX {
            return Err(ParseError::semantic(format!(
                "T({p},{q},{r}): indices must be in 2..={MAX_INDEX}"
            ))
            .into());
        }
        // 1/p + 1/q + 1/r <= 1  <=>  qr + pr + pq <= pqr
        let (p64, q64, r64) = (p as u64, q as u64, r as u64);
        if q64 * r64 + p64 * r64 + p64 * q64 > p64 * q64 * r64 {
            return Err(ParseError::semantic(format!(
                "T({p},{q},{r}): 1/p+1/q+1/r > 1 is not a T-series singularity"
            ))
            .into());
        }
        Ok(SingularityType::T(p, q, r))
    }

    /// Checks the invariants the checked constructors enforce.
    pub fn is_valid(&self) -> bool {
        match *self {
            SingularityType::A(n) => SingularityType::a(n).is_ok(),
            SingularityType::D(n) => SingularityType::d(n).is_ok(),
            SingularityType::E(n) => SingularityType::e(n).is_ok(),
            SingularityType::T(p, q, r) => {
                p <= q && q <= r && SingularityType::t(p, q, r).is_ok()
            }
            _ => true,
        }
    }

    pub fn milnor_number(&self) -> u64 {
        match *self {
            SingularityType::A(n) | SingularityType::D(n) | SingularityType::E(n) => n as u64,
            SingularityType::T(p, q, r) => p as u64 + q as u64 + r as u64 - 1,
            SingularityType::Q10 => 10,
            SingularityType::S11 => 11,
            SingularityType::U12 => 12,
            SingularityType::O16 => 16,
        }
    }

    /// Tjurina number where it is determined by the type (ADE: equal to mu).
    pub fn tjurina_number(&self) -> Option<u64> {
        self.is_ade().then(|| self.milnor_number())
    }

    pub fn is_ade(&self) -> bool {
        matches!(
            self,
            SingularityType::A(_) | SingularityType::D(_) | SingularityType::E(_)
        )
    }

    pub fn is_a(&self) -> bool {
        matches!(self, SingularityType::A(_))
    }

    /// Parabolic (P8, X9, J10) or hyperbolic member of the T series.
    pub fn is_t_series(&self) -> bool {
        matches!(self, SingularityType::T(..))
    }

    /// Display name; parabolic aliases win over `T` triples.
    pub fn name(&self) -> String {
        match *self {
            SingularityType::A(n) => format!("A{n}"),
            SingularityType::D(n) => format!("D{n}"),
            SingularityType::E(n) => format!("E{n}"),
            SingularityType::T(3, 3, 3) => "P8".to_string(),
            SingularityType::T(2, 4, 4) => "X9".to_string(),
            SingularityType::T(2, 3, 6) => "J10".to_string(),
            SingularityType::T(p, q, r) if r <= 9 => format!("T{p}{q}{r}"),
            SingularityType::T(p, q, r) => format!("T({p},{q},{r})"),
            SingularityType::Q10 => "Q10".to_string(),
            SingularityType::S11 => "S11".to_string(),
            SingularityType::U12 => "U12".to_string(),
            SingularityType::O16 => "O16".to_string(),
        }
    }

    /// Dynkin diagram of an ADE type: `A_n` is a path, `D_n` a path on
    /// `n-1` vertices with a leaf on the second vertex, `E_n` a path on
    /// `n-1` vertices with a leaf on the third vertex.
    pub fn dynkin_diagram(&self) -> Result<SimpleGraph> {
        let (n, branch) = match *self {
            SingularityType::A(n) => (n as usize, None),
            SingularityType::D(n) => (n as usize, Some(1)),
            SingularityType::E(n) => (n as usize, Some(2)),
            other => return Err(Error::UnsupportedKind(other.name())),
        };
        let mut g = SimpleGraph::new(n)?;
        let path_len = if branch.is_some() { n - 1 } else { n };
        for v in 1..path_len {
            g.add_edge(v - 1, v)?;
        }
        if let Some(b) = branch {
            g.add_edge(b, n - 1)?;
        }
        Ok(g)
    }
}

impl Ord for SingularityType {
    /// Canonical order: Milnor number, then name. Configurations list their
    /// parts in descending order of this.
    fn cmp(&self, other: &Self) -> Ordering {
        self.milnor_number()
            .cmp(&other.milnor_number())
            .then_with(|| self.name().cmp(&other.name()))
    }
}

impl PartialOrd for SingularityType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SingularityType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let t = p.type_token()?;
        p.expect_end()?;
        Ok(t)
    }
}

impl Serialize for SingularityType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for SingularityType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A nonempty multiset of singularity types held in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    parts: Vec<SingularityType>,
}

impl Configuration {
    pub fn new(mut parts: Vec<SingularityType>) -> Result<Self> {
        if parts.is_empty() {
            return Err(ParseError::semantic("a configuration needs at least one part").into());
        }
        if parts.len() > MAX_PARTS {
            return Err(Error::SizeLimit(format!(
                "{} parts exceeds the limit of {MAX_PARTS}",
                parts.len()
            )));
        }
        if let Some(bad) = parts.iter().find(|t| !t.is_valid()) {
            return Err(ParseError::semantic(format!("invalid singularity type {bad:?}")).into());
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Configuration { parts })
    }

    pub fn single(t: SingularityType) -> Result<Self> {
        Configuration::new(vec![t])
    }

    pub fn parts(&self) -> &[SingularityType] {
        &self.parts
    }

    /// Total Milnor number.
    pub fn mu(&self) -> u64 {
        self.parts.iter().map(SingularityType::milnor_number).sum()
    }

    /// Number of singular points.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn is_ade(&self) -> bool {
        self.parts.iter().all(SingularityType::is_ade)
    }

    pub fn is_pure_a(&self) -> bool {
        self.parts.iter().all(SingularityType::is_a)
    }

    pub fn contains(&self, t: SingularityType) -> bool {
        self.parts.contains(&t)
    }

    pub fn multiplicity(&self, t: SingularityType) -> usize {
        self.parts.iter().filter(|&&p| p == t).count()
    }

    /// Multiset union.
    pub fn union(&self, other: &Configuration) -> Result<Configuration> {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Configuration::new(parts)
    }

    /// `(type, multiplicity)` runs in canonical order.
    pub fn grouped(&self) -> Vec<(SingularityType, usize)> {
        let mut out: Vec<(SingularityType, usize)> = Vec::new();
        for &t in &self.parts {
            match out.last_mut() {
                Some((last, m)) if *last == t => *m += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }

    /// Disjoint union of the Dynkin diagrams of the parts; vertex count is mu.
    pub fn diagram(&self) -> Result<SimpleGraph> {
        if let Some(bad) = self.parts.iter().find(|t| !t.is_ade()) {
            return Err(Error::UnsupportedKind(bad.name()));
        }
        if self.mu() > crate::graph::MAX_VERTICES as u64 {
            return Err(Error::SizeLimit(format!(
                "diagram of {self} has {} vertices (max {})",
                self.mu(),
                crate::graph::MAX_VERTICES
            )));
        }
        let mut g = SimpleGraph::new(0)?;
        for t in &self.parts {
            g = g.disjoint_union(&t.dynkin_diagram()?)?;
        }
        Ok(g)
    }
}

impl Ord for Configuration {
    /// Descending mu first, so ordered sets read like the classification
    /// tables; then the canonical part sequences, descending.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .mu()
            .cmp(&self.mu())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, m)) in self.grouped().into_iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if m > 1 {
                write!(f, "{m}")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_config(s)
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses configuration notation such as `2A3+A2+2A1`, `T266`, `J10+A2`.
///
/// Terms are joined by `+`; each term is an optional decimal multiplicity
/// followed by a type token. `T` takes three single digits (`T245`) or the
/// long form `T(p,q,r)`. `T333`, `T244` and `T236` are accepted and print
/// as `P8`, `X9`, `J10`. Surrounding whitespace is ignored, inner
/// whitespace is not.
pub fn parse_config(text: &str) -> Result<Configuration> {
    let mut p = Parser::new(text.trim());
    let mut parts = Vec::new();
    loop {
        let (mult, t) = p.term()?;
        if parts.len() + mult > MAX_PARTS {
            return Err(Error::SizeLimit(format!(
                "more than {MAX_PARTS} parts in configuration"
            )));
        }
        parts.extend(std::iter::repeat_n(t, mult));
        if p.at_end() {
            break;
        }
        p.expect_byte(b'+')?;
    }
    Configuration::new(parts)
}

/// Parses a comma-separated list of configurations (`A11,A7+A4`).
pub fn parse_config_list(text: &str) -> Result<Vec<Configuration>> {
    text.split(',').map(parse_config).collect()
}

/// Largest total Milnor number [`ade_configurations`] enumerates.
pub const MAX_ENUMERATED_MU: u64 = 24;

/// ADE types of Milnor number `mu`.
fn ade_types_of_mu(mu: u32) -> Vec<SingularityType> {
    let mut out = vec![SingularityType::A(mu)];
    if mu >= 4 {
        out.push(SingularityType::D(mu));
    }
    if (6..=8).contains(&mu) {
        out.push(SingularityType::E(mu));
    }
    out
}

/// Every ADE configuration with total Milnor number `mu`, in canonical
/// order.
pub fn ade_configurations(mu: u64) -> Result<Vec<Configuration>> {
    if mu == 0 || mu > MAX_ENUMERATED_MU {
        return Err(Error::SizeLimit(format!(
            "ADE configurations are enumerated for 1 <= mu <= {MAX_ENUMERATED_MU}"
        )));
    }
    // Parts are chosen in nonincreasing (mu, position) order so each
    // multiset is produced once.
    let types: Vec<SingularityType> = (1..=mu as u32).rev().flat_map(ade_types_of_mu).collect();
    let mut out = Vec::new();
    fn go(
        types: &[SingularityType],
        from: usize,
        left: u64,
        cur: &mut Vec<SingularityType>,
        out: &mut Vec<Configuration>,
    ) -> Result<()> {
        if left == 0 {
            out.push(Configuration::new(cur.clone())?);
            return Ok(());
        }
        for (i, t) in types.iter().enumerate().skip(from) {
            if t.milnor_number() <= left {
                cur.push(*t);
                go(types, i, left - t.milnor_number(), cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    go(&types, 0, mu, &mut Vec::new(), &mut out)?;
    out.sort();
    Ok(out)
}

pub(crate) struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub(crate) fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError::syntax(self.pos, "unexpected trailing input"))
        }
    }

    pub(crate) fn expect_byte(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::syntax(
                self.pos,
                format!("expected '{}', found '{}'", b as char, c as char),
            )),
            None => Err(ParseError::syntax(
                self.pos,
                format!("expected '{}', found end of input", b as char),
            )),
        }
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    pub(crate) fn number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return Err(ParseError::syntax(start, "expected a decimal number"));
        }
        if d.len() > 6 {
            return Err(ParseError::semantic("number too large"));
        }
        Ok(std::str::from_utf8(d).unwrap().parse().unwrap())
    }

    fn term(&mut self) -> Result<(usize, SingularityType)> {
        let start = self.pos;
        let mult = if matches!(self.peek(), Some(b'0'..=b'9')) {
            let m = self.number()?;
            if m == 0 {
                return Err(ParseError::semantic(format!(
                    "multiplicity 0 at byte {start}"
                ))
                .into());
            }
            m as usize
        } else {
            1
        };
        Ok((mult, self.type_token()?))
    }

    fn type_token(&mut self) -> Result<SingularityType> {
        let start = self.pos;
        let letter = match self.peek() {
            Some(c) if c.is_ascii_uppercase() => c,
            Some(c) => {
                return Err(ParseError::syntax(
                    start,
                    format!("expected a type letter, found '{}'", c as char),
                )
                .into())
            }
            None => return Err(ParseError::syntax(start, "expected a singularity type").into()),
        };
        self.pos += 1;
        if letter == b'T' {
            return self.t_indices(start);
        }
        let n = self.number()?;
        let t = match (letter, n) {
            (b'A', n) => SingularityType::a(n)?,
            (b'D', n) => SingularityType::d(n)?,
            (b'E', n) => SingularityType::e(n)?,
            (b'P', 8) => SingularityType::P8,
            (b'X', 9) => SingularityType::X9,
            (b'J', 10) => SingularityType::J10,
            (b'Q', 10) => SingularityType::Q10,
            (b'S', 11) => SingularityType::S11,
            (b'U', 12) => SingularityType::U12,
            (b'O', 16) => SingularityType::O16,
            (l, n) => {
                return Err(ParseError::syntax(
                    start,
                    format!("unknown singularity type {}{n}", l as char),
                )
                .into())
            }
        };
        Ok(t)
    }

    fn t_indices(&mut self, start: usize) -> Result<SingularityType> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let p = self.number()?;
            self.expect_byte(b',')?;
            let q = self.number()?;
            self.expect_byte(b',')?;
            let r = self.number()?;
            self.expect_byte(b')')?;
            return SingularityType::t(p, q, r);
        }
        let d = self.digits();
        if d.len() != 3 {
            return Err(ParseError::syntax(
                start,
                "T needs exactly three single-digit indices (or T(p,q,r))",
            )
            .into());
        }
        let v: Vec<u32> = d.iter().map(|c| (c - b'0') as u32).collect();
        SingularityType::t(v[0], v[1], v[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(SingularityType::t(2, 6, 6).unwrap().milnor_number(), 13);
        assert_eq!(SingularityType::A(1).milnor_number(), 1);
        assert_eq!(SingularityType::P8.milnor_number(), 8);
        assert_eq!(SingularityType::X9.milnor_number(), 9);
        assert_eq!(SingularityType::J10.milnor_number(), 10);
        assert_eq!(SingularityType::O16.milnor_number(), 16);
    }

    #[test]
    fn parse_examples() {
        let x = c("2A5+A1");
        assert_eq!(x.parts(), &[SingularityType::A(5), SingularityType::A(5), SingularityType::A(1)]);
        assert_eq!((x.mu(), x.k()), (11, 3));
        let y = c("A1");
        assert_eq!((y.mu(), y.k()), (1, 1));
        assert!(matches!("D3".parse::<Configuration>(), Err(Error::Parse(ParseError::Semantic(_)))));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "+", "A1+", "+A1", "A1++A2", "A0", "E9", "T235", "T22", "a1", "A1 +A2", "0A1", "B3", "T(2,3,5)", "2"] {
            assert!(parse_config(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn aliases_normalize() {
        assert_eq!(c("T333").to_string(), "P8");
        assert_eq!(c("T442").to_string(), "X9");
        assert_eq!(c("T236+A2").to_string(), "J10+A2");
        assert_eq!(c("T(2,3,10)").to_string(), "T(2,3,10)");
        assert_eq!(c("T(6,6,2)").to_string(), "T266");
    }

    #[test]
    fn canonical_order_and_grouping() {
        assert_eq!(c("A1+A2+A3+A1+A3").to_string(), "2A3+A2+2A1");
        assert_eq!(c("A4+D4").to_string(), "D4+A4");
        assert_eq!(c("1A1+1A1").to_string(), "2A1");
    }

    #[test]
    fn diagrams() {
        let a3 = SingularityType::A(3).dynkin_diagram().unwrap();
        assert_eq!((a3.n(), a3.edge_count()), (3, 2));
        let d4 = SingularityType::D(4).dynkin_diagram().unwrap();
        let mut degs: Vec<u32> = (0..4).map(|v| d4.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 3]);
        assert!(SingularityType::Q10.dynkin_diagram().is_err());
        let g = c("3D4").diagram().unwrap();
        assert_eq!((g.n(), g.components().len()), (12, 3));
        let g = c("E6+2A2").diagram().unwrap();
        assert_eq!((g.n(), g.components().len()), (10, 3));
        assert_eq!(c("2A1").diagram().unwrap().edge_count(), 0);
        assert!(c("J10+A2").diagram().is_err());
    }

    #[test]
    fn tjurina_only_for_ade() {
        assert_eq!(SingularityType::E(7).tjurina_number(), Some(7));
        assert_eq!(SingularityType::U12.tjurina_number(), None);
    }

    #[test]
    fn ade_configuration_counts() {
        let names = |mu| -> Vec<String> {
            ade_configurations(mu).unwrap().iter().map(|c| c.to_string()).collect()
        };
        assert_eq!(names(1), ["A1"]);
        assert_eq!(names(3), ["A3", "A2+A1", "3A1"]);
        assert_eq!(names(4), ["D4", "A4", "A3+A1", "2A2", "A2+2A1", "4A1"]);
        assert!(ade_configurations(0).is_err());
        let all = ade_configurations(12).unwrap();
        assert!(all.iter().all(|c| c.mu() == 12 && c.is_ade()));
        let distinct: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}
