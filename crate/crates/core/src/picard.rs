//! Divisor classes on the Hirzebruch surface F2.
//!
//! `Pic F2 = Z s + Z f` with `s^2 = -2`, `s.f = 1`, `f^2 = 0`, where `s` is
//! the negative section and `f` a fibre. The canonical class is
//! `K = -2s - 4f` and the hyperplane class of the quadric cone pulls back to
//! `H = s + 2f`, so `H.(a s + b f) = b`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::singularity::{Configuration, SingularityType};

/// Largest coefficient magnitude accepted by the parser; keeps every
/// intersection number well inside `i64`.
pub const MAX_COEFFICIENT: i64 = 1_000_000;
/// Largest part count for splitting enumeration.
pub const MAX_SPLIT_PARTS: usize = 6;
/// Largest coefficient of a class being split.
pub const MAX_SPLIT_COEFFICIENT: i64 = 64;

/// The class `a s + b f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const SIGMA: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const FIBER: DivisorClass = DivisorClass { a: 0, b: 1 };
    pub const HYPERPLANE: DivisorClass = DivisorClass { a: 1, b: 2 };
    pub const CANONICAL: DivisorClass = DivisorClass { a: -2, b: -4 };

    pub const fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    pub fn intersect(self, other: DivisorClass) -> i64 {
        -2 * self.a * other.a + self.a * other.b + other.a * self.b
    }

    pub fn self_intersection(self) -> i64 {
        self.intersect(self)
    }

    /// Degree under the hyperplane class.
    pub fn h_degree(self) -> i64 {
        Self::HYPERPLANE.intersect(self)
    }

    /// Arithmetic genus `d.(d+K)/2 + 1`.
    pub fn genus(self) -> Rational64 {
        Rational64::new(self.intersect(self + Self::CANONICAL), 2) + 1
    }

    /// Class of an irreducible curve: `s`, `f`, or `a >= 1` with `b >= 2a`.
    pub fn is_irreducible_class(self) -> bool {
        self == Self::SIGMA || self == Self::FIBER || (self.a >= 1 && self.b >= 2 * self.a)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.a, -self.b)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * d.a, self * d.b)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}*s-{}*f", self.a, -self.b)
        } else {
            write!(f, "{}*s+{}*f", self.a, self.b)
        }
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_divisor_class(s)
    }
}

fn coefficient(text: &str, pos: usize) -> Result<i64, ParseError> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    let digits = digits.strip_prefix('+').unwrap_or(digits);
    if digits.is_empty() || digits.len() > 7 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::syntax(pos, format!("expected an integer, found '{text}'")));
    }
    let v: i64 = text.parse().map_err(|_| ParseError::syntax(pos, "bad integer"))?;
    if v.abs() > MAX_COEFFICIENT {
        return Err(ParseError::semantic(format!("|{v}| exceeds {MAX_COEFFICIENT}")));
    }
    Ok(v)
}

/// Parses `a,b` or a sum of terms in `s` and `f` such as `2*s+6*f`,
/// `s-f`, `-3*f`. Each of `s` and `f` may appear at most once.
pub fn parse_divisor_class(text: &str) -> Result<DivisorClass> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once(',') {
        let a = coefficient(a.trim(), 0)?;
        let b = coefficient(b.trim(), a.to_string().len() + 1)?;
        return Ok(DivisorClass::new(a, b));
    }
    if text.is_empty() {
        return Err(ParseError::syntax(0, "empty divisor class").into());
    }
    let bytes = text.as_bytes();
    let mut class: [Option<i64>; 2] = [None, None];
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        let mut sign = 1;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if start != 0 {
            return Err(ParseError::syntax(pos, "expected '+' or '-'").into());
        }
        let num_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coef = if pos > num_start {
            let c = coefficient(&text[num_start..pos], num_start)?;
            if bytes.get(pos) != Some(&b'*') {
                return Err(ParseError::syntax(pos, "expected '*' after coefficient").into());
            }
            pos += 1;
            c
        } else {
            1
        };
        let slot = match bytes.get(pos) {
            Some(b's') => 0,
            Some(b'f') => 1,
            _ => return Err(ParseError::syntax(pos, "expected 's' or 'f'").into()),
        };
        pos += 1;
        if class[slot].is_some() {
            return Err(ParseError::syntax(start, "repeated generator").into());
        }
        class[slot] = Some(sign * coef);
    }
    Ok(DivisorClass::new(class[0].unwrap_or(0), class[1].unwrap_or(0)))
}

/// Integer `a` with `genus(a s + b f) = g`, i.e. roots of
/// `a^2 - b a + (b - 1 + g) = 0`.
pub fn solve_genus(b: i64, g: i64) -> BTreeSet<i64> {
    let disc = b as i128 * b as i128 - 4 * (b as i128 - 1 + g as i128);
    let mut out = BTreeSet::new();
    if disc < 0 {
        return out;
    }
    let r = isqrt(disc);
    if r * r != disc {
        return out;
    }
    for root in [b as i128 - r, b as i128 + r] {
        if root % 2 == 0 {
            out.insert((root / 2) as i64);
        }
    }
    out
}

fn isqrt(n: i128) -> i128 {
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Irreducible classes with positive hyperplane degree below `total`.
fn component_candidates(total: DivisorClass) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for a in 0..=total.a {
        for b in 1..=total.b {
            let c = DivisorClass::new(a, b);
            if c.is_irreducible_class() {
                out.push(c);
            }
        }
    }
    out
}

fn check_split_args(total: DivisorClass, parts: usize) -> Result<()> {
    if total.a < 0 || total.b < 0 {
        return Err(Error::InvalidArgument(format!("{total} has a negative coefficient")));
    }
    if parts > MAX_SPLIT_PARTS || total.a > MAX_SPLIT_COEFFICIENT || total.b > MAX_SPLIT_COEFFICIENT {
        return Err(Error::SizeLimit(format!(
            "splitting supports at most {MAX_SPLIT_PARTS} parts and coefficients up to {MAX_SPLIT_COEFFICIENT}"
        )));
    }
    Ok(())
}

/// Multisets of exactly `parts` irreducible classes, each of positive
/// hyperplane degree, summing to `total`. Parts are listed ascending and
/// the multisets in lexicographic order.
pub fn enumerate_splittings(total: DivisorClass, parts: usize) -> Result<Vec<Vec<DivisorClass>>> {
    check_split_args(total, parts)?;
    let cands = component_candidates(total);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        cands: &[DivisorClass],
        from: usize,
        left: DivisorClass,
        parts: usize,
        cur: &mut Vec<DivisorClass>,
        out: &mut Vec<Vec<DivisorClass>>,
    ) {
        if parts == 0 {
            if left == DivisorClass::new(0, 0) {
                out.push(cur.clone());
            }
            return;
        }
        for (i, &c) in cands.iter().enumerate().skip(from) {
            if c.a > left.a || c.b > left.b {
                continue;
            }
            cur.push(c);
            go(cands, i, left - c, parts - 1, cur, out);
            cur.pop();
        }
    }
    go(&cands, 0, total, parts, &mut cur, &mut out);
    Ok(out)
}

/// Splittings into at most `max_parts` parts.
pub fn enumerate_splittings_up_to(
    total: DivisorClass,
    max_parts: usize,
) -> Result<Vec<Vec<DivisorClass>>> {
    let mut out = Vec::new();
    for p in 1..=max_parts {
        out.extend(enumerate_splittings(total, p)?);
    }
    Ok(out)
}

/// One splitting with the genus of each part and the pairwise
/// intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingEntry {
    pub parts: Vec<DivisorClass>,
    pub genus: Vec<i64>,
    pub intersections: Vec<Vec<i64>>,
}

impl SplittingEntry {
    pub fn new(parts: Vec<DivisorClass>) -> Self {
        let genus = parts.iter().map(|p| p.genus().to_integer()).collect();
        let intersections = parts
            .iter()
            .map(|p| parts.iter().map(|q| p.intersect(*q)).collect())
            .collect();
        SplittingEntry {
            parts,
            genus,
            intersections,
        }
    }
}

/// Lower bound on the arithmetic genus of a curve with the given A_n
/// singularities: each `A_i` costs `ceil(i/2)`.
pub fn genus_lower_bound(c: &Configuration) -> Result<u64> {
    c.parts()
        .iter()
        .map(|t| match *t {
            SingularityType::A(i) => Ok((i as u64).div_ceil(2)),
            other => Err(Error::UnsupportedKind(format!("{other} is not of type A"))),
        })
        .sum()
}

/// Singularity left after blowing up an `A_n` point once: `A_{n-2}`, or
/// `None` (smooth) for `n <= 2`.
pub fn an_blowup(n: u32) -> Result<Option<u32>> {
    match n {
        0 => Err(Error::InvalidArgument("A_n needs n >= 1".into())),
        1 | 2 => Ok(None),
        n => Ok(Some(n - 2)),
    }
}

/// Whether a double cover of P1 by a rational curve with `branch_points`
/// branch points contradicts the Riemann-Hurwitz bound
/// `chi(C) <= 2 chi(P1) - branch_points`, i.e. `2 > 4 - branch_points`.
pub fn riemann_hurwitz_contradiction(branch_points: u64) -> bool {
    2 > 4 - branch_points as i128
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(a: i64, b: i64) -> DivisorClass {
        DivisorClass::new(a, b)
    }

    #[test]
    fn intersections() {
        let s = DivisorClass::SIGMA;
        let h = DivisorClass::HYPERPLANE;
        assert_eq!(s.intersect(s), -2);
        assert_eq!(s.intersect(DivisorClass::FIBER), 1);
        assert_eq!(DivisorClass::FIBER.self_intersection(), 0);
        assert_eq!(h.intersect(h), 2);
        assert_eq!(h.intersect(d(2, 6)), 6);
        assert_eq!(d(1, 3).intersect(h), 3);
    }

    #[test]
    fn genera() {
        assert_eq!(d(2, 6).genus(), 3.into());
        assert_eq!(d(3, 6).genus(), 4.into());
        assert_eq!(d(1, 3).genus(), 0.into());
        assert_eq!(d(2, 5).genus(), 2.into());
        assert_eq!(DivisorClass::SIGMA.genus(), 0.into());
        assert_eq!(DivisorClass::FIBER.genus(), 0.into());
    }

    #[test]
    fn genus_roots() {
        assert_eq!(solve_genus(6, 3), BTreeSet::from([2, 4]));
        assert_eq!(solve_genus(6, 4), BTreeSet::from([3]));
        assert!(solve_genus(6, -1).is_empty());
        for b in -5..20 {
            for g in -5..10 {
                for a in solve_genus(b, g) {
                    assert_eq!(d(a, b).genus(), g.into());
                }
            }
        }
    }

    #[test]
    fn irreducibility() {
        assert!(!d(0, 2).is_irreducible_class());
        assert!(d(1, 4).is_irreducible_class());
        assert!(d(2, 5).is_irreducible_class());
        assert!(!d(2, 3).is_irreducible_class());
        assert!(!d(-1, 0).is_irreducible_class());
    }

    #[test]
    fn quoted_splittings() {
        let show = |v: Vec<Vec<DivisorClass>>| -> Vec<String> {
            v.iter()
                .map(|p| p.iter().map(|c| format!("({},{})", c.a, c.b)).collect::<String>())
                .collect()
        };
        assert_eq!(
            show(enumerate_splittings(d(2, 6), 2).unwrap()),
            ["(0,1)(2,5)", "(1,2)(1,4)", "(1,3)(1,3)"]
        );
        assert_eq!(show(enumerate_splittings(d(3, 6), 2).unwrap()), ["(1,2)(2,4)"]);
        assert_eq!(show(enumerate_splittings(d(3, 6), 3).unwrap()), ["(1,2)(1,2)(1,2)"]);
        assert!(enumerate_splittings(d(-1, 2), 2).is_err());
        assert!(enumerate_splittings(d(2, 6), 7).is_err());
    }

    #[test]
    fn lower_bounds() {
        let c = |s: &str| s.parse::<Configuration>().unwrap();
        assert_eq!(genus_lower_bound(&c("A10")).unwrap(), 5);
        assert_eq!(genus_lower_bound(&c("3A2+A1")).unwrap(), 4);
        assert_eq!(genus_lower_bound(&c("A1")).unwrap(), 1);
        assert!(genus_lower_bound(&c("D4")).is_err());
    }

    #[test]
    fn blowups() {
        assert_eq!(an_blowup(9).unwrap(), Some(7));
        assert_eq!(an_blowup(2).unwrap(), None);
        assert_eq!(an_blowup(3).unwrap(), Some(1));
        assert!(an_blowup(0).is_err());
    }

    #[test]
    fn riemann_hurwitz() {
        assert!(riemann_hurwitz_contradiction(3));
        assert!(!riemann_hurwitz_contradiction(2));
        assert!(!riemann_hurwitz_contradiction(0));
    }

    #[test]
    fn parsing() {
        for (s, a, b) in [
            ("2,6", 2, 6),
            ("2*s+6*f", 2, 6),
            ("s", 1, 0),
            ("f", 0, 1),
            ("-2*s-4*f", -2, -4),
            ("s-f", 1, -1),
            ("6*f+2*s", 2, 6),
            (" 3 , -1 ", 3, -1),
        ] {
            assert_eq!(parse_divisor_class(s).unwrap(), d(a, b), "{s}");
        }
        for bad in ["", ",", "2,", "2*x", "s+s", "2s", "s f", "1,2,3", "99999999,1", "+"] {
            assert!(parse_divisor_class(bad).is_err(), "{bad:?}");
        }
        assert_eq!(d(2, -3).to_string(), "2*s-3*f");
        assert_eq!(parse_divisor_class(&d(-7, 5).to_string()).unwrap(), d(-7, 5));
    }
}
