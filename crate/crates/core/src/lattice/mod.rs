//! Integral lattices with exact arithmetic.
//!
//! A lattice is given by a nondegenerate symmetric integer Gram matrix.
//! Everything here is computed over arbitrary-precision integers and
//! rationals: determinants by Bareiss elimination, signatures by congruent
//! diagonalization, discriminant groups by Smith normal form.

mod discriminant;
mod nikulin;
mod obstruction;
mod snf;

pub use discriminant::{DiscriminantForm, Element, FiniteAbelianGroup, Overlattice, Subgroup, MAX_ENUMERATED_ORDER};
pub use nikulin::{glue, Gluing};
pub use obstruction::{complement_generator_obstruction, rank_signature_obstruction, ObstructionReport};
pub use snf::{smith_normal_form, SmithForm};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, ParseError, Result};
use crate::singularity::{Configuration, SingularityType};

/// Largest supported rank.
pub const MAX_RANK: usize = 24;

pub type Matrix = Vec<Vec<BigInt>>;

/// A nondegenerate integral symmetric bilinear form on `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    gram: Matrix,
}

impl IntLattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        let r = gram.len();
        if r == 0 {
            return Err(Error::Degenerate);
        }
        if r > MAX_RANK {
            return Err(Error::SizeLimit(format!("rank {r} exceeds {MAX_RANK}")));
        }
        if gram.iter().any(|row| row.len() != r) {
            return Err(ParseError::semantic("Gram matrix must be square").into());
        }
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let l = IntLattice { gram };
        if l.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(l)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i][j]
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[i][i] % 2u32).is_zero())
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        determinant(&self.gram)
    }

    /// `(n_plus, n_minus)`.
    pub fn signature(&self) -> (usize, usize) {
        let pivots = congruent_diagonal(&self.gram);
        let pos = pivots.iter().filter(|p| p.is_positive()).count();
        (pos, pivots.len() - pos)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().1 == 0
    }

    pub fn direct_sum(&self, other: &IntLattice) -> Result<IntLattice> {
        let (r1, r2) = (self.rank(), other.rank());
        if r1 + r2 > MAX_RANK {
            return Err(Error::SizeLimit(format!("rank {} exceeds {MAX_RANK}", r1 + r2)));
        }
        let mut g = vec![vec![BigInt::zero(); r1 + r2]; r1 + r2];
        for i in 0..r1 {
            g[i][..r1].clone_from_slice(&self.gram[i]);
        }
        for i in 0..r2 {
            g[r1 + i][r1..].clone_from_slice(&other.gram[i]);
        }
        Ok(IntLattice { gram: g })
    }

    /// `n` copies of `self`.
    pub fn power(&self, n: usize) -> Result<IntLattice> {
        if n == 0 {
            return Err(Error::Degenerate);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.direct_sum(self)?;
        }
        Ok(acc)
    }

    /// Inner product of two coordinate vectors (rational).
    pub fn product(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += xi * yj * BigRational::from_integer(self.gram[i][j].clone());
                }
            }
        }
        acc
    }

    pub fn smith_form(&self) -> SmithForm {
        smith_normal_form(&self.gram)
    }

    pub fn discriminant_group(&self) -> Result<FiniteAbelianGroup> {
        FiniteAbelianGroup::from_smith(&self.smith_form())
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantForm> {
        DiscriminantForm::of(self)
    }

    /// Matrix text: header `rank r`, then `r` rows of integers.
    pub fn to_text(&self) -> String {
        let mut s = format!("rank {}\n", self.rank());
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses the matrix text format. `#` starts a comment; blank lines are
/// ignored; entries are decimal integers of at most 18 digits.
pub fn parse_lattice_text(text: &str) -> Result<IntLattice> {
    let mut rank: Option<usize> = None;
    let mut rows: Matrix = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let at = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match rank {
            None => match fields.as_slice() {
                ["rank", r] => {
                    let r: usize = r
                        .parse()
                        .map_err(|_| ParseError::syntax(at, "rank must be a number"))?;
                    if r == 0 || r > MAX_RANK {
                        return Err(Error::SizeLimit(format!("rank {r} outside 1..={MAX_RANK}")));
                    }
                    rank = Some(r);
                }
                _ => return Err(ParseError::syntax(at, "expected header 'rank <r>'").into()),
            },
            Some(r) => {
                if rows.len() == r {
                    return Err(ParseError::syntax(at, "more rows than the rank").into());
                }
                if fields.len() != r {
                    return Err(ParseError::syntax(at, format!("expected {r} entries")).into());
                }
                let row = fields
                    .iter()
                    .map(|f| {
                        let digits = f.strip_prefix('-').unwrap_or(f);
                        if digits.is_empty() || digits.len() > 18 || !digits.bytes().all(|b| b.is_ascii_digit()) {
                            return Err(ParseError::syntax(at, format!("bad entry '{f}'")));
                        }
                        Ok(f.parse::<BigInt>().expect("validated digits"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(row);
            }
        }
    }
    match rank {
        None => Err(ParseError::syntax(0, "missing header 'rank <r>'").into()),
        Some(r) if rows.len() != r => {
            Err(ParseError::syntax(offset, format!("expected {r} rows, found {}", rows.len())).into())
        }
        Some(_) => IntLattice::new(rows),
    }
}

impl FromStr for IntLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_lattice_text(s)
    }
}

/// Determinant of a square integer matrix (Bareiss).
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Diagonal of a rational congruent diagonalization `P^T G P`. Empty
/// pivots never occur for nondegenerate input; a zero pivot is reported
/// as a zero entry.
fn congruent_diagonal(g: &Matrix) -> Vec<BigRational> {
    let n = g.len();
    let mut m: Vec<Vec<BigRational>> = g
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                m.swap(i, k);
                for row in m.iter_mut() {
                    row.swap(i, k);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // e_k += e_j turns the zero diagonal into 2 m[k][j].
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[k][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][k] += v;
                }
            }
        }
        let p = m[k][k].clone();
        if p.is_zero() {
            out.push(p);
            continue;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for c in k..n {
                let v = &f * &m[k][c];
                m[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &m[r][k];
                m[r][i] -= v;
            }
        }
        out.push(p);
    }
    out
}

/// Standard positive-definite Gram matrix of an ADE root lattice: 2 on the
/// diagonal and -1 for each edge of the Dynkin diagram.
pub fn gram_of(t: SingularityType) -> Result<IntLattice> {
    let d = t.dynkin_diagram()?;
    if d.n() > MAX_RANK {
        return Err(Error::SizeLimit(format!("rank {} exceeds {MAX_RANK}", d.n())));
    }
    let n = d.n();
    let mut g = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = BigInt::from(2);
    }
    for (u, v) in d.edges() {
        g[u][v] = BigInt::from(-1);
        g[v][u] = BigInt::from(-1);
    }
    IntLattice::new(g)
}

/// The hyperbolic plane `[[0,1],[1,0]]`.
pub fn hyperbolic_plane() -> IntLattice {
    IntLattice::from_rows(&[vec![0, 1], vec![1, 0]]).expect("unimodular")
}

/// `D4 + D4 + D4 + U + U`, the Milnor lattice of O16.
pub fn o16_lattice() -> IntLattice {
    parse_lattice_expr("3D4+2U").expect("static expression")
}

/// Direct sum of the root lattices of an ADE configuration.
pub fn config_lattice(c: &Configuration) -> Result<IntLattice> {
    let mut parts = c.parts().iter();
    let first = parts.next().expect("configurations are nonempty");
    parts.try_fold(gram_of(*first)?, |acc, &t| acc.direct_sum(&gram_of(t)?))
}

/// Parses lattice expressions: `+`-joined terms, each an optional
/// multiplicity followed by `U` (hyperbolic plane), `T` (the O16 Milnor
/// lattice) or an ADE token, e.g. `3D4+2U`, `A12`, `15A1`.
pub fn parse_lattice_expr(text: &str) -> Result<IntLattice> {
    let text = text.trim();
    let mut acc: Option<IntLattice> = None;
    let mut pos = 0;
    for term in text.split('+') {
        let digits = term.bytes().take_while(u8::is_ascii_digit).count();
        let (m, token) = term.split_at(digits);
        let mult: usize = if m.is_empty() {
            1
        } else {
            match m.parse() {
                Ok(v) if (1..=MAX_RANK).contains(&v) => v,
                _ => return Err(ParseError::syntax(pos, format!("bad multiplicity '{m}'")).into()),
            }
        };
        let base = match token {
            "U" => hyperbolic_plane(),
            "T" => o16_lattice(),
            "" => return Err(ParseError::syntax(pos, "empty term").into()),
            _ => {
                let t: SingularityType = token.parse().map_err(|e| match e {
                    Error::Parse(ParseError::Syntax { msg, .. }) => {
                        Error::Parse(ParseError::syntax(pos, msg))
                    }
                    other => other,
                })?;
                gram_of(t)?
            }
        };
        if base.rank() * mult > MAX_RANK {
            return Err(Error::SizeLimit(format!("rank exceeds {MAX_RANK}")));
        }
        let block = base.power(mult)?;
        acc = Some(match acc {
            None => block,
            Some(a) => a.direct_sum(&block)?,
        });
        pos += term.len() + 1;
    }
    acc.ok_or_else(|| ParseError::syntax(0, "empty lattice expression").into())
}

pub(crate) fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{what} = {x} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(s: &str) -> IntLattice {
        parse_lattice_expr(s).unwrap()
    }

    #[test]
    fn a1_gram() {
        assert_eq!(lat("A1").gram(), &vec![vec![BigInt::from(2)]]);
    }

    #[test]
    fn ade_determinants() {
        for n in 1..=12u32 {
            assert_eq!(gram_of(SingularityType::A(n)).unwrap().det(), BigInt::from(n + 1));
        }
        for n in 4..=12u32 {
            assert_eq!(gram_of(SingularityType::D(n)).unwrap().det(), BigInt::from(4));
        }
        let e: Vec<BigInt> = (6..=8).map(|n| gram_of(SingularityType::E(n)).unwrap().det()).collect();
        assert_eq!(e, [3, 2, 1].map(BigInt::from));
    }

    #[test]
    fn signatures() {
        assert_eq!(lat("E8").signature(), (8, 0));
        assert_eq!(hyperbolic_plane().signature(), (1, 1));
        let t = o16_lattice();
        assert_eq!(t.rank(), 16);
        assert_eq!(t.signature(), (14, 2));
        let neg = IntLattice::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap();
        assert_eq!(neg.signature(), (0, 2));
        let zero_diag = IntLattice::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        assert!(matches!(zero_diag, Err(Error::Degenerate)));
        let zd = IntLattice::from_rows(&[vec![0, 2, 1], vec![2, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(zd.signature(), (1, 2));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(IntLattice::from_rows(&[vec![2, 1], vec![0, 2]]), Err(Error::NotSymmetric)));
        assert!(matches!(IntLattice::from_rows(&[vec![1, 1], vec![1, 1]]), Err(Error::Degenerate)));
        assert!(gram_of(SingularityType::Q10).is_err());
    }

    #[test]
    fn expressions() {
        assert_eq!(lat("3D4+2U"), o16_lattice());
        assert_eq!(lat("T").rank(), 16);
        assert_eq!(lat("15A1").rank(), 15);
        for bad in ["", "+", "U+", "0U", "X", "D3", "2T", "25A1", "A1 A1"] {
            assert!(parse_lattice_expr(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn text_round_trip() {
        let t = o16_lattice();
        assert_eq!(parse_lattice_text(&t.to_text()).unwrap(), t);
        let txt = "# A2\nrank 2\n2 -1\n-1 2\n";
        assert_eq!(parse_lattice_text(txt).unwrap(), lat("A2"));
        for bad in ["", "rank 0", "rank 2\n1 0", "rank 1\n2\n2", "rank 1\nx", "rank 1\n-", "2\n"] {
            assert!(parse_lattice_text(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn direct_sum_signature_adds() {
        let a = lat("E6");
        let b = hyperbolic_plane();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.signature(), (7, 1));
        assert_eq!(s.det(), BigInt::from(-3));
    }
}
