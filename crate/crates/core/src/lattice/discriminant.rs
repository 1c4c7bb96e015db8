use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::snf::SmithForm;
use super::{to_i64, IntLattice, Matrix};
use crate::error::{Error, Result};

/// Largest group order for which subgroups are enumerated.
pub const MAX_ENUMERATED_ORDER: u64 = 1 << 12;

/// A finite abelian group `Z/d_1 + ... + Z/d_m` with `d_1 | d_2 | ...` and
/// every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        factors.retain(|&d| d != 1);
        if factors.contains(&0) {
            return Err(Error::Degenerate);
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::DataIntegrity(format!(
                "invariant factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: factors,
        })
    }

    pub(crate) fn from_smith(s: &SmithForm) -> Result<Self> {
        let mut out = Vec::new();
        for d in &s.diagonal {
            if d.is_zero() {
                return Err(Error::Degenerate);
            }
            if !d.is_one() {
                out.push(to_i64(d, "invariant factor")? as u64);
            }
        }
        Self::new(out)
    }

    /// Invariant factors from the elementary divisors `p^e` of any
    /// decomposition.
    pub fn from_elementary_divisors(prime_powers: &[(u64, u32)]) -> Result<Self> {
        let mut primes: Vec<u64> = prime_powers.iter().map(|&(p, _)| p).collect();
        primes.sort_unstable();
        primes.dedup();
        let mut per_prime: Vec<Vec<u32>> = primes
            .iter()
            .map(|&p| {
                let mut e: Vec<u32> = prime_powers
                    .iter()
                    .filter(|&&(q, e)| q == p && e > 0)
                    .map(|&(_, e)| e)
                    .collect();
                e.sort_unstable_by(|a, b| b.cmp(a));
                e
            })
            .collect();
        let m = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; m];
        for (p, exps) in primes.iter().zip(per_prime.iter_mut()) {
            for (i, &e) in exps.iter().enumerate() {
                let pe = p
                    .checked_pow(e)
                    .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))?;
                // Largest exponents go to the last factor.
                factors[m - 1 - i] = factors[m - 1 - i]
                    .checked_mul(pe)
                    .ok_or_else(|| Error::Overflow("group order".into()))?;
            }
        }
        Self::new(factors)
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Minimal number of generators.
    pub fn generator_count(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of invariant factors divisible by `p`: the minimal generator
    /// count of the `p`-part.
    pub fn p_rank(&self, p: u64) -> usize {
        self.invariant_factors.iter().filter(|&&d| d % p == 0).count()
    }

    /// Prime divisors of the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for &d in &self.invariant_factors {
            let mut n = d;
            let mut p = 2;
            while p * p <= n {
                while n % p == 0 {
                    out.insert(p);
                    n /= p;
                }
                p += 1;
            }
            if n > 1 {
                out.insert(n);
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.invariant_factors.iter().map(u64::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Reduces a rational into `[0, m)`.
pub(crate) fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

/// The discriminant form of an even lattice on its Smith generators.
///
/// Generator `i` is the dual vector `V[:, i] / d_i`, written in the
/// coordinates of the lattice basis, and has order `d_i`. `q` takes values
/// in `[0, 2)` and `b` in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantForm {
    pub group: FiniteAbelianGroup,
    pub generators: Vec<Vec<BigRational>>,
    pub q: Vec<BigRational>,
    pub b: Vec<Vec<BigRational>>,
    lattice: IntLattice,
}

/// An element of a discriminant group as coefficients on the generators.
pub type Element = Vec<u64>;

impl DiscriminantForm {
    pub fn of(l: &IntLattice) -> Result<Self> {
        if !l.is_even() {
            return Err(Error::OddLattice);
        }
        let s = l.smith_form();
        let group = FiniteAbelianGroup::from_smith(&s)?;
        let r = l.rank();
        let mut generators = Vec::new();
        for (i, d) in s.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            generators.push(
                (0..r)
                    .map(|row| BigRational::new(s.v[row][i].clone(), d.clone()))
                    .collect::<Vec<_>>(),
            );
        }
        let m = generators.len();
        let q = generators
            .iter()
            .map(|y| reduce_mod(&l.product(y, y), 2))
            .collect();
        let b = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| reduce_mod(&l.product(&generators[i], &generators[j]), 1))
                    .collect()
            })
            .collect();
        Ok(DiscriminantForm {
            group,
            generators,
            q,
            b,
            lattice: l.clone(),
        })
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    fn factors(&self) -> &[u64] {
        &self.group.invariant_factors
    }

    /// `q(x)` in `[0, 2)`.
    pub fn q_of(&self, x: &[u64]) -> BigRational {
        let big = |n: u64| BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            acc += big(x[i] * x[i]) * &self.q[i];
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    acc += big(2 * x[i] * x[j]) * &self.b[i][j];
                }
            }
        }
        reduce_mod(&acc, 2)
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b_of(&self, x: &[u64], y: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                if xi != 0 && yj != 0 {
                    acc += BigRational::from_integer(BigInt::from(xi * yj)) * &self.b[i][j];
                }
            }
        }
        reduce_mod(&acc, 1)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(self.factors())
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn zero(&self) -> Element {
        vec![0; self.factors().len()]
    }

    /// All group elements in mixed-radix order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let order = self.group.order();
        if order > MAX_ENUMERATED_ORDER as u128 {
            return Err(Error::SizeLimit(format!(
                "discriminant group of order {order} exceeds {MAX_ENUMERATED_ORDER}"
            )));
        }
        let mut out = vec![self.zero()];
        for (i, &d) in self.factors().iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for k in 0..d {
                    let mut x = e.clone();
                    x[i] = k;
                    next.push(x);
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    /// The polarization identity `2 b(x,y) = q(x+y) - q(x) - q(y)` mod 2 on
    /// all generator pairs.
    pub fn satisfies_polarization(&self) -> bool {
        let m = self.factors().len();
        let unit = |i: usize| {
            let mut e = self.zero();
            e[i] = 1;
            e
        };
        (0..m).all(|i| {
            (0..m).all(|j| {
                let (x, y) = (unit(i), unit(j));
                let lhs = reduce_mod(&(self.b_of(&x, &y) * BigRational::from_integer(2.into())), 2);
                let rhs = reduce_mod(&(self.q_of(&self.add(&x, &y)) - self.q_of(&x) - self.q_of(&y)), 2);
                lhs == rhs
            })
        })
    }

    /// The subgroup generated by `gens`.
    pub fn span(&self, gens: &[Element]) -> Subgroup {
        let mut elems: BTreeSet<Element> = BTreeSet::from([self.zero()]);
        for g in gens {
            if elems.contains(g) {
                continue;
            }
            let mut grown = elems.clone();
            for h in &elems {
                let mut x = self.add(h, g);
                while !grown.contains(&x) {
                    grown.insert(x.clone());
                    x = self.add(&x, g);
                }
            }
            elems = grown;
        }
        Subgroup {
            generators: gens.to_vec(),
            elements: elems,
        }
    }

    /// Every subgroup on which `q` vanishes identically, including the
    /// trivial one, ordered by size and then elements.
    pub fn isotropic_subgroups(&self) -> Result<Vec<Subgroup>> {
        let isotropic: Vec<Element> = self
            .elements()?
            .into_iter()
            .filter(|x| self.q_of(x).is_zero() && x.iter().any(|&c| c != 0))
            .collect();
        let mut seen: BTreeSet<BTreeSet<Element>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.span(&[])]);
        seen.insert(queue[0].elements.clone());
        while let Some(h) = queue.pop_front() {
            for x in &isotropic {
                if h.elements.contains(x) {
                    continue;
                }
                if h.generators.iter().any(|g| !self.b_of(g, x).is_zero()) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(x.clone());
                let bigger = self.span(&gens);
                if seen.insert(bigger.elements.clone()) {
                    queue.push_back(bigger);
                }
            }
            out.push(h);
        }
        out.sort_by(|a, b| {
            a.elements
                .len()
                .cmp(&b.elements.len())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        Ok(out)
    }

    /// Lift of a group element to the dual lattice, in lattice coordinates.
    pub fn lift(&self, x: &[u64]) -> Vec<BigRational> {
        let r = self.lattice.rank();
        let mut v = vec![BigRational::zero(); r];
        for (c, gen) in x.iter().zip(&self.generators) {
            if *c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(*c));
            for (vi, gi) in v.iter_mut().zip(gen) {
                *vi += &c * gi;
            }
        }
        v
    }

    /// The even overlattice corresponding to an isotropic subgroup.
    pub fn overlattice(&self, h: &Subgroup) -> Result<Overlattice> {
        if let Some(x) = h.elements.iter().find(|x| !self.q_of(x).is_zero()) {
            return Err(Error::InvalidGluing(format!(
                "subgroup element {x:?} is not isotropic"
            )));
        }
        let r = self.lattice.rank();
        let mut rows: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        rows.extend(h.generators.iter().map(|g| self.lift(g)));
        let basis = rational_row_basis(&rows, r)?;
        let n = basis.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = self.lattice.product(&basis[i], &basis[j]);
                        if !v.is_integer() {
                            return Err(Error::InvalidGluing(format!(
                                "overlattice product {v} is not integral"
                            )));
                        }
                        Ok(v.to_integer())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Matrix>>()?;
        let lattice = IntLattice::new(gram)?;
        Ok(Overlattice {
            subgroup: h.clone(),
            basis,
            lattice,
        })
    }

    /// Every even overlattice of the underlying lattice.
    pub fn even_overlattices(&self) -> Result<Vec<Overlattice>> {
        self.isotropic_subgroups()?
            .iter()
            .map(|h| self.overlattice(h))
            .collect()
    }
}

/// A subgroup of a discriminant group with the generators it was built
/// from (a generating set, not necessarily minimal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub generators: Vec<Element>,
    pub elements: BTreeSet<Element>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlattice {
    pub subgroup: Subgroup,
    /// Basis of the overlattice in coordinates of the original lattice.
    pub basis: Vec<Vec<BigRational>>,
    pub lattice: IntLattice,
}

/// A Z-basis of the row span of rational vectors of full rank `r`.
pub(crate) fn rational_row_basis(rows: &[Vec<BigRational>], r: usize) -> Result<Vec<Vec<BigRational>>> {
    let mut denom = BigInt::one();
    for row in rows {
        for x in row {
            denom = denom.lcm(x.denom());
        }
    }
    let dr = BigRational::from_integer(denom.clone());
    let mut m: Matrix = rows
        .iter()
        .map(|row| row.iter().map(|x| (x * &dr).to_integer()).collect())
        .collect();
    let basis = integer_row_basis(&mut m, r);
    if basis.len() != r {
        return Err(Error::Degenerate);
    }
    Ok(basis
        .into_iter()
        .map(|row| row.into_iter().map(|x| BigRational::new(x, denom.clone())).collect())
        .collect())
}

/// Echelon form by gcd row operations; returns the nonzero rows.
fn integer_row_basis(m: &mut Matrix, cols: usize) -> Matrix {
    let mut top = 0;
    for c in 0..cols {
        loop {
            let pivot = (top..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(p) = pivot else { break };
            m.swap(top, p);
            let mut done = true;
            for i in top + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].div_floor(&m[top][c]);
                let src = m[top].clone();
                for (x, y) in m[i].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
                done &= m[i][c].is_zero();
            }
            if done {
                top += 1;
                break;
            }
        }
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    m.clone()
}
