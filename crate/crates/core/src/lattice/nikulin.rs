//! Gluing two even lattices along an anti-isometry of discriminant
//! subgroups.
//!
//! Given `S`, `K`, a subgroup `H` of `A_S` and a homomorphism
//! `gamma: H -> A_K` with `q_K(gamma(x)) = -q_S(x)`, the graph `Gamma` of
//! `gamma` is isotropic in `A_S + A_K`, so it defines an even overlattice
//! `L` of `S + K` whose discriminant group is `Gamma^perp / Gamma`. This
//! module verifies a supplied pair `(H, gamma)` and computes both `L` and
//! that quotient; it does not search for gluings.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::discriminant::{rational_row_basis, reduce_mod, DiscriminantForm, Element};
use super::{FiniteAbelianGroup, IntLattice, Matrix, MAX_ENUMERATED_ORDER};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gluing {
    /// `|H|`.
    pub subgroup_order: usize,
    /// `Gamma^perp / Gamma`, computed inside `A_S + A_K`.
    pub discriminant: FiniteAbelianGroup,
    /// The glued overlattice of `S + K`.
    #[serde(skip)]
    pub overlattice: IntLattice,
}

struct Pair<'a> {
    s: &'a DiscriminantForm,
    k: &'a DiscriminantForm,
}

impl Pair<'_> {
    fn split(&self) -> usize {
        self.s.group.invariant_factors.len()
    }

    fn factors(&self) -> Vec<u64> {
        let mut f = self.s.group.invariant_factors.clone();
        f.extend(&self.k.group.invariant_factors);
        f
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(self.factors())
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    fn q(&self, x: &[u64]) -> BigRational {
        let (a, b) = x.split_at(self.split());
        reduce_mod(&(self.s.q_of(a) + self.k.q_of(b)), 2)
    }

    fn b(&self, x: &[u64], y: &[u64]) -> BigRational {
        let (xa, xb) = x.split_at(self.split());
        let (ya, yb) = y.split_at(self.split());
        reduce_mod(&(self.s.b_of(xa, ya) + self.k.b_of(xb, yb)), 1)
    }

    fn elements(&self) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        for a in self.s.elements()? {
            for b in self.k.elements()? {
                let mut x = a.clone();
                x.extend(b);
                out.push(x);
            }
        }
        Ok(out)
    }

    fn span(&self, gens: &[Element]) -> BTreeSet<Element> {
        let zero = vec![0; self.factors().len()];
        let mut elems = BTreeSet::from([zero]);
        for g in gens {
            let mut grown = elems.clone();
            for h in &elems {
                let mut x = self.add(h, g);
                while grown.insert(x.clone()) {
                    x = self.add(&x, g);
                }
            }
            elems = grown;
        }
        elems
    }

    fn times(&self, n: u64, x: &[u64]) -> Element {
        x.iter().zip(self.factors()).map(|(a, d)| a * n % d).collect()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Glues `s` and `k` along the homomorphism given on generators of `H` by
/// `pairs`: each `(x, y)` means `gamma(x) = y`, with `x` and `y` written in
/// the Smith generators of `A_S` and `A_K`.
pub fn glue(s: &IntLattice, k: &IntLattice, pairs: &[(Element, Element)]) -> Result<Gluing> {
    let fs = s.discriminant_form()?;
    let fk = k.discriminant_form()?;
    if fs.group.order() * fk.group.order() > (MAX_ENUMERATED_ORDER as u128).pow(2) {
        return Err(Error::SizeLimit("discriminant groups too large to enumerate".into()));
    }
    let pg = Pair { s: &fs, k: &fk };
    let (ds, dk) = (&fs.group.invariant_factors, &fk.group.invariant_factors);
    let mut gens = Vec::new();
    for (x, y) in pairs {
        let fits = |v: &[u64], d: &[u64]| v.len() == d.len() && v.iter().zip(d).all(|(a, b)| a < b);
        if !fits(x, ds) || !fits(y, dk) {
            return Err(Error::InvalidGluing(format!(
                "element {x:?} -> {y:?} does not match groups {ds:?} and {dk:?}"
            )));
        }
        let mut g = x.clone();
        g.extend(y);
        gens.push(g);
    }
    let graph = pg.span(&gens);
    let split = pg.split();
    if graph.iter().any(|g| g[..split].iter().all(|&c| c == 0) && g[split..].iter().any(|&c| c != 0)) {
        return Err(Error::InvalidGluing("pairs do not define a function on H".into()));
    }
    if let Some(g) = graph.iter().find(|g| !pg.q(g).is_zero()) {
        return Err(Error::InvalidGluing(format!(
            "q_S(x) + q_K(gamma x) = {} at {g:?}; gamma is not an anti-isometry",
            pg.q(g)
        )));
    }

    let perp: Vec<Element> = pg
        .elements()?
        .into_iter()
        .filter(|z| gens.iter().all(|g| pg.b(z, g).is_zero()))
        .collect();
    let quotient_order = (perp.len() / graph.len()) as u64;
    let mut divisors = Vec::new();
    for p in prime_factors(quotient_order) {
        // |Q[p^j]| for j = 0, 1, ... until it stops growing.
        let mut sizes = vec![1u64];
        let mut pj = 1u64;
        loop {
            pj *= p;
            let killed = perp.iter().filter(|z| graph.contains(&pg.times(pj, z))).count();
            let size = (killed / graph.len()) as u64;
            if size == *sizes.last().unwrap() {
                break;
            }
            sizes.push(size);
        }
        // The number of cyclic factors of order >= p^j is log_p of the ratio.
        let at_least: Vec<u32> = sizes
            .windows(2)
            .map(|w| (w[1] / w[0]).ilog(p))
            .collect();
        for (j, &c) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..c - next {
                divisors.push((p, j as u32 + 1));
            }
        }
    }
    let discriminant = FiniteAbelianGroup::from_elementary_divisors(&divisors)?;

    let rs = s.rank();
    let total = rs + k.rank();
    let mut rows: Vec<Vec<BigRational>> = (0..total)
        .map(|i| {
            (0..total)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for (x, y) in pairs {
        let mut v = fs.lift(x);
        v.extend(fk.lift(y));
        rows.push(v);
    }
    let basis = rational_row_basis(&rows, total)?;
    let sum = s.direct_sum(k)?;
    let gram = basis
        .iter()
        .map(|bi| {
            basis
                .iter()
                .map(|bj| {
                    let v = sum.product(bi, bj);
                    if v.is_integer() {
                        Ok(v.to_integer())
                    } else {
                        Err(Error::InvalidGluing(format!("glued product {v} is not integral")))
                    }
                })
                .collect::<Result<Vec<BigInt>>>()
        })
        .collect::<Result<Matrix>>()?;
    let overlattice = IntLattice::new(gram)?;
    let subgroup_order = graph.len();
    Ok(Gluing {
        subgroup_order,
        discriminant,
        overlattice,
    })
}
