//! The deformation order on configurations.
//!
//! For ADE configurations, `big` deforms to `small` exactly when the Dynkin
//! diagram of `small` is an induced subgraph of the diagram of `big`; the
//! components of `small` may land inside a single component of `big`. This
//! lifts from single germs to whole configurations only when the global
//! deformations of the hypersurface are versal for all its points at once,
//! which for cubic threefolds holds when the total Milnor number is at most
//! 15. That bound is the versality gate.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::catalog;
use crate::error::{Error, Result};
use crate::singularity::{Configuration, SingularityType};

/// Largest total Milnor number for which configuration-level deformation
/// statements are justified.
pub const VERSALITY_BOUND: u64 = 15;

/// Largest T index the hyperbolic rule enumerates below.
pub const MAX_HYPERBOLIC_INDEX: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GatePolicy {
    /// Refuse configurations above the versality bound.
    #[default]
    Enforce,
    /// Compute the diagram relation regardless of the bound.
    Override,
}

pub fn versality_gate(c: &Configuration) -> bool {
    c.mu() <= VERSALITY_BOUND
}

fn require_ade(c: &Configuration) -> Result<()> {
    match c.parts().iter().find(|t| !t.is_ade()) {
        Some(t) => Err(Error::UnsupportedKind(format!("{t} in {c}"))),
        None => Ok(()),
    }
}

fn require_gate(c: &Configuration, policy: GatePolicy) -> Result<()> {
    if policy == GatePolicy::Enforce && !versality_gate(c) {
        return Err(Error::GateViolation {
            config: c.to_string(),
            mu: c.mu(),
        });
    }
    Ok(())
}

/// Whether `big` deforms to `small`, enforcing the versality gate on `big`.
pub fn deforms_to(big: &Configuration, small: &Configuration) -> Result<bool> {
    deforms_to_with(big, small, GatePolicy::Enforce)
}

pub fn deforms_to_with(
    big: &Configuration,
    small: &Configuration,
    policy: GatePolicy,
) -> Result<bool> {
    require_ade(big)?;
    require_ade(small)?;
    require_gate(big, policy)?;
    if big == small {
        return Ok(true);
    }
    if small.mu() > big.mu() {
        return Ok(false);
    }
    Ok(big.diagram()?.contains_induced(&small.diagram()?))
}

/// Every ADE configuration `c` deforms to, including `c` itself.
pub fn sub_configurations(c: &Configuration) -> Result<BTreeSet<Configuration>> {
    require_ade(c)?;
    c.diagram()?.enumerate_induced_ade()
}

/// Downward closure of `seeds` under the deformation order.
pub fn closure(seeds: &[Configuration]) -> Result<BTreeSet<Configuration>> {
    let mut out = BTreeSet::new();
    for s in seeds {
        require_ade(s)?;
        require_gate(s, GatePolicy::Enforce)?;
        out.extend(sub_configurations(s)?);
    }
    Ok(out)
}

/// Elements of `set` that no other element deforms to.
pub fn maximal_elements(set: &[Configuration]) -> Result<BTreeSet<Configuration>> {
    let items: BTreeSet<&Configuration> = set.iter().collect();
    for c in &items {
        require_ade(c)?;
    }
    let mut out = BTreeSet::new();
    'next: for &x in &items {
        for &y in &items {
            if y.mu() > x.mu() && deforms_to_with(y, x, GatePolicy::Override)? {
                continue 'next;
            }
        }
        out.insert(x.clone());
    }
    Ok(out)
}

fn hyperbolic_below(t: SingularityType) -> Result<Vec<SingularityType>> {
    let SingularityType::T(p, q, r) = t else {
        return Ok(Vec::new());
    };
    if r > MAX_HYPERBOLIC_INDEX {
        return Err(Error::SizeLimit(format!(
            "hyperbolic rule enumerates T indices up to {MAX_HYPERBOLIC_INDEX}, got {t}"
        )));
    }
    let mut out = Vec::new();
    for a in 2..=p {
        for b in a..=q {
            for c in b..=r {
                if let Ok(s) = SingularityType::t(a, b, c) {
                    if s != t {
                        out.push(s);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Types reachable from `from` by a nonempty chain of adjacencies: the
/// drawn unimodal arrows plus the hyperbolic rule `T(p,q,r) -> T(p',q',r')`
/// whenever the sorted indices shrink componentwise.
pub fn unimodal_reachable(from: SingularityType) -> Result<BTreeSet<SingularityType>> {
    let edges = catalog::unimodal_adjacency()?;
    let known = from.is_t_series() || edges.iter().any(|e| e.from == from || e.to == from);
    if !known {
        return Err(Error::UnknownType(from.name()));
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([from]);
    while let Some(t) = queue.pop_front() {
        let drawn = edges.iter().filter(|e| e.from == t).map(|e| e.to);
        for s in drawn.chain(hyperbolic_below(t)?) {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    Ok(seen)
}

/// A finite set of ADE configurations under the deformation order.
#[derive(Debug, Clone)]
pub struct DeformationPoset {
    elements: Vec<Configuration>,
    /// `below[i]` holds the indices `j != i` with `elements[i]` deforming to
    /// `elements[j]`.
    below: Vec<BTreeSet<usize>>,
}

impl DeformationPoset {
    pub fn new(elements: &[Configuration]) -> Result<Self> {
        let elements: Vec<Configuration> = elements
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for c in &elements {
            require_ade(c)?;
        }
        let mut below = vec![BTreeSet::new(); elements.len()];
        for (i, b) in elements.iter().enumerate() {
            for (j, s) in elements.iter().enumerate() {
                if i != j && s.mu() < b.mu() && deforms_to_with(b, s, GatePolicy::Override)? {
                    below[i].insert(j);
                }
            }
        }
        Ok(DeformationPoset { elements, below })
    }

    pub fn elements(&self) -> &[Configuration] {
        &self.elements
    }

    pub fn leq(&self, small: &Configuration, big: &Configuration) -> bool {
        let pos = |c| self.elements.iter().position(|e| e == c);
        match (pos(small), pos(big)) {
            (Some(s), Some(b)) => s == b || self.below[b].contains(&s),
            _ => false,
        }
    }

    /// Cover relations `(big, small)`: no element lies strictly between.
    pub fn covers(&self) -> Vec<(Configuration, Configuration)> {
        let mut out = Vec::new();
        for (i, below) in self.below.iter().enumerate() {
            for &j in below {
                let between = below.iter().any(|&m| m != j && self.below[m].contains(&j));
                if !between {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out
    }

    /// Hasse diagram as DOT, arrows pointing from a configuration to the
    /// ones it covers.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph deformations {\n  rankdir=TB;\n");
        for c in &self.elements {
            let _ = writeln!(s, "  \"{c}\" [label=\"{c}\\nmu={}\"];", c.mu());
        }
        for (b, c) in self.covers() {
            let _ = writeln!(s, "  \"{b}\" -> \"{c}\";");
        }
        s.push_str("}\n");
        s
    }

    /// Cover relations as `big small` lines.
    pub fn to_edge_list(&self) -> String {
        self.covers()
            .into_iter()
            .map(|(b, c)| format!("{b} {c}\n"))
            .collect()
    }

}
