//! Small simple graphs stored as per-vertex neighbour bitmasks.
//!
//! Every vertex set in this module is a `u64` mask, which caps graphs at 64
//! vertices. That is far above anything the classification needs (the
//! largest carrier graph has 15 vertices) and keeps subset enumeration and
//! embedding search allocation-free in their inner loops.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::singularity::{Configuration, SingularityType};

pub const MAX_VERTICES: usize = 64;
/// Exhaustive subset enumeration limit.
pub const MAX_ENUMERATION_VERTICES: usize = 24;
/// Automorphism search limit.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 20;
/// Automorphism lists larger than this are refused rather than returned.
pub const MAX_AUTOMORPHISMS: usize = 1 << 20;

/// Iterates the set bits of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An undirected simple graph on `n <= 64` vertices `0..n`, each carrying an
/// external label (by default its index).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<u64>,
    labels: Vec<u32>,
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices labelled `0..n`.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit(format!(
                "{n} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        Self::with_labels((0..n as u32).collect())
    }

    /// Edgeless graph whose vertex `i` carries `labels[i]`.
    pub fn with_labels(labels: Vec<u32>) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::SizeLimit(format!(
                "{} vertices exceeds the limit of {MAX_VERTICES}",
                labels.len()
            )));
        }
        Ok(SimpleGraph {
            adj: vec![0; labels.len()],
            labels,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn all(&self) -> u64 {
        full_mask(self.n())
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn vertex_of_label(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Neighbour mask of `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn degree_sequence(&self) -> Vec<u32> {
        let mut d: Vec<u32> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Subgraph on `keep` (duplicates ignored, original order of indices
    /// preserved), carrying the original labels.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<SimpleGraph> {
        let mut mask = 0u64;
        for &v in keep {
            self.check(v)?;
            mask |= 1 << v;
        }
        Ok(self.induced_by_mask(mask))
    }

    pub fn induced_by_mask(&self, mask: u64) -> SimpleGraph {
        let mask = mask & self.all();
        let kept: Vec<usize> = bits(mask).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let adj = kept
            .iter()
            .map(|&v| bits(self.adj[v] & mask).fold(0u64, |m, w| m | 1 << pos[w]))
            .collect();
        SimpleGraph {
            adj,
            labels: kept.iter().map(|&v| self.labels[v]).collect(),
        }
    }

    /// Removes the vertices carrying the given labels.
    pub fn without_labels(&self, labels: &[u32]) -> Result<SimpleGraph> {
        let mut drop = 0u64;
        for &l in labels {
            let v = self.vertex_of_label(l).ok_or(Error::UnknownLabel(l))?;
            drop |= 1 << v;
        }
        Ok(self.induced_by_mask(self.all() & !drop))
    }

    /// Mask of vertices carrying the given labels.
    pub fn mask_of_labels(&self, labels: &[u32]) -> Result<u64> {
        labels.iter().try_fold(0u64, |m, &l| {
            let v = self.vertex_of_label(l).ok_or(Error::UnknownLabel(l))?;
            Ok(m | 1 << v)
        })
    }

    /// Disjoint union; the result is relabelled `0..n1+n2`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<SimpleGraph> {
        let n1 = self.n();
        let mut g = SimpleGraph::new(n1 + other.n())?;
        g.adj[..n1].copy_from_slice(&self.adj);
        for (i, &m) in other.adj.iter().enumerate() {
            g.adj[n1 + i] = m << n1;
        }
        Ok(g)
    }

    /// The connected component containing `start` inside `within`.
    pub fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let reach = bits(frontier).fold(0u64, |m, v| m | self.adj[v]);
            frontier = reach & within & !comp;
            comp |= frontier;
        }
        comp
    }

    /// Connected components of the subgraph induced on `within`, ordered by
    /// lowest vertex.
    pub fn components_within(&self, mut within: u64) -> Vec<u64> {
        within &= self.all();
        let mut out = Vec::new();
        while within != 0 {
            let c = self.component_of(within.trailing_zeros() as usize, within);
            out.push(c);
            within &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_within(self.all())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in bits(self.adj[v]) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::from([s]);
            dist[s] = 0;
            while let Some(v) = queue.pop_front() {
                for w in bits(self.adj[v]) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// ADE type of a connected vertex set, if it is one.
    fn classify_component(&self, comp: u64) -> Option<SingularityType> {
        let n = comp.count_ones();
        let mut degree_sum = 0;
        let mut branch = None;
        for v in bits(comp) {
            let d = (self.adj[v] & comp).count_ones();
            degree_sum += d;
            match d {
                0..=2 => {}
                3 if branch.is_none() => branch = Some(v),
                _ => return None,
            }
        }
        if degree_sum != 2 * (n - 1) {
            return None;
        }
        let Some(c) = branch else {
            return Some(SingularityType::A(n));
        };
        let mut arms = [0u32; 3];
        for (i, start) in bits(self.adj[c] & comp).enumerate() {
            let (mut prev, mut cur, mut len) = (c, start, 1);
            loop {
                let next = self.adj[cur] & comp & !(1 << prev);
                if next == 0 {
                    break;
                }
                prev = cur;
                cur = next.trailing_zeros() as usize;
                len += 1;
            }
            arms[i] = len;
        }
        arms.sort_unstable();
        match arms {
            [1, 1, k] => Some(SingularityType::D(k + 3)),
            [1, 2, 2] => Some(SingularityType::E(6)),
            [1, 2, 3] => Some(SingularityType::E(7)),
            [1, 2, 4] => Some(SingularityType::E(8)),
            _ => None,
        }
    }

    /// Classifies the subgraph induced on `mask`; `None` when some component
    /// is not an ADE diagram or the mask is empty.
    pub fn classify_mask(&self, mask: u64) -> Option<Configuration> {
        let mask = mask & self.all();
        if mask == 0 {
            return None;
        }
        let mut parts = Vec::new();
        for comp in self.components_within(mask) {
            parts.push(self.classify_component(comp)?);
        }
        Configuration::new(parts).ok()
    }

    /// ADE configuration of the whole graph, if every component is ADE.
    pub fn classify_ade(&self) -> Option<Configuration> {
        self.classify_mask(self.all())
    }

    /// All distinct ADE configurations over nonempty vertex subsets.
    pub fn enumerate_induced_ade(&self) -> Result<BTreeSet<Configuration>> {
        if self.n() > MAX_ENUMERATION_VERTICES {
            return Err(Error::SizeLimit(format!(
                "subset enumeration needs at most {MAX_ENUMERATION_VERTICES} vertices, got {}",
                self.n()
            )));
        }
        Ok((1..=self.all())
            .filter_map(|m| self.classify_mask(m))
            .collect())
    }

    /// An injective map `pattern -> self` preserving edges and non-edges,
    /// as `map[pattern_vertex] = host_vertex`.
    pub fn find_induced_embedding(&self, pattern: &SimpleGraph) -> Option<Vec<usize>> {
        let mut found = None;
        Matcher::new(pattern, self, Mode::Embed).run(&mut |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    pub fn contains_induced(&self, pattern: &SimpleGraph) -> bool {
        self.find_induced_embedding(pattern).is_some()
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        self.n() == other.n()
            && self.edge_count() == other.edge_count()
            && self.degree_sequence() == other.degree_sequence()
            && self.find_isomorphism(other).is_some()
    }

    /// A bijection `self -> other` preserving adjacency.
    pub fn find_isomorphism(&self, other: &SimpleGraph) -> Option<Vec<usize>> {
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return None;
        }
        let mut found = None;
        Matcher::new(self, other, Mode::Isomorphism).run(&mut |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    /// Every automorphism as a permutation `p` with `p[v]` the image of `v`,
    /// in lexicographic order.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        if self.n() > MAX_AUTOMORPHISM_VERTICES {
            return Err(Error::SizeLimit(format!(
                "automorphism search needs at most {MAX_AUTOMORPHISM_VERTICES} vertices, got {}",
                self.n()
            )));
        }
        let mut out = Vec::new();
        let mut overflow = false;
        Matcher::new(self, self, Mode::Automorphisms).run(&mut |m| {
            if out.len() == MAX_AUTOMORPHISMS {
                overflow = true;
                return false;
            }
            out.push(m.to_vec());
            true
        });
        if overflow {
            return Err(Error::SizeLimit(format!(
                "more than {MAX_AUTOMORPHISMS} automorphisms"
            )));
        }
        out.sort();
        Ok(out)
    }

    /// Orbits of `Aut(self)` as label sets, ordered by smallest vertex.
    pub fn orbits(&self) -> Result<Vec<Vec<u32>>> {
        let autos = self.automorphisms()?;
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n() {
            if seen >> v & 1 == 1 {
                continue;
            }
            let orbit = autos.iter().fold(0u64, |m, p| m | 1 << p[v]);
            seen |= orbit;
            out.push(bits(orbit).map(|w| self.labels[w]).collect());
        }
        Ok(out)
    }

    /// Undirected DOT with labels preserved.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.n() {
            let _ = writeln!(s, "  {v} [label=\"{}\"];", self.labels[v]);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    /// Edge-list text: header `n <count>`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Parses the edge-list format. Blank lines and `#` comments are ignored;
/// the first remaining line must be `n <count>`; every other line is a pair
/// of 0-based vertex indices.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut g: Option<SimpleGraph> = None;
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| {
                ParseError::syntax(line_start, format!("expected a vertex index, found '{s}'")).into()
            })
        };
        match (&mut g, fields.as_slice()) {
            (None, ["n", count]) => {
                let n = num(count)?;
                g = Some(SimpleGraph::new(n)?);
            }
            (None, _) => {
                return Err(ParseError::syntax(line_start, "expected header 'n <count>'").into())
            }
            (Some(g), [u, v]) => {
                let (u, v) = (num(u)?, num(v)?);
                g.add_edge(u, v)?;
            }
            (Some(_), _) => {
                return Err(ParseError::syntax(line_start, "expected an edge 'u v'").into())
            }
        }
    }
    g.ok_or_else(|| ParseError::syntax(0, "missing header 'n <count>'").into())
}

/// Standalone form of [`SimpleGraph::contains_induced`].
pub fn is_induced_embeddable(pattern: &SimpleGraph, host: &SimpleGraph) -> bool {
    host.contains_induced(pattern)
}

pub fn are_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> bool {
    g1.is_isomorphic(g2)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Existence of an induced embedding; symmetry breaking on.
    Embed,
    /// Existence of a bijection; exact degrees, symmetry breaking on.
    Isomorphism,
    /// Every bijection; exact degrees, no symmetry breaking.
    Automorphisms,
}

/// Backtracking search for adjacency-preserving injections.
///
/// Pattern vertices are placed in an order where each vertex (after the
/// first of its component) has a placed neighbour, so candidate sets shrink
/// quickly. Two symmetry reductions apply in existence modes: twin vertices
/// (equal neighbourhoods apart from each other) must map to increasing host
/// indices, and so must the roots of isomorphic pattern components, whose
/// vertex orders are aligned through an explicit isomorphism.
struct Matcher<'a> {
    pat: &'a SimpleGraph,
    host: &'a SimpleGraph,
    order: Vec<usize>,
    /// For each depth, an earlier depth whose image must be smaller.
    lower: Vec<Option<usize>>,
    exact_degree: bool,
}

impl<'a> Matcher<'a> {
    fn new(pat: &'a SimpleGraph, host: &'a SimpleGraph, mode: Mode) -> Self {
        let break_symmetry = mode != Mode::Automorphisms;
        let mut comps = pat.components();
        comps.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));

        // Group isomorphic components so their orders can be aligned.
        let mut order = Vec::with_capacity(pat.n());
        let mut lower = Vec::with_capacity(pat.n());
        let mut rep_orders: Vec<(SimpleGraph, Vec<usize>, usize)> = Vec::new();
        for comp in comps {
            let sub = pat.induced_by_mask(comp);
            let verts: Vec<usize> = bits(comp).collect();
            let mut aligned = None;
            if break_symmetry {
                for (rep, rep_order, last_root_depth) in rep_orders.iter_mut() {
                    if let Some(iso) = rep.find_isomorphism_plain(&sub) {
                        let ord: Vec<usize> = rep_order.iter().map(|&i| verts[iso[i]]).collect();
                        aligned = Some((ord, *last_root_depth));
                        *last_root_depth = order.len();
                        break;
                    }
                }
            }
            let (ord, root_lower) = match aligned {
                Some((ord, prev_root)) => (ord, Some(prev_root)),
                None => {
                    let local = greedy_order(&sub);
                    if break_symmetry {
                        rep_orders.push((sub, local.clone(), order.len()));
                    }
                    (local.iter().map(|&i| verts[i]).collect(), None)
                }
            };
            let base = order.len();
            for (i, &v) in ord.iter().enumerate() {
                let mut lw = if i == 0 { root_lower } else { None };
                if break_symmetry && lw.is_none() {
                    lw = (base..base + i).rev().find(|&d| is_twin(pat, order[d], v));
                }
                lower.push(lw);
                order.push(v);
            }
        }
        Matcher {
            pat,
            host,
            order,
            lower,
            exact_degree: mode != Mode::Embed,
        }
    }

    /// Calls `visit` with each complete map; stops when it returns false.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        if self.pat.n() > self.host.n() {
            return;
        }
        let mut map = vec![usize::MAX; self.pat.n()];
        let mut images = vec![0usize; self.pat.n()];
        self.search(0, 0, &mut map, &mut images, visit);
    }

    fn search(
        &self,
        depth: usize,
        used: u64,
        map: &mut Vec<usize>,
        images: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(map);
        }
        let p = self.order[depth];
        let mut cand = self.host.all() & !used;
        for d in 0..depth {
            let q = self.order[d];
            let h = images[d];
            if self.pat.has_edge(p, q) {
                cand &= self.host.adj[h];
            } else {
                cand &= !self.host.adj[h];
            }
        }
        if let Some(d) = self.lower[depth] {
            let floor = images[d] + 1;
            cand &= !full_mask(floor.min(64));
        }
        let pd = self.pat.degree(p);
        for h in bits(cand) {
            let hd = self.host.degree(h);
            if hd < pd || (self.exact_degree && hd != pd) {
                continue;
            }
            map[p] = h;
            images[depth] = h;
            if !self.search(depth + 1, used | 1 << h, map, images, visit) {
                return false;
            }
        }
        map[p] = usize::MAX;
        true
    }
}

fn is_twin(g: &SimpleGraph, u: usize, v: usize) -> bool {
    u != v && (g.adj[u] & !(1 << v)) == (g.adj[v] & !(1 << u))
}

/// Connected-first vertex order for a connected graph: start at a maximum
/// degree vertex, then repeatedly take the vertex with most placed
/// neighbours (ties: higher degree, then lower index).
fn greedy_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let best = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (g.adj[v] & placed).count_ones(),
                    g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex exists");
        placed |= 1 << best;
        order.push(best);
    }
    order
}

impl SimpleGraph {
    /// Isomorphism search without component grouping; used internally to
    /// align isomorphic components (which are connected).
    fn find_isomorphism_plain(&self, other: &SimpleGraph) -> Option<Vec<usize>> {
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return None;
        }
        if self.degree_sequence() != other.degree_sequence() {
            return None;
        }
        let order = greedy_order(self);
        let m = Matcher {
            pat: self,
            host: other,
            lower: vec![None; order.len()],
            order,
            exact_degree: true,
        };
        let mut found = None;
        m.run(&mut |map| {
            found = Some(map.to_vec());
            false
        });
        found
    }
}
