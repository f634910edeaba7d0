//! Simplicial complexes given by facets, and the combinatorial side of
//! Cohen-Macaulayness: purity, pure skeletons, connectivity in codimension
//! one, shellings and Stanley-Reisner ideals.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cayley::UGraph;
use crate::error::{Error, Result};
use crate::indsets::{maximal_independent_sets, Budget};
use crate::sets::{sort_canonical, Bits, VertexSet};

/// Largest vertex count accepted by the ideal export.
pub const EXPORT_CAP: usize = 1 << 14;

/// Complexes with at most this many facets may be declared unshellable after
/// an exhausted search.
pub const EXHAUSTIVE_SHELLING_FACETS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complex {
    vertices: usize,
    facets: Vec<VertexSet>,
}

impl Complex {
    /// Keeps the inclusion-maximal sets and sorts them canonically.
    pub fn from_faces(vertices: usize, faces: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut faces: Vec<VertexSet> = faces.into_iter().collect();
        if let Some(v) = faces.iter().flat_map(VertexSet::iter).find(|&v| v >= vertices) {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        sort_canonical(&mut faces);
        faces.dedup();
        let mut facets: Vec<VertexSet> = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            if !faces[i + 1..].iter().any(|g| g.len() > f.len() && f.is_subset(g)) {
                facets.push(f.clone());
            }
        }
        Ok(Complex { vertices, facets })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Largest facet size minus one; `None` for the void complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(VertexSet::len).max().map(|s| s.wrapping_sub(1))
    }

    pub fn contains_face(&self, face: &VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }
}

/// `ind(G)`: the facets are the maximal independent sets of `g`.
pub fn independence_complex(g: &UGraph, budget: Budget) -> Result<Complex> {
    let facets = maximal_independent_sets(g, budget)?;
    Ok(Complex { vertices: g.vertex_count(), facets })
}

pub fn is_pure(c: &Complex) -> bool {
    c.facets.windows(2).all(|w| w[0].len() == w[1].len())
}

/// `Δ^{[d]}`: all `d`-dimensional faces, as facets.
pub fn pure_skeleton(c: &Complex, d: usize) -> Result<Complex> {
    let dim = c.dim().ok_or_else(|| Error::InvalidArgument("void complex has no skeleton".into()))?;
    if dim == usize::MAX || d > dim {
        return Err(Error::InvalidArgument(format!("dimension {d} out of range 0..={}", dim as isize)));
    }
    let k = d + 1;
    let mut faces: HashSet<VertexSet> = HashSet::new();
    for f in c.facets.iter().filter(|f| f.len() >= k) {
        if f.len() == k {
            faces.insert(f.clone());
        } else {
            for_each_subset(f.as_slice(), k, |s| {
                faces.insert(s.iter().copied().collect());
            });
        }
    }
    let mut facets: Vec<VertexSet> = faces.into_iter().collect();
    sort_canonical(&mut facets);
    Ok(Complex { vertices: c.vertices, facets })
}

fn for_each_subset(items: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=items.len() - (k - cur.len()) {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::with_capacity(k), &mut f);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub connected: bool,
    /// Facet indices grouped by component, each group ascending, groups by
    /// smallest member.
    pub components: Vec<Vec<usize>>,
}

/// Components of the graph on facets joined when they share all but one vertex.
pub fn codim1_connected(c: &Complex) -> Result<Connectivity> {
    if !is_pure(c) {
        return Err(Error::NotPure);
    }
    let t = c.facets.len();
    let size = c.facets.first().map_or(0, VertexSet::len);
    let bits: Vec<Bits> = c.facets.iter().map(|f| f.to_bits(c.vertices)).collect();
    let mut comp = vec![usize::MAX; t];
    let mut components = Vec::new();
    for s in 0..t {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let f = members[i];
            for g in 0..t {
                if comp[g] == usize::MAX && bits[f].and_count(&bits[g]) + 1 == size {
                    comp[g] = id;
                    members.push(g);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        components.push(members);
    }
    Ok(Connectivity { connected: components.len() <= 1, components })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ShellingOutcome {
    /// Facet indices into the complex, in shelling order.
    Found { order: Vec<usize> },
    NoShellingExists { reason: String },
    NoneFoundWithinBudget,
}

/// Whether `f` meets the complex generated by `prior` in a pure complex of
/// dimension `dim f - 1`: every `f ∩ g` lies in some `f ∩ h` of size `|f| - 1`.
pub fn attaches_in_codim1(prior: &[&VertexSet], f: &VertexSet) -> bool {
    if prior.is_empty() {
        return true;
    }
    let ridges: Vec<VertexSet> = prior
        .iter()
        .map(|g| f.intersection(g))
        .filter(|i| i.len() + 1 == f.len())
        .collect();
    if ridges.is_empty() {
        return false;
    }
    prior.iter().all(|g| {
        let i = f.intersection(g);
        ridges.iter().any(|r| i.is_subset(r))
    })
}

/// Replays an order and checks the shelling condition at every step.
pub fn is_shelling(c: &Complex, order: &[usize]) -> bool {
    let mut seen = vec![false; c.facets.len()];
    if order.len() != c.facets.len() || order.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
        return false;
    }
    (1..order.len()).all(|k| {
        let prior: Vec<&VertexSet> = order[..k].iter().map(|&i| &c.facets[i]).collect();
        attaches_in_codim1(&prior, &c.facets[order[k]])
    })
}

/// Backtracking search for a shelling of a pure complex.
///
/// Disconnection in codimension one proves that no shelling exists. An
/// exhausted search proves it only for small complexes; larger ones report
/// that nothing was found.
pub fn find_shelling(c: &Complex, budget: Budget) -> Result<ShellingOutcome> {
    let conn = codim1_connected(c)?;
    if !conn.connected {
        return Ok(ShellingOutcome::NoShellingExists {
            reason: format!("not connected in codimension 1 ({} components)", conn.components.len()),
        });
    }
    let t = c.facets.len();
    let mut search = ShellSearch { c, used: vec![false; t], order: Vec::with_capacity(t), nodes: 0, budget };
    match search.run() {
        Some(true) => {
            debug_assert!(is_shelling(c, &search.order));
            Ok(ShellingOutcome::Found { order: search.order })
        }
        Some(false) if t <= EXHAUSTIVE_SHELLING_FACETS => Ok(ShellingOutcome::NoShellingExists {
            reason: "exhaustive search over all facet orders".into(),
        }),
        _ => Ok(ShellingOutcome::NoneFoundWithinBudget),
    }
}

struct ShellSearch<'a> {
    c: &'a Complex,
    used: Vec<bool>,
    order: Vec<usize>,
    nodes: u64,
    budget: Budget,
}

impl ShellSearch<'_> {
    /// `Some(found)` when the search finished, `None` when the budget ran out.
    fn run(&mut self) -> Option<bool> {
        if self.order.len() == self.c.facets.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            return None;
        }
        for i in 0..self.c.facets.len() {
            if self.used[i] {
                continue;
            }
            let prior: Vec<&VertexSet> = self.order.iter().map(|&j| &self.c.facets[j]).collect();
            if !attaches_in_codim1(&prior, &self.c.facets[i]) {
                continue;
            }
            self.used[i] = true;
            self.order.push(i);
            match self.run() {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.order.pop();
            self.used[i] = false;
        }
        Some(false)
    }
}

/// Squarefree monomial generators, each a sorted list of variable indices.
pub fn edge_ideal(g: &UGraph) -> Vec<Vec<usize>> {
    g.edges().map(|(u, v)| vec![u, v]).collect()
}

/// Minimal non-faces of `c`, by size then lexicographically.
pub fn stanley_reisner_generators(c: &Complex) -> Vec<Vec<usize>> {
    let n = c.vertices;
    let bits: Vec<Bits> = c.facets.iter().map(|f| f.to_bits(n)).collect();
    let is_face = |s: &[usize]| bits.iter().any(|b| s.iter().all(|&v| b.contains(v)));
    let mut out = Vec::new();
    let mut level: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if is_face(&[v]) {
            level.push(vec![v]);
        } else {
            out.push(vec![v]);
        }
    }
    while !level.is_empty() {
        let known: HashSet<&[usize]> = level.iter().map(Vec::as_slice).collect();
        let mut next = Vec::new();
        for f in &level {
            let last = *f.last().expect("nonempty");
            for v in last + 1..n {
                let mut cand = f.clone();
                cand.push(v);
                let boundary_ok = (0..cand.len() - 1).all(|skip| {
                    let sub: Vec<usize> =
                        cand.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
                    known.contains(sub.as_slice())
                });
                if !boundary_ok {
                    continue;
                }
                if is_face(&cand) {
                    next.push(cand);
                } else {
                    out.push(cand);
                }
            }
        }
        level = next;
    }
    out
}

/// Ideal text: a header line naming the variables, then one generator per
/// line as `x_i*x_j*...`. An empty generator list is the zero ideal.
pub fn format_ideal(vertices: usize, generators: &[Vec<usize>]) -> Result<String> {
    if vertices > EXPORT_CAP {
        return Err(Error::InvalidArgument(format!("{vertices} variables exceed the export cap {EXPORT_CAP}")));
    }
    let mut out = String::new();
    if vertices == 0 {
        out.push_str("-- variables: 0\n");
    } else {
        writeln!(out, "-- variables: {vertices} (x_0..x_{})", vertices - 1).expect("write to string");
    }
    for g in generators {
        let terms: Vec<String> = g.iter().map(|v| format!("x_{v}")).collect();
        out.push_str(&terms.join("*"));
        out.push('\n');
    }
    Ok(out)
}

pub fn export_edge_ideal(g: &UGraph) -> Result<String> {
    format_ideal(g.vertex_count(), &edge_ideal(g))
}

pub fn export_stanley_reisner(c: &Complex) -> Result<String> {
    if c.vertices > EXPORT_CAP {
        return Err(Error::InvalidArgument(format!("{} variables exceed the export cap", c.vertices)));
    }
    format_ideal(c.vertices, &stanley_reisner_generators(c))
}
