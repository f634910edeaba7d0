//! Unitary Cayley graphs and conjunction products.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::sets::{Bits, VertexSet};

pub const DEFAULT_GRAPH_CAP: usize = 1 << 14;

/// Simple undirected graph on `0..n` with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    adj: Vec<Bits>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for UGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UGraph").field("n", &self.n).field("edges", &self.edge_count()).finish()
    }
}

/// JSON form: `{N, edges: [[u, v], ...]}` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UGraph {
    pub fn empty(n: usize) -> Self {
        UGraph { n, adj: vec![Bits::new(n); n], labels: None }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidArgument(format!("bad edge ({u}, {v}) for {n} vertices")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    /// Symmetric and loop-free.
    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|u| !self.adj[u].contains(u) && self.adj[u].iter().all(|v| self.adj[v].contains(u)))
    }

    /// The common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Bits::count);
        self.adj.iter().all(|a| a.count() == d).then_some(d)
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        let bits = set.to_bits(self.n);
        set.iter().all(|v| !self.adj[v].intersects(&bits))
    }

    /// Independent and no outside vertex can be added.
    pub fn is_maximal_independent(&self, set: &VertexSet) -> bool {
        let bits = set.to_bits(self.n);
        set.iter().all(|v| !self.adj[v].intersects(&bits))
            && (0..self.n).filter(|v| !bits.contains(*v)).all(|v| self.adj[v].intersects(&bits))
    }

    /// Same vertex count and edge set, ignoring labels.
    pub fn same_edges(&self, other: &UGraph) -> bool {
        self.n == other.n && self.adj == other.adj
    }

    /// `perm[v]` is the new name of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<UGraph> {
        let mut seen = Bits::new(self.n);
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(Error::InvalidArgument("relabeling is not a permutation".into()));
            }
            seen.insert(p);
        }
        if perm.len() != self.n {
            return Err(Error::InvalidArgument("relabeling has the wrong length".into()));
        }
        UGraph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges().collect() }
    }

    /// Deterministic Graphviz output: nodes in index order, then edges with
    /// the smaller endpoint first.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match &self.labels {
                Some(l) => writeln!(out, "  {v} [label=\"{}\"];", l[v].replace('"', "\\\"")),
                None => writeln!(out, "  {v};"),
            }
            .expect("write to string");
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").expect("write to string");
        }
        out.push_str("}\n");
        out
    }
}

/// `Γ(R)` with the default vertex cap.
pub fn build_graph(ring: &Ring) -> Result<UGraph> {
    build_graph_with_cap(ring, DEFAULT_GRAPH_CAP)
}

/// Vertices are element indices; `x ~ y` iff `x - y` is a unit. Neighbors
/// are generated as `x + u` over the units `u`.
pub fn build_graph_with_cap(ring: &Ring, cap: usize) -> Result<UGraph> {
    let n = ring.order();
    if n > cap {
        return Err(Error::GraphCap { vertices: n, cap });
    }
    let units = ring.units();
    let mut g = UGraph::empty(n);
    for x in 0..n {
        for u in units.iter() {
            let y = ring.add(x, u);
            if y != x {
                g.adj[x].insert(y);
            }
        }
    }
    debug_assert!(g.is_simple(), "unit set of a ring is closed under negation");
    let labels = (0..n).map(|x| ring.describe(x)).collect();
    Ok(g.with_labels(labels))
}

/// Conjunction (tensor) product: `(a, b) ~ (c, d)` iff `a ~ c` and `b ~ d`.
/// The pair `(a, b)` is vertex `a * |V2| + b`.
pub fn conjunction_product(g1: &UGraph, g2: &UGraph) -> UGraph {
    let (n1, n2) = (g1.n, g2.n);
    let mut g = UGraph::empty(n1 * n2);
    for a in 0..n1 {
        for b in 0..n2 {
            let row = &mut g.adj[a * n2 + b];
            for c in g1.adj[a].iter() {
                for d in g2.adj[b].iter() {
                    row.insert(c * n2 + d);
                }
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph(s: &str) -> UGraph {
        build_graph(&Ring::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn z4_is_complete_bipartite() {
        let g = graph("Z(4)");
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn gf3_is_triangle() {
        assert!(graph("GF(3)").same_edges(&UGraph::complete(3)));
    }

    #[test]
    fn z6_is_hexagon() {
        let edges: Vec<_> = graph("Z(6)").edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn crt_product() {
        let prod = conjunction_product(&graph("Z(2)"), &graph("Z(3)"));
        // x -> (x mod 2, x mod 3) -> 3 * (x mod 2) + x mod 3
        let crt: Vec<usize> = (0..6).map(|x| 3 * (x % 2) + x % 3).collect();
        assert!(graph("Z(6)").relabel(&crt).unwrap().same_edges(&prod));
        assert!(graph("prod(Z(2),Z(3))").same_edges(&prod));
    }

    #[test]
    fn products_with_edgeless_and_k2() {
        let e = UGraph::empty(3);
        assert_eq!(conjunction_product(&UGraph::complete(4), &e).edge_count(), 0);
        let k2k2 = conjunction_product(&UGraph::complete(2), &UGraph::complete(2));
        assert_eq!(k2k2.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn dot_export() {
        assert_eq!(UGraph::complete(2).to_dot(), "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
        let dot = UGraph::empty(3).to_dot();
        assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("--")).count(), 3);
        assert!(!dot.contains("--"));
        let z4 = graph("Z(4)").to_dot();
        assert_eq!(z4.matches("--").count(), 4);
        assert_eq!(z4.matches("[label=").count(), 4);
    }

    #[test]
    fn json_export() {
        let j = graph("Z(4)").to_json();
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"N":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
    }

    #[test]
    fn cap_is_enforced() {
        let r = Ring::parse("M(2,GF(3))").unwrap();
        assert!(matches!(build_graph_with_cap(&r, 80), Err(Error::GraphCap { vertices: 81, cap: 80 })));
    }

    const CATALOG: &[&str] = &[
        "Z(2)", "Z(4)", "Z(6)", "Z(12)", "GF(4)", "GF(9)", "T(2,GF(2))", "T(2,GF(3))",
        "M(2,GF(2))", "M(2,GF(3))", "M(2,Z(4))", "prod(Z(2),Z(3))", "prod(Z(2),M(2,GF(2)))",
        "prod(GF(4),Z(6))", "T(3,GF(2))",
    ];

    #[test]
    fn graphs_are_unit_regular_and_simple() {
        for s in CATALOG {
            let r = Ring::parse(s).unwrap();
            let g = build_graph(&r).unwrap();
            assert!(g.is_simple(), "{s}");
            assert_eq!(g.regular_degree(), Some(r.unit_count()), "{s}");
        }
    }

    #[test]
    fn translations_are_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in CATALOG {
            let r = Ring::parse(s).unwrap();
            let g = build_graph(&r).unwrap();
            for _ in 0..5 {
                let c = rng.gen_range(0..r.order());
                let perm: Vec<usize> = (0..r.order()).map(|x| r.add(x, c)).collect();
                assert!(g.relabel(&perm).unwrap().same_edges(&g), "{s} c={c}");
            }
        }
    }

    #[test]
    fn product_rings_give_conjunction_products() {
        for (a, b) in [("Z(2)", "Z(3)"), ("Z(4)", "GF(3)"), ("Z(2)", "M(2,GF(2))"), ("T(2,GF(2))", "Z(3)")] {
            let p = graph(&format!("prod({a},{b})"));
            assert!(p.same_edges(&conjunction_product(&graph(a), &graph(b))), "{a} x {b}");
        }
    }
}
